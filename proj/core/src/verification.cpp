#include "catdiv/verification.hpp"

#include "catdiv/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace catdiv {

std::string_view to_string(CheckId id) noexcept {
    switch (id) {
        case CheckId::SlopeAboveBeta: return "slope_above_beta";
        case CheckId::SlopeEqualsBeta: return "slope_equals_beta";
        case CheckId::ResidualNonPositive: return "residual_nonpositive";
        case CheckId::FeedbackMaximizer: return "feedback_maximizer";
    }
    return "unknown";
}

std::size_t VerificationReport::count(CheckId id) const noexcept {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [id](const Violation& v) { return v.check == id; }));
}

std::vector<double> verification_grid(const ValueFunction& v, std::size_t n) {
    std::vector<double> grid(n);
    const double top = 3.0 * v.policy().x_star;
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = top * static_cast<double>(i + 1) / static_cast<double>(n);
    }
    return grid;
}

VerificationReport verify_variational_inequality(const ValueFunction& v,
                                                 std::span<const double> grid,
                                                 const VerifyOptions& opts) {
    for (double x : grid) {
        if (!(x > 0.0)) {
            std::ostringstream msg;
            msg << "verification grid must exclude x <= 0, got " << x;
            throw Error(ErrorCode::InvalidParameter, msg.str());
        }
    }
    if (opts.a_steps == 0) {
        throw Error(ErrorCode::InvalidParameter, "a_steps must be positive");
    }

    const PolicyParams& p = v.policy();
    const double beta = v.model().beta;
    const double a_step = 1.0 / static_cast<double>(opts.a_steps);

    VerificationReport report;
    report.points.resize(grid.size());
    report.max_residual_region1_rel = -std::numeric_limits<double>::infinity();
    report.max_residual_upper = -std::numeric_limits<double>::infinity();
    detail::parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
        const double x = grid[i];
        GridPoint& gp = report.points[i];
        gp.x = x;
        gp.slope = v.derivatives(x).first;
        gp.retention = v.retention_ratio(x);
        gp.max_residual = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j <= opts.a_steps; ++j) {
            const double a = static_cast<double>(j) * a_step;
            const double r = v.hjb_residual(x, a);
            if (r > gp.max_residual) {
                gp.max_residual = r;
                gp.argmax_a = a;
            }
        }
        gp.residual_bound =
            x < p.x0 ? opts.region1_rel_tol * v.psi(x) : opts.residual_abs_tol;
    });

    for (const GridPoint& gp : report.points) {
        const double x = gp.x;
        if (x < p.x_star) {
            if (!(gp.slope > beta)) {
                report.violations.push_back({x, CheckId::SlopeAboveBeta, gp.slope, beta});
            }
        } else if (!(std::abs(gp.slope - beta) <= opts.slope_tol)) {
            report.violations.push_back({x, CheckId::SlopeEqualsBeta, gp.slope, beta});
        }
        if (!(gp.max_residual <= gp.residual_bound)) {
            report.violations.push_back(
                {x, CheckId::ResidualNonPositive, gp.max_residual, gp.residual_bound});
        }
        if (x < p.x_star && !(std::abs(gp.argmax_a - gp.retention) <= a_step * (1.0 + 1e-9))) {
            report.violations.push_back({x, CheckId::FeedbackMaximizer, gp.argmax_a, gp.retention});
        }
        if (x < p.x0) {
            report.max_residual_region1_rel =
                std::max(report.max_residual_region1_rel, gp.max_residual / v.psi(x));
        } else {
            report.max_residual_upper = std::max(report.max_residual_upper, gp.max_residual);
        }
    }
    return report;
}

}  // namespace catdiv
