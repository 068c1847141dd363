#include "catdiv/hjb_solver.hpp"

#include "catdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace catdiv {

namespace {

constexpr double kRootTolerance = 1e-10;
constexpr double kIntervalFloor = 1e-14;
constexpr double kGammaScanStep = 1e-3;
constexpr int kGammaScanPoints = 999;

bool opposite_signs(double a, double b) { return (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0); }

/**
 * Bisection on a bracket with f(lo), f(hi) of opposite sign, run down to
 * the interval floor. The returned point must satisfy |f| < kRootTolerance.
 */
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, const char* what) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kIntervalFloor || mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (opposite_signs(f_lo, f_mid)) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    const double residual = f(root);
    if (!(std::abs(residual) < kRootTolerance)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": bisection stalled at " << root << " with residual " << residual;
        throw Error(ErrorCode::NoRoot, msg.str());
    }
    return root;
}

}  // namespace

double max_adjusted_risk_rate(const ModelParams& m) { return m.mu / (2.0 * m.levy.mean_jump()); }

ModelParams validate_params(ModelParams m) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            std::ostringstream msg;
            msg << name << " must be finite and > 0, got " << v;
            throw Error(ErrorCode::InvalidParameter, msg.str());
        }
    };
    positive(m.mu, "mu");
    positive(m.sigma2, "sigma2");
    positive(m.c, "c");
    if (!(m.s >= 0.0) || !std::isfinite(m.s)) {
        std::ostringstream msg;
        msg << "s must be finite and >= 0, got " << m.s;
        throw Error(ErrorCode::InvalidParameter, msg.str());
    }
    if (!(m.beta > 0.0 && m.beta < 1.0)) {
        std::ostringstream msg;
        msg << "beta must lie in (0, 1), got " << m.beta;
        throw Error(ErrorCode::InvalidFraction, msg.str());
    }
    const double k_max = max_adjusted_risk_rate(m);
    if (!(m.k > 0.0 && m.k <= k_max)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "k must satisfy 0 < k <= mu / (2 * mean_jump) = " << k_max << ", got " << m.k;
        throw Error(ErrorCode::InvalidK, msg.str());
    }
    return m;
}

double h_of_gamma(const ModelParams& m, double gamma) {
    const double b = m.mu * m.k / (m.sigma2 * (1.0 - gamma));
    // The integral grows like gamma * b * mean_jump as gamma -> 1; keep the
    // tolerance relative once that scale passes 1.
    const double scale = std::max(1.0, gamma * b * m.levy.mean_jump());
    const double jump = m.levy.power_jump_integral(gamma, b, 1e-12 * scale);
    return -m.c - 0.5 * (m.mu * m.mu / m.sigma2) * gamma / (gamma - 1.0) + jump;
}

GammaSolution solve_gamma(const ModelParams& m) {
    auto h = [&m](double g) { return h_of_gamma(m, g); };

    // h(0+) = -c.
    double prev_g = 0.0;
    double prev_h = -m.c;
    double lo = 0.0;
    double hi = 0.0;
    double h_lo = 0.0;
    std::size_t changes = 0;
    for (int j = 1; j <= kGammaScanPoints; ++j) {
        const double g = j * kGammaScanStep;
        const double hv = h(g);
        if (opposite_signs(prev_h, hv)) {
            if (changes == 0) {
                lo = prev_g;
                hi = g;
                h_lo = prev_h;
            }
            ++changes;
        }
        prev_g = g;
        prev_h = hv;
    }
    if (changes == 0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "h(gamma) has no sign change on (0, 1); h(" << prev_g << ") = " << prev_h;
        throw Error(ErrorCode::NoRoot, msg.str());
    }
    if (lo == 0.0) {
        // Bracket starts at the analytic limit; bisect from a tiny positive gamma.
        lo = 1e-12;
        h_lo = h(lo);
    }
    return {bisect(h, lo, hi, h_lo, "solve_gamma"), changes};
}

double l_of_d(const ModelParams& m, double d) {
    return 0.5 * m.sigma2 * d * d + m.mu * d - m.c + m.levy.exp_jump_integral(m.k, d);
}

Exponents solve_exponents(const ModelParams& m) {
    auto l = [&m](double d) { return l_of_d(m, d); };
    const double l0 = l(0.0);
    if (!(l0 < 0.0)) {
        throw Error(ErrorCode::NoRoot, "l(0) must be negative");
    }

    // d+: grow toward the divergence guard, where l blows up.
    const double guard = m.levy.exponential_moment_bound() * (1.0 - kDivergenceGuard) / m.k;
    double hi = std::min(1.0, guard);
    double l_hi = l(hi);
    while (l_hi <= 0.0) {
        if (hi >= guard) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "l(d) still <= 0 at the divergence guard d = " << guard;
            throw Error(ErrorCode::NoRoot, msg.str());
        }
        hi = std::min(2.0 * hi, guard);
        l_hi = l(hi);
    }
    const double d_plus = bisect(l, 0.0, hi, l0, "solve_exponents (d+)");

    // d-: geometric doubling from -1.
    double lo = -1.0;
    double l_lo = l(lo);
    for (int iter = 0; l_lo <= 0.0; ++iter) {
        if (iter > 1000 || !std::isfinite(lo)) {
            throw Error(ErrorCode::NoRoot, "no sign change for d < 0");
        }
        lo *= 2.0;
        l_lo = l(lo);
    }
    const double d_minus = bisect(l, lo, 0.0, l_lo, "solve_exponents (d-)");
    return {d_minus, d_plus};
}

double compute_x0(const ModelParams& m, double gamma) { return (1.0 - gamma) * m.sigma2 / m.mu; }

bool check_barrier_condition(double gamma, double d_minus, double d_plus, double x0) {
    return x0 / gamma + 1.0 / std::abs(d_minus) - 1.0 / d_plus < 0.0;
}

double barrier_equation(double x, double gamma, double d_minus, double d_plus, double x0,
                        double beta) {
    const double spread = d_plus - d_minus;
    const double r = x0 / gamma;
    return (r - 1.0 / d_minus) * beta * d_plus / spread * std::exp(d_minus * (x0 - x)) -
           (r - 1.0 / d_plus) * beta * d_minus / spread * std::exp(d_plus * (x0 - x));
}

double compute_xstar(double gamma, double d_minus, double d_plus, double x0) {
    const double denom = d_plus * x0 - gamma;
    if (denom == 0.0) {
        throw Error(ErrorCode::DegenerateLog, "d+ * x0 == gamma; barrier formula undefined");
    }
    if (!check_barrier_condition(gamma, d_minus, d_plus, x0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "x0/gamma + 1/|d-| - 1/d+ = "
            << x0 / gamma + 1.0 / std::abs(d_minus) - 1.0 / d_plus << " is not < 0";
        throw Error(ErrorCode::BarrierConditionViolated, msg.str());
    }
    const double arg = d_plus * d_plus * (d_minus * x0 - gamma) / (d_minus * d_minus * denom);
    if (!(arg > 0.0 && arg < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "log argument " << arg << " outside (0, 1)";
        throw Error(ErrorCode::BarrierConditionViolated, msg.str());
    }
    return x0 - std::log(arg) / (d_plus - d_minus);
}

Coefficients compute_coefficients(double gamma, double d_minus, double d_plus, double x0,
                                  double x_star, double beta) {
    const double spread = d_plus - d_minus;
    Coefficients out;
    out.c3 = beta * d_plus / (std::exp(d_minus * x_star) * d_minus * spread);
    out.c4 = beta * d_minus / (std::exp(d_plus * x_star) * d_plus * (d_minus - d_plus));
    // Scale-stable form of (c3 e^{d- x0} + c4 e^{d+ x0}) / x0^gamma.
    const double at_x0 = beta * d_plus / (d_minus * spread) * std::exp(d_minus * (x0 - x_star)) +
                         beta * d_minus / (d_plus * (d_minus - d_plus)) *
                             std::exp(d_plus * (x0 - x_star));
    out.c1 = at_x0 / std::pow(x0, gamma);

    if (!(out.c3 < 0.0) || !(out.c4 > 0.0) || !(out.c1 > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "expected c3 < 0 < c4 and c1 > 0, got c1 = " << out.c1 << ", c3 = " << out.c3
            << ", c4 = " << out.c4;
        throw Error(ErrorCode::SignViolation, msg.str());
    }
    return out;
}

PolicyParams solve_policy(const ModelParams& model) {
    const ModelParams m = validate_params(model);
    const GammaSolution g = solve_gamma(m);
    const Exponents d = solve_exponents(m);
    const double x0 = compute_x0(m, g.gamma);
    const double x_star = compute_xstar(g.gamma, d.d_minus, d.d_plus, x0);
    const Coefficients coef = compute_coefficients(g.gamma, d.d_minus, d.d_plus, x0, x_star, m.beta);

    PolicyParams p;
    p.gamma = g.gamma;
    p.d_minus = d.d_minus;
    p.d_plus = d.d_plus;
    p.x0 = x0;
    p.x_star = x_star;
    p.c1 = coef.c1;
    p.c3 = coef.c3;
    p.c4 = coef.c4;
    p.gamma_sign_changes = g.sign_changes;
    return p;
}

}  // namespace catdiv
