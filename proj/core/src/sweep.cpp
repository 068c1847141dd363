#include "catdiv/sweep.hpp"

#include "catdiv/error.hpp"
#include "catdiv/value_function.hpp"
#include "parallel.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <span>

namespace catdiv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointResult {
    std::string status = "ok";
    std::vector<double> values;
};

std::size_t value_columns(const SweepSpec& spec) {
    return spec.parameter == SweepParam::X ? 1 : spec.x_grid.size();
}

std::size_t output_width(const SweepSpec& spec) {
    std::size_t w = 0;
    for (auto o : spec.outputs) w += o == SweepOutput::Value ? value_columns(spec) : 1;
    return w;
}

void fill_outputs(const SweepSpec& spec, const ValueFunction& v, std::span<const double> xs,
                  std::vector<double>& out) {
    const auto& p = v.policy();
    for (auto o : spec.outputs) {
        switch (o) {
            case SweepOutput::XStar: out.push_back(p.x_star); break;
            case SweepOutput::Gamma: out.push_back(p.gamma); break;
            case SweepOutput::DMinus: out.push_back(p.d_minus); break;
            case SweepOutput::DPlus: out.push_back(p.d_plus); break;
            case SweepOutput::Value:
                for (double x : xs) out.push_back(v.psi(x));
                break;
        }
    }
}

std::string skip_reason(const std::exception& e) { return std::string("skipped: ") + e.what(); }

}  // namespace

std::string_view to_string(SweepParam p) noexcept {
    switch (p) {
        case SweepParam::K: return "k";
        case SweepParam::Mu: return "mu";
        case SweepParam::Sigma2: return "sigma2";
        case SweepParam::LevyT: return "levy_t";
        case SweepParam::X: return "x";
    }
    return "?";
}

std::string_view to_string(SweepOutput o) noexcept {
    switch (o) {
        case SweepOutput::XStar: return "x_star";
        case SweepOutput::Gamma: return "gamma";
        case SweepOutput::DMinus: return "d_minus";
        case SweepOutput::DPlus: return "d_plus";
        case SweepOutput::Value: return "V";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
    for (auto p : {SweepParam::K, SweepParam::Mu, SweepParam::Sigma2, SweepParam::LevyT,
                   SweepParam::X}) {
        if (to_string(p) == name) return p;
    }
    throw Error(ErrorCode::ParseError, "unknown sweep parameter '" + std::string(name) +
                                           "' (expected k, mu, sigma2, levy_t or x)");
}

SweepOutput parse_sweep_output(std::string_view name) {
    for (auto o : {SweepOutput::XStar, SweepOutput::Gamma, SweepOutput::DMinus,
                   SweepOutput::DPlus, SweepOutput::Value}) {
        if (to_string(o) == name) return o;
    }
    throw Error(ErrorCode::ParseError, "unknown sweep output '" + std::string(name) +
                                           "' (expected x_star, gamma, d_minus, d_plus or V)");
}

void validate_sweep(const SweepSpec& spec) {
    if (!(spec.lo < spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
        throw Error(ErrorCode::ValidationError, "sweep range needs lo < hi");
    }
    if (spec.n_points < 2) throw Error(ErrorCode::ValidationError, "sweep needs n_points >= 2");
    if (spec.outputs.empty()) throw Error(ErrorCode::ValidationError, "sweep has no outputs");
    if (spec.parameter == SweepParam::X && !(spec.lo >= 0.0)) {
        throw Error(ErrorCode::ValidationError, "surplus sweep needs lo >= 0");
    }
    for (double x : spec.x_grid) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw Error(ErrorCode::ValidationError, "x_grid entries must be finite and >= 0");
        }
    }
}

std::vector<double> sweep_values(const SweepSpec& spec) {
    std::vector<double> v(spec.n_points);
    const double step = (spec.hi - spec.lo) / static_cast<double>(spec.n_points - 1);
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        v[i] = spec.lo + static_cast<double>(i) * step;
    }
    v.back() = spec.hi;
    return v;
}

ModelParams sweep_model(const SweepSpec& spec, double value) {
    ModelParams m = spec.fixed;
    switch (spec.parameter) {
        case SweepParam::K: m.k = value; break;
        case SweepParam::Mu: m.mu = value; break;
        case SweepParam::Sigma2: m.sigma2 = value; break;
        case SweepParam::LevyT: m.levy = LevyMeasure::exponential(value); break;
        case SweepParam::X: break;
    }
    return m;
}

csv::Table run_sweep(const SweepSpec& spec) {
    validate_sweep(spec);
    const auto values = sweep_values(spec);
    const std::size_t width = output_width(spec);
    std::vector<PointResult> results(values.size());

    if (spec.parameter == SweepParam::X) {
        std::optional<ValueFunction> v;
        std::string failure;
        try {
            v.emplace(ValueFunction::solve(spec.fixed));
        } catch (const std::exception& e) {
            failure = skip_reason(e);
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            auto& r = results[i];
            try {
                if (!v) throw Error(ErrorCode::ValidationError, failure);
                const double x = values[i];
                fill_outputs(spec, *v, std::span<const double>(&x, 1), r.values);
            } catch (const std::exception& e) {
                r.status = v ? skip_reason(e) : failure;
                r.values.assign(width, kNaN);
            }
        }
    } else {
        detail::parallel_for(values.size(), spec.threads, [&](std::size_t i) {
            auto& r = results[i];
            try {
                const auto v = ValueFunction::solve(sweep_model(spec, values[i]));
                fill_outputs(spec, v, spec.x_grid, r.values);
            } catch (const std::exception& e) {
                r.status = skip_reason(e);
                r.values.assign(width, kNaN);
            }
        });
    }

    csv::Table table;
    table.header.emplace_back(to_string(spec.parameter));
    table.header.emplace_back("status");
    for (auto o : spec.outputs) {
        if (o != SweepOutput::Value) {
            table.header.emplace_back(to_string(o));
        } else if (spec.parameter == SweepParam::X) {
            table.header.emplace_back("V");
        } else {
            for (double x : spec.x_grid) table.header.push_back("V(x=" + csv::format_number(x) + ")");
        }
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::vector<csv::Cell> row;
        row.reserve(width + 2);
        row.emplace_back(values[i]);
        row.emplace_back(results[i].status);
        for (double y : results[i].values) row.emplace_back(y);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace catdiv
