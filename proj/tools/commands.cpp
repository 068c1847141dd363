#include "commands.hpp"

#include "catdiv/error.hpp"
#include "catdiv/simulator.hpp"
#include "catdiv/sweep.hpp"
#include "catdiv/value_function.hpp"
#include "catdiv/verification.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace catdiv::cli {

namespace {

double parse_level(std::string_view text, double x_star) {
    double scale = 1.0;
    if (text.size() > 2 && text.substr(text.size() - 2) == "x*") {
        scale = x_star;
        text.remove_suffix(2);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, "bad surplus level '" + std::string(text) + "'");
    }
    return v * scale;
}

Strategy parse_strategy(const std::string& text, const PolicyParams& policy) {
    std::vector<std::string_view> parts;
    std::string_view rest(text);
    while (true) {
        const auto pos = rest.find(':');
        parts.push_back(rest.substr(0, pos));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    if (parts.size() == 1 && parts[0] == "optimal") return OptimalFeedback{policy};
    if (parts.size() == 3 && parts[0] == "constant") {
        return ConstantRetention{parse_level(parts[1], 1.0), parse_level(parts[2], policy.x_star)};
    }
    if (parts.size() == 2 && parts[0] == "barrier") {
        return FixedBarrier{policy, parse_level(parts[1], policy.x_star)};
    }
    throw Error(ErrorCode::ParseError, "strategy must be optimal, constant:A:B or barrier:B, got '" +
                                           text + "'");
}

std::vector<csv::Cell> row(std::string name, double value) {
    return {std::move(name), value};
}

}  // namespace

void apply_overrides(RunConfig& cfg, const Overrides& o) {
    if (o.seed) cfg.sim.seed = *o.seed;
    if (o.paths) cfg.sim.n_paths = *o.paths;
    if (o.dt) cfg.sim.dt = *o.dt;
    cfg.sim.threads = o.threads;
    if (cfg.sweep) cfg.sweep->threads = o.threads;
}

CommandResult run_solve(const RunConfig& cfg) {
    const auto v = ValueFunction::solve(cfg.model);
    const auto& p = v.policy();
    CommandResult out;
    out.table.header = {"quantity", "value"};
    auto& rows = out.table.rows;
    rows.push_back(row("gamma", p.gamma));
    rows.push_back(row("d_minus", p.d_minus));
    rows.push_back(row("d_plus", p.d_plus));
    rows.push_back(row("x0", p.x0));
    rows.push_back(row("x_star", p.x_star));
    rows.push_back(row("c1", p.c1));
    rows.push_back(row("c3", p.c3));
    rows.push_back(row("c4", p.c4));
    rows.push_back(row("psi(x_star)", v.psi(p.x_star)));
    rows.push_back(row("gamma_sign_changes", static_cast<double>(p.gamma_sign_changes)));
    for (double x : cfg.x_grid) {
        rows.push_back(row("V(x=" + csv::format_number(x) + ")", v.optimal_return(cfg.model.s, x)));
    }
    std::ostringstream s;
    s.precision(10);
    s << "x0 = " << p.x0 << ", x* = " << p.x_star << ", gamma = " << p.gamma;
    if (p.gamma_sign_changes > 1) {
        s << "\nwarning: h changes sign " << p.gamma_sign_changes
          << " times on (0, 1); the smallest root was used";
    }
    out.summary = s.str();
    return out;
}

CommandResult run_verify(const RunConfig& cfg, std::size_t grid_points) {
    const auto v = ValueFunction::solve(cfg.model);
    const auto grid = verification_grid(v, grid_points);
    VerifyOptions opts;
    opts.threads = cfg.sim.threads;
    const auto report = verify_variational_inequality(v, grid, opts);

    CommandResult out;
    out.table.header = {"x", "check", "value", "bound"};
    for (const auto& viol : report.violations) {
        out.table.rows.push_back(
            {viol.x, std::string(to_string(viol.check)), viol.value, viol.bound});
    }
    std::ostringstream s;
    s.precision(6);
    s << grid.size() << " grid points on (0, " << grid.back() << "], " << report.violations.size()
      << " violations";
    for (auto id : {CheckId::SlopeAboveBeta, CheckId::SlopeEqualsBeta, CheckId::ResidualNonPositive,
                    CheckId::FeedbackMaximizer}) {
        s << "\n  " << to_string(id) << ": " << report.count(id);
    }
    s << "\n  max residual / psi on (0, x0): " << report.max_residual_region1_rel
      << "\n  max residual on [x0, 3x*]: " << report.max_residual_upper;
    out.summary = s.str();
    out.exit_code = report.ok() ? kOk : kFindings;
    return out;
}

CommandResult run_simulate(const RunConfig& cfg, std::vector<double> xs,
                           const std::string& strategy, const std::string& trace_path) {
    const auto v = ValueFunction::solve(cfg.model);
    const Strategy strat = parse_strategy(strategy, v.policy());
    if (xs.empty()) xs = cfg.x_grid;
    if (xs.empty()) xs = {v.policy().x_star};

    CommandResult out;
    out.table.header = {"x",         "psi",        "mean",          "std_error",
                        "ruin_fraction", "mean_ruin_time", "n_paths"};
    for (double x : xs) {
        const auto r = estimate_value(cfg.model, strat, x, cfg.sim);
        out.table.rows.push_back({x, v.optimal_return(cfg.model.s, x), r.mean_discounted_dividends,
                                  r.std_error, r.ruin_fraction,
                                  r.mean_ruin_time.value_or(std::nan("")),
                                  static_cast<double>(r.n_paths)});
    }
    if (!trace_path.empty()) {
        std::vector<PathSample> trace;
        simulate_path(cfg.model, strat, xs.front(), cfg.sim, 0, &trace);
        csv::Table t;
        t.header = {"t", "R", "L"};
        t.rows.reserve(trace.size());
        for (const auto& p : trace) t.rows.push_back({p.t, p.surplus, p.dividends});
        csv::emit_csv(t, trace_path);
    }
    std::ostringstream s;
    s << xs.size() << " starting levels, " << cfg.sim.n_paths << " paths each, dt = "
      << cfg.sim.dt << ", T = " << cfg.sim.horizon;
    out.summary = s.str();
    return out;
}

CommandResult run_sweep_command(const RunConfig& cfg, const std::optional<std::string>& param,
                                const std::optional<std::string>& range,
                                const std::optional<std::string>& outputs) {
    SweepSpec spec;
    if (cfg.sweep) spec = *cfg.sweep;
    spec.fixed = cfg.model;
    spec.threads = cfg.sim.threads;
    if (!cfg.x_grid.empty()) spec.x_grid = cfg.x_grid;
    if (param) spec.parameter = parse_sweep_param(*param);
    if (range) parse_range(*range, spec.lo, spec.hi, spec.n_points);
    if (!cfg.sweep && !(param && range)) {
        throw Error(ErrorCode::ConfigInvalid,
                    "sweep needs --param and --range (or sweep_param / sweep_range in the config)");
    }
    if (outputs) {
        spec.outputs.clear();
        std::string_view rest(*outputs);
        while (true) {
            const auto pos = rest.find(',');
            spec.outputs.push_back(parse_sweep_output(rest.substr(0, pos)));
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
    }

    CommandResult out;
    out.table = run_sweep(spec);
    std::size_t skipped = 0;
    const auto status = out.table.column("status");
    for (const auto& r : out.table.rows) {
        if (std::get<std::string>(r[status]) != "ok") ++skipped;
    }
    std::ostringstream s;
    s << out.table.rows.size() << " sweep points over " << to_string(spec.parameter) << ", "
      << skipped << " skipped";
    out.summary = s.str();
    out.exit_code = skipped == 0 ? kOk : kFindings;
    return out;
}

}  // namespace catdiv::cli
