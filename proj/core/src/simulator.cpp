#include "catdiv/simulator.hpp"

#include "catdiv/error.hpp"
#include "parallel.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace catdiv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double feedback_retention(const PolicyParams& p, const ModelParams& m, double surplus) {
    if (surplus >= p.x0) return 1.0;
    return std::min(m.mu * surplus / (m.sigma2 * (1.0 - p.gamma)), 1.0);
}

std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform on the open interval (0, 1).
double open_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

[[noreturn]] void config_error(const std::string& what) {
    throw Error(ErrorCode::ConfigInvalid, what);
}

}  // namespace

double strategy_barrier(const Strategy& strategy) {
    return std::visit(overloaded{[](const OptimalFeedback& s) { return s.policy.x_star; },
                                 [](const ConstantRetention& s) { return s.barrier; },
                                 [](const FixedBarrier& s) { return s.barrier; }},
                      strategy);
}

double strategy_retention(const Strategy& strategy, const ModelParams& model, double surplus) {
    return std::visit(
        overloaded{
            [&](const OptimalFeedback& s) { return feedback_retention(s.policy, model, surplus); },
            [](const ConstantRetention& s) { return s.retention; },
            [&](const FixedBarrier& s) { return feedback_retention(s.policy, model, surplus); }},
        strategy);
}

void validate_config(const ModelParams& model, const Strategy& strategy, const SimConfig& cfg) {
    std::ostringstream msg;
    msg.precision(17);
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        msg << "dt must be finite and > 0, got " << cfg.dt;
        config_error(msg.str());
    }
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
        msg << "horizon must be finite and > 0, got " << cfg.horizon;
        config_error(msg.str());
    }
    if (!(model.c * cfg.horizon >= 18.0)) {
        msg << "c * T = " << model.c * cfg.horizon << " must be >= 18";
        config_error(msg.str());
    }
    if (cfg.n_paths == 0) config_error("n_paths must be positive");
    if (cfg.antithetic && cfg.n_paths % 2 != 0) {
        config_error("antithetic sampling needs an even n_paths");
    }
    const double barrier = strategy_barrier(strategy);
    if (!(barrier > 0.0) || !std::isfinite(barrier)) {
        msg << "barrier must be finite and > 0, got " << barrier;
        config_error(msg.str());
    }
    if (const auto* cr = std::get_if<ConstantRetention>(&strategy)) {
        if (!(cr->retention >= 0.0 && cr->retention <= 1.0)) {
            msg << "retention must lie in [0, 1], got " << cr->retention;
            config_error(msg.str());
        }
    }
    const double dt_max = barrier / (50.0 * model.mu);
    if (!(cfg.dt <= dt_max)) {
        msg << "dt = " << cfg.dt << " exceeds barrier / (50 mu) = " << dt_max;
        config_error(msg.str());
    }
}

PathResult simulate_path(const ModelParams& model, const Strategy& strategy, double x,
                         const SimConfig& cfg, std::uint64_t path_index,
                         std::vector<PathSample>* trace) {
    if (!(x >= 0.0)) {
        std::ostringstream msg;
        msg << "initial surplus must be >= 0, got " << x;
        config_error(msg.str());
    }
    const std::uint64_t stream = cfg.antithetic ? path_index / 2 : path_index;
    const double sign = (cfg.antithetic && (path_index % 2 == 1)) ? -1.0 : 1.0;
    auto rng = path_engine(cfg.seed, stream);
    std::normal_distribution<double> normal(0.0, 1.0);

    const double barrier = strategy_barrier(strategy);
    const double sigma = std::sqrt(model.sigma2);
    const double sqrt_dt = std::sqrt(cfg.dt);
    const double intensity = model.levy.total_mass();
    const double drift = model.mu - model.k * model.levy.mean_jump();
    const double start_discount = std::exp(-model.c * model.s);
    const auto n_steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));

    PathResult out;
    double surplus = x;
    double paid = 0.0;
    if (trace) trace->push_back({0.0, surplus, paid});

    if (surplus <= 0.0) {
        out.ruin_time = 0.0;
        return out;
    }
    if (surplus > barrier) {
        const double lump = surplus - barrier;
        out.discounted_dividends += model.beta * start_discount * lump;
        paid += lump;
        surplus = barrier;
        if (trace) trace->push_back({0.0, surplus, paid});
    }

    double next_jump = -std::log(open_uniform(rng)) / intensity;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t_end = static_cast<double>(i + 1) * cfg.dt;
        const double a = strategy_retention(strategy, model, surplus);

        const double z = sign * normal(rng);
        surplus += a * drift * cfg.dt + a * sigma * sqrt_dt * z;
        while (next_jump < t_end) {
            surplus += a * model.k * model.levy.sample_jump(open_uniform(rng));
            next_jump += -std::log(open_uniform(rng)) / intensity;
        }

        if (surplus <= 0.0) {
            out.ruin_time = t_end;
            if (trace) trace->push_back({t_end, surplus, paid});
            return out;
        }
        if (surplus > barrier) {
            const double overshoot = surplus - barrier;
            out.discounted_dividends +=
                model.beta * std::exp(-model.c * (model.s + t_end)) * overshoot;
            paid += overshoot;
            surplus = barrier;
        }
        if (trace) trace->push_back({t_end, surplus, paid});
    }
    return out;
}

SimOutcome estimate_value(const ModelParams& model, const Strategy& strategy, double x,
                          const SimConfig& cfg, bool keep_paths) {
    validate_config(model, strategy, cfg);

    std::vector<PathResult> paths(cfg.n_paths);
    constexpr std::size_t kBlock = 64;
    const std::size_t n_blocks = (cfg.n_paths + kBlock - 1) / kBlock;
    detail::parallel_for(n_blocks, cfg.threads, [&](std::size_t b) {
        const std::size_t end = std::min(cfg.n_paths, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            paths[i] = simulate_path(model, strategy, x, cfg, i);
        }
    });

    // Sequential reduction in path order keeps the outcome bit-identical.
    SimOutcome out;
    out.n_paths = cfg.n_paths;
    const std::size_t group = cfg.antithetic ? 2 : 1;
    const std::size_t n_samples = cfg.n_paths / group;
    double sum = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        double y = 0.0;
        for (std::size_t q = 0; q < group; ++q) y += paths[j * group + q].discounted_dividends;
        sum += y / static_cast<double>(group);
    }
    const double mean = sum / static_cast<double>(n_samples);
    double ss = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        double y = 0.0;
        for (std::size_t q = 0; q < group; ++q) y += paths[j * group + q].discounted_dividends;
        const double dev = y / static_cast<double>(group) - mean;
        ss += dev * dev;
    }
    out.mean_discounted_dividends = mean;
    out.std_error = n_samples > 1
                        ? std::sqrt(ss / static_cast<double>(n_samples - 1)) /
                              std::sqrt(static_cast<double>(n_samples))
                        : 0.0;

    std::size_t ruined = 0;
    double ruin_time_sum = 0.0;
    for (const auto& p : paths) {
        if (p.ruin_time) {
            ++ruined;
            ruin_time_sum += *p.ruin_time;
        }
    }
    out.ruin_fraction = static_cast<double>(ruined) / static_cast<double>(cfg.n_paths);
    if (ruined > 0) out.mean_ruin_time = ruin_time_sum / static_cast<double>(ruined);
    if (keep_paths) out.paths = std::move(paths);
    return out;
}

}  // namespace catdiv
