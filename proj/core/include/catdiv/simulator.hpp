/**
 * @file simulator.hpp
 * @brief Euler scheme for the controlled, barrier-reflected surplus process
 *        and Monte Carlo estimates of expected discounted dividends
 */

#ifndef CATDIV_SIMULATOR_HPP
#define CATDIV_SIMULATOR_HPP

#include "catdiv/hjb_solver.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace catdiv {

struct SimConfig {
    double dt = 1e-3;             ///< Time step
    double horizon = 0.0;         ///< Truncation time T; needs c * T >= 18
    std::size_t n_paths = 10000;
    std::uint64_t seed = 1;
    bool antithetic = false;      ///< Pair paths (2j, 2j+1) with negated Gaussian draws
    unsigned threads = 0;         ///< 0 = hardware concurrency; never changes results
};

/// Retention a(R) from the solved policy, dividends paid above its x*.
struct OptimalFeedback {
    PolicyParams policy;
};

/// Constant retention, dividends paid above an arbitrary barrier.
struct ConstantRetention {
    double retention = 1.0;
    double barrier = 0.0;
};

/// The policy's feedback retention combined with a different barrier.
struct FixedBarrier {
    PolicyParams policy;
    double barrier = 0.0;
};

using Strategy = std::variant<OptimalFeedback, ConstantRetention, FixedBarrier>;

double strategy_barrier(const Strategy& strategy);
double strategy_retention(const Strategy& strategy, const ModelParams& model, double surplus);

struct PathSample {
    double t = 0.0;
    double surplus = 0.0;
    double dividends = 0.0;  ///< Cumulative, undiscounted, before the beta haircut
};

struct PathResult {
    double discounted_dividends = 0.0;
    std::optional<double> ruin_time;
};

struct SimOutcome {
    double mean_discounted_dividends = 0.0;
    double std_error = 0.0;
    double ruin_fraction = 0.0;
    std::optional<double> mean_ruin_time;  ///< Over ruined paths only
    std::size_t n_paths = 0;
    std::vector<PathResult> paths;         ///< Filled when requested
};

/// Throws ConfigInvalid naming the violated bound.
void validate_config(const ModelParams& model, const Strategy& strategy, const SimConfig& cfg);

/**
 * One path from surplus x. Per step: drift and diffusion at the
 * start-of-step retention, compensator -a k mean_jump dt, Poisson jumps
 * a k z, then the ruin test R <= 0, then projection onto the barrier with
 * the overshoot paid as dividend. An initial surplus above the barrier is
 * paid out at t = 0. Deterministic in (cfg.seed, path_index).
 */
PathResult simulate_path(const ModelParams& model, const Strategy& strategy, double x,
                         const SimConfig& cfg, std::uint64_t path_index,
                         std::vector<PathSample>* trace = nullptr);

/// Mean and standard error over cfg.n_paths paths; bit-identical for fixed inputs.
SimOutcome estimate_value(const ModelParams& model, const Strategy& strategy, double x,
                          const SimConfig& cfg, bool keep_paths = false);

}  // namespace catdiv

#endif  // CATDIV_SIMULATOR_HPP
