/**
 * @file sweep.hpp
 * @brief One-parameter sweeps of the solved policy and value function
 */

#ifndef CATDIV_SWEEP_HPP
#define CATDIV_SWEEP_HPP

#include "catdiv/csv.hpp"
#include "catdiv/hjb_solver.hpp"

#include <string_view>
#include <vector>

namespace catdiv {

enum class SweepParam { K, Mu, Sigma2, LevyT, X };
enum class SweepOutput { XStar, Gamma, DMinus, DPlus, Value };

std::string_view to_string(SweepParam p) noexcept;
std::string_view to_string(SweepOutput o) noexcept;
/// Accepts k, mu, sigma2, levy_t, x; throws ParseError otherwise.
SweepParam parse_sweep_param(std::string_view name);
/// Accepts x_star, gamma, d_minus, d_plus, V; throws ParseError otherwise.
SweepOutput parse_sweep_output(std::string_view name);

inline const std::vector<double> kDefaultValueGrid{1.0, 2.0, 5.0, 10.0, 20.0};

struct SweepSpec {
    SweepParam parameter = SweepParam::K;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n_points = 0;
    ModelParams fixed;
    std::vector<SweepOutput> outputs{SweepOutput::XStar, SweepOutput::Gamma,
                                     SweepOutput::DMinus, SweepOutput::DPlus,
                                     SweepOutput::Value};
    std::vector<double> x_grid = kDefaultValueGrid;  ///< Where V is reported; unused for an x sweep
    unsigned threads = 0;
};

/// Throws ValidationError unless lo < hi, n_points >= 2 and the x grid is positive.
void validate_sweep(const SweepSpec& spec);

/// n_points equally spaced values from lo to hi inclusive.
std::vector<double> sweep_values(const SweepSpec& spec);

/// fixed with the swept parameter set to value (unchanged for an x sweep).
ModelParams sweep_model(const SweepSpec& spec, double value);

/**
 * Columns: the parameter name, status, then the requested outputs in order
 * (V expands to one "V(x=...)" column per grid point, or a single "V"
 * column for an x sweep). A point that fails to solve keeps its row with
 * status "skipped: <reason>" and nan outputs. Rows follow sweep order.
 */
csv::Table run_sweep(const SweepSpec& spec);

}  // namespace catdiv

#endif  // CATDIV_SWEEP_HPP
