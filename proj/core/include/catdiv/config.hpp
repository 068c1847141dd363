/**
 * @file config.hpp
 * @brief Flat "key = value" run configuration
 *
 * Recognised keys:
 *   mu, sigma2, c, k, levy             required
 *   beta (0.8), s (0)
 *   dt (1e-3), horizon (20 / c), n_paths (10000), seed (1), antithetic (false)
 *   x_grid                             comma list of surplus levels
 *   sweep_param, sweep_range (lo:hi:n), sweep_outputs (comma list)
 *
 * levy is either exp(t) or table(path, tail_rate); a relative table path is
 * resolved against the directory of the config file.
 */

#ifndef CATDIV_CONFIG_HPP
#define CATDIV_CONFIG_HPP

#include "catdiv/hjb_solver.hpp"
#include "catdiv/simulator.hpp"
#include "catdiv/sweep.hpp"

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace catdiv {

struct RunConfig {
    ModelParams model;
    SimConfig sim;
    std::vector<double> x_grid;      ///< Empty when not given
    std::optional<SweepSpec> sweep;  ///< Present when sweep_param is given
};

/// "exp(t)" or "table(path, tail_rate)". Throws ParseError or IoError.
LevyMeasure parse_levy(std::string_view value, const std::filesystem::path& base_dir = {});

/// Two-column (z, density) CSV, header row optional.
LevyMeasure load_levy_table(const std::filesystem::path& path, double tail_rate);

/// "lo:hi:n". Throws ParseError.
void parse_range(std::string_view text, double& lo, double& hi, std::size_t& n);

/**
 * Throws ParseError (with line number) for syntax errors, unknown or
 * repeated keys and missing required keys; ValidationError naming the
 * violated bound when the model or run settings are inadmissible.
 */
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path);

}  // namespace catdiv

#endif  // CATDIV_CONFIG_HPP
