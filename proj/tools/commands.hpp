#ifndef CATDIV_TOOLS_COMMANDS_HPP
#define CATDIV_TOOLS_COMMANDS_HPP

#include "catdiv/config.hpp"
#include "catdiv/csv.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace catdiv::cli {

/// Process exit codes.
enum Exit : int {
    kOk = 0,
    kFindings = 1,  ///< verification violations or skipped sweep points
    kError = 2,
};

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<double> dt;
    unsigned threads = 0;
};

struct CommandResult {
    csv::Table table;
    int exit_code = kOk;
    std::string summary;  ///< Human-readable, goes to stderr
};

void apply_overrides(RunConfig& cfg, const Overrides& o);

CommandResult run_solve(const RunConfig& cfg);
CommandResult run_verify(const RunConfig& cfg, std::size_t grid_points);

/**
 * strategy: "optimal", "constant:A:B" or "barrier:B". B is a surplus level,
 * or a multiple of x* when written with an "x*" suffix (e.g. "0.5x*").
 */
CommandResult run_simulate(const RunConfig& cfg, std::vector<double> xs,
                           const std::string& strategy, const std::string& trace_path);

CommandResult run_sweep_command(const RunConfig& cfg, const std::optional<std::string>& param,
                                const std::optional<std::string>& range,
                                const std::optional<std::string>& outputs);

}  // namespace catdiv::cli

#endif  // CATDIV_TOOLS_COMMANDS_HPP
