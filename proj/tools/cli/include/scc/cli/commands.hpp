#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scc/cli/config.hpp"

namespace scc::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2, ///< invalid configuration or invalid input values
  kParse = 3,  ///< malformed input file
  kNonConvergence = 4,
  kNumerical = 5,
  kIo = 6,
};

enum class OutputFormat { csv, json };

/// Everything a command needs besides its own arguments.
struct Context {
  RunConfig config;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::csv;
  std::ostream *out = nullptr; ///< progress and summaries
  std::ostream *err = nullptr; ///< warnings
  /// Files read by the command; outputs may never overwrite them.
  std::vector<std::filesystem::path> inputs;
};

int cmd_simulate(Context &ctx);
int cmd_fit_rates(Context &ctx, const std::string &histogram_path);
int cmd_fit_power(Context &ctx, const std::string &points_path);
int cmd_fit_echo(Context &ctx, const std::string &points_path);
int cmd_fit_polarization(Context &ctx, const std::string &decays_path);
int cmd_fit_noise(Context &ctx, const std::string &points_path);
int cmd_charge_fidelity(Context &ctx, const std::optional<std::string> &histogram_path);
int cmd_optimize_readout(Context &ctx);
int cmd_scc_noise(Context &ctx);
int cmd_sensitivity(Context &ctx);

/// Exit code for an exception escaping a command.
[[nodiscard]] int exit_code_for(const std::exception &e) noexcept;

} // namespace scc::cli
