#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scc/cli/commands.hpp"
#include "scc/cli/config.hpp"

namespace {

using namespace scc::cli;

std::optional<std::string> env(const char *name) {
  const char *v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

std::uint64_t parse_seed(const std::string &text, const std::string &origin) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 10);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-') {
    throw ConfigError(origin, "seed must be a non-negative integer, got \"" + text + "\"");
  }
  return v;
}

int run(int argc, char **argv) {
  CLI::App app{"Spin-to-charge conversion readout modelling for NV centres"};
  app.require_subcommand(1);

  std::optional<std::string> seed_flag, out_dir_flag, config_path;
  std::string format = "csv";
  app.add_option("--seed", seed_flag, "RNG seed (overrides SCC_SEED and the config)");
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out-dir", out_dir_flag, "Output directory (overrides SCC_OUT_DIR and the config)");
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));

  std::string input;
  std::optional<std::string> histogram;
  auto *simulate = app.add_subcommand("simulate", "Simulate photon-count histograms");
  auto *fit_rates = app.add_subcommand("fit-rates", "Fit the four-rate model to a count histogram");
  fit_rates->add_option("histogram", input, "Histogram CSV or JSON")->required();
  auto *fit_power = app.add_subcommand("fit-power", "Fit a saturation law to rate-vs-power points");
  fit_power->add_option("points", input, "Points CSV or JSON")->required();
  auto *fit_echo = app.add_subcommand("fit-echo", "Fit the spin-echo envelope with revivals");
  fit_echo->add_option("points", input, "Points CSV or JSON")->required();
  auto *fit_pol = app.add_subcommand("fit-polarization", "Fit spin polarization from lifetime decays");
  fit_pol->add_option("decays", input, "Decay traces CSV or JSON")->required();
  auto *fit_noise = app.add_subcommand("fit-noise", "Fit the readout-noise curve");
  fit_noise->add_option("points", input, "Points CSV or JSON")->required();
  auto *fidelity = app.add_subcommand("charge-fidelity", "Charge-state readout fidelity");
  fidelity->add_option("histogram", histogram, "Optional histogram for a mixture fit");
  auto *optimize = app.add_subcommand("optimize-readout", "Optimize power, threshold and duration");
  auto *scc_noise = app.add_subcommand("scc-noise", "Spin readout noise from populations");
  auto *sensitivity = app.add_subcommand("sensitivity", "Magnetometer sensitivity curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Context ctx;
  ctx.out = &std::cout;
  ctx.err = &std::cerr;
  ctx.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (config_path) {
    ctx.inputs.emplace_back(*config_path);
    ctx.config = RunConfig::from_file(*config_path);
  }

  // Flag, then environment, then config, then default.
  if (seed_flag) {
    ctx.seed = parse_seed(*seed_flag, "--seed");
  } else if (const auto s = env("SCC_SEED")) {
    ctx.seed = parse_seed(*s, "SCC_SEED");
  } else if (const auto s = ctx.config.seed()) {
    ctx.seed = *s;
  }
  if (out_dir_flag) {
    ctx.out_dir = *out_dir_flag;
  } else if (const auto d = env("SCC_OUT_DIR")) {
    ctx.out_dir = *d;
  } else if (const auto d = ctx.config.out_dir()) {
    ctx.out_dir = *d;
  }

  if (simulate->parsed()) return cmd_simulate(ctx);
  if (fit_rates->parsed()) return cmd_fit_rates(ctx, input);
  if (fit_power->parsed()) return cmd_fit_power(ctx, input);
  if (fit_echo->parsed()) return cmd_fit_echo(ctx, input);
  if (fit_pol->parsed()) return cmd_fit_polarization(ctx, input);
  if (fit_noise->parsed()) return cmd_fit_noise(ctx, input);
  if (fidelity->parsed()) return cmd_charge_fidelity(ctx, histogram);
  if (optimize->parsed()) return cmd_optimize_readout(ctx);
  if (scc_noise->parsed()) return cmd_scc_noise(ctx);
  if (sensitivity->parsed()) return cmd_sensitivity(ctx);
  return kUsage;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
