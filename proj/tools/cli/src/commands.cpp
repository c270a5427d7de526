#include "scc/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include <json.hpp>

#include "scc/ctmc/photon_statistics.hpp"
#include "scc/ctmc/telegraph.hpp"
#include "scc/errors.hpp"
#include "scc/estimators/noise_curve.hpp"
#include "scc/estimators/polarization.hpp"
#include "scc/estimators/rate_fit.hpp"
#include "scc/estimators/saturation.hpp"
#include "scc/estimators/spin_echo.hpp"
#include "scc/io/csv.hpp"
#include "scc/io/serialize.hpp"
#include "scc/magnetometry/sensitivity.hpp"
#include "scc/readout/noise.hpp"
#include "scc/readout/optimize_readout.hpp"
#include "scc/readout/policy.hpp"

namespace scc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kMicro = 1e-6;

bool has_extension(const std::string &path, std::string_view ext) {
  return fs::path(path).extension() == ext;
}

std::string read_input(Context &ctx, const std::string &path) {
  ctx.inputs.emplace_back(path);
  return io::read_text_file(path);
}

void write_output(Context &ctx, const std::string &name, const std::string &content) {
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + ctx.out_dir.string() + ": " + ec.message());
  const fs::path target = ctx.out_dir / name;
  for (const auto &in : ctx.inputs) {
    if (fs::exists(target) && fs::equivalent(target, in, ec)) {
      throw IoError("refusing to overwrite input file " + in.string());
    }
  }
  io::write_text_file(target.string(), content);
  *ctx.out << "wrote " << target.string() << "\n";
}

std::string json_text(const json &j) { return j.dump(2) + "\n"; }

// --- shared config blocks ---------------------------------------------------

ctmc::RateSet parse_rates(const ConfigNode &node) {
  node.allow_only({"g0", "g1", "gamma0", "gamma1"});
  ctmc::RateSet r{node.quantity("g0", Dimension::rate), node.quantity("g1", Dimension::rate),
                  node.quantity("gamma0", Dimension::rate), node.quantity("gamma1", Dimension::rate)};
  try {
    r.validate();
  } catch (const InvalidArgument &e) {
    throw ConfigError(node.path(), e.what());
  }
  return r;
}

est::SaturationModel parse_law(const ConfigNode &node) {
  node.allow_only({"kind", "a", "P_sat", "dc"});
  est::SaturationModel m;
  try {
    m.kind = est::parse_saturation_kind(node.string_or("kind", "linear_sat"));
  } catch (const Error &e) {
    throw ConfigError(node.field("kind"), e.what());
  }
  const bool quadratic = m.kind == est::SaturationModel::Kind::quadratic_sat;
  const double a_si = node.quantity("a", quadratic ? Dimension::rate_per_power2 : Dimension::rate_per_power);
  m.a = a_si * (quadratic ? kMicro * kMicro : kMicro);
  m.P_sat = node.quantity("P_sat", Dimension::power) / kMicro;
  m.dc = node.quantity_or("dc", Dimension::rate, 0.0);
  try {
    m.validate();
  } catch (const InvalidArgument &e) {
    throw ConfigError(node.path(), e.what());
  }
  return m;
}

readout::RateLaws parse_laws(const ConfigNode &parent) {
  if (!parent.has("rate_laws")) return readout::RateLaws::published();
  const auto node = parent.child("rate_laws");
  node.allow_only({"g0", "g1", "gamma0", "gamma1"});
  return {parse_law(node.child("g0")), parse_law(node.child("g1")), parse_law(node.child("gamma0")),
          parse_law(node.child("gamma1"))};
}

/// Rates given directly ("rates") or from the saturation laws at "power".
ctmc::RateSet rates_from_block(const ConfigNode &block, std::optional<double> *power_uW = nullptr) {
  if (block.has("rates")) {
    if (block.has("power")) throw ConfigError(block.field("power"), "give either rates or power, not both");
    return parse_rates(block.child("rates"));
  }
  if (!block.has("power")) throw ConfigError(block.field("rates"), "required: rates or power");
  const double p = block.quantity("power", Dimension::power) / kMicro;
  if (!(p > 0.0)) throw ConfigError(block.field("power"), "must be > 0");
  if (power_uW) *power_uW = p;
  return parse_laws(block).at(p);
}

readout::Prior parse_prior(const ConfigNode &block) {
  const auto s = block.string_or("prior", "balanced");
  if (s == "balanced") return readout::Prior::balanced;
  if (s == "steady_state") return readout::Prior::steady_state;
  throw ConfigError(block.field("prior"), "expected \"balanced\" or \"steady_state\"");
}

est::InitialMixture parse_initial(const ConfigNode &block) {
  if (!block.has("initial")) return est::InitialMixture::stationary();
  if (block.is_string("initial")) {
    const auto s = block.string_or("initial", "");
    if (s == "steady_state") return est::InitialMixture::stationary();
    try {
      const auto state = ctmc::parse_charge_state(s);
      return est::InitialMixture::fixed(state == ctmc::ChargeState::NVminus ? 1.0 : 0.0);
    } catch (const Error &) {
      throw ConfigError(block.field("initial"), "expected \"steady_state\", a charge state or a probability");
    }
  }
  const double p = block.number("initial");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(block.field("initial"), "probability must lie in [0, 1]");
  return est::InitialMixture::fixed(p);
}

int finish_fit(Context &ctx, const std::string &stem, const est::FitResult &fit,
               const std::string &curve_csv) {
  write_output(ctx, stem + ".json", io::fit_to_json(fit));
  write_output(ctx, stem + "_curve.csv", curve_csv);
  for (const auto &[name, value] : fit.parameters) {
    *ctx.out << "  " << name << " = " << io::format_double(value);
    if (const auto se = fit.error(name)) *ctx.out << " +- " << io::format_double(*se);
    *ctx.out << "\n";
  }
  for (const auto &flag : fit.flags) *ctx.err << "warning: fit flag " << flag << "\n";
  if (!fit.converged) {
    *ctx.err << "error: " << fit.model << " fit did not converge after " << fit.n_evals
             << " evaluations (objective " << io::format_double(fit.objective) << ")\n";
    return kNonConvergence;
  }
  return kOk;
}

est::CountHistogram read_histogram(Context &ctx, const std::string &path) {
  const auto text = read_input(ctx, path);
  return has_extension(path, ".json") ? io::histogram_from_json(text, path)
                                      : io::histogram_from_csv(text, path);
}

} // namespace

// --- simulate -----------------------------------------------------------------

int cmd_simulate(Context &ctx) {
  const auto block = ctx.config.block("simulate");
  block.allow_only({"rates", "power", "rate_laws", "t_R", "n_windows", "initial", "label",
                    "wavelength", "threads"});
  std::optional<double> power_uW;
  const auto rates = rates_from_block(block, &power_uW);
  const double t_R = block.quantity("t_R", Dimension::time);
  if (!(t_R > 0.0)) throw ConfigError(block.field("t_R"), "must be > 0");
  const auto n_windows = block.integer_or("n_windows", 100000);
  const auto initial = parse_initial(block);
  const double p_minus = initial.weight(rates);
  const auto threads = static_cast<unsigned>(block.integer_or("threads", 0));

  if (n_windows == 0) *ctx.err << "warning: n_windows = 0, writing an empty histogram\n";
  const auto sample = ctmc::sample_windows(rates, t_R, p_minus, n_windows, ctx.seed, threads);

  est::HistogramMeta meta;
  if (power_uW) meta.power_W = *power_uW * kMicro;
  meta.label = block.string_or("label", "");
  meta.wavelength = block.string_or("wavelength", "");
  const est::CountHistogram hist(sample.counts, t_R, sample.windows, meta);
  write_output(ctx, "histogram.csv", io::histogram_to_csv(hist));
  write_output(ctx, "histogram.json", io::histogram_to_json(hist));

  const auto frac = [&](std::uint64_t k) {
    return sample.windows ? static_cast<double>(k) / static_cast<double>(sample.windows) : 0.0;
  };
  const json summary = {{"type", "simulate_summary"},
                        {"seed", ctx.seed},
                        {"n_windows", sample.windows},
                        {"t_R_s", t_R},
                        {"p_minus_initial", p_minus},
                        {"rates", {{"g0", rates.g0}, {"g1", rates.g1}, {"gamma0", rates.gamma0}, {"gamma1", rates.gamma1}}},
                        {"mean_photons", sample.mean_photons()},
                        {"fraction_started_in_minus", frac(sample.started_in_minus)},
                        {"fraction_ended_in_minus", sample.fraction_ended_in_minus()},
                        {"fraction_ended_in_zero", sample.windows ? 1.0 - sample.fraction_ended_in_minus() : 0.0}};
  write_output(ctx, "simulate_summary.json", json_text(summary));
  *ctx.out << "  mean photons " << io::format_double(sample.mean_photons()) << ", ended in NV- "
           << io::format_double(sample.fraction_ended_in_minus()) << "\n";
  return kOk;
}

// --- fits ---------------------------------------------------------------------

int cmd_fit_rates(Context &ctx, const std::string &histogram_path) {
  const auto block = ctx.config.block("fit_rates");
  block.allow_only({"initial", "max_evals", "n_starts"});
  const auto mixture = parse_initial(block);
  est::RateFitOptions opts;
  opts.max_evals = block.integer_or("max_evals", opts.max_evals);
  opts.n_starts = block.integer_or("n_starts", opts.n_starts);

  const auto hist = read_histogram(ctx, histogram_path);
  if (hist.empty()) throw InvalidArgument(histogram_path + ": histogram has no windows");
  const auto fit = est::fit_rates_mle(hist, mixture, opts);

  // Observed counts against the fitted mixture and its two components.
  const auto rates = est::rates_from(fit);
  const double p = mixture.weight(rates);
  const auto c = ctmc::conditional_pmfs(rates, hist.t_R(), hist.max_occupied(), 1e-10);
  const auto N = static_cast<double>(hist.n_windows());
  std::vector<std::vector<double>> rows;
  for (std::size_t n = 0; n < c.from_minus.size(); ++n) {
    const double em = N * p * c.from_minus[n], ez = N * (1.0 - p) * c.from_zero[n];
    rows.push_back({static_cast<double>(n), static_cast<double>(hist[n]), em + ez, em, ez});
  }
  return finish_fit(ctx, "fit_rates", fit,
                    io::series_to_csv({"n", "observed", "expected", "expected_from_minus", "expected_from_zero"}, rows));
}

int cmd_fit_power(Context &ctx, const std::string &points_path) {
  const auto block = ctx.config.block("fit_power");
  block.allow_only({"kind", "fixed_dc", "fixed_P_sat"});
  est::SaturationModel::Kind kind{};
  try {
    kind = est::parse_saturation_kind(block.string_or("kind", "linear_sat"));
  } catch (const Error &e) {
    throw ConfigError(block.field("kind"), e.what());
  }
  est::SaturationFitOptions opts;
  opts.fixed_dc = block.optional_quantity("fixed_dc", Dimension::rate);
  if (const auto p = block.optional_quantity("fixed_P_sat", Dimension::power)) opts.fixed_P_sat = *p / kMicro;

  const auto text = read_input(ctx, points_path);
  const auto points = has_extension(points_path, ".json") ? io::saturation_points_from_json(text, points_path)
                                                          : io::saturation_points_from_csv(text, points_path);
  const auto fit = est::fit_saturation(points, kind, opts);
  const auto model = est::saturation_from(fit);
  std::vector<std::vector<double>> rows;
  for (const auto &pt : points) rows.push_back({pt.power_uW, pt.rate, pt.error, model(pt.power_uW)});
  return finish_fit(ctx, "fit_power", fit, io::series_to_csv({"power_uW", "rate_cps", "err_cps", "model_cps"}, rows));
}

int cmd_fit_echo(Context &ctx, const std::string &points_path) {
  const auto block = ctx.config.block("fit_echo");
  block.allow_only({"revival_starts", "max_iterations"});
  est::EchoFitOptions opts;
  opts.revival_starts = block.integer_or("revival_starts", opts.revival_starts);
  opts.max_iterations = block.integer_or("max_iterations", opts.max_iterations);

  const auto text = read_input(ctx, points_path);
  const auto points = has_extension(points_path, ".json") ? io::echo_points_from_json(text, points_path)
                                                          : io::echo_points_from_csv(text, points_path);
  const auto fit = est::fit_spin_echo(points, opts);
  std::vector<std::vector<double>> rows;
  if (fit.has_flag("envelope_unidentifiable")) {
    for (const auto &pt : points) rows.push_back({pt.tau, pt.signal, fit.at("A")});
  } else {
    const auto model = est::echo_model_from(fit);
    for (const auto &pt : points) rows.push_back({pt.tau, pt.signal, model(pt.tau)});
  }
  return finish_fit(ctx, "fit_echo", fit, io::series_to_csv({"tau_s", "signal", "model"}, rows));
}

int cmd_fit_polarization(Context &ctx, const std::string &decays_path) {
  const auto block = ctx.config.block("fit_polarization");
  block.allow_only({"tau0", "tau1", "sigma_initial", "omega_grid"});
  est::PolarizationOptions opts;
  opts.tau0 = block.quantity_or("tau0", Dimension::time, opts.tau0);
  opts.tau1 = block.quantity_or("tau1", Dimension::time, opts.tau1);
  opts.sigma_initial = block.quantity_or("sigma_initial", Dimension::time, opts.sigma_initial);
  opts.omega_grid = block.integer_or("omega_grid", opts.omega_grid);

  const auto text = read_input(ctx, decays_path);
  const auto decays = has_extension(decays_path, ".json") ? io::decays_from_json(text, decays_path)
                                                          : io::decays_from_csv(text, decays_path);
  const auto fit = est::fit_polarization(decays, opts);
  const double a = fit.at("a"), omega = fit.parameters.count("omega") ? fit.at("omega") : 0.0;
  const double c = fit.at("c");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < decays.size(); ++i) {
    const double t = decays[i].t_rabi;
    rows.push_back({t, fit.at("p0_" + std::to_string(i)), a * std::cos(omega * t) + c});
  }
  return finish_fit(ctx, "fit_polarization", fit, io::series_to_csv({"t_rabi_s", "p0", "model"}, rows));
}

int cmd_fit_noise(Context &ctx, const std::string &points_path) {
  ctx.config.block("fit_noise").allow_only({});
  const auto text = read_input(ctx, points_path);
  const auto points = has_extension(points_path, ".json") ? io::noise_points_from_json(text, points_path)
                                                          : io::noise_points_from_csv(text, points_path);
  const auto fit = est::fit_noise_curve(points);
  const auto curve = est::noise_curve_from(fit);
  std::vector<std::vector<double>> rows;
  for (const auto &pt : points) rows.push_back({pt.t_R, pt.sigma_R, curve(pt.t_R)});
  return finish_fit(ctx, "fit_noise", fit, io::series_to_csv({"t_R_s", "sigma_R", "model"}, rows));
}

// --- readout ----------------------------------------------------------------

int cmd_charge_fidelity(Context &ctx, const std::optional<std::string> &histogram_path) {
  const auto block = ctx.config.block("charge_fidelity");
  block.allow_only({"rates", "power", "rate_laws", "t_R", "n_thresh", "prior"});
  std::optional<double> power_uW;
  const auto rates = rates_from_block(block, &power_uW);
  std::optional<est::CountHistogram> hist;
  if (histogram_path) hist = read_histogram(ctx, *histogram_path);
  const double t_R = hist ? hist->t_R() : block.quantity("t_R", Dimension::time);
  const auto n_thresh = block.integer_or("n_thresh", 1);
  const readout::ReadoutPolicy policy{t_R, n_thresh, power_uW};
  try {
    policy.validate();
  } catch (const InvalidArgument &e) {
    throw ConfigError(block.path(), e.what());
  }
  const auto prior = parse_prior(block);
  const auto probs = readout::assignment_probs(rates, policy);
  const double prior_minus =
      prior == readout::Prior::balanced ? 0.5 : ctmc::steady_state(rates).p_minus;
  json out = {{"type", "charge_fidelity"},
              {"t_R_s", t_R},
              {"n_thresh", n_thresh},
              {"prior", prior == readout::Prior::balanced ? "balanced" : "steady_state"},
              {"F_C", readout::charge_fidelity(probs, prior_minus)},
              {"P_assign_minus_given_minus", probs.from_minus},
              {"P_assign_minus_given_zero", probs.from_zero},
              {"F_C_best_rule", readout::best_rule_fidelity(rates, policy)}};
  if (hist) {
    const auto fit = est::fit_charge_mixture(*hist, rates);
    out["p_minus"] = fit.at("p_minus");
    if (const auto se = fit.error("p_minus")) out["p_minus_se"] = *se;
    out["p_minus_boundary"] = fit.has_flag("boundary");
  }
  write_output(ctx, "charge_fidelity.json", json_text(out));
  *ctx.out << "  F_C = " << io::format_double(out["F_C"].get<double>()) << "\n";
  return kOk;
}

int cmd_optimize_readout(Context &ctx) {
  const auto block = ctx.config.block("optimize_readout");
  block.allow_only({"rate_laws", "powers", "thresholds", "t_min", "t_max", "prior", "envelope_times",
                    "scan_points"});
  const auto laws = parse_laws(block);
  std::vector<double> powers;
  if (block.has("powers")) {
    for (const double p : block.quantity_list("powers", Dimension::power)) powers.push_back(p / kMicro);
  } else {
    for (int i = 0; i < 12; ++i) powers.push_back(0.875 * std::pow(14.5 / 0.875, i / 11.0));
  }
  std::vector<std::size_t> thresholds{1, 2, 3};
  if (block.has("thresholds")) {
    thresholds.clear();
    for (const auto n : block.integer_list("thresholds")) {
      if (n < 1) throw ConfigError(block.field("thresholds"), "thresholds must be >= 1");
      thresholds.push_back(n);
    }
  }
  if (powers.empty() || thresholds.empty()) {
    throw ConfigError(block.path(), "powers and thresholds must be non-empty");
  }
  readout::ReadoutSearch search;
  search.t_min = block.quantity_or("t_min", Dimension::time, search.t_min);
  search.t_max = block.quantity_or("t_max", Dimension::time, search.t_max);
  search.scan_points = block.integer_or("scan_points", search.scan_points);
  search.prior = parse_prior(block);

  const auto table = readout::optimize_readout(laws, powers, thresholds, search);
  if (ctx.format == OutputFormat::json) {
    write_output(ctx, "readout_table.json", io::readout_table_to_json(table));
  } else {
    write_output(ctx, "readout_table.csv", io::readout_rows_to_csv(table.rows));
    write_output(ctx, "readout_pareto.csv", io::readout_rows_to_csv(table.pareto));
  }

  if (block.has("envelope_times") || powers.size() > 1) {
    const auto times = block.has("envelope_times") ? block.quantity_list("envelope_times", Dimension::time)
                                                   : std::vector<double>{1e-6, 3e-6, 1e-5, 3e-5, 1e-4, 3e-4,
                                                                         1e-3, 3e-3, 1e-2};
    const double p_lo = *std::min_element(powers.begin(), powers.end());
    const double p_hi = *std::max_element(powers.begin(), powers.end());
    if (p_hi > p_lo) {
      const auto env = readout::fidelity_envelope(laws, times, p_lo, p_hi, thresholds, search);
      std::vector<std::vector<double>> rows;
      for (const auto &e : env) {
        rows.push_back({e.t_R, e.fidelity_at, e.power_uW, static_cast<double>(e.n_thresh),
                        e.fidelity_env, e.env_t_R, e.env_power_uW, static_cast<double>(e.env_n_thresh)});
      }
      write_output(ctx, "readout_envelope.csv",
                   io::series_to_csv({"t_R_s", "F_C_at", "power_uW_at", "n_thresh_at", "F_C_envelope",
                                      "t_R_envelope_s", "power_uW_envelope", "n_thresh_envelope"},
                                     rows));
    }
  }
  if (!table.pareto.empty()) {
    const auto &top = table.pareto.back();
    *ctx.out << "  best F_C " << io::format_double(top.fidelity) << " at t_R "
             << io::format_double(top.t_R) << " s, " << io::format_double(top.power_uW)
             << " uW, n_thresh " << top.n_thresh << "\n";
  }
  return kOk;
}

int cmd_scc_noise(Context &ctx) {
  const auto block = ctx.config.block("scc_noise");
  block.allow_only({"beta0_tilde", "beta1_tilde", "beta0", "beta1", "rates", "power", "rate_laws",
                    "t_R", "n_thresh", "alpha0", "alpha1"});
  double b0 = 0.162, b1 = 0.504;
  json out = {{"type", "scc_noise"}};
  if (block.has("beta0") || block.has("beta1")) {
    // True populations pushed through a finite-fidelity threshold readout.
    const double beta0 = block.number("beta0"), beta1 = block.number("beta1");
    const auto rates = rates_from_block(block);
    const readout::ReadoutPolicy policy{block.quantity("t_R", Dimension::time), block.integer_or("n_thresh", 1), {}};
    const auto probs = readout::assignment_probs(rates, policy);
    b0 = readout::effective_beta(beta0, probs);
    b1 = readout::effective_beta(beta1, probs);
    out["beta0"] = beta0;
    out["beta1"] = beta1;
  } else {
    b0 = block.number_or("beta0_tilde", b0);
    b1 = block.number_or("beta1_tilde", b1);
  }
  const readout::SCCPopulations pops = readout::SCCPopulations::assigned(b0, b1);
  pops.validate();
  out["beta0_tilde"] = b0;
  out["beta1_tilde"] = b1;
  out["sigma_R_scc"] = readout::scc_noise(pops);
  if (block.has("alpha0") || block.has("alpha1")) {
    out["alpha0"] = block.number("alpha0");
    out["alpha1"] = block.number("alpha1");
    out["sigma_R_conventional"] =
        readout::conventional_noise(out["alpha0"].get<double>(), out["alpha1"].get<double>());
  }
  write_output(ctx, "scc_noise.json", json_text(out));
  *ctx.out << "  sigma_R = " << io::format_double(out["sigma_R_scc"].get<double>()) << "\n";
  return kOk;
}

// --- magnetometry -----------------------------------------------------------

int cmd_sensitivity(Context &ctx) {
  const auto block = ctx.config.block("sensitivity");
  block.allow_only({"noise_curve", "noise_fit", "sigma_R", "t_I", "t_R", "taus", "schemes", "t_R_min",
                    "t_R_max", "g_factor"});
  mag::SensitivityBudget budget;
  if (block.has("sigma_R")) {
    if (block.has("noise_curve") || block.has("noise_fit")) {
      throw ConfigError(block.field("sigma_R"), "give either sigma_R or a noise curve, not both");
    }
    budget.sigma_R = block.number("sigma_R");
    if (!(budget.sigma_R >= 1.0)) throw ConfigError(block.field("sigma_R"), "must be >= 1");
  } else if (block.has("noise_fit")) {
    const auto path = block.string_or("noise_fit", "");
    budget.noise_curve = est::noise_curve_from(io::fit_from_json(read_input(ctx, path), path));
  } else {
    const auto nc = block.child("noise_curve");
    nc.allow_only({"a", "b"});
    budget.noise_curve = est::NoiseCurve{nc.number_or("a", 7.54), nc.number_or("b", 0.146)};
  }
  budget.t_I = block.quantity_or("t_I", Dimension::time, 6.5e-6);
  budget.t_R = block.quantity_or("t_R", Dimension::time, 0.0);
  budget.constants.g_factor = block.number_or("g_factor", budget.constants.g_factor);
  mag::ReadoutBracket bracket;
  bracket.t_min = block.quantity_or("t_R_min", Dimension::time, bracket.t_min);
  bracket.t_max = block.quantity_or("t_R_max", Dimension::time, bracket.t_max);
  if (!(bracket.t_min > 0.0) || !(bracket.t_max > bracket.t_min)) {
    throw ConfigError(block.path(), "need 0 < t_R_min < t_R_max");
  }

  const std::vector<double> taus =
      block.has("taus") ? block.quantity_list("taus", Dimension::time)
                        : std::vector<double>{10e-6, 20e-6, 50e-6, 100e-6, 200e-6, 500e-6, 1e-3, 2e-3, 5e-3};
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0)) throw ConfigError(block.field("taus") + "[" + std::to_string(i) + "]", "must be > 0");
  }
  std::vector<mag::ConventionalScheme> schemes{mag::ConventionalScheme::nanobeam(),
                                               mag::ConventionalScheme::bulk()};
  if (block.has("schemes")) {
    // {"name": {"sigma_R": 10.6, "t_I": "1 us", "t_R": "200 ns"}, ...}
    schemes.clear();
    const auto list = block.child("schemes");
    for (const auto &name : list.keys()) {
      const auto s = list.child(name);
      s.allow_only({"sigma_R", "t_I", "t_R"});
      mag::ConventionalScheme scheme{name, s.number("sigma_R"), s.quantity("t_I", Dimension::time),
                                     s.quantity("t_R", Dimension::time)};
      if (!(scheme.sigma_R >= 1.0)) throw ConfigError(s.field("sigma_R"), "must be >= 1");
      schemes.push_back(std::move(scheme));
    }
  }
  const auto rows = mag::sensitivity_curve(budget, taus, schemes, bracket);
  if (ctx.format == OutputFormat::json) {
    write_output(ctx, "sensitivity.json", io::sensitivity_to_json(rows));
  } else {
    write_output(ctx, "sensitivity.csv", io::sensitivity_to_csv(rows));
  }
  for (const auto &r : rows) {
    if (r.scheme == "scc" && (r.tau == 200e-6 || r.tau == 2e-3)) {
      *ctx.out << "  eta(" << io::format_double(r.tau) << " s) = " << io::format_double(r.eta)
               << " T/sqrt(Hz)\n";
    }
  }
  return kOk;
}

int exit_code_for(const std::exception &e) noexcept {
  if (dynamic_cast<const ConfigError *>(&e)) return kConfig;
  if (const auto *err = dynamic_cast<const Error *>(&e)) {
    switch (err->kind()) {
    case Error::Kind::InvalidArgument: return kConfig;
    case Error::Kind::Parse: return kParse;
    case Error::Kind::NonConvergence: return kNonConvergence;
    case Error::Kind::Numerical: return kNumerical;
    case Error::Kind::Io: return kIo;
    }
  }
  if (dynamic_cast<const fs::filesystem_error *>(&e)) return kIo;
  return kNumerical;
}

} // namespace scc::cli
