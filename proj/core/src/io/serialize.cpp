#include "scc/io/serialize.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "scc/errors.hpp"
#include "scc/io/csv.hpp"

namespace scc::io {
namespace {

using nlohmann::json;

std::string dump(const json &j) { return j.dump(2) + "\n"; }

// Line and column of a byte offset, both 1-based.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(std::string_view text, const std::string &source, std::string_view type) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(source, line, col, "invalid JSON");
  }
  if (!j.is_object()) throw ParseError(source, 1, 1, "expected a JSON object");
  if (!type.empty()) {
    const auto it = j.find("type");
    if (it == j.end() || !it->is_string() || it->get<std::string>() != type) {
      throw ParseError(source, 1, 1, "expected a record with \"type\": \"" + std::string(type) + "\"");
    }
  }
  return j;
}

// Runs `body`, turning JSON type/lookup errors into ParseError.
template <class F>
auto guarded(const std::string &source, F &&body) {
  try {
    return body();
  } catch (const json::exception &e) {
    throw ParseError(source, 1, 1, std::string("malformed record: ") + e.what());
  }
}

std::string csv_text(const std::vector<std::string> &meta_lines,
                     const std::vector<std::string> &header,
                     const std::vector<std::vector<std::string>> &rows) {
  std::ostringstream out;
  for (const auto &m : meta_lines) out << "# " << m << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto &r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << "\n";
  }
  return out.str();
}

void check_text_field(const std::string &s, const char *what) {
  if (s.find_first_of("\n\r,") != std::string::npos) {
    throw InvalidArgument(std::string(what) + " may not contain commas or line breaks in CSV");
  }
}

template <class T, class Row>
std::vector<T> points_from_json(std::string_view text, const std::string &source,
                                std::string_view type, Row &&row) {
  const json j = parse_json(text, source, type);
  return guarded(source, [&] {
    std::vector<T> out;
    for (const auto &p : j.at("points")) out.push_back(row(p));
    return out;
  });
}

} // namespace

// ---- histogram --------------------------------------------------------------

std::string histogram_to_csv(const est::CountHistogram &h) {
  std::vector<std::string> meta = {"format=count_histogram", "t_R_s=" + format_double(h.t_R()),
                                   "n_windows=" + std::to_string(h.n_windows())};
  if (h.meta().power_W) meta.push_back("power_W=" + format_double(*h.meta().power_W));
  if (!h.meta().wavelength.empty()) {
    check_text_field(h.meta().wavelength, "wavelength");
    meta.push_back("wavelength=" + h.meta().wavelength);
  }
  if (!h.meta().label.empty()) {
    check_text_field(h.meta().label, "label");
    meta.push_back("label=" + h.meta().label);
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < h.counts().size(); ++n) {
    rows.push_back({std::to_string(n), std::to_string(h.counts()[n])});
  }
  return csv_text(meta, {"n", "count"}, rows);
}

est::CountHistogram histogram_from_csv(std::string_view text, const std::string &source) {
  const CsvTable t = parse_csv(text, source);
  const std::size_t cn = t.column("n"), cc = t.column("count");
  std::vector<std::uint64_t> counts;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto n = t.integer(r, cn);
    const auto c = t.integer(r, cc);
    if (n > 100'000'000ULL) {
      throw ParseError(source, t.row_lines[r], t.row_columns[r][cn], "photon number too large");
    }
    if (counts.size() <= n) counts.resize(n + 1, 0);
    if (counts[n] != 0) {
      throw ParseError(source, t.row_lines[r], t.row_columns[r][cn],
                       "duplicate bin n=" + std::to_string(n));
    }
    counts[n] = c;
  }
  est::HistogramMeta meta;
  if (t.meta.count("power_W")) meta.power_W = t.meta_number("power_W");
  if (t.meta.count("wavelength")) meta.wavelength = t.meta.at("wavelength");
  if (t.meta.count("label")) meta.label = t.meta.at("label");
  const double t_R = t.meta_number("t_R_s");
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  const std::uint64_t n_windows =
      t.meta.count("n_windows") ? static_cast<std::uint64_t>(t.meta_number("n_windows")) : total;
  try {
    return est::CountHistogram(std::move(counts), t_R, n_windows, std::move(meta));
  } catch (const InvalidArgument &e) {
    throw ParseError(source, t.header_line, 1, e.what());
  }
}

std::string histogram_to_json(const est::CountHistogram &h) {
  json j;
  j["type"] = "count_histogram";
  j["t_R_s"] = h.t_R();
  j["n_windows"] = h.n_windows();
  j["counts"] = h.counts();
  json meta = json::object();
  if (h.meta().power_W) meta["power_W"] = *h.meta().power_W;
  meta["wavelength"] = h.meta().wavelength;
  meta["label"] = h.meta().label;
  j["meta"] = meta;
  return dump(j);
}

est::CountHistogram histogram_from_json(std::string_view text, const std::string &source) {
  const json j = parse_json(text, source, "count_histogram");
  return guarded(source, [&] {
    est::HistogramMeta meta;
    if (j.contains("meta")) {
      const auto &m = j.at("meta");
      if (m.contains("power_W")) meta.power_W = m.at("power_W").get<double>();
      meta.wavelength = m.value("wavelength", "");
      meta.label = m.value("label", "");
    }
    auto counts = j.at("counts").get<std::vector<std::uint64_t>>();
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    const auto n_windows = j.value("n_windows", total);
    try {
      return est::CountHistogram(std::move(counts), j.at("t_R_s").get<double>(), n_windows,
                                 std::move(meta));
    } catch (const InvalidArgument &e) {
      throw ParseError(source, 1, 1, e.what());
    }
  });
}

// ---- fit results ------------------------------------------------------------

std::string fit_to_json(const est::FitResult &f) {
  json j;
  j["type"] = "fit_result";
  j["model"] = f.model;
  j["parameters"] = f.parameters;
  j["standard_errors"] = f.standard_errors;
  j["units"] = f.units;
  j["objective_kind"] = f.objective_kind;
  j["objective"] = f.objective;
  j["converged"] = f.converged;
  j["n_evals"] = f.n_evals;
  j["flags"] = f.flags;
  j["diagnostics"] = f.diagnostics;
  return dump(j);
}

est::FitResult fit_from_json(std::string_view text, const std::string &source) {
  const json j = parse_json(text, source, "fit_result");
  return guarded(source, [&] {
    est::FitResult f;
    f.model = j.at("model").get<std::string>();
    f.parameters = j.at("parameters").get<std::map<std::string, double>>();
    f.standard_errors = j.value("standard_errors", std::map<std::string, double>{});
    f.units = j.value("units", std::map<std::string, std::string>{});
    f.objective_kind = j.value("objective_kind", "");
    f.objective = j.value("objective", 0.0);
    f.converged = j.value("converged", false);
    f.n_evals = j.value("n_evals", std::size_t{0});
    f.flags = j.value("flags", std::set<std::string>{});
    f.diagnostics = j.value("diagnostics", std::map<std::string, double>{});
    return f;
  });
}

// ---- point series -----------------------------------------------------------

std::string saturation_points_to_csv(const std::vector<est::SaturationPoint> &p) {
  std::vector<std::vector<std::string>> rows;
  for (const auto &q : p) {
    rows.push_back({format_double(q.power_uW), format_double(q.rate), format_double(q.error)});
  }
  return csv_text({"format=saturation_points"}, {"power_uW", "rate_cps", "err_cps"}, rows);
}

std::string saturation_points_to_json(const std::vector<est::SaturationPoint> &p) {
  json j;
  j["type"] = "saturation_points";
  j["points"] = json::array();
  for (const auto &q : p) {
    j["points"].push_back({{"power_uW", q.power_uW}, {"rate_cps", q.rate}, {"err_cps", q.error}});
  }
  return dump(j);
}

std::vector<est::SaturationPoint> saturation_points_from_csv(std::string_view text,
                                                             const std::string &source) {
  const CsvTable t = parse_csv(text, source);
  const auto cp = t.column("power_uW"), cr = t.column("rate_cps"), ce = t.column("err_cps");
  std::vector<est::SaturationPoint> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back({t.number(r, cp), t.number(r, cr), t.number(r, ce)});
  }
  return out;
}

std::vector<est::SaturationPoint> saturation_points_from_json(std::string_view text,
                                                              const std::string &source) {
  return points_from_json<est::SaturationPoint>(text, source, "saturation_points", [](const json &p) {
    return est::SaturationPoint{p.at("power_uW").get<double>(), p.at("rate_cps").get<double>(),
                                p.at("err_cps").get<double>()};
  });
}

std::string echo_points_to_csv(const std::vector<est::EchoPoint> &p) {
  std::vector<std::vector<std::string>> rows;
  for (const auto &q : p) rows.push_back({format_double(q.tau), format_double(q.signal)});
  return csv_text({"format=echo_points"}, {"tau_s", "signal"}, rows);
}

std::string echo_points_to_json(const std::vector<est::EchoPoint> &p) {
  json j;
  j["type"] = "echo_points";
  j["points"] = json::array();
  for (const auto &q : p) j["points"].push_back({{"tau_s", q.tau}, {"signal", q.signal}});
  return dump(j);
}

std::vector<est::EchoPoint> echo_points_from_csv(std::string_view text, const std::string &source) {
  const CsvTable t = parse_csv(text, source);
  const auto ct = t.column("tau_s"), cs = t.column("signal");
  std::vector<est::EchoPoint> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) out.push_back({t.number(r, ct), t.number(r, cs)});
  return out;
}

std::vector<est::EchoPoint> echo_points_from_json(std::string_view text, const std::string &source) {
  return points_from_json<est::EchoPoint>(text, source, "echo_points", [](const json &p) {
    return est::EchoPoint{p.at("tau_s").get<double>(), p.at("signal").get<double>()};
  });
}

std::string noise_points_to_csv(const std::vector<est::NoisePoint> &p) {
  std::vector<std::vector<std::string>> rows;
  for (const auto &q : p) rows.push_back({format_double(q.t_R), format_double(q.sigma_R)});
  return csv_text({"format=noise_points"}, {"t_R_s", "sigma_R"}, rows);
}

std::string noise_points_to_json(const std::vector<est::NoisePoint> &p) {
  json j;
  j["type"] = "noise_points";
  j["points"] = json::array();
  for (const auto &q : p) j["points"].push_back({{"t_R_s", q.t_R}, {"sigma_R", q.sigma_R}});
  return dump(j);
}

std::vector<est::NoisePoint> noise_points_from_csv(std::string_view text, const std::string &source) {
  const CsvTable t = parse_csv(text, source);
  const auto ct = t.column("t_R_s"), cs = t.column("sigma_R");
  std::vector<est::NoisePoint> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) out.push_back({t.number(r, ct), t.number(r, cs)});
  return out;
}

std::vector<est::NoisePoint> noise_points_from_json(std::string_view text, const std::string &source) {
  return points_from_json<est::NoisePoint>(text, source, "noise_points", [](const json &p) {
    return est::NoisePoint{p.at("t_R_s").get<double>(), p.at("sigma_R").get<double>()};
  });
}

std::string decays_to_csv(const std::vector<est::DecayTrace> &d) {
  std::vector<std::vector<std::string>> rows;
  for (const auto &trace : d) {
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
      rows.push_back({format_double(trace.t_rabi), format_double(trace.times[i]),
                      format_double(trace.intensity[i])});
    }
  }
  return csv_text({"format=polarization_decays"}, {"t_rabi_s", "time_s", "intensity"}, rows);
}

std::string decays_to_json(const std::vector<est::DecayTrace> &d) {
  json j;
  j["type"] = "polarization_decays";
  j["decays"] = json::array();
  for (const auto &trace : d) {
    j["decays"].push_back(
        {{"t_rabi_s", trace.t_rabi}, {"time_s", trace.times}, {"intensity", trace.intensity}});
  }
  return dump(j);
}

std::vector<est::DecayTrace> decays_from_csv(std::string_view text, const std::string &source) {
  const CsvTable t = parse_csv(text, source);
  const auto cr = t.column("t_rabi_s"), ct = t.column("time_s"), ci = t.column("intensity");
  std::vector<est::DecayTrace> out;
  std::map<double, std::size_t> index;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double rabi = t.number(r, cr);
    auto it = index.find(rabi);
    if (it == index.end()) {
      it = index.emplace(rabi, out.size()).first;
      out.push_back({rabi, {}, {}});
    }
    out[it->second].times.push_back(t.number(r, ct));
    out[it->second].intensity.push_back(t.number(r, ci));
  }
  return out;
}

std::vector<est::DecayTrace> decays_from_json(std::string_view text, const std::string &source) {
  const json j = parse_json(text, source, "polarization_decays");
  return guarded(source, [&] {
    std::vector<est::DecayTrace> out;
    for (const auto &d : j.at("decays")) {
      out.push_back({d.at("t_rabi_s").get<double>(), d.at("time_s").get<std::vector<double>>(),
                     d.at("intensity").get<std::vector<double>>()});
    }
    return out;
  });
}

// ---- readout tables ---------------------------------------------------------

std::string readout_rows_to_csv(const std::vector<readout::ReadoutOptimum> &rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto &r : rows) {
    out.push_back({format_double(r.power_uW), std::to_string(r.n_thresh), format_double(r.t_R),
                   format_double(r.fidelity), r.boundary ? "1" : "0"});
  }
  return csv_text({"format=readout_table"}, {"power_uW", "n_thresh", "t_R_s", "F_C", "boundary"},
                  out);
}

std::vector<readout::ReadoutOptimum> readout_rows_from_csv(std::string_view text,
                                                           const std::string &source) {
  const CsvTable t = parse_csv(text, source);
  const auto cp = t.column("power_uW"), cn = t.column("n_thresh"), ct = t.column("t_R_s"),
             cf = t.column("F_C");
  const bool has_boundary = t.has_column("boundary");
  const auto cb = has_boundary ? t.column("boundary") : 0;
  std::vector<readout::ReadoutOptimum> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back({t.number(r, cp), static_cast<std::size_t>(t.integer(r, cn)), t.number(r, ct),
                   t.number(r, cf), has_boundary && t.integer(r, cb) != 0});
  }
  return out;
}

namespace {

json rows_json(const std::vector<readout::ReadoutOptimum> &rows) {
  json a = json::array();
  for (const auto &r : rows) {
    a.push_back({{"power_uW", r.power_uW},
                 {"n_thresh", r.n_thresh},
                 {"t_R_s", r.t_R},
                 {"F_C", r.fidelity},
                 {"boundary", r.boundary}});
  }
  return a;
}

std::vector<readout::ReadoutOptimum> rows_from(const json &a) {
  std::vector<readout::ReadoutOptimum> out;
  for (const auto &r : a) {
    out.push_back({r.at("power_uW").get<double>(), r.at("n_thresh").get<std::size_t>(),
                   r.at("t_R_s").get<double>(), r.at("F_C").get<double>(),
                   r.value("boundary", false)});
  }
  return out;
}

} // namespace

std::string readout_table_to_json(const readout::ReadoutTable &table) {
  json j;
  j["type"] = "readout_table";
  j["rows"] = rows_json(table.rows);
  j["pareto"] = rows_json(table.pareto);
  return dump(j);
}

readout::ReadoutTable readout_table_from_json(std::string_view text, const std::string &source) {
  const json j = parse_json(text, source, "readout_table");
  return guarded(source, [&] {
    readout::ReadoutTable t;
    t.rows = rows_from(j.at("rows"));
    t.pareto = rows_from(j.at("pareto"));
    return t;
  });
}

// ---- sensitivity curves -----------------------------------------------------

std::string sensitivity_to_csv(const std::vector<mag::CurveRow> &rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto &r : rows) {
    check_text_field(r.scheme, "scheme name");
    out.push_back({format_double(r.tau), format_double(r.t_R_opt), format_double(r.eta), r.scheme});
  }
  return csv_text({"format=sensitivity_curve", "eta_unit=T/sqrt(Hz)"},
                  {"tau_s", "t_R_opt_s", "eta_T_per_sqrtHz", "scheme"}, out);
}

std::string sensitivity_to_json(const std::vector<mag::CurveRow> &rows) {
  json j;
  j["type"] = "sensitivity_curve";
  j["rows"] = json::array();
  for (const auto &r : rows) {
    j["rows"].push_back({{"tau_s", r.tau},
                         {"t_R_opt_s", r.t_R_opt},
                         {"eta_T_per_sqrtHz", r.eta},
                         {"scheme", r.scheme}});
  }
  return dump(j);
}

std::vector<mag::CurveRow> sensitivity_from_csv(std::string_view text, const std::string &source) {
  const CsvTable t = parse_csv(text, source);
  const auto ct = t.column("tau_s"), cr = t.column("t_R_opt_s"), ce = t.column("eta_T_per_sqrtHz"),
             cs = t.column("scheme");
  std::vector<mag::CurveRow> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back({t.number(r, ct), t.number(r, cr), t.number(r, ce), t.text(r, cs)});
  }
  return out;
}

std::vector<mag::CurveRow> sensitivity_from_json(std::string_view text, const std::string &source) {
  const json j = parse_json(text, source, "sensitivity_curve");
  return guarded(source, [&] {
    std::vector<mag::CurveRow> out;
    for (const auto &r : j.at("rows")) {
      out.push_back({r.at("tau_s").get<double>(), r.at("t_R_opt_s").get<double>(),
                     r.at("eta_T_per_sqrtHz").get<double>(), r.at("scheme").get<std::string>()});
    }
    return out;
  });
}

std::string series_to_csv(const std::vector<std::string> &columns,
                          const std::vector<std::vector<double>> &rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto &r : rows) {
    std::vector<std::string> f;
    for (const double v : r) f.push_back(format_double(v));
    out.push_back(std::move(f));
  }
  return csv_text({}, columns, out);
}

} // namespace scc::io
