#pragma once

#include <string>
#include <vector>

#include "scc/estimators/fit_result.hpp"
#include "scc/estimators/histogram.hpp"
#include "scc/estimators/noise_curve.hpp"
#include "scc/estimators/polarization.hpp"
#include "scc/estimators/saturation.hpp"
#include "scc/estimators/spin_echo.hpp"
#include "scc/magnetometry/sensitivity.hpp"
#include "scc/readout/optimize_readout.hpp"

namespace scc::io {

// Every writer below has a reader that restores the same value.
// CSV layouts (header comments carry scalars and units):
//   histogram     # t_R_s, n_windows, [power_W, wavelength, label]; n,count
//                 (bins absent from the file are zero)
//   saturation    power_uW,rate_cps,err_cps
//   echo          tau_s,signal
//   noise         t_R_s,sigma_R
//   polarization  t_rabi_s,time_s,intensity (one row per bin)
//   readout       power_uW,n_thresh,t_R_s,F_C,boundary (boundary optional on input)
//   sensitivity   tau_s,t_R_opt_s,eta_T_per_sqrtHz,scheme
// JSON records carry a "type" field naming the layout.

[[nodiscard]] std::string histogram_to_csv(const est::CountHistogram &h);
[[nodiscard]] std::string histogram_to_json(const est::CountHistogram &h);
[[nodiscard]] est::CountHistogram histogram_from_csv(std::string_view text,
                                                     const std::string &source = "<input>");
[[nodiscard]] est::CountHistogram histogram_from_json(std::string_view text,
                                                      const std::string &source = "<input>");

[[nodiscard]] std::string fit_to_json(const est::FitResult &fit);
[[nodiscard]] est::FitResult fit_from_json(std::string_view text,
                                           const std::string &source = "<input>");

[[nodiscard]] std::string saturation_points_to_csv(const std::vector<est::SaturationPoint> &p);
[[nodiscard]] std::string saturation_points_to_json(const std::vector<est::SaturationPoint> &p);
[[nodiscard]] std::vector<est::SaturationPoint> saturation_points_from_csv(
    std::string_view text, const std::string &source = "<input>");
[[nodiscard]] std::vector<est::SaturationPoint> saturation_points_from_json(
    std::string_view text, const std::string &source = "<input>");

[[nodiscard]] std::string echo_points_to_csv(const std::vector<est::EchoPoint> &p);
[[nodiscard]] std::string echo_points_to_json(const std::vector<est::EchoPoint> &p);
[[nodiscard]] std::vector<est::EchoPoint> echo_points_from_csv(std::string_view text,
                                                               const std::string &source = "<input>");
[[nodiscard]] std::vector<est::EchoPoint> echo_points_from_json(std::string_view text,
                                                                const std::string &source = "<input>");

[[nodiscard]] std::string noise_points_to_csv(const std::vector<est::NoisePoint> &p);
[[nodiscard]] std::string noise_points_to_json(const std::vector<est::NoisePoint> &p);
[[nodiscard]] std::vector<est::NoisePoint> noise_points_from_csv(std::string_view text,
                                                                 const std::string &source = "<input>");
[[nodiscard]] std::vector<est::NoisePoint> noise_points_from_json(std::string_view text,
                                                                  const std::string &source = "<input>");

[[nodiscard]] std::string decays_to_csv(const std::vector<est::DecayTrace> &d);
[[nodiscard]] std::string decays_to_json(const std::vector<est::DecayTrace> &d);
/// Rows sharing a t_rabi_s value form one trace, in order of first appearance.
[[nodiscard]] std::vector<est::DecayTrace> decays_from_csv(std::string_view text,
                                                           const std::string &source = "<input>");
[[nodiscard]] std::vector<est::DecayTrace> decays_from_json(std::string_view text,
                                                            const std::string &source = "<input>");

[[nodiscard]] std::string readout_rows_to_csv(const std::vector<readout::ReadoutOptimum> &rows);
[[nodiscard]] std::vector<readout::ReadoutOptimum> readout_rows_from_csv(
    std::string_view text, const std::string &source = "<input>");
[[nodiscard]] std::string readout_table_to_json(const readout::ReadoutTable &table);
[[nodiscard]] readout::ReadoutTable readout_table_from_json(std::string_view text,
                                                            const std::string &source = "<input>");

[[nodiscard]] std::string sensitivity_to_csv(const std::vector<mag::CurveRow> &rows);
[[nodiscard]] std::string sensitivity_to_json(const std::vector<mag::CurveRow> &rows);
[[nodiscard]] std::vector<mag::CurveRow> sensitivity_from_csv(std::string_view text,
                                                              const std::string &source = "<input>");
[[nodiscard]] std::vector<mag::CurveRow> sensitivity_from_json(std::string_view text,
                                                               const std::string &source = "<input>");

/// Plain numeric series for model-vs-data overlays.
[[nodiscard]] std::string series_to_csv(const std::vector<std::string> &columns,
                                        const std::vector<std::vector<double>> &rows);

} // namespace scc::io
