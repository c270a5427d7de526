#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "fixtures.hpp"
#include "scc/errors.hpp"
#include "scc/io/csv.hpp"
#include "scc/io/serialize.hpp"

namespace {

using scc::est::CountHistogram;

TEST(Csv, CommentsMetaAndPositions) {
  const auto t = scc::io::parse_csv("# t_R_s=0.001\n# note\nn,count\n\n0,5\n1, 7\n", "h.csv");
  EXPECT_EQ(t.meta.at("t_R_s"), "0.001");
  EXPECT_EQ(t.header_line, 3u);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.row_lines[1], 6u);
  EXPECT_EQ(t.integer(1, t.column("count")), 7u);
  EXPECT_DOUBLE_EQ(t.meta_number("t_R_s"), 1e-3);
}

TEST(Csv, MalformedRowNamesLine) {
  try {
    (void)scc::io::parse_csv("n,count\n0,5\n1,2,3\n", "bad.csv");
    FAIL();
  } catch (const scc::ParseError &e) {
    EXPECT_EQ(e.file(), "bad.csv");
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Csv, BadNumberNamesLineAndColumn) {
  const auto t = scc::io::parse_csv("n,count\n0,5\n1,x7\n", "bad.csv");
  try {
    (void)t.integer(1, 1);
    FAIL();
  } catch (const scc::ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.csv:3:3"), std::string::npos);
  }
}

TEST(Csv, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) {
    EXPECT_EQ(std::stod(scc::io::format_double(x)), x);
  }
}

TEST(HistogramIo, RoundTripCsvAndJson) {
  scc::est::HistogramMeta meta{2.5e-7, "594nm", "run a"};
  const CountHistogram h({4, 0, 9, 1}, 8e-3, 14, meta);
  EXPECT_EQ(scc::io::histogram_from_csv(scc::io::histogram_to_csv(h)), h);
  EXPECT_EQ(scc::io::histogram_from_json(scc::io::histogram_to_json(h)), h);
}

TEST(HistogramIo, OmittedBinsAreZero) {
  const auto h = scc::io::histogram_from_csv("# t_R_s=1e-3\n# n_windows=5\nn,count\n0,2\n3,3\n");
  EXPECT_EQ(h.counts(), (std::vector<std::uint64_t>{2, 0, 0, 3}));
}

TEST(HistogramIo, WrongTotalIsRejected) {
  EXPECT_THROW((void)scc::io::histogram_from_csv("# t_R_s=1e-3\n# n_windows=6\nn,count\n0,2\n3,3\n"),
               scc::Error);
}

TEST(FitIo, RoundTrip) {
  scc::est::FitResult f;
  f.model = "charge_rates";
  f.parameters = {{"g0", 29.6}, {"g1", 1.0 / 3.0}};
  f.standard_errors = {{"g0", 0.2}};
  f.units = {{"g0", "1/s"}};
  f.objective_kind = scc::est::kLogLikelihood;
  f.objective = -412345.678901234;
  f.converged = true;
  f.n_evals = 1871;
  f.flags = {"boundary"};
  f.diagnostics = {{"max_abs_pearson", 3.1}};
  EXPECT_EQ(scc::io::fit_from_json(scc::io::fit_to_json(f)), f);
}

TEST(FitIo, MalformedJsonIsParseError) {
  EXPECT_THROW((void)scc::io::fit_from_json("{\"type\": \"fit\",\n \"model\": }", "f.json"),
               scc::ParseError);
}

template <class T>
void expect_points_equal(const std::vector<T> &a, const std::vector<T> &b) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(T)), 0);
}

TEST(PointIo, RoundTrips) {
  const auto sat = fixtures::saturation_points({scc::est::SaturationModel::Kind::linear_sat, 46200, 53, 268},
                                               {1, 2, 3}, 0.05, true, 1);
  expect_points_equal(scc::io::saturation_points_from_csv(scc::io::saturation_points_to_csv(sat)), sat);
  expect_points_equal(scc::io::saturation_points_from_json(scc::io::saturation_points_to_json(sat)), sat);
  const auto echo = fixtures::echo_points(fixtures::published_echo(), 0.01, 2);
  expect_points_equal(scc::io::echo_points_from_csv(scc::io::echo_points_to_csv(echo)), echo);
  expect_points_equal(scc::io::echo_points_from_json(scc::io::echo_points_to_json(echo)), echo);
  const auto noise = fixtures::noise_points(7.54, 0.146, 0.03, 3);
  expect_points_equal(scc::io::noise_points_from_csv(scc::io::noise_points_to_csv(noise)), noise);
  expect_points_equal(scc::io::noise_points_from_json(scc::io::noise_points_to_json(noise)), noise);
}

TEST(DecayIo, RoundTrips) {
  const auto d = fixtures::polarization_decays({}, true, 4);
  for (const auto &back : {scc::io::decays_from_csv(scc::io::decays_to_csv(d)),
                           scc::io::decays_from_json(scc::io::decays_to_json(d))}) {
    ASSERT_EQ(back.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_EQ(back[i].t_rabi, d[i].t_rabi);
      EXPECT_EQ(back[i].times, d[i].times);
      EXPECT_EQ(back[i].intensity, d[i].intensity);
    }
  }
}

TEST(ReadoutIo, RoundTrips) {
  scc::readout::ReadoutTable t;
  t.rows = {{0.875, 1, 1.2345e-3, 0.97, false}, {5.0, 2, 1e-7, 0.6, true}};
  t.pareto = {t.rows[0]};
  EXPECT_EQ(scc::io::readout_rows_from_csv(scc::io::readout_rows_to_csv(t.rows)), t.rows);
  const auto back = scc::io::readout_table_from_json(scc::io::readout_table_to_json(t));
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.pareto, t.pareto);
}

TEST(SensitivityIo, RoundTrips) {
  const std::vector<scc::mag::CurveRow> rows{{2e-4, 6.34e-5, 3.746e-9, "scc"},
                                             {2e-4, 2e-7, 1.1e-8, "conventional_10.6"}};
  EXPECT_EQ(scc::io::sensitivity_from_csv(scc::io::sensitivity_to_csv(rows)), rows);
  EXPECT_EQ(scc::io::sensitivity_from_json(scc::io::sensitivity_to_json(rows)), rows);
}

TEST(SeriesIo, WritesHeaderAndRows) {
  EXPECT_EQ(scc::io::series_to_csv({"x", "y"}, {{1, 0.5}, {2, 0.25}}), "x,y\n1,0.5\n2,0.25\n");
}

} // namespace
