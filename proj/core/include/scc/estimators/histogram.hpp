#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scc::est {

struct HistogramMeta {
  std::optional<double> power_W;
  std::string wavelength;
  std::string label;

  friend bool operator==(const HistogramMeta &, const HistogramMeta &) = default;
};

/// Photon-count histogram: counts[n] windows recorded n photons in a window of
/// length t_R. Trailing zero bins are trimmed on construction.
class CountHistogram {
public:
  CountHistogram() = default;

  /// Throws InvalidArgument if t_R <= 0 or sum(counts) != n_windows.
  CountHistogram(std::vector<std::uint64_t> counts, double t_R, std::uint64_t n_windows,
                 HistogramMeta meta = {});

  /// n_windows taken as the sum of counts.
  static CountHistogram from_counts(std::vector<std::uint64_t> counts, double t_R,
                                    HistogramMeta meta = {});

  [[nodiscard]] const std::vector<std::uint64_t> &counts() const noexcept { return counts_; }
  [[nodiscard]] std::uint64_t operator[](std::size_t n) const noexcept {
    return n < counts_.size() ? counts_[n] : 0;
  }
  [[nodiscard]] double t_R() const noexcept { return t_R_; }
  [[nodiscard]] std::uint64_t n_windows() const noexcept { return n_windows_; }
  [[nodiscard]] const HistogramMeta &meta() const noexcept { return meta_; }
  [[nodiscard]] bool empty() const noexcept { return n_windows_ == 0; }

  /// Largest n with a nonzero count (0 for an empty histogram).
  [[nodiscard]] std::size_t max_occupied() const noexcept;
  [[nodiscard]] std::size_t occupied_bins() const noexcept;
  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] double variance() const noexcept;

  friend bool operator==(const CountHistogram &, const CountHistogram &) = default;

private:
  std::vector<std::uint64_t> counts_;
  double t_R_ = 0.0;
  std::uint64_t n_windows_ = 0;
  HistogramMeta meta_;
};

/// Pearson residuals (observed - expected) / sqrt(expected) for bins with
/// expected count above `min_expected`, and the largest |z| among them.
struct PearsonSummary {
  std::vector<double> residuals;
  std::vector<std::size_t> bins;
  double max_abs = 0.0;
};

[[nodiscard]] PearsonSummary pearson_residuals(const CountHistogram &hist,
                                               const std::vector<double> &pmf,
                                               double min_expected = 5.0);

} // namespace scc::est
