#include "scc/estimators/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scc/errors.hpp"

namespace scc::est {

CountHistogram::CountHistogram(std::vector<std::uint64_t> counts, double t_R,
                               std::uint64_t n_windows, HistogramMeta meta)
    : counts_(std::move(counts)), t_R_(t_R), n_windows_(n_windows), meta_(std::move(meta)) {
  if (!(t_R_ > 0.0) || !std::isfinite(t_R_)) {
    throw InvalidArgument("histogram t_R must be > 0");
  }
  const std::uint64_t sum =
      std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  if (sum != n_windows_) {
    throw InvalidArgument("histogram counts sum to " + std::to_string(sum) +
                          " but n_windows = " + std::to_string(n_windows_));
  }
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

CountHistogram CountHistogram::from_counts(std::vector<std::uint64_t> counts, double t_R,
                                           HistogramMeta meta) {
  const std::uint64_t sum = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  return CountHistogram(std::move(counts), t_R, sum, std::move(meta));
}

std::size_t CountHistogram::max_occupied() const noexcept {
  return counts_.empty() ? 0 : counts_.size() - 1;
}

std::size_t CountHistogram::occupied_bins() const noexcept {
  std::size_t k = 0;
  for (const auto c : counts_) k += (c > 0) ? 1 : 0;
  return k;
}

double CountHistogram::mean() const noexcept {
  if (n_windows_ == 0) return 0.0;
  double s = 0.0;
  for (std::size_t n = 0; n < counts_.size(); ++n) {
    s += static_cast<double>(n) * static_cast<double>(counts_[n]);
  }
  return s / static_cast<double>(n_windows_);
}

double CountHistogram::variance() const noexcept {
  if (n_windows_ < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (std::size_t n = 0; n < counts_.size(); ++n) {
    const double d = static_cast<double>(n) - m;
    s += d * d * static_cast<double>(counts_[n]);
  }
  return s / static_cast<double>(n_windows_ - 1);
}

PearsonSummary pearson_residuals(const CountHistogram &hist, const std::vector<double> &pmf,
                                 double min_expected) {
  PearsonSummary out;
  const auto total = static_cast<double>(hist.n_windows());
  const std::size_t top = std::max(pmf.size(), hist.counts().size());
  for (std::size_t n = 0; n < top; ++n) {
    const double expected = total * (n < pmf.size() ? pmf[n] : 0.0);
    if (expected < min_expected) continue;
    const double z = (static_cast<double>(hist[n]) - expected) / std::sqrt(expected);
    out.residuals.push_back(z);
    out.bins.push_back(n);
    out.max_abs = std::max(out.max_abs, std::fabs(z));
  }
  return out;
}

} // namespace scc::est
