#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace scc::est {

/// Outcome of any fit in this library.
///
/// `objective` is the maximized log-likelihood for MLE fits and the residual
/// sum of squares (weighted where weights exist) for least-squares fits;
/// `objective_kind` says which. `flags` carries non-fatal findings such as
/// "boundary" or "weakly_identified".
struct FitResult {
  std::string model;
  std::map<std::string, double> parameters;
  std::map<std::string, double> standard_errors;
  /// Unit of each parameter, when not SI or otherwise worth stating.
  std::map<std::string, std::string> units;
  std::string objective_kind;
  double objective = 0.0;
  bool converged = false;
  std::size_t n_evals = 0;
  std::set<std::string> flags;
  std::map<std::string, double> diagnostics;

  [[nodiscard]] double at(const std::string &name) const;
  [[nodiscard]] std::optional<double> error(const std::string &name) const;
  [[nodiscard]] bool has_flag(const std::string &flag) const { return flags.count(flag) > 0; }

  friend bool operator==(const FitResult &, const FitResult &) = default;
};

inline constexpr const char *kLogLikelihood = "log_likelihood";
inline constexpr const char *kResidualSum = "residual_sum";

} // namespace scc::est
