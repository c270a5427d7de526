#include "scc/estimators/fit_result.hpp"

#include "scc/errors.hpp"

namespace scc::est {

double FitResult::at(const std::string &name) const {
  const auto it = parameters.find(name);
  if (it == parameters.end()) throw UnknownName("fit has no parameter '" + name + "'");
  return it->second;
}

std::optional<double> FitResult::error(const std::string &name) const {
  const auto it = standard_errors.find(name);
  if (it == standard_errors.end()) return std::nullopt;
  return it->second;
}

} // namespace scc::est
