#pragma once

#include <string>
#include <string_view>

namespace scc::cli {

/// Physical dimension of a configuration value. Rate coefficients are a rate
/// per power or per power squared (saturation-law prefactors).
enum class Dimension { time, power, rate, rate_per_power, rate_per_power2 };

[[nodiscard]] std::string_view to_string(Dimension d) noexcept;

/// Parses "<number> <unit>" (space optional) into SI: seconds, watts, 1/s,
/// and 1/(s W^k) for coefficients.
///
///   time   ns us µs ms s
///   power  nW uW µW mW W
///   rate   1/s /s Hz kHz MHz cps kcps Mcps
///   coefficients  <rate unit>/<power unit> or <rate unit>/<power unit>^2
///
/// Throws std::invalid_argument with a short reason on a missing or unknown unit.
[[nodiscard]] double parse_quantity(std::string_view text, Dimension dim);

} // namespace scc::cli
