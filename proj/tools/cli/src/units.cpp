#include "scc/cli/units.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace scc::cli {
namespace {

struct Unit {
  std::string_view name;
  double factor;
};

constexpr Unit kTime[] = {{"ns", 1e-9}, {"us", 1e-6}, {"\xC2\xB5s", 1e-6}, {"ms", 1e-3}, {"s", 1.0}};
constexpr Unit kPower[] = {{"nW", 1e-9}, {"uW", 1e-6}, {"\xC2\xB5W", 1e-6}, {"mW", 1e-3}, {"W", 1.0}};
constexpr Unit kRate[] = {{"1/s", 1.0}, {"/s", 1.0},   {"Hz", 1.0},  {"kHz", 1e3},
                          {"MHz", 1e6}, {"cps", 1.0},  {"kcps", 1e3}, {"Mcps", 1e6}};

template <std::size_t N>
std::optional<double> lookup(const Unit (&table)[N], std::string_view name) {
  for (const auto &u : table) {
    if (u.name == name) return u.factor;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> coefficient_factor(std::string_view unit, int power_exponent) {
  // Rate units may contain '/', so split at the last one.
  const auto slash = unit.rfind('/');
  if (slash == std::string_view::npos || slash == 0) return std::nullopt;
  std::string_view rate = unit.substr(0, slash);
  std::string_view power = unit.substr(slash + 1);
  int exponent = 1;
  if (power.size() > 2 && power.substr(power.size() - 2) == "^2") {
    exponent = 2;
    power.remove_suffix(2);
  }
  if (exponent != power_exponent) return std::nullopt;
  const auto r = lookup(kRate, rate);
  const auto p = lookup(kPower, power);
  if (!r || !p) return std::nullopt;
  return *r / std::pow(*p, exponent);
}

} // namespace

std::string_view to_string(Dimension d) noexcept {
  switch (d) {
  case Dimension::time: return "time";
  case Dimension::power: return "power";
  case Dimension::rate: return "rate";
  case Dimension::rate_per_power: return "rate per power";
  case Dimension::rate_per_power2: return "rate per power squared";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension dim) {
  text = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || !std::isfinite(value)) {
    throw std::invalid_argument("expected '<number> <unit>', got '" + std::string(text) + "'");
  }
  const std::string_view unit = trim(std::string_view(end, text.data() + text.size() - end));
  if (unit.empty()) {
    throw std::invalid_argument("missing unit for " + std::string(to_string(dim)) + " value '" +
                                std::string(text) + "'");
  }
  std::optional<double> factor;
  switch (dim) {
  case Dimension::time: factor = lookup(kTime, unit); break;
  case Dimension::power: factor = lookup(kPower, unit); break;
  case Dimension::rate: factor = lookup(kRate, unit); break;
  case Dimension::rate_per_power: factor = coefficient_factor(unit, 1); break;
  case Dimension::rate_per_power2: factor = coefficient_factor(unit, 2); break;
  }
  if (!factor) {
    throw std::invalid_argument("unknown " + std::string(to_string(dim)) + " unit '" +
                                std::string(unit) + "'");
  }
  return value * *factor;
}

} // namespace scc::cli
