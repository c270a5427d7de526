#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scc/cli/units.hpp"

namespace scc::cli {

/// Invalid run configuration. The message starts with the offending field path.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string &path, const std::string &message)
      : std::runtime_error(path + ": " + message) {}
};

/// Read-only view of one JSON object in the run configuration, tracking its
/// dotted path for diagnostics.
class ConfigNode {
public:
  ConfigNode(const nlohmann::json *node, std::string path);

  /// Empty object standing in for an absent block.
  static ConfigNode empty(std::string path);

  [[nodiscard]] const std::string &path() const noexcept { return path_; }
  [[nodiscard]] bool has(const std::string &key) const;
  [[nodiscard]] ConfigNode child(const std::string &key) const;
  [[nodiscard]] std::string field(const std::string &key) const;
  [[nodiscard]] std::vector<std::string> keys() const;

  /// Rejects keys outside `allowed`, catching misspelt fields.
  void allow_only(std::initializer_list<std::string_view> allowed) const;

  [[nodiscard]] double quantity(const std::string &key, Dimension dim) const;
  [[nodiscard]] std::optional<double> optional_quantity(const std::string &key, Dimension dim) const;
  [[nodiscard]] double quantity_or(const std::string &key, Dimension dim, double fallback) const;
  [[nodiscard]] std::vector<double> quantity_list(const std::string &key, Dimension dim) const;

  [[nodiscard]] double number(const std::string &key) const;
  [[nodiscard]] double number_or(const std::string &key, double fallback) const;
  [[nodiscard]] std::uint64_t integer_or(const std::string &key, std::uint64_t fallback) const;
  [[nodiscard]] std::vector<std::uint64_t> integer_list(const std::string &key) const;
  [[nodiscard]] std::string string_or(const std::string &key, const std::string &fallback) const;

  /// True when the field holds a string (as opposed to a number).
  [[nodiscard]] bool is_string(const std::string &key) const;

private:
  [[nodiscard]] const nlohmann::json &at(const std::string &key) const;

  const nlohmann::json *node_;
  std::string path_;
};

/// Parsed configuration file; the root must be a JSON object whose keys are
/// command blocks ("simulate", "fit_rates", ...).
class RunConfig {
public:
  RunConfig() = default;
  static RunConfig from_text(const std::string &text, const std::string &source);
  static RunConfig from_file(const std::string &path);

  [[nodiscard]] ConfigNode block(const std::string &name) const;
  [[nodiscard]] std::optional<std::uint64_t> seed() const;
  [[nodiscard]] std::optional<std::string> out_dir() const;
  [[nodiscard]] const std::string &source() const noexcept { return source_; }

private:
  nlohmann::json root_ = nlohmann::json::object();
  std::string source_ = "<defaults>";
};

} // namespace scc::cli
