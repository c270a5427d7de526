#include "scc/cli/config.hpp"

#include <algorithm>
#include <cmath>

#include "scc/errors.hpp"
#include "scc/io/csv.hpp"

namespace scc::cli {

using nlohmann::json;

namespace {

const json &empty_object() {
  static const json e = json::object();
  return e;
}

std::string join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

} // namespace

ConfigNode::ConfigNode(const json *node, std::string path) : node_(node), path_(std::move(path)) {
  if (!node_->is_object()) throw ConfigError(path_, "expected an object");
}

ConfigNode ConfigNode::empty(std::string path) { return ConfigNode(&empty_object(), std::move(path)); }

bool ConfigNode::has(const std::string &key) const { return node_->contains(key); }

std::string ConfigNode::field(const std::string &key) const { return join(path_, key); }

std::vector<std::string> ConfigNode::keys() const {
  std::vector<std::string> out;
  for (auto it = node_->begin(); it != node_->end(); ++it) out.push_back(it.key());
  return out;
}

const json &ConfigNode::at(const std::string &key) const {
  const auto it = node_->find(key);
  if (it == node_->end()) throw ConfigError(field(key), "required field is missing");
  return *it;
}

ConfigNode ConfigNode::child(const std::string &key) const {
  if (!has(key)) return empty(field(key));
  return ConfigNode(&at(key), field(key));
}

void ConfigNode::allow_only(std::initializer_list<std::string_view> allowed) const {
  for (auto it = node_->begin(); it != node_->end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw ConfigError(field(it.key()), "unknown field");
    }
  }
}

double ConfigNode::quantity(const std::string &key, Dimension dim) const {
  const json &v = at(key);
  if (!v.is_string()) {
    throw ConfigError(field(key), "expected a string with a " + std::string(to_string(dim)) +
                                      " unit, e.g. \"8 ms\"");
  }
  try {
    return parse_quantity(v.get<std::string>(), dim);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(field(key), e.what());
  }
}

std::optional<double> ConfigNode::optional_quantity(const std::string &key, Dimension dim) const {
  if (!has(key)) return std::nullopt;
  return quantity(key, dim);
}

double ConfigNode::quantity_or(const std::string &key, Dimension dim, double fallback) const {
  return has(key) ? quantity(key, dim) : fallback;
}

std::vector<double> ConfigNode::quantity_list(const std::string &key, Dimension dim) const {
  const json &v = at(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string f = field(key) + "[" + std::to_string(i) + "]";
      if (!v[i].is_string()) throw ConfigError(f, "expected a string with a unit");
      try {
        out.push_back(parse_quantity(v[i].get<std::string>(), dim));
      } catch (const std::invalid_argument &e) {
        throw ConfigError(f, e.what());
      }
    }
    return out;
  }
  if (v.is_object()) {
    // {"from": ..., "to": ..., "count": n} -> log-spaced grid including both ends.
    const ConfigNode grid(&v, field(key));
    grid.allow_only({"from", "to", "count"});
    const double lo = grid.quantity("from", dim), hi = grid.quantity("to", dim);
    const auto count = grid.integer_or("count", 0);
    if (!(lo > 0.0) || !(hi > lo)) throw ConfigError(field(key), "grid needs 0 < from < to");
    if (count < 2) throw ConfigError(grid.field("count"), "grid needs count >= 2");
    for (std::uint64_t i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(count - 1);
      out.push_back(i + 1 == count ? hi : lo * std::pow(hi / lo, f));
    }
    return out;
  }
  throw ConfigError(field(key), "expected a list of quantities or a {from, to, count} grid");
}

double ConfigNode::number(const std::string &key) const {
  const json &v = at(key);
  if (!v.is_number()) throw ConfigError(field(key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field(key), "expected a finite number");
  return x;
}

double ConfigNode::number_or(const std::string &key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::uint64_t ConfigNode::integer_or(const std::string &key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const json &v = at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(field(key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> ConfigNode::integer_list(const std::string &key) const {
  const json &v = at(key);
  if (!v.is_array()) throw ConfigError(field(key), "expected a list of integers");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) {
      throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a non-negative integer");
    }
    out.push_back(v[i].get<std::uint64_t>());
  }
  return out;
}

std::string ConfigNode::string_or(const std::string &key, const std::string &fallback) const {
  if (!has(key)) return fallback;
  const json &v = at(key);
  if (!v.is_string()) throw ConfigError(field(key), "expected a string");
  return v.get<std::string>();
}

bool ConfigNode::is_string(const std::string &key) const { return has(key) && at(key).is_string(); }

RunConfig RunConfig::from_text(const std::string &text, const std::string &source) {
  RunConfig c;
  c.source_ = source;
  try {
    c.root_ = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(source, std::string("invalid JSON: ") + e.what());
  }
  if (!c.root_.is_object()) throw ConfigError(source, "top level must be an object");
  static constexpr std::string_view kBlocks[] = {
      "seed",         "out_dir",         "simulate",        "fit_rates",
      "fit_power",    "fit_echo",        "fit_polarization", "fit_noise",
      "charge_fidelity", "optimize_readout", "scc_noise",     "sensitivity"};
  for (auto it = c.root_.begin(); it != c.root_.end(); ++it) {
    if (std::find(std::begin(kBlocks), std::end(kBlocks), it.key()) == std::end(kBlocks)) {
      throw ConfigError(it.key(), "unknown configuration block");
    }
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string &path) {
  return from_text(io::read_text_file(path), path);
}

ConfigNode RunConfig::block(const std::string &name) const {
  const auto it = root_.find(name);
  if (it == root_.end()) return ConfigNode::empty(name);
  return ConfigNode(&*it, name);
}

std::optional<std::uint64_t> RunConfig::seed() const {
  const auto it = root_.find("seed");
  if (it == root_.end()) return std::nullopt;
  if (!it->is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
  return it->get<std::uint64_t>();
}

std::optional<std::string> RunConfig::out_dir() const {
  const auto it = root_.find("out_dir");
  if (it == root_.end()) return std::nullopt;
  if (!it->is_string()) throw ConfigError("out_dir", "expected a string");
  return it->get<std::string>();
}

} // namespace scc::cli
