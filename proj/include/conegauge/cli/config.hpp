#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conegauge/errors.hpp"
#include "conegauge/rational.hpp"

namespace conegauge::cli {

using Json = nlohmann::ordered_json;

/// Malformed or out-of-range configuration; maps to exit status 2.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

inline Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

/// A JSON object whose keys are consumed one by one; finish() rejects the rest.
class Section {
 public:
  Section(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string& key) const { return j_->contains(key); }

  std::int64_t integer(const std::string& key, std::int64_t lo, std::int64_t hi,
                       std::optional<std::int64_t> fallback = std::nullopt) {
    const Json* v = take(key, fallback.has_value());
    if (!v) return *fallback;
    return to_integer(*v, name(key), lo, hi);
  }

  double real(const std::string& key, double lo, double hi, std::optional<double> fallback = std::nullopt) {
    const Json* v = take(key, fallback.has_value());
    if (!v) return *fallback;
    if (!v->is_number()) throw ConfigError(name(key) + " must be a number");
    const double d = v->get<double>();
    if (!std::isfinite(d) || d < lo || d > hi)
      throw ConfigError(name(key) + " must lie in [" + fmt(lo) + ", " + fmt(hi) + "]");
    return d;
  }

  bool boolean(const std::string& key, bool fallback) {
    const Json* v = take(key, true);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(name(key) + " must be true or false");
    return v->get<bool>();
  }

  std::string choice(const std::string& key, const std::set<std::string>& allowed,
                     std::optional<std::string> fallback = std::nullopt) {
    const Json* v = take(key, fallback.has_value());
    if (!v) return *fallback;
    if (!v->is_string()) throw ConfigError(name(key) + " must be a string");
    auto s = v->get<std::string>();
    if (!allowed.count(s)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError(name(key) + " must be one of {" + list + "}, got '" + s + "'");
    }
    return s;
  }

  std::string text(const std::string& key, std::string fallback) {
    const Json* v = take(key, true);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(name(key) + " must be a string");
    return v->get<std::string>();
  }

  IntVector int_vector(const std::string& key, std::int64_t bound, std::optional<IntVector> fallback = std::nullopt) {
    const Json* v = take(key, fallback.has_value());
    if (!v) return *fallback;
    return to_int_vector(*v, name(key), bound);
  }

  std::vector<IntVector> int_vectors(const std::string& key, std::int64_t bound,
                                     std::optional<std::vector<IntVector>> fallback = std::nullopt) {
    const Json* v = take(key, fallback.has_value());
    if (!v) return *fallback;
    if (!v->is_array()) throw ConfigError(name(key) + " must be an array of integer vectors");
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < v->size(); ++i)
      out.push_back(to_int_vector((*v)[i], name(key) + "[" + std::to_string(i) + "]", bound));
    return out;
  }

  std::vector<std::int64_t> integers(const std::string& key, std::int64_t lo, std::int64_t hi,
                                     std::optional<std::vector<std::int64_t>> fallback = std::nullopt) {
    return int_vector_ranged(key, lo, hi, std::move(fallback));
  }

  std::vector<double> reals(const std::string& key, double lo, double hi) {
    const Json* v = take(key, false);
    if (!v->is_array()) throw ConfigError(name(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : *v) {
      if (!e.is_number()) throw ConfigError(name(key) + " must contain numbers only");
      const double d = e.get<double>();
      if (!std::isfinite(d) || d < lo || d > hi)
        throw ConfigError(name(key) + " entries must lie in [" + fmt(lo) + ", " + fmt(hi) + "]");
      out.push_back(d);
    }
    return out;
  }

  /// Rational points written as integers or strings "p/q".
  std::vector<RationalVector> rational_vectors(const std::string& key) {
    const Json* v = take(key, false);
    if (!v->is_array()) throw ConfigError(name(key) + " must be an array of points");
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& p = (*v)[i];
      const std::string nm = name(key) + "[" + std::to_string(i) + "]";
      if (!p.is_array() || p.empty()) throw ConfigError(nm + " must be a nonempty array");
      std::vector<Rational> c;
      for (const auto& e : p) c.push_back(to_rational(e, nm));
      out.emplace_back(std::move(c));
    }
    return out;
  }

  Section sub(const std::string& key) { return Section(*take(key, false), name(key)); }

  const Json& raw(const std::string& key) { return *take(key, false); }

  void finish() const {
    for (auto it = j_->begin(); it != j_->end(); ++it)
      if (!used_.count(it.key())) throw ConfigError("unknown key " + name(it.key()));
  }

  std::string name(const std::string& key) const { return path_ + "/" + key; }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const Json* take(const std::string& key, bool optional) {
    used_.insert(key);
    auto it = j_->find(key);
    if (it == j_->end()) {
      if (optional) return nullptr;
      throw ConfigError("missing required key " + name(key));
    }
    return &*it;
  }

  std::vector<std::int64_t> int_vector_ranged(const std::string& key, std::int64_t lo, std::int64_t hi,
                                              std::optional<std::vector<std::int64_t>> fallback) {
    const Json* v = take(key, fallback.has_value());
    if (!v) return *fallback;
    if (!v->is_array()) throw ConfigError(name(key) + " must be an array of integers");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < v->size(); ++i)
      out.push_back(to_integer((*v)[i], name(key) + "[" + std::to_string(i) + "]", lo, hi));
    return out;
  }

  static std::int64_t to_integer(const Json& v, const std::string& nm, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) throw ConfigError(nm + " must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
      throw ConfigError(nm + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi)
      throw ConfigError(nm + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
  }

  static IntVector to_int_vector(const Json& v, const std::string& nm, std::int64_t bound) {
    if (!v.is_array() || v.empty()) throw ConfigError(nm + " must be a nonempty array of integers");
    IntVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(to_integer(v[i], nm + "[" + std::to_string(i) + "]", -bound, bound));
    return out;
  }

  static Rational to_rational(const Json& e, const std::string& nm) {
    if (e.is_number_integer()) return Rational(to_integer(e, nm, -(1LL << 40), 1LL << 40));
    if (!e.is_string()) throw ConfigError(nm + " entries must be integers or strings \"p/q\"");
    const auto s = e.get<std::string>();
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw ConfigError(nm + ": cannot parse '" + s + "' as a rational");
    if (q.get_den() == 0) throw ConfigError(nm + ": zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }

  static std::string fmt(double d) {
    std::ostringstream os;
    os << d;
    return os.str();
  }

  const Json* j_;
  std::string path_;
  std::set<std::string> used_;
};

}  // namespace conegauge::cli
