#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include "conegauge/errors.hpp"
#include "conegauge/models/hashing.hpp"

namespace conegauge {

struct ConstantNoise {
  double value = 1.0;
};
/// exp(σZ - σ²/2), so the mean is 1.
struct LognormalNoise {
  double sigma = 0.5;
};
struct ExponentialNoise {};

using NoiseLaw = std::variant<ConstantNoise, LognormalNoise, ExponentialNoise>;

struct IarchSpec {
  std::vector<double> a;  // a[i] is the coefficient a_{i+1}
  std::uint64_t seed = 0;
  NoiseLaw noise = ConstantNoise{};
  std::int64_t offset = 0;  // the shift g^m reads ε_{t+m}
  bool enforce_unit_sum = false;
};

inline void validate(const IarchSpec& s) {
  if (s.a.empty()) throw InputError("iarch: empty coefficient sequence");
  double sum = 0;
  for (double v : s.a) {
    if (!(std::isfinite(v) && v >= 0)) throw InputError("iarch: coefficients must be finite and >= 0");
    sum += v;
  }
  if (s.enforce_unit_sum && std::abs(sum - 1.0) > 1e-12) throw InputError("iarch: coefficients must sum to 1");
  if (s.offset < 0) throw InputError("iarch: offset must be >= 0");
  if (auto* c = std::get_if<ConstantNoise>(&s.noise); c && !(c->value > 0 && std::isfinite(c->value)))
    throw InputError("iarch: constant noise must be positive");
  if (auto* l = std::get_if<LognormalNoise>(&s.noise); l && !(l->sigma >= 0 && std::isfinite(l->sigma)))
    throw InputError("iarch: lognormal sigma must be >= 0");
}

inline IarchSpec shifted(IarchSpec s, std::int64_t m) {
  s.offset += m;
  return s;
}

/// log ε_t for t >= 1.
inline double log_noise(const IarchSpec& s, std::int64_t t) {
  const std::uint64_t h = hash_key(s.seed, {static_cast<std::uint64_t>(t + s.offset)});
  return std::visit(
      [&](const auto& law) -> double {
        using L = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<L, ConstantNoise>)
          return std::log(law.value);
        else if constexpr (std::is_same_v<L, LognormalNoise>)
          return law.sigma * to_normal(h) - 0.5 * law.sigma * law.sigma;
        else
          return std::log(-std::log(to_unit(h)));
      },
      s.noise);
}

/// Table of η_{k,n} for 0 <= k <= k_max, 0 <= n <= n_max, kept as log η (-inf for 0).
class IarchTable {
 public:
  IarchTable(std::int64_t k_max, std::int64_t n_max)
      : k_max_(k_max), n_max_(n_max),
        log_eta_(static_cast<std::size_t>((k_max + 1) * (n_max + 1)), -std::numeric_limits<double>::infinity()) {}

  std::int64_t k_max() const noexcept { return k_max_; }
  std::int64_t n_max() const noexcept { return n_max_; }
  double log_eta(std::int64_t k, std::int64_t n) const { return log_eta_.at(idx(k, n)); }
  double& log_eta(std::int64_t k, std::int64_t n) { return log_eta_.at(idx(k, n)); }
  double eta(std::int64_t k, std::int64_t n) const { return std::exp(log_eta(k, n)); }
  /// h(k,n) = -log η_{k,n}; +inf when η_{k,n} = 0.
  double h(std::int64_t k, std::int64_t n) const { return -log_eta(k, n); }

 private:
  std::size_t idx(std::int64_t k, std::int64_t n) const {
    if (k < 0 || n < 0 || k > k_max_ || n > n_max_) throw InputError("iarch: table index out of range");
    return static_cast<std::size_t>(k * (n_max_ + 1) + n);
  }
  std::int64_t k_max_, n_max_;
  std::vector<double> log_eta_;
};

/// η_{k,n} = ε_n Σ_{j<n} η_{k-1,j} a_{n-j}, η_{0,0} = 1, in the log domain.
inline IarchTable iarch_eta(const IarchSpec& s, std::int64_t k_max, std::int64_t n_max) {
  validate(s);
  if (k_max < 0 || n_max < 0) throw InputError("iarch: k_max and n_max must be >= 0");
  IarchTable t(k_max, n_max);
  std::vector<double> log_eps(static_cast<std::size_t>(n_max + 1), 0.0);
  for (std::int64_t n = 1; n <= n_max; ++n) log_eps[n] = log_noise(s, n);
  std::vector<std::pair<std::int64_t, double>> support;
  for (std::size_t i = 0; i < s.a.size(); ++i)
    if (s.a[i] > 0) support.push_back({static_cast<std::int64_t>(i + 1), std::log(s.a[i])});
  const double ninf = -std::numeric_limits<double>::infinity();
  t.log_eta(0, 0) = 0.0;
  std::vector<double> terms;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    for (std::int64_t n = k; n <= n_max; ++n) {
      terms.clear();
      for (auto [i, la] : support) {
        if (i > n) break;
        const double prev = t.log_eta(k - 1, n - i);
        if (prev != ninf) terms.push_back(prev + la);
      }
      if (terms.empty()) continue;
      const double m = *std::max_element(terms.begin(), terms.end());
      double acc = 0;
      for (double v : terms) acc += std::exp(v - m);
      t.log_eta(k, n) = log_eps[n] + m + std::log(acc);
    }
  }
  return t;
}

/// Same recursion in the linear domain; underflows for long sequences.
inline std::vector<std::vector<double>> iarch_eta_linear(const IarchSpec& s, std::int64_t k_max, std::int64_t n_max) {
  validate(s);
  std::vector<std::vector<double>> eta(k_max + 1, std::vector<double>(n_max + 1, 0.0));
  eta[0][0] = 1.0;
  for (std::int64_t k = 1; k <= k_max; ++k)
    for (std::int64_t n = 1; n <= n_max; ++n) {
      double acc = 0;
      for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t i = n - j;
        if (i <= static_cast<std::int64_t>(s.a.size())) acc += eta[k - 1][j] * s.a[i - 1];
      }
      eta[k][n] = std::exp(log_noise(s, n)) * acc;
    }
  return eta;
}

/// Whether (k, n) ∈ S: n is a sum of k indices with positive coefficients.
inline bool iarch_in_semigroup(const std::vector<double>& a, std::int64_t k, std::int64_t n) {
  if (k < 0 || n < 0) return false;
  std::vector<std::int64_t> support;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0) support.push_back(static_cast<std::int64_t>(i + 1));
  if (support.empty()) return k == 0 && n == 0;
  const std::int64_t lo = support.front(), hi = support.back();
  if (n < k * lo || n > k * hi) return false;
  // reach[m]: n' reachable with the current number of parts.
  std::vector<char> reach(static_cast<std::size_t>(n + 1), 0);
  reach[0] = 1;
  for (std::int64_t step = 0; step < k; ++step) {
    std::vector<char> next(reach.size(), 0);
    for (std::int64_t m = 0; m <= n; ++m)
      if (reach[m])
        for (auto i : support)
          if (m + i <= n) next[m + i] = 1;
    reach.swap(next);
  }
  return reach[n] != 0;
}

}  // namespace conegauge
