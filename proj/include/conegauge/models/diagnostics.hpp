#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "conegauge/errors.hpp"
#include "conegauge/models/hashing.hpp"
#include "conegauge/parallel.hpp"
#include "conegauge/rational.hpp"

namespace conegauge {

/// max_{0<=n<=N} (S_n - n ε) with S_n = Z_1 + ... + Z_n; the n = 0 term is 0.
inline double truncated_sup(std::span<const double> z, double eps) {
  if (!(eps > 0)) throw InputError("truncated_sup: epsilon must be positive");
  double s = 0, best = 0;
  for (std::size_t n = 0; n < z.size(); ++n) {
    s += z[n] - eps;
    best = std::max(best, s);
  }
  return best;
}

/// Points of the L1 sphere {x ∈ Z^dim : |x|_1 = n}, in lexicographic order.
inline std::vector<IntVector> l1_sphere(std::int64_t n, std::size_t dim) {
  if (n < 0 || dim == 0) throw InputError("l1_sphere: need n >= 0 and dim >= 1");
  std::vector<IntVector> out;
  IntVector cur(dim);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t rest) {
    if (i + 1 == dim) {
      cur[i] = -rest;
      out.push_back(cur);
      if (rest != 0) {
        cur[i] = rest;
        out.push_back(cur);
      }
      return;
    }
    for (std::int64_t v = -rest; v <= rest; ++v) {
      cur[i] = v;
      rec(i + 1, rest - (v < 0 ? -v : v));
    }
  };
  rec(0, n);
  return out;
}

/// max over |x|_1 = n of Z_x / n.
inline double sphere_max(const std::function<double(const IntVector&)>& z, std::int64_t n, std::size_t dim = 2) {
  if (n < 1) throw InputError("sphere_max: n must be >= 1");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& x : l1_sphere(n, dim)) best = std::max(best, z(x));
  return best / static_cast<double>(n);
}

enum class CenteredNoise { rademacher, exponential, normal };

/// Centered noise value for the key (seed, sample, index).
inline double centered_noise(CenteredNoise kind, std::uint64_t seed, std::uint64_t sample, std::uint64_t index) {
  const std::uint64_t h = hash_key(seed, {sample, index});
  switch (kind) {
    case CenteredNoise::rademacher: return (h >> 63) ? 1.0 : -1.0;
    case CenteredNoise::exponential: return -std::log(to_unit(h)) - 1.0;
    case CenteredNoise::normal: return to_normal(h);
  }
  return 0;
}

/// Independent draws of the truncated supremum for i.i.d. centered noise.
inline std::vector<double> sample_truncated_sup(CenteredNoise kind, double eps, std::size_t horizon,
                                                std::size_t samples, std::uint64_t seed, std::size_t threads = 1) {
  std::vector<double> out(samples);
  parallel_for(samples, threads, [&](std::size_t s) {
    std::vector<double> z(horizon);
    for (std::size_t i = 0; i < horizon; ++i) z[i] = centered_noise(kind, seed, s, i);
    out[s] = truncated_sup(z, eps);
  });
  return out;
}

}  // namespace conegauge
