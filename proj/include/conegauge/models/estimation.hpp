#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "conegauge/errors.hpp"
#include "conegauge/models/fpp.hpp"
#include "conegauge/models/hashing.hpp"
#include "conegauge/models/iarch.hpp"
#include "conegauge/parallel.hpp"
#include "conegauge/rational.hpp"

namespace conegauge {

/// A random f-subadditive function h(x, ω) with ω indexed by a seed.
/// evaluate_shifted(x, s, seed) is h(x, f^s ω).
template <class M>
concept SubadditiveModel = requires(const M& m, const IntVector& x, std::uint64_t seed) {
  { m.evaluate(x, seed) } -> std::same_as<std::optional<double>>;
  { m.evaluate_shifted(x, x, seed) } -> std::same_as<std::optional<double>>;
  { m.contains(x) } -> std::same_as<bool>;
};

/// Full first-passage percolation on Z^2.
struct FppModel {
  WeightLaw law = ExponentialLaw{};
  FppOptions options{};
  std::int64_t box_margin = 1;

  std::optional<double> evaluate(const IntVector& x, std::uint64_t seed) const {
    return evaluate_shifted(x, IntVector(x.size(), 0), seed);
  }
  std::optional<double> evaluate_shifted(const IntVector& x, const IntVector& shift, std::uint64_t seed) const {
    const auto field = WeightField<2>(seed, law).shifted(shift);
    FppQuery q{x, FppVariant::full, 0, 0, box_margin};
    auto r = fpp_passage_time(field, q, options);
    if (!r.reachable) return std::nullopt;
    return r.value();
  }
  bool contains(const IntVector& x) const { return x.size() == 2; }
};

/// IARCH cascade, points (k, n) with h(k, n) = -log η_{k,n}.
struct IarchModel {
  std::vector<double> a{1.0};
  NoiseLaw noise = ConstantNoise{};

  std::optional<double> evaluate(const IntVector& x, std::uint64_t seed) const {
    return evaluate_shifted(x, IntVector{0, 0}, seed);
  }
  std::optional<double> evaluate_shifted(const IntVector& x, const IntVector& shift, std::uint64_t seed) const {
    if (x.size() != 2 || shift.size() != 2) throw InputError("iarch model: points are (k, n)");
    IarchSpec s{a, seed, noise, shift[1]};
    auto t = iarch_eta(s, x[0], x[1]);
    const double h = t.h(x[0], x[1]);
    if (std::isinf(h)) return std::nullopt;
    return h;
  }
  bool contains(const IntVector& x) const { return x.size() == 2 && iarch_in_semigroup(a, x[0], x[1]); }
};

inline std::uint64_t replication_seed(std::uint64_t master, std::size_t rep) {
  return hash_key(master, {static_cast<std::uint64_t>(rep)});
}

struct LevelEstimate {
  std::int64_t n = 0;
  std::vector<double> values;  // h(nx)/n per replication; NaN when excluded
  std::size_t used = 0, excluded = 0;
  double mean = 0, stderr_ = 0;
};

struct RayEstimate {
  IntVector direction;
  std::vector<LevelEstimate> levels;
  double q_hat = 0, halfwidth = 0;
  /// fekete[i]: mean at level i+1 <= mean at level i + 3 combined stderr.
  std::vector<bool> fekete;
  std::size_t subadditivity_checks = 0, subadditivity_violations = 0;
};

struct RayOptions {
  std::size_t threads = 1;
  bool check_subadditivity = true;
  double relative_tolerance = 1e-12;
};

inline void summarize(LevelEstimate& lv) {
  double sum = 0, sq = 0;
  lv.used = lv.excluded = 0;
  for (double v : lv.values)
    if (std::isnan(v))
      ++lv.excluded;
    else {
      ++lv.used;
      sum += v;
    }
  lv.mean = lv.used ? sum / lv.used : std::numeric_limits<double>::quiet_NaN();
  for (double v : lv.values)
    if (!std::isnan(v)) sq += (v - lv.mean) * (v - lv.mean);
  lv.stderr_ = lv.used > 1 ? std::sqrt(sq / (lv.used - 1) / lv.used) : 0.0;
}

/// Kingman-style estimate of q(x) = lim h(nx)/n. Replication r uses the same ω
/// at every level, so the per-ω subadditivity between consecutive levels
/// h(n'x) <= h(nx) + h((n'-n)x; f^{nx} ω) can be checked on each replication.
template <SubadditiveModel M>
RayEstimate estimate_ray_gauge(const M& model, const IntVector& x, const std::vector<std::int64_t>& levels,
                               std::size_t reps, std::uint64_t master_seed, const RayOptions& opt = {}) {
  if (levels.empty()) throw InputError("estimate_ray_gauge: no levels");
  if (reps == 0) throw InputError("estimate_ray_gauge: reps must be positive");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw InputError("estimate_ray_gauge: levels must be positive");
    if (i && levels[i] <= levels[i - 1]) throw InputError("estimate_ray_gauge: levels must increase");
    if (!model.contains(scale(levels[i], x))) throw SequenceOutOfSemigroup(levels[i]);
  }
  RayEstimate est;
  est.direction = x;
  const std::size_t L = levels.size();
  std::vector<std::vector<double>> raw(L, std::vector<double>(reps));
  std::vector<std::size_t> checks(reps, 0), violations(reps, 0);
  parallel_for(reps, opt.threads, [&](std::size_t r) {
    const std::uint64_t seed = replication_seed(master_seed, r);
    std::vector<std::optional<double>> h(L);
    for (std::size_t i = 0; i < L; ++i) {
      h[i] = model.evaluate(scale(levels[i], x), seed);
      raw[i][r] = h[i] ? *h[i] / static_cast<double>(levels[i]) : std::numeric_limits<double>::quiet_NaN();
    }
    if (!opt.check_subadditivity) return;
    for (std::size_t i = 0; i + 1 < L; ++i) {
      const IntVector head = scale(levels[i], x);
      const IntVector tail = scale(levels[i + 1] - levels[i], x);
      if (!h[i] || !model.contains(tail)) continue;
      auto ht = model.evaluate_shifted(tail, head, seed);
      if (!ht) continue;
      ++checks[r];
      const double rhs = *h[i] + *ht;
      if (!h[i + 1] || *h[i + 1] > rhs + opt.relative_tolerance * std::max(1.0, std::abs(rhs))) ++violations[r];
    }
  });
  for (std::size_t i = 0; i < L; ++i) {
    LevelEstimate lv;
    lv.n = levels[i];
    lv.values = std::move(raw[i]);
    summarize(lv);
    est.levels.push_back(std::move(lv));
  }
  for (std::size_t r = 0; r < reps; ++r) {
    est.subadditivity_checks += checks[r];
    est.subadditivity_violations += violations[r];
  }
  for (std::size_t i = 0; i + 1 < L; ++i) {
    const auto &a = est.levels[i], &b = est.levels[i + 1];
    est.fekete.push_back(b.mean <= a.mean + 3 * std::hypot(a.stderr_, b.stderr_));
  }
  const auto& last = est.levels.back();
  est.q_hat = last.mean;
  est.halfwidth = 3 * last.stderr_;
  if (L > 1) est.halfwidth += std::abs(last.mean - est.levels[L - 2].mean);
  return est;
}

enum class SequenceKind { ray, drift, mixed_coset };

inline const char* to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::ray: return "ray";
    case SequenceKind::drift: return "drift";
    case SequenceKind::mixed_coset: return "mixed_coset";
  }
  return "?";
}

/// ray: n x. drift: n x + floor(sqrt n) d. mixed_coset: n x + offsets[n mod size].
struct SequenceSpec {
  SequenceKind kind = SequenceKind::ray;
  IntVector drift;
  std::vector<IntVector> offsets;

  IntVector at(const IntVector& x, std::int64_t n) const {
    IntVector p = scale(n, x);
    switch (kind) {
      case SequenceKind::ray: return p;
      case SequenceKind::drift: {
        IntVector d = drift.empty() ? IntVector(x.size(), 0) : drift;
        if (drift.empty()) d[0] = 1;
        if (d.size() != x.size()) throw InputError("sequence drift has the wrong dimension");
        auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
        while (s * s > n) --s;
        while ((s + 1) * (s + 1) <= n) ++s;
        return add(p, scale(s, d));
      }
      case SequenceKind::mixed_coset: {
        if (offsets.empty()) throw InputError("mixed_coset sequence needs offsets");
        const auto& o = offsets[static_cast<std::size_t>(n) % offsets.size()];
        if (o.size() != x.size()) throw InputError("sequence offset has the wrong dimension");
        return add(p, o);
      }
    }
    return p;
  }
};

struct ShapeRow {
  std::int64_t n = 0;
  std::size_t rep = 0;
  IntVector point;
  double h_over_norm = 0;  // NaN when the model returned no value
};

struct ShapeLevel {
  std::int64_t n = 0;
  std::size_t used = 0, excluded = 0;
  double mean = 0, stderr_ = 0;
  double mean_deviation = 0, max_deviation = 0;
};

struct ShapeTable {
  std::vector<ShapeRow> rows;  // sorted by (n, rep)
  std::vector<ShapeLevel> levels;
  double max_deviation_at_largest = 0;
  double mean_deviation_at_largest = 0;
  /// Least-squares slope of the mean deviation against log2 n.
  double trend_slope = 0;
};

/// h(x_n)/|x_n|_1 along a sequence with asymptotic direction x, compared with q_ref.
template <SubadditiveModel M>
ShapeTable shape_diagnostic(const M& model, const IntVector& x, const SequenceSpec& seq,
                            const std::vector<std::int64_t>& ns, double q_ref, std::size_t reps,
                            std::uint64_t master_seed, std::size_t threads = 1) {
  if (ns.empty()) throw InputError("shape_diagnostic: no levels");
  if (reps == 0) throw InputError("shape_diagnostic: reps must be positive");
  std::vector<IntVector> points;
  for (auto n : ns) {
    if (n < 1) throw InputError("shape_diagnostic: levels must be positive");
    auto p = seq.at(x, n);
    if (!model.contains(p)) throw SequenceOutOfSemigroup(n);
    if (l1_norm(p) == 0) throw InputError("shape_diagnostic: sequence point has zero norm");
    points.push_back(std::move(p));
  }
  ShapeTable t;
  t.rows.resize(ns.size() * reps);
  parallel_for(t.rows.size(), threads, [&](std::size_t idx) {
    const std::size_t i = idx / reps, r = idx % reps;
    auto h = model.evaluate(points[i], replication_seed(master_seed, r));
    t.rows[idx] = {ns[i], r, points[i],
                   h ? *h / static_cast<double>(l1_norm(points[i])) : std::numeric_limits<double>::quiet_NaN()};
  });
  for (std::size_t i = 0; i < ns.size(); ++i) {
    LevelEstimate lv;
    ShapeLevel s;
    s.n = ns[i];
    for (std::size_t r = 0; r < reps; ++r) {
      const double v = t.rows[i * reps + r].h_over_norm;
      lv.values.push_back(v);
      if (!std::isnan(v)) s.max_deviation = std::max(s.max_deviation, std::abs(v - q_ref));
    }
    summarize(lv);
    s.used = lv.used;
    s.excluded = lv.excluded;
    s.mean = lv.mean;
    s.stderr_ = lv.stderr_;
    s.mean_deviation = std::abs(lv.mean - q_ref);
    t.levels.push_back(s);
  }
  t.max_deviation_at_largest = t.levels.back().max_deviation;
  t.mean_deviation_at_largest = t.levels.back().mean_deviation;
  if (ns.size() > 1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(ns.size());
    for (const auto& s : t.levels) {
      const double lx = std::log2(static_cast<double>(s.n));
      sx += lx;
      sy += s.mean_deviation;
      sxx += lx * lx;
      sxy += lx * s.mean_deviation;
    }
    const double den = m * sxx - sx * sx;
    t.trend_slope = den != 0 ? (m * sxy - sx * sy) / den : 0.0;
  }
  return t;
}

}  // namespace conegauge
