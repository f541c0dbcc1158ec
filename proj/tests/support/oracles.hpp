#pragma once

// Independent reference implementations used only by the tests. They share
// nothing with the library beyond the GMP number types.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<std::int64_t>;
using Mat = std::vector<std::vector<Q>>;

inline Q cofactor_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Q acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Q> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    Q term = m[0][j] * cofactor_det(minor);
    acc += (j % 2 == 0) ? term : Q(-term);
  }
  return acc;
}

inline void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (idx.size() == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

/// Coordinates of x in the columns `cols` (dimension m) by Cramer's rule on some
/// nonsingular k×k row selection, followed by a check of every row.
/// nullopt if the columns are dependent or x is outside their span.
inline std::optional<std::vector<Q>> solve_in_columns(const std::vector<std::vector<Q>>& cols,
                                                      const std::vector<Q>& x) {
  const std::size_t k = cols.size();
  const std::size_t m = x.size();
  if (k == 0) {
    for (const auto& v : x)
      if (v != 0) return std::nullopt;
    return std::vector<Q>{};
  }
  std::optional<std::vector<Q>> result;
  bool independent = false;
  for_each_combination(m, k, [&](const std::vector<std::size_t>& rows) {
    if (independent) return;
    Mat a(k, std::vector<Q>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) a[i][j] = cols[j][rows[i]];
    Q d = cofactor_det(a);
    if (d == 0) return;
    independent = true;
    std::vector<Q> s(k);
    for (std::size_t j = 0; j < k; ++j) {
      Mat aj = a;
      for (std::size_t i = 0; i < k; ++i) aj[i][j] = x[rows[i]];
      s[j] = cofactor_det(aj) / d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      Q acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += s[j] * cols[j][r];
      if (acc != x[r]) return;
    }
    result = s;
  });
  return result;
}

inline std::vector<Q> to_q(const Vec& v) {
  std::vector<Q> out;
  for (auto c : v) out.push_back(Q(static_cast<long>(c)));
  return out;
}

inline std::size_t rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  const std::size_t m = vs.front().size();
  for (std::size_t k = std::min(vs.size(), m); k > 0; --k) {
    bool found = false;
    for_each_combination(vs.size(), k, [&](const std::vector<std::size_t>& cs) {
      if (found) return;
      for_each_combination(m, k, [&](const std::vector<std::size_t>& rs) {
        if (found) return;
        Mat a(k, std::vector<Q>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) a[i][j] = Q(static_cast<long>(vs[cs[j]][rs[i]]));
        if (cofactor_det(a) != 0) found = true;
      });
    });
    if (found) return k;
  }
  return 0;
}

/// x ∈ cone(A) iff x is a nonnegative combination of some independent subset.
inline bool in_cone(const std::vector<Vec>& gens, const std::vector<Q>& x) {
  bool zero = true;
  for (const auto& c : x)
    if (c != 0) zero = false;
  if (zero) return true;
  bool found = false;
  for (std::size_t k = 1; k <= gens.size() && !found; ++k)
    for_each_combination(gens.size(), k, [&](const std::vector<std::size_t>& sel) {
      if (found) return;
      std::vector<std::vector<Q>> cols;
      for (auto i : sel) cols.push_back(to_q(gens[i]));
      auto s = solve_in_columns(cols, x);
      if (!s) return;
      for (const auto& c : *s)
        if (c < 0) return;
      found = true;
    });
  return found;
}

/// Points of sg(A) (with 0 when with_zero) inside |p|_∞ <= radius, by breadth-first
/// search over a larger box. Steinitz' lemma lets any sum a_{i1}+...+a_{in} = x be
/// reordered so that every partial sum stays within 2·dim·max|a|_∞ of the segment
/// [0, x], so the search box below loses no representation.
inline std::set<Vec> semigroup_points(const std::vector<Vec>& gens, std::int64_t radius, bool with_zero = true) {
  const std::size_t m = gens.front().size();
  std::int64_t amax = 0;
  for (const auto& g : gens)
    for (auto c : g) amax = std::max<std::int64_t>(amax, c < 0 ? -c : c);
  const std::int64_t big = radius + 2 * static_cast<std::int64_t>(m) * amax;
  auto inside = [&](const Vec& p, std::int64_t r) {
    for (auto c : p)
      if (c < -r || c > r) return false;
    return true;
  };
  std::set<Vec> seen;
  std::vector<Vec> frontier;
  auto visit = [&](const Vec& p) {
    if (inside(p, big) && seen.insert(p).second) frontier.push_back(p);
  };
  if (with_zero)
    visit(Vec(m, 0));
  else
    for (const auto& g : gens) visit(g);
  while (!frontier.empty()) {
    Vec p = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Vec q = p;
      for (std::size_t j = 0; j < m; ++j) q[j] += g[j];
      visit(q);
    }
  }
  std::set<Vec> out;
  for (const auto& p : seen)
    if (inside(p, radius)) out.insert(p);
  return out;
}

inline void for_each_box_point(std::size_t m, std::int64_t radius, const std::function<void(const Vec&)>& fn) {
  Vec p(m, -radius);
  while (true) {
    fn(p);
    std::size_t i = 0;
    while (i < m && p[i] == radius) p[i++] = -radius;
    if (i == m) return;
    ++p[i];
  }
}

inline std::vector<Vec> random_generators(std::mt19937_64& rng, std::size_t count, std::size_t dim, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Vec> g(count, Vec(dim));
  for (auto& v : g)
    for (auto& c : v) c = d(rng);
  return g;
}

/// Definitional sum over compositions i_1 + ... + i_k = n with i_j >= 1:
/// Π a_{i_j} · Π ε_{i_1 + ... + i_j}.
inline double eta_by_compositions(const std::vector<double>& a, const std::function<double(int)>& eps, int k, int n) {
  if (k == 0) return n == 0 ? 1.0 : 0.0;
  double total = 0;
  std::function<void(int, int, double)> rec = [&](int parts, int sum, double acc) {
    if (parts == k) {
      if (sum == n) total += acc;
      return;
    }
    for (int i = 1; sum + i <= n; ++i) {
      const double ai = i <= static_cast<int>(a.size()) ? a[i - 1] : 0.0;
      if (ai == 0) continue;
      rec(parts + 1, sum + i, acc * ai * eps(sum + i));
    }
  };
  rec(0, 0, 1.0);
  return total;
}

/// Minimal elements of a finite point set under the coordinatewise order, by
/// comparing every pair.
inline std::set<Vec> minimal_by_pairs(const std::vector<Vec>& pts) {
  std::set<Vec> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      if (q == p) continue;
      bool le = true;
      for (std::size_t j = 0; j < p.size(); ++j) le = le && q[j] <= p[j];
      if (le) dominated = true;
    }
    if (!dominated) out.insert(p);
  }
  return out;
}

}  // namespace oracle
