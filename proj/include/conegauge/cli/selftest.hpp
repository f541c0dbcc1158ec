#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conegauge/cones.hpp"
#include "conegauge/exact_linalg.hpp"
#include "conegauge/gauges.hpp"
#include "conegauge/models/diagnostics.hpp"
#include "conegauge/models/fpp.hpp"
#include "conegauge/models/iarch.hpp"
#include "conegauge/monoids.hpp"

namespace conegauge::cli {

/// Counts checks of one invariant group. When the group is named by the
/// corruption hook, perturb() alters a computed value before it is compared.
class GroupCheck {
 public:
  GroupCheck(std::string name, bool corrupt) : name_(std::move(name)), corrupt_(corrupt) {}

  void expect(bool ok) {
    ++total_;
    if (!ok) ++failed_;
  }
  bool corrupt() const noexcept { return corrupt_; }
  template <class T>
  T perturb(T v, const T& delta) {
    if (corrupt_ && !perturbed_) {
      perturbed_ = true;
      v += delta;
    }
    return v;
  }
  bool passed() const noexcept { return failed_ == 0 && total_ > 0; }
  std::string line() const {
    std::ostringstream os;
    os << name_ << ": " << (passed() ? "pass" : "FAIL") << " (" << total_ - failed_ << "/" << total_ << " checks)";
    return os.str();
  }

 private:
  std::string name_;
  bool corrupt_;
  bool perturbed_ = false;
  std::size_t total_ = 0, failed_ = 0;
};

namespace selftest_detail {

inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Integer cofactor_det(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return Integer(static_cast<long>(m[0][0]));
  Integer d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    Integer t = Integer(static_cast<long>(m[0][j])) * cofactor_det(minor);
    d += (j % 2 ? -t : t);
  }
  return d;
}

inline std::vector<IntVector> random_gens(std::mt19937_64& rng, std::size_t k, std::size_t dim, int lo, int hi) {
  std::vector<IntVector> g(k, IntVector(dim));
  for (auto& v : g)
    for (auto& c : v) c = draw(rng, lo, hi);
  return g;
}

/// All points of sg(A) ∪ {0} with |x|_inf <= radius. Paths are kept inside a box
/// widened by 2·dim·max|a|_inf, which loses nothing by the Steinitz lemma.
inline std::set<IntVector> semigroup_ball(const std::vector<IntVector>& gens, std::int64_t radius) {
  std::int64_t amax = 0;
  for (const auto& a : gens) amax = std::max(amax, linf_norm(a));
  const std::size_t dim = gens.front().size();
  const std::int64_t box = radius + 2 * static_cast<std::int64_t>(dim) * amax;
  std::set<IntVector> seen{IntVector(dim, 0)};
  std::vector<IntVector> frontier{IntVector(dim, 0)};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& p : frontier)
      for (const auto& a : gens) {
        auto q = add(p, a);
        if (linf_norm(q) <= box && seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  std::set<IntVector> out;
  for (const auto& p : seen)
    if (linf_norm(p) <= radius) out.insert(p);
  return out;
}

inline void linalg(GroupCheck& g) {
  std::mt19937_64 rng(101);
  for (int inst = 0; inst < 60; ++inst) {
    const std::size_t n = 1 + inst % 4;
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
    RationalMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = draw(rng, -6, 6);
        r(i, j) = Rational(static_cast<long>(m[i][j]));
      }
    Rational d = g.perturb(determinant(r), Rational(1));
    g.expect(d == Rational(cofactor_det(m)));
  }
  for (int inst = 0; inst < 40; ++inst) {
    auto b = random_gens(rng, 2, 3, -4, 4);
    auto rb = to_rational(b);
    if (rank(rb) < 2) continue;
    std::vector<Rational> c{make_rational(draw(rng, -9, 9), draw(rng, 1, 4)), make_rational(draw(rng, -9, 9), 3)};
    g.expect(coordinates_in_basis(combine(c, rb, 3), rb) == c);
  }
}

inline void cones(GroupCheck& g) {
  std::mt19937_64 rng(102);
  for (int inst = 0; inst < 40; ++inst) {
    const std::size_t dim = 2 + inst % 2;
    auto gens = random_gens(rng, 1 + inst % 4, dim, -3, 3);
    PolyhedralCone c(gens);
    for (int q = 0; q < 15; ++q) {
      std::vector<Rational> x(dim);
      for (auto& v : x) v = make_rational(draw(rng, -6, 6), draw(rng, 1, 3));
      RationalVector xv(x);
      auto m = c.membership(xv);
      if (auto* cert = std::get_if<ConeCertificate>(&m)) {
        bool ok = true;
        for (const auto& s : cert->coefficients) ok = ok && sgn(s) >= 0;
        auto coeffs = cert->coefficients;
        if (!coeffs.empty()) coeffs[0] = g.perturb(coeffs[0], Rational(1));
        g.expect(ok && combine(coeffs, c.rational_generators(), dim) == xv);
      } else {
        const auto& v = std::get<SeparatingFunctional>(m).v;
        bool ok = sgn(g.perturb(dot(v, xv), Rational(1000))) < 0;
        for (const auto& a : c.rational_generators()) ok = ok && sgn(dot(v, a)) >= 0;
        g.expect(ok);
      }
    }
  }
}

inline void monoids(GroupCheck& g) {
  std::mt19937_64 rng(103);
  const std::int64_t R = 4;
  for (int inst = 0; inst < 30; ++inst) {
    auto gens = random_gens(rng, 1 + inst % 3, 2, -2, 2);
    GeneratedMonoid S(gens);
    const auto truth = semigroup_ball(gens, R);
    for (std::int64_t x = -R; x <= R; ++x)
      for (std::int64_t y = -R; y <= R; ++y) {
        IntVector p{x, y};
        auto w = S.membership(p);
        bool member = w.has_value();
        if (inst == 0 && x == 0 && y == 0 && g.corrupt()) member = !member;
        g.expect(member == (truth.count(p) > 0));
        if (w) g.expect(S.evaluate(*w) == p);
      }
    // d·x ∈ sg(A) for cone points
    const Integer d = scaling_factor(S);
    if (!d.fits_slong_p() || d.get_si() > 64) continue;
    for (std::int64_t x = -3; x <= 3; ++x)
      for (std::int64_t y = -3; y <= 3; ++y) {
        IntVector p{x, y};
        if (!S.cone().contains(RationalVector::from_ints(p))) continue;
        g.expect(S.contains(scale(d.get_si(), p)));
      }
  }
}

inline void gauges(GroupCheck& g) {
  auto domain = std::make_shared<const GeneratedMonoid>(std::vector<IntVector>{{2, 0}, {0, 3}, {1, 1}});
  GaugeExtension<Rational> ext(l1_gauge(domain));
  std::mt19937_64 rng(104);
  for (int q = 0; q < 30; ++q) {
    RationalVector x{make_rational(draw(rng, 1, 9), draw(rng, 1, 4)), make_rational(draw(rng, 1, 9), draw(rng, 1, 4))};
    const Rational truth = x[0] + x[1];
    auto v = ext.extend(x);
    g.expect(!v.minus_infinity && g.perturb(v.value, Rational(1, 7)) == truth);
    auto v2 = ext.extend(Rational(3) * x);
    g.expect(v2.value == Rational(3) * v.value);
    auto b = ext.bounds_at(x, 3);
    g.expect(b.lower.value <= truth && truth <= b.upper.value);
  }
}

inline void fpp(GroupCheck& g) {
  std::mt19937_64 rng(105);
  WeightField<2> constant(7, ConstantLaw{1.5});
  for (int q = 0; q < 20; ++q) {
    IntVector x{draw(rng, -8, 8), draw(rng, -8, 8)};
    auto r = fpp_passage_time(constant, FppQuery{x});
    g.expect(g.perturb(r.value(), 0.25) == 1.5 * static_cast<double>(l1_norm(x)));
  }
  // Truncated passage times against Bellman-Ford on the diamond |v|_1 <= c.
  const std::int64_t c = 4;
  for (int inst = 0; inst < 10; ++inst) {
    WeightField<2> field(200 + inst, ExponentialLaw{1.0});
    std::map<IntVector, std::int64_t> dist;
    for (std::int64_t x = -c; x <= c; ++x)
      for (std::int64_t y = -c; y <= c; ++y)
        if (std::abs(x) + std::abs(y) <= c) dist[{x, y}] = detail::kInfTicks;
    dist[{0, 0}] = 0;
    for (std::size_t round = 0; round < dist.size(); ++round)
      for (auto& [p, d] : dist) {
        if (d == detail::kInfTicks) continue;
        for (std::size_t axis = 0; axis < 2; ++axis)
          for (int s : {1, -1}) {
            IntVector q = p;
            q[axis] += s;
            auto it = dist.find(q);
            if (it == dist.end()) continue;
            LatticePoint<2> lower{std::min(p[0], q[0]), std::min(p[1], q[1])};
            it->second = std::min(it->second, d + field.ticks(lower, axis));
          }
      }
    for (const auto& [p, d] : dist) {
      auto r = fpp_passage_time(field, FppQuery{p, FppVariant::truncated, c});
      g.expect(r.ticks == d);
    }
    IntVector x{draw(rng, -4, 4), draw(rng, -4, 4)}, y{draw(rng, -4, 4), draw(rng, -4, 4)};
    g.expect(fpp_subadditivity_check(field, x, y, FppVariant::full).holds);
  }
}

inline void iarch(GroupCheck& g) {
  IarchSpec s{{0.5, 0.3, 0.2}, 17, LognormalNoise{0.4}, 0, false};
  const std::int64_t N = 8;
  auto t = iarch_eta(s, N, N);
  t.log_eta(2, 3) = g.perturb(t.log_eta(2, 3), 1e-3);
  // η_{k,n} = Σ over 0 = t_0 < ... < t_k = n of Π a_{t_i - t_{i-1}} ε_{t_i}.
  std::function<double(std::int64_t, std::int64_t)> brute = [&](std::int64_t k, std::int64_t n) -> double {
    if (k == 0) return n == 0 ? 1.0 : 0.0;
    double sum = 0;
    for (std::int64_t j = 1; j <= n && j <= static_cast<std::int64_t>(s.a.size()); ++j)
      sum += s.a[static_cast<std::size_t>(j - 1)] * brute(k - 1, n - j);
    return sum * std::exp(log_noise(s, n));
  };
  for (std::int64_t k = 0; k <= N; ++k)
    for (std::int64_t n = 0; n <= N; ++n) {
      const double b = brute(k, n), e = t.eta(k, n);
      g.expect(b == 0 ? e == 0 : std::abs(e - b) <= 1e-12 * b);
    }
}

inline void diagnostics(GroupCheck& g) {
  std::mt19937_64 rng(106);
  for (int inst = 0; inst < 100; ++inst) {
    std::vector<double> z(1 + inst % 12);
    for (auto& v : z) v = static_cast<double>(draw(rng, -3, 3));
    double best = 0;
    for (std::size_t n = 1; n <= z.size(); ++n) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += z[i] - 0.5;
      best = std::max(best, s);
    }
    g.expect(g.perturb(truncated_sup(z, 0.5), 1.0) == best);
  }
  for (std::int64_t n = 1; n <= 6; ++n)
    g.expect(sphere_max([](const IntVector&) { return 3.0; }, n) == 3.0 / static_cast<double>(n));
}

}  // namespace selftest_detail

struct SelftestReport {
  std::string text;
  bool passed = true;
};

inline const std::vector<std::string>& selftest_groups() {
  static const std::vector<std::string> g{"exact_linalg", "cones", "monoids", "gauges", "fpp", "iarch", "diagnostics"};
  return g;
}

/// Runs every group; `corrupt` names a group whose computed values get perturbed.
inline SelftestReport selftest(const std::string& corrupt = "") {
  using Fn = void (*)(GroupCheck&);
  const Fn fns[] = {selftest_detail::linalg, selftest_detail::cones,  selftest_detail::monoids,
                    selftest_detail::gauges, selftest_detail::fpp,    selftest_detail::iarch,
                    selftest_detail::diagnostics};
  SelftestReport rep;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < selftest_groups().size(); ++i) {
    GroupCheck g(selftest_groups()[i], selftest_groups()[i] == corrupt);
    try {
      fns[i](g);
    } catch (const std::exception&) {
      g.expect(false);
    }
    rep.text += g.line() + "\n";
    if (!g.passed()) ++failed;
  }
  rep.passed = failed == 0;
  rep.text += rep.passed ? "selftest: all groups passed\n"
                         : "selftest: " + std::to_string(failed) + " group(s) failed\n";
  return rep;
}

}  // namespace conegauge::cli
