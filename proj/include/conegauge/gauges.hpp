#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "conegauge/errors.hpp"
#include "conegauge/exact_linalg.hpp"
#include "conegauge/monoids.hpp"
#include "conegauge/rational.hpp"

namespace conegauge {

/// Gauge value with a symmetric uncertainty; exact oracles use halfwidth 0.
/// The value -∞ is carried by a flag since Rational has no infinities.
template <class Scalar>
struct GaugeValue {
  Scalar value{};
  Scalar halfwidth{};
  bool minus_infinity = false;

  static GaugeValue negative_infinity() { return {Scalar{}, Scalar{}, true}; }
};

/// A (possibly estimated) Z-gauge on the points of a generated monoid.
template <class Scalar>
class GaugeOracle {
 public:
  using Fn = std::function<GaugeValue<Scalar>(const IntVector&)>;

  GaugeOracle(Fn fn, std::shared_ptr<const GeneratedMonoid> domain)
      : fn_(std::move(fn)), domain_(std::move(domain)) {
    if (!domain_) throw InputError("GaugeOracle: null domain");
  }

  GaugeValue<Scalar> operator()(const IntVector& x) const { return fn_(x); }
  const GeneratedMonoid& domain() const noexcept { return *domain_; }

 private:
  Fn fn_;
  std::shared_ptr<const GeneratedMonoid> domain_;
};

template <class Scalar>
struct ExtendedValue {
  GaugeValue<Scalar> value;
  Integer k;  // smallest natural with k·x ∈ S
};

/// q*(x) = q(kx)/k for the smallest natural k <= cap with kx ∈ S.
template <class Scalar>
ExtendedValue<Scalar> qgauge_extend(const GaugeOracle<Scalar>& q, const RationalVector& x, const Integer& cap = 64) {
  if (x.size() != q.domain().dim()) throw InputError("qgauge_extend: dimension mismatch");
  const Integer den = x.common_denominator();
  for (Integer k = den; k <= cap; k += den) {
    IntVector kx = (Rational(k) * x).to_ints();
    if (!q.domain().contains(kx)) continue;
    GaugeValue<Scalar> v = q(kx);
    if (!v.minus_infinity) {
      Scalar div;
      if constexpr (std::is_same_v<Scalar, Rational>)
        div = Rational(k);
      else
        div = static_cast<Scalar>(k.get_d());
      v.value = v.value / div;
      v.halfwidth = v.halfwidth / div;
    }
    return {v, k};
  }
  throw NotInSStar(cap.fits_slong_p() ? cap.get_si() : -1);
}

template <class Scalar>
struct GaugeBounds {
  RationalVector point;
  GaugeValue<Scalar> lower;
  GaugeValue<Scalar> upper;
  int refinement = 0;
  /// Simplex realizing the upper bound: point = Σ weights_i vertices_i.
  std::vector<RationalVector> vertices;
  std::vector<Rational> weights;
};

/// Extension of a Z-gauge to S* and bounds for it on O = rint(cone(S)).
///
/// Upper bounds come from S-simplices centred at the query point: vertices
/// x ± ε e_i and x ∓ ε Σ e_i for a basis e of lin(S), with ε = ε_0 2^{-level}.
/// Convexity makes the bound nonincreasing as ε shrinks. Once any probe returns
/// -∞ the extension is -∞ on all of O and every later query reports it.
template <class Scalar>
class GaugeExtension {
 public:
  explicit GaugeExtension(GaugeOracle<Scalar> q, Integer cap = 64)
      : q_(std::move(q)), cap_(std::move(cap)), minus_inf_(std::make_shared<std::atomic<bool>>(false)) {
    const auto& g = q_.domain().cone().rational_generators();
    for (auto i : rank_and_basis(g).basis_indices) basis_.push_back(g[i]);
  }

  const GaugeOracle<Scalar>& oracle() const noexcept { return q_; }
  bool degenerate() const noexcept { return minus_inf_->load(); }

  /// q* at a point of S*; the search cap scales with the point's denominator.
  GaugeValue<Scalar> extend(const RationalVector& x) const {
    auto v = qgauge_extend(q_, x, cap_ * x.common_denominator()).value;
    if (v.minus_infinity) minus_inf_->store(true);
    return v;
  }

  GaugeBounds<Scalar> bounds_at(const RationalVector& x, int refinement) const {
    if (refinement < 0) throw InputError("gauge_bounds_at: negative refinement");
    if (asymptotic_cone_membership(x, q_.domain()) != ConePosition::interior) throw NotInteriorPoint();
    GaugeBounds<Scalar> out;
    out.point = x;
    out.refinement = refinement;
    auto contaminated = [&] {
      out.lower = out.upper = GaugeValue<Scalar>::negative_infinity();
      return out;
    };
    if (degenerate()) return contaminated();
    out.lower = extend(x);
    if (out.lower.minus_infinity) return contaminated();

    const Rational eps0 = initial_step(x);
    const std::size_t k = basis_.size();
    const Rational weight = Rational(1, static_cast<long>(k + 1));
    bool have_upper = false;
    Rational eps = eps0;
    for (int level = 0; level <= refinement; ++level, eps /= 2) {
      for (int sign : {1, -1}) {
        auto verts = simplex(x, Rational(sign) * eps);
        GaugeValue<Scalar> sum{};
        for (const auto& v : verts) {
          auto qv = extend(v);
          if (qv.minus_infinity) return contaminated();
          sum.value = sum.value + qv.value;
          sum.halfwidth = sum.halfwidth + qv.halfwidth;
        }
        sum.value = sum.value * scalar(weight);
        sum.halfwidth = sum.halfwidth * scalar(weight);
        if (!have_upper || sum.value < out.upper.value) {
          out.upper = sum;
          out.vertices = verts;
          out.weights.assign(k + 1, weight);
          have_upper = true;
        }
      }
    }
    return out;
  }

 private:
  static Scalar scalar(const Rational& r) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      return r;
    else
      return static_cast<Scalar>(r.get_d());
  }

  // Vertices x - ε Σ e_i, x + ε e_1, ..., x + ε e_k; their centroid is x.
  std::vector<RationalVector> simplex(const RationalVector& x, const Rational& eps) const {
    RationalVector esum = RationalVector::zero(x.size());
    for (const auto& e : basis_) esum = esum + e;
    std::vector<RationalVector> v{x - eps * esum};
    for (const auto& e : basis_) v.push_back(x + eps * e);
    return v;
  }

  // Largest 2^{-j} for which both mirrored simplices have all vertices in O.
  Rational initial_step(const RationalVector& x) const {
    Rational eps = 1;
    for (int j = 0; j < 64; ++j, eps /= 2) {
      bool ok = true;
      for (int sign : {1, -1}) {
        for (const auto& v : simplex(x, Rational(sign) * eps))
          if (asymptotic_cone_membership(v, q_.domain()) != ConePosition::interior) ok = false;
      }
      if (ok) return eps;
    }
    throw Error("gauge_bounds_at: no enclosing S-simplex found");
  }

  GaugeOracle<Scalar> q_;
  Integer cap_;
  std::vector<RationalVector> basis_;
  std::shared_ptr<std::atomic<bool>> minus_inf_;
};

template <class Scalar>
GaugeBounds<Scalar> gauge_bounds_at(const GaugeExtension<Scalar>& ext, const RationalVector& x, int refinement) {
  return ext.bounds_at(x, refinement);
}

/// Exact L1-norm gauge on the given monoid (a convenient exact oracle).
inline GaugeOracle<Rational> l1_gauge(std::shared_ptr<const GeneratedMonoid> domain) {
  return GaugeOracle<Rational>(
      [](const IntVector& x) {
        return GaugeValue<Rational>{Rational(static_cast<long>(l1_norm(x))), Rational(0), false};
      },
      std::move(domain));
}

}  // namespace conegauge
