#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>

#include "conegauge/errors.hpp"
#include "conegauge/models/hashing.hpp"
#include "conegauge/rational.hpp"

namespace conegauge {

template <std::size_t Dim>
using LatticePoint = std::array<std::int64_t, Dim>;

struct ConstantLaw {
  double c = 1.0;
};
struct ExponentialLaw {
  double rate = 1.0;
};
struct UniformLaw {
  double lo = 0.0, hi = 1.0;
};
/// v1 with probability p, v0 otherwise.
struct TwoPointLaw {
  double p = 0.5, v0 = 0.0, v1 = 1.0;
};

using WeightLaw = std::variant<ConstantLaw, ExponentialLaw, UniformLaw, TwoPointLaw>;

inline void validate(const WeightLaw& law) {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  std::visit(
      [&](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, ConstantLaw>) {
          if (!finite_nonneg(l.c)) throw InputError("constant law needs c >= 0");
        } else if constexpr (std::is_same_v<L, ExponentialLaw>) {
          if (!(std::isfinite(l.rate) && l.rate > 0.0)) throw InputError("exponential law needs rate > 0");
        } else if constexpr (std::is_same_v<L, UniformLaw>) {
          if (!finite_nonneg(l.lo) || !finite_nonneg(l.hi) || l.hi < l.lo)
            throw InputError("uniform law needs 0 <= lo <= hi");
        } else {
          if (!(l.p >= 0.0 && l.p <= 1.0) || !finite_nonneg(l.v0) || !finite_nonneg(l.v1))
            throw InputError("two-point law needs p in [0,1] and nonnegative values");
        }
      },
      law);
}

inline double sample(const WeightLaw& law, std::uint64_t h) {
  return std::visit(
      [&](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, ConstantLaw>)
          return l.c;
        else if constexpr (std::is_same_v<L, ExponentialLaw>)
          return -std::log(to_unit(h)) / l.rate;
        else if constexpr (std::is_same_v<L, UniformLaw>)
          return l.lo + (l.hi - l.lo) * to_unit(h);
        else
          return to_unit(h) < l.p ? l.v1 : l.v0;
      },
      law);
}

/// Weights are stored as integer multiples of 2^-32 so that path sums are exact
/// and subadditivity can be checked without rounding slack.
inline constexpr double kTicksPerUnit = 4294967296.0;

inline std::int64_t to_ticks(double w) { return std::llround(w * kTicksPerUnit); }
inline double from_ticks(std::int64_t t) { return static_cast<double>(t) / kTicksPerUnit; }

/// i.i.d. edge weights on Z^Dim. The weight of the edge {v, v + e_axis} is a hash
/// of (seed, axis, v + shift); shifting the field is therefore the action f^x.
template <std::size_t Dim = 2>
class WeightField {
 public:
  WeightField(std::uint64_t seed, WeightLaw law) : seed_(seed), law_(law) {
    validate(law_);
    shift_.fill(0);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  const WeightLaw& law() const noexcept { return law_; }
  const LatticePoint<Dim>& shift() const noexcept { return shift_; }

  WeightField shifted(const LatticePoint<Dim>& x) const {
    WeightField f = *this;
    for (std::size_t i = 0; i < Dim; ++i) f.shift_[i] += x[i];
    return f;
  }

  WeightField shifted(const IntVector& x) const {
    if (x.size() != Dim) throw InputError("WeightField: shift dimension mismatch");
    LatticePoint<Dim> p;
    for (std::size_t i = 0; i < Dim; ++i) p[i] = x[i];
    return shifted(p);
  }

  /// Absolute (unshifted) coordinates of the lower endpoint of an edge.
  LatticePoint<Dim> absolute(const LatticePoint<Dim>& lower) const {
    LatticePoint<Dim> a;
    for (std::size_t i = 0; i < Dim; ++i) a[i] = lower[i] + shift_[i];
    return a;
  }

  /// Weight in ticks of the edge {lower, lower + e_axis}.
  std::int64_t ticks(const LatticePoint<Dim>& lower, std::size_t axis) const {
    std::array<std::int64_t, Dim + 1> key;
    key[0] = static_cast<std::int64_t>(axis);
    for (std::size_t i = 0; i < Dim; ++i) key[i + 1] = lower[i] + shift_[i];
    return to_ticks(sample(law_, hash_key(seed_, key)));
  }

  double weight(const LatticePoint<Dim>& lower, std::size_t axis) const { return from_ticks(ticks(lower, axis)); }

 private:
  std::uint64_t seed_;
  WeightLaw law_;
  LatticePoint<Dim> shift_;
};

}  // namespace conegauge
