#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "conegauge/errors.hpp"

namespace conegauge {

using Integer = mpz_class;
using Rational = mpq_class;

/// Lattice point of Z^m.
using IntVector = std::vector<std::int64_t>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InputError("zero denominator");
  Rational q{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

/// Immutable point of Q^m. Coordinates are always canonical fractions.
class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::size_t dim) : coords_(dim) {}
  explicit RationalVector(std::vector<Rational> coords) : coords_(std::move(coords)) {
    for (auto& c : coords_) c.canonicalize();
  }
  RationalVector(std::initializer_list<Rational> coords) : coords_(coords) {
    for (auto& c : coords_) c.canonicalize();
  }

  static RationalVector from_ints(std::span<const std::int64_t> xs) {
    std::vector<Rational> c;
    c.reserve(xs.size());
    for (auto v : xs) c.emplace_back(static_cast<long>(v));
    return RationalVector(std::move(c));
  }
  static RationalVector from_ints(std::initializer_list<std::int64_t> xs) {
    return from_ints(std::span<const std::int64_t>(xs.begin(), xs.size()));
  }
  static RationalVector zero(std::size_t dim) { return RationalVector(dim); }

  std::size_t size() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (sgn(c) != 0) return false;
    return true;
  }
  bool is_integer() const {
    for (const auto& c : coords_)
      if (c.get_den() != 1) return false;
    return true;
  }
  /// Least common multiple of the coordinate denominators.
  Integer common_denominator() const {
    Integer l = 1;
    for (const auto& c : coords_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
  }
  /// Requires is_integer(); coordinates must fit in 64 bits.
  IntVector to_ints() const {
    IntVector out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) {
      if (c.get_den() != 1) throw InputError("vector is not integral");
      if (!c.get_num().fits_slong_p()) throw InputError("coordinate overflows 64 bits");
      out.push_back(c.get_num().get_si());
    }
    return out;
  }
  std::vector<double> to_doubles() const {
    std::vector<double> out;
    for (const auto& c : coords_) out.push_back(c.get_d());
    return out;
  }

  friend bool operator==(const RationalVector& a, const RationalVector& b) {
    return a.coords_ == b.coords_;
  }
  friend RationalVector operator+(const RationalVector& a, const RationalVector& b) {
    check_dims(a, b);
    std::vector<Rational> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return RationalVector(std::move(c));
  }
  friend RationalVector operator-(const RationalVector& a, const RationalVector& b) {
    check_dims(a, b);
    std::vector<Rational> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return RationalVector(std::move(c));
  }
  friend RationalVector operator-(const RationalVector& a) {
    std::vector<Rational> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return RationalVector(std::move(c));
  }
  friend RationalVector operator*(const Rational& s, const RationalVector& a) {
    std::vector<Rational> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return RationalVector(std::move(c));
  }
  friend Rational dot(const RationalVector& a, const RationalVector& b) {
    check_dims(a, b);
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const RationalVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os << ')';
  }

 private:
  static void check_dims(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw InputError("dimension mismatch");
  }

  std::vector<Rational> coords_;
};

/// Σ coeffs[i] * vectors[i]; empty input yields the zero vector of dimension `dim`.
inline RationalVector combine(std::span<const Rational> coeffs,
                              std::span<const RationalVector> vectors, std::size_t dim) {
  if (coeffs.size() != vectors.size()) throw InputError("coefficient count mismatch");
  std::vector<Rational> acc(dim);
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim) throw InputError("dimension mismatch");
    if (sgn(coeffs[j]) == 0) continue;
    for (std::size_t i = 0; i < dim; ++i) acc[i] += coeffs[j] * vectors[j][i];
  }
  return RationalVector(std::move(acc));
}

inline std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::int64_t l1_norm(const IntVector& v) {
  std::int64_t s = 0;
  for (auto c : v) s += c < 0 ? -c : c;
  return s;
}

inline std::int64_t linf_norm(const IntVector& v) {
  std::int64_t s = 0;
  for (auto c : v) s = std::max(s, c < 0 ? -c : c);
  return s;
}

inline IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("dimension mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline IntVector sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("dimension mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline IntVector scale(std::int64_t s, const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

inline std::vector<RationalVector> to_rational(std::span<const IntVector> vs) {
  std::vector<RationalVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(RationalVector::from_ints(v));
  return out;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace conegauge
