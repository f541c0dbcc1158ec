#pragma once

#include <variant>
#include <vector>

#include "conegauge/exact_linalg.hpp"

namespace conegauge {

/// Result of a feasibility query {y : M y = b, y >= 0}.
struct FeasiblePoint {
  std::vector<Rational> y;
};

/// Farkas certificate of infeasibility: v^T M >= 0 column-wise and v^T b < 0.
struct FarkasCertificate {
  RationalVector v;
};

using FeasibilityResult = std::variant<FeasiblePoint, FarkasCertificate>;

/// Phase-one simplex over Q with Bland's rule. Exact; never cycles.
inline FeasibilityResult solve_nonnegative(const RationalMatrix& m, const RationalVector& b) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  if (b.size() != rows) throw InputError("solve_nonnegative: shape mismatch");
  if (rows == 0) return FeasiblePoint{std::vector<Rational>(n)};

  // Tableau columns: n structural, rows artificial, 1 rhs.
  const std::size_t width = n + rows + 1;
  const std::size_t rhs = n + rows;
  std::vector<Rational> t(rows * width);
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return t[i * width + j]; };
  std::vector<int> flip(rows, 1);
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (sgn(b[i]) < 0) flip[i] = -1;
    for (std::size_t j = 0; j < n; ++j) at(i, j) = flip[i] * m(i, j);
    at(i, n + i) = 1;
    at(i, rhs) = flip[i] * b[i];
    basis[i] = n + i;
  }
  // Reduced costs for min Σ artificials; z[rhs] holds minus the objective.
  std::vector<Rational> z(width);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) z[j] -= at(i, j);
    z[rhs] -= at(i, rhs);
  }

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j)
      if (sgn(z[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (sgn(at(i, enter)) <= 0) continue;
      Rational ratio = at(i, rhs) / at(i, enter);
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a pivot.
    if (leave == rows) throw Error("solve_nonnegative: unbounded phase one");
    const Rational piv = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || sgn(at(i, enter)) == 0) continue;
      const Rational f = at(i, enter);
      for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(leave, j);
    }
    if (sgn(z[enter]) != 0) {
      const Rational f = z[enter];
      for (std::size_t j = 0; j < width; ++j) z[j] -= f * at(leave, j);
    }
    basis[leave] = enter;
  }

  if (sgn(z[rhs]) == 0) {
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < rows; ++i)
      if (basis[i] < n) y[basis[i]] = at(i, rhs);
    return FeasiblePoint{std::move(y)};
  }
  // Duals u_i = 1 - z[n+i]; v = -D u.
  std::vector<Rational> v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = -flip[i] * (Rational(1) - z[n + i]);
  return FarkasCertificate{RationalVector(std::move(v))};
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline RationalVector primitive_integer(const RationalVector& v) {
  Integer l = v.common_denominator();
  std::vector<Rational> c(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    c[i] = v[i] * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c[i].get_num_mpz_t());
  }
  if (g != 0)
    for (auto& x : c) x /= g;
  return RationalVector(std::move(c));
}

}  // namespace conegauge
