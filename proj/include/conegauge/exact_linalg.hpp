#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conegauge/errors.hpp"
#include "conegauge/rational.hpp"

namespace conegauge {

/// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  /// Matrix whose columns are the given vectors.
  static RationalMatrix from_columns(std::span<const RationalVector> cols) {
    if (cols.empty()) return {};
    RationalMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw InputError("dimension mismatch");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RationalVector column(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return RationalVector(std::move(c));
  }
  RationalVector row(std::size_t i) const {
    return RationalVector(std::vector<Rational>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_));
  }

  RationalMatrix transposed() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(a(i, k)) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
    if (a.cols_ != x.size()) throw InputError("matrix shape mismatch");
    std::vector<Rational> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return RationalVector(std::move(y));
  }
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Determinant by fraction-free (Bareiss) elimination with first-nonzero pivoting.
inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline RationalMatrix inverse(RationalMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("inverse of a non-square matrix");
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) throw InputError("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(p, j));
        std::swap(inv(c, j), inv(p, j));
      }
    const Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

struct RankAndBasis {
  std::size_t rank = 0;
  std::vector<std::size_t> basis_indices;
};

/// Greedy left-to-right selection of a maximal linearly independent subfamily.
inline RankAndBasis rank_and_basis(std::span<const RationalVector> vectors) {
  if (vectors.empty()) throw InputError("rank_and_basis: empty family");
  const std::size_t m = vectors.front().size();
  struct Row {
    std::size_t pivot;
    std::vector<Rational> v;
  };
  std::vector<Row> echelon;
  RankAndBasis out;
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    if (vectors[idx].size() != m) throw InputError("rank_and_basis: dimension mismatch");
    std::vector<Rational> r = vectors[idx].coords();
    for (const auto& e : echelon) {
      if (sgn(r[e.pivot]) == 0) continue;
      const Rational f = r[e.pivot];
      for (std::size_t i = 0; i < m; ++i) r[i] -= f * e.v[i];
    }
    std::size_t p = 0;
    while (p < m && sgn(r[p]) == 0) ++p;
    if (p == m) continue;
    const Rational piv = r[p];
    for (auto& c : r) c /= piv;
    echelon.push_back({p, std::move(r)});
    out.basis_indices.push_back(idx);
  }
  out.rank = out.basis_indices.size();
  return out;
}

inline std::size_t rank(std::span<const RationalVector> vectors) {
  return vectors.empty() ? 0 : rank_and_basis(vectors).rank;
}

/// Exact coefficients s with x = Σ s_i basis_i. Throws NotInSpan when x is
/// outside span(basis) and InputError when the basis is dependent.
inline std::vector<Rational> coordinates_in_basis(const RationalVector& x,
                                                  std::span<const RationalVector> basis) {
  const std::size_t m = x.size();
  const std::size_t k = basis.size();
  if (k == 0) {
    if (!x.is_zero()) throw NotInSpan();
    return {};
  }
  // Augmented m x (k+1) system.
  RationalMatrix a(m, k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != m) throw InputError("coordinates_in_basis: dimension mismatch");
    for (std::size_t i = 0; i < m; ++i) a(i, j) = basis[j][i];
  }
  for (std::size_t i = 0; i < m; ++i) a(i, k) = x[i];

  std::vector<std::size_t> pivot_row(k);
  std::size_t r = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = r;
    while (p < m && sgn(a(p, c)) == 0) ++p;
    if (p == m) throw InputError("coordinates_in_basis: basis is linearly dependent");
    if (p != r)
      for (std::size_t j = 0; j <= k; ++j) std::swap(a(r, j), a(p, j));
    const Rational piv = a(r, c);
    for (std::size_t j = c; j <= k; ++j) a(r, j) /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j <= k; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_row[c] = r++;
  }
  for (std::size_t i = r; i < m; ++i)
    if (sgn(a(i, k)) != 0) throw NotInSpan();
  std::vector<Rational> s(k);
  for (std::size_t c = 0; c < k; ++c) s[c] = a(pivot_row[c], k);
  return s;
}

inline bool in_span(const RationalVector& x, std::span<const RationalVector> basis) {
  try {
    coordinates_in_basis(x, basis);
    return true;
  } catch (const NotInSpan&) {
    return false;
  }
}

struct NonsingularMinor {
  std::vector<std::size_t> rows;  // increasing coordinate indices j_1 < ... < j_k
  Rational det;
};

/// First k x k minor (lexicographic in the row indices) of the m x k matrix with
/// the given columns that has nonzero determinant.
inline std::optional<NonsingularMinor> first_nonsingular_minor(std::span<const RationalVector> cols) {
  const std::size_t k = cols.size();
  if (k == 0) return NonsingularMinor{{}, 1};
  const std::size_t m = cols.front().size();
  if (k > m) return std::nullopt;
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  while (true) {
    RationalMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = cols[j][rows[i]];
    Rational d = determinant(std::move(sub));
    if (sgn(d) != 0) return NonsingularMinor{rows, d};
    // next combination
    std::size_t i = k;
    while (i > 0 && rows[i - 1] == m - k + i - 1) --i;
    if (i == 0) return std::nullopt;
    ++rows[i - 1];
    for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
  }
}

/// Natural d such that coordinates of every integer point of span(basis) lie in
/// d^{-1}Z: |det| of the first nonsingular maximal square submatrix.
inline Integer denominator_bound(std::span<const RationalVector> basis) {
  for (const auto& b : basis)
    if (!b.is_integer()) throw InputError("denominator_bound: basis must be integral");
  if (basis.empty()) return 1;
  auto minor = first_nonsingular_minor(basis);
  if (!minor) throw InputError("denominator_bound: basis is linearly dependent");
  return Rational(abs(minor->det)).get_num();
}

/// Integer coordinates of lattice points in a fixed integral basis of a subspace,
/// computed through a precomputed adjugate so that no rational arithmetic is
/// needed per query: coords(x) = numerators(x) / det.
class IntegerCoordinates {
 public:
  IntegerCoordinates() = default;
  explicit IntegerCoordinates(std::span<const IntVector> basis) : basis_(basis.begin(), basis.end()) {
    if (basis_.empty()) return;
    dim_ = basis_.front().size();
    auto rb = to_rational(basis_);
    auto minor = first_nonsingular_minor(rb);
    if (!minor) throw InputError("IntegerCoordinates: basis is linearly dependent");
    rows_ = minor->rows;
    const std::size_t k = basis_.size();
    RationalMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = rb[j][rows_[i]];
    Rational det = minor->det;
    if (sgn(det) < 0) det = -det;
    RationalMatrix inv = inverse(sub);
    adj_.assign(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Rational e = inv(i, j) * det;
        if (e.get_den() != 1 || !e.get_num().fits_slong_p())
          throw InputError("IntegerCoordinates: adjugate overflow");
        adj_[i * k + j] = e.get_num().get_si();
      }
    det_ = det.get_num().get_si();
  }

  std::size_t size() const noexcept { return basis_.size(); }
  std::int64_t det() const noexcept { return det_; }
  const std::vector<IntVector>& basis() const noexcept { return basis_; }

  /// Numerators n with x = Σ (n_i/det) basis_i, or nullopt when x is outside the span.
  std::optional<IntVector> numerators(const IntVector& x) const {
    const std::size_t k = basis_.size();
    if (k == 0) {
      for (auto c : x)
        if (c != 0) return std::nullopt;
      return IntVector{};
    }
    IntVector n(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < k; ++j) s += adj_[i * k + j] * x[rows_[j]];
      n[i] = s;
    }
    for (std::size_t r = 0; r < dim_; ++r) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < k; ++i) s += n[i] * basis_[i][r];
      if (s != det_ * x[r]) return std::nullopt;
    }
    return n;
  }

 private:
  std::vector<IntVector> basis_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> rows_;
  std::vector<std::int64_t> adj_;
  std::int64_t det_ = 1;
};

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace conegauge
