#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conegauge/rational.hpp"

namespace conegauge {

/// The group gp(A) = Z a_1 + ... + Z a_k, reduced once to a column echelon form
/// G U = [H | 0] by unimodular column operations. Membership and integer
/// witnesses then come from forward substitution on the pivot rows of H.
class IntegerLattice {
 public:
  IntegerLattice() = default;
  IntegerLattice(std::span<const IntVector> generators, std::size_t dim)
      : dim_(dim), k_(generators.size()) {
    for (const auto& g : generators)
      if (g.size() != dim) throw InputError("IntegerLattice: dimension mismatch");
    // g(i, j): row i, column j. Columns are generators.
    std::vector<Integer> g(dim * k_);
    for (std::size_t j = 0; j < k_; ++j)
      for (std::size_t i = 0; i < dim; ++i) g[i * k_ + j] = static_cast<long>(generators[j][i]);
    std::vector<Integer> u(k_ * k_);
    for (std::size_t j = 0; j < k_; ++j) u[j * k_ + j] = 1;
    auto G = [&](std::size_t i, std::size_t j) -> Integer& { return g[i * k_ + j]; };
    auto U = [&](std::size_t i, std::size_t j) -> Integer& { return u[i * k_ + j]; };
    auto col_op = [&](std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                      const Integer& r, const Integer& s) {
      // (col_a, col_b) <- (p col_a + q col_b, r col_a + s col_b), det = ps - qr = ±1
      for (std::size_t i = 0; i < dim; ++i) {
        Integer x = G(i, a), y = G(i, b);
        G(i, a) = p * x + q * y;
        G(i, b) = r * x + s * y;
      }
      for (std::size_t i = 0; i < k_; ++i) {
        Integer x = U(i, a), y = U(i, b);
        U(i, a) = p * x + q * y;
        U(i, b) = r * x + s * y;
      }
    };

    std::size_t c = 0;
    for (std::size_t row = 0; row < dim && c < k_; ++row) {
      for (std::size_t j = c + 1; j < k_; ++j) {
        if (G(row, j) == 0) continue;
        Integer x = G(row, c), y = G(row, j), gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        // new col_c = s col_c + t col_j ; new col_j = -(y/g) col_c + (x/g) col_j
        Integer yg = y / gg, xg = x / gg;
        col_op(c, j, s, t, -yg, xg);
      }
      if (G(row, c) == 0) continue;
      if (G(row, c) < 0) {
        for (std::size_t i = 0; i < dim; ++i) G(i, c) = -G(i, c);
        for (std::size_t i = 0; i < k_; ++i) U(i, c) = -U(i, c);
      }
      pivot_rows_.push_back(row);
      ++c;
    }
    rank_ = c;
    h_.assign(dim * rank_, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < rank_; ++j) h_[i * rank_ + j] = G(i, j);
    u_ = std::move(u);
  }

  std::size_t rank() const noexcept { return rank_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Integer coefficients c with Σ c_j a_j = x, or nullopt if x ∉ gp(A).
  std::optional<std::vector<Integer>> solve(const IntVector& x) const {
    if (x.size() != dim_) throw InputError("IntegerLattice: dimension mismatch");
    std::vector<Integer> y(rank_);
    for (std::size_t j = 0; j < rank_; ++j) {
      const std::size_t r = pivot_rows_[j];
      Integer acc = static_cast<long>(x[r]);
      for (std::size_t i = 0; i < j; ++i) acc -= H(r, i) * y[i];
      const Integer& p = H(r, j);
      if (!mpz_divisible_p(acc.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
      y[j] = acc / p;
    }
    for (std::size_t r = 0; r < dim_; ++r) {
      Integer acc = 0;
      for (std::size_t j = 0; j < rank_; ++j) acc += H(r, j) * y[j];
      if (acc != static_cast<long>(x[r])) return std::nullopt;
    }
    std::vector<Integer> coeffs(k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) coeffs[i] += u_[i * k_ + j] * y[j];
    return coeffs;
  }

  bool contains(const IntVector& x) const { return solve(x).has_value(); }

 private:
  const Integer& H(std::size_t i, std::size_t j) const { return h_[i * rank_ + j]; }

  std::size_t dim_ = 0, k_ = 0, rank_ = 0;
  std::vector<std::size_t> pivot_rows_;
  std::vector<Integer> h_;
  std::vector<Integer> u_;
};

}  // namespace conegauge
