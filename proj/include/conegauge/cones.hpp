#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "conegauge/errors.hpp"
#include "conegauge/exact_linalg.hpp"
#include "conegauge/exact_lp.hpp"
#include "conegauge/rational.hpp"

namespace conegauge {

/// Nonnegative coefficients over the generators, recombining exactly to the point.
struct ConeCertificate {
  std::vector<Rational> coefficients;
};

/// Linear functional v with v(a) >= 0 on every generator and v(x) < 0.
struct SeparatingFunctional {
  RationalVector v;
};

using ConeMembership = std::variant<ConeCertificate, SeparatingFunctional>;

inline bool is_member(const ConeMembership& m) { return std::holds_alternative<ConeCertificate>(m); }

/// Generator subset with nonnegative coefficients; indices refer to the cone's generator list.
struct CaratheodoryDecomposition {
  std::vector<std::size_t> subset;
  std::vector<Rational> coefficients;
};

struct LinealityDecomposition {
  RationalVector l0_part;
  std::vector<std::size_t> subset;
  std::vector<Rational> coefficients;
};

/// Visits all k-subsets of {0..n-1} in lexicographic order; stops when fn returns true.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// cone(A) for a finite A ⊂ Z^m. Generators are kept exactly as given, so
/// indices in certificates are stable. Lineality data is computed eagerly.
class PolyhedralCone {
 public:
  explicit PolyhedralCone(std::vector<IntVector> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw InputError("PolyhedralCone: no generators");
    dim_ = gens_.front().size();
    for (const auto& g : gens_)
      if (g.size() != dim_) throw InputError("PolyhedralCone: dimension mismatch");
    rgens_ = to_rational(gens_);
    matrix_ = RationalMatrix::from_columns(rgens_);
    lin_dim_ = rank(rgens_);

    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (is_member(membership(-rgens_[i])))
        lineality_.push_back(i);
      else
        positive_.push_back(i);
    }
    std::vector<RationalVector> a0;
    for (auto i : lineality_) a0.push_back(rgens_[i]);
    if (!a0.empty())
      for (auto j : rank_and_basis(a0).basis_indices) l0_basis_.push_back(lineality_[j]);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const std::vector<IntVector>& generators() const noexcept { return gens_; }
  const std::vector<RationalVector>& rational_generators() const noexcept { return rgens_; }
  /// A_0 = {a ∈ A : -a ∈ cone(A)}.
  const std::vector<std::size_t>& lineality_indices() const noexcept { return lineality_; }
  /// A_1 = A \ A_0.
  const std::vector<std::size_t>& positive_indices() const noexcept { return positive_; }
  /// Indices into A_0 forming a basis of the lineality space L_0.
  const std::vector<std::size_t>& lineality_basis() const noexcept { return l0_basis_; }
  std::size_t lin_dim() const noexcept { return lin_dim_; }
  std::size_t lineality_dim() const noexcept { return l0_basis_.size(); }
  bool pointed() const noexcept { return l0_basis_.empty(); }
  bool in_lineality(std::size_t i) const {
    return std::find(lineality_.begin(), lineality_.end(), i) != lineality_.end();
  }

  ConeMembership membership(const RationalVector& x) const {
    if (x.size() != dim_) throw InputError("cone_membership: dimension mismatch");
    auto r = solve_nonnegative(matrix_, x);
    if (auto* p = std::get_if<FeasiblePoint>(&r)) return ConeCertificate{std::move(p->y)};
    return SeparatingFunctional{primitive_integer(std::get<FarkasCertificate>(r).v)};
  }

  bool contains(const RationalVector& x) const { return is_member(membership(x)); }

  /// All B ⊂ A_1 containing `anchor` such that B together with the L_0 basis is a
  /// basis of lin(A), in lexicographic order of generator indices.
  std::vector<std::vector<std::size_t>> quotient_bases(std::size_t anchor) const {
    if (anchor >= gens_.size()) throw InputError("anchor index out of range");
    if (in_lineality(anchor)) throw PreconditionError("anchor lies in the lineality set A_0");
    const std::size_t q = lin_dim_ - l0_basis_.size();
    std::vector<std::vector<std::size_t>> out;
    for_each_subset(positive_.size(), q, [&](const std::vector<std::size_t>& sel) {
      std::vector<std::size_t> b;
      for (auto s : sel) b.push_back(positive_[s]);
      if (std::find(b.begin(), b.end(), anchor) == b.end()) return false;
      std::vector<RationalVector> family;
      for (auto i : l0_basis_) family.push_back(rgens_[i]);
      for (auto i : b) family.push_back(rgens_[i]);
      if (rank(family) == family.size()) out.push_back(std::move(b));
      return false;
    });
    return out;
  }

 private:
  std::vector<IntVector> gens_;
  std::vector<RationalVector> rgens_;
  RationalMatrix matrix_;
  std::size_t dim_ = 0, lin_dim_ = 0;
  std::vector<std::size_t> lineality_, positive_, l0_basis_;
};

inline ConeMembership cone_membership(const RationalVector& x, const PolyhedralCone& cone) {
  return cone.membership(x);
}

/// x = L_0 part + Σ_{b∈B} s_b b with s_b >= 0, anchor ∈ B, and B a basis of L/L_0.
/// The first B in lexicographic order that works is returned.
inline LinealityDecomposition lineality_decompose(const RationalVector& x, const PolyhedralCone& cone,
                                                  std::size_t anchor) {
  auto bases = cone.quotient_bases(anchor);
  if (!cone.contains(x)) throw NotMember("lineality_decompose: point is not in the cone");
  const auto& g = cone.rational_generators();
  const std::size_t p = cone.lineality_basis().size();
  for (const auto& b : bases) {
    std::vector<RationalVector> family;
    for (auto i : cone.lineality_basis()) family.push_back(g[i]);
    for (auto i : b) family.push_back(g[i]);
    auto s = coordinates_in_basis(x, family);
    bool ok = true;
    for (std::size_t i = p; i < s.size(); ++i)
      if (sgn(s[i]) < 0) ok = false;
    if (!ok) continue;
    std::vector<Rational> l0c(s.begin(), s.begin() + p);
    std::vector<RationalVector> l0v(family.begin(), family.begin() + p);
    return {combine(l0c, l0v, cone.dim()), b, std::vector<Rational>(s.begin() + p, s.end())};
  }
  throw Error("lineality_decompose: no quotient basis covers the point");
}

/// Carathéodory decomposition over a basis of lin(A) containing a fixed generator.
/// Requires a pointed cone and a nonzero anchor.
inline CaratheodoryDecomposition caratheodory_decompose(const RationalVector& x,
                                                        const PolyhedralCone& cone,
                                                        std::size_t anchor) {
  if (!cone.pointed()) throw PreconditionError("caratheodory_decompose: cone is not pointed");
  if (anchor >= cone.size()) throw InputError("anchor index out of range");
  if (cone.rational_generators()[anchor].is_zero())
    throw PreconditionError("caratheodory_decompose: anchor is the zero vector");
  auto d = lineality_decompose(x, cone, anchor);
  return {std::move(d.subset), std::move(d.coefficients)};
}

}  // namespace conegauge
