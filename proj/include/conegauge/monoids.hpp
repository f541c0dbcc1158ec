#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "conegauge/cones.hpp"
#include "conegauge/errors.hpp"
#include "conegauge/exact_linalg.hpp"
#include "conegauge/exact_lp.hpp"
#include "conegauge/lattice.hpp"
#include "conegauge/rational.hpp"

namespace conegauge {

enum class MembershipMode { semigroup, group };

/// Coefficients over the generator list; nonnegative in semigroup mode.
using MonoidWitness = std::vector<Integer>;

/// sg(A) (plus 0 when contains_zero) for a finite A ⊂ Z^m.
///
/// Semigroup membership splits A into A_0 = {a : -a ∈ cone(A)} and A_1. On A_0
/// the semigroup is the group gp(A_0), decided by lattice reduction. On A_1 an
/// integral functional w vanishing on lin(A_0) and positive on A_1 bounds every
/// coefficient by w(x)/w(a), so the remaining enumeration is finite and complete.
class GeneratedMonoid {
 public:
  explicit GeneratedMonoid(std::vector<IntVector> generators, bool contains_zero = true)
      : cone_(generators), gens_(std::move(generators)), contains_zero_(contains_zero) {
    dim_ = gens_.front().size();
    a0_ = cone_.lineality_indices();
    a1_ = cone_.positive_indices();
    std::vector<IntVector> a0v;
    for (auto i : a0_) a0v.push_back(gens_[i]);
    a0_lattice_ = IntegerLattice(a0v, dim_);
    all_lattice_ = IntegerLattice(gens_, dim_);
    build_functional();
    for (auto i : a0_) neg_witness_.push_back(negation_witness(i));
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<IntVector>& generators() const noexcept { return gens_; }
  bool contains_zero() const noexcept { return contains_zero_; }
  const PolyhedralCone& cone() const noexcept { return cone_; }
  std::size_t lin_dim() const noexcept { return cone_.lin_dim(); }

  std::optional<MonoidWitness> membership(const IntVector& x,
                                          MembershipMode mode = MembershipMode::semigroup) const {
    if (x.size() != dim_) throw InputError("sg_membership: dimension mismatch");
    if (mode == MembershipMode::group) return all_lattice_.solve(x);
    return semigroup_witness(x);
  }

  bool contains(const IntVector& x) const { return membership(x).has_value(); }

  /// Exact recombination Σ c_i a_i.
  IntVector evaluate(const MonoidWitness& c) const {
    IntVector out(dim_, 0);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      Integer ci = c[i];
      if (!ci.fits_slong_p()) throw Error("witness coefficient overflow");
      for (std::size_t j = 0; j < dim_; ++j) out[j] += ci.get_si() * gens_[i][j];
    }
    return out;
  }

 private:
  void build_functional() {
    // w = w+ - w-, constraints w·a = 0 (a ∈ A_0), w·a - s_a = 1 (a ∈ A_1).
    const std::size_t m = dim_;
    const std::size_t rows = gens_.size();
    if (a1_.empty()) return;
    RationalMatrix M(rows, 2 * m + a1_.size());
    std::vector<Rational> rhs(rows);
    std::size_t r = 0;
    for (auto i : a0_) {
      for (std::size_t j = 0; j < m; ++j) {
        M(r, j) = static_cast<long>(gens_[i][j]);
        M(r, m + j) = -static_cast<long>(gens_[i][j]);
      }
      ++r;
    }
    for (std::size_t s = 0; s < a1_.size(); ++s) {
      for (std::size_t j = 0; j < m; ++j) {
        M(r, j) = static_cast<long>(gens_[a1_[s]][j]);
        M(r, m + j) = -static_cast<long>(gens_[a1_[s]][j]);
      }
      M(r, 2 * m + s) = -1;
      rhs[r] = 1;
      ++r;
    }
    auto res = solve_nonnegative(M, RationalVector(rhs));
    auto* pt = std::get_if<FeasiblePoint>(&res);
    if (!pt) throw Error("GeneratedMonoid: no positive functional on A_1 (inconsistent lineality)");
    std::vector<Rational> w(m);
    for (std::size_t j = 0; j < m; ++j) w[j] = pt->y[j] - pt->y[m + j];
    auto wi = primitive_integer(RationalVector(w)).to_ints();
    w_ = wi;
    for (auto i : a1_) {
      std::int64_t v = 0;
      for (std::size_t j = 0; j < m; ++j) v += wi[j] * gens_[i][j];
      if (v <= 0) throw Error("GeneratedMonoid: functional is not positive on A_1");
      wa_.push_back(v);
    }
  }

  // Nonnegative integer coefficients (over all of A) representing -a_i for a_i ∈ A_0.
  MonoidWitness negation_witness(std::size_t i) const {
    auto res = cone_.membership(-RationalVector::from_ints(gens_[i]));
    const auto& s = std::get<ConeCertificate>(res).coefficients;
    Integer den = 1;
    for (const auto& c : s) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    // -a = -D a + (D-1) a with -D a = Σ (D s_j) a_j.
    MonoidWitness w(gens_.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      Rational v = s[j] * den;
      w[j] = v.get_num();
    }
    w[i] += den - 1;
    return w;
  }

  std::optional<MonoidWitness> semigroup_witness(const IntVector& x) const {
    const bool is_zero = std::all_of(x.begin(), x.end(), [](auto c) { return c == 0; });
    if (is_zero) {
      if (contains_zero_) return MonoidWitness(gens_.size());
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (std::all_of(gens_[i].begin(), gens_[i].end(), [](auto c) { return c == 0; })) {
          MonoidWitness w(gens_.size());
          w[i] = 1;
          return w;
        }
      if (a0_.empty()) return std::nullopt;
      MonoidWitness w = neg_witness_.front();
      w[a0_.front()] += 1;
      return w;
    }
    std::int64_t budget = 0;
    for (std::size_t j = 0; j < w_.size(); ++j) budget += w_[j] * x[j];
    if (budget < 0) return std::nullopt;
    if (a1_.empty() && budget != 0) return std::nullopt;

    std::vector<std::int64_t> n(a1_.size(), 0);
    std::optional<MonoidWitness> found;
    IntVector residual = x;
    search(0, budget, n, residual, found);
    return found;
  }

  void search(std::size_t pos, std::int64_t budget, std::vector<std::int64_t>& n, IntVector& residual,
              std::optional<MonoidWitness>& found) const {
    if (found) return;
    if (pos == a1_.size()) {
      if (budget != 0) return;
      finish(n, residual, found);
      return;
    }
    const auto& a = gens_[a1_[pos]];
    const std::int64_t wa = wa_[pos];
    if (pos + 1 == a1_.size()) {
      if (budget % wa != 0) return;
      const std::int64_t c = budget / wa;
      for (std::size_t j = 0; j < dim_; ++j) residual[j] -= c * a[j];
      n[pos] = c;
      finish(n, residual, found);
      for (std::size_t j = 0; j < dim_; ++j) residual[j] += c * a[j];
      n[pos] = 0;
      return;
    }
    const std::int64_t max_c = budget / wa;
    for (std::int64_t c = 0; c <= max_c && !found; ++c) {
      n[pos] = c;
      search(pos + 1, budget - c * wa, n, residual, found);
      for (std::size_t j = 0; j < dim_; ++j) residual[j] -= a[j];
    }
    for (std::size_t j = 0; j < dim_; ++j) residual[j] += (max_c + 1) * a[j];
    n[pos] = 0;
  }

  void finish(const std::vector<std::int64_t>& n, const IntVector& residual,
              std::optional<MonoidWitness>& found) const {
    MonoidWitness w(gens_.size());
    if (a0_.empty()) {
      if (std::any_of(residual.begin(), residual.end(), [](auto c) { return c != 0; })) return;
    } else {
      auto c = a0_lattice_.solve(residual);
      if (!c) return;
      for (std::size_t j = 0; j < a0_.size(); ++j) {
        const Integer& cj = (*c)[j];
        if (cj >= 0) {
          w[a0_[j]] += cj;
        } else {
          const Integer times = -cj;
          for (std::size_t t = 0; t < gens_.size(); ++t) w[t] += times * neg_witness_[j][t];
        }
      }
    }
    for (std::size_t j = 0; j < a1_.size(); ++j) w[a1_[j]] += static_cast<long>(n[j]);
    found = std::move(w);
  }

  PolyhedralCone cone_;
  std::vector<IntVector> gens_;
  bool contains_zero_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> a0_, a1_;
  IntegerLattice a0_lattice_, all_lattice_;
  IntVector w_;
  std::vector<std::int64_t> wa_;
  std::vector<MonoidWitness> neg_witness_;
};

inline std::optional<MonoidWitness> sg_membership(const IntVector& x, const GeneratedMonoid& monoid,
                                                  MembershipMode mode = MembershipMode::semigroup) {
  return monoid.membership(x, mode);
}

/// d with d·x ∈ sg(A) for every x ∈ cone(A) ∩ Z^m: the product of denominator
/// bounds over all maximal linearly independent subsets of A.
inline Integer scaling_factor(const GeneratedMonoid& monoid) {
  const auto& g = monoid.cone().rational_generators();
  const std::size_t k = monoid.lin_dim();
  Integer d = 1;
  if (k == 0) return d;
  for_each_subset(g.size(), k, [&](const std::vector<std::size_t>& sel) {
    std::vector<RationalVector> b;
    for (auto i : sel) b.push_back(g[i]);
    if (rank(b) == k) d *= denominator_bound(b);
    return false;
  });
  return d;
}

/// Points of a finite subset of Z_+^I not dominated by another point. Output is
/// ordered by coordinate sum, ties in input order; duplicates collapse.
inline std::vector<IntVector> minimal_elements(std::span<const IntVector> points) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
    for (auto c : points[i])
      if (c < 0) throw InputError("minimal_elements: negative coordinate");
    if (points[i].size() != points.front().size()) throw InputError("minimal_elements: dimension mismatch");
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return l1_norm(points[a]) < l1_norm(points[b]);
  });
  std::vector<IntVector> out;
  for (auto i : order) {
    const auto& p = points[i];
    bool dominated = false;
    for (const auto& q : out) {
      bool le = true;
      for (std::size_t j = 0; j < p.size() && le; ++j) le = q[j] <= p[j];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

/// S ∩ cone(A) written as T + gp(A_0) + ∪_B sg(B) (cone branch, anchor ∈ A_1) or as
/// T + gp(A) (group branch, A_1 empty). T is computed from window points only.
struct StructuralDecomposition {
  enum class Branch { cone, group };

  Branch branch = Branch::cone;
  std::vector<IntVector> A;
  std::vector<IntVector> T;
  std::vector<std::size_t> a0;
  std::vector<std::vector<std::size_t>> families;
  std::int64_t window = 0;

  /// Exact test of x ∈ T + gp(A_0) + ∪_B sg(B) (resp. T + gp(A)).
  bool covers(const IntVector& x) const {
    for (const auto& t : T) {
      IntVector r = sub(x, t);
      if (branch == Branch::group) {
        if (lattice_.contains(r)) return true;
        continue;
      }
      for (std::size_t f = 0; f < families.size(); ++f) {
        auto num = coords_[f].numerators(r);
        if (!num) break;  // r ∉ L, same for every family
        const std::int64_t D = coords_[f].det();
        IntVector rest = r;
        bool ok = true;
        for (std::size_t i = l0_size_; i < num->size() && ok; ++i) {
          if ((*num)[i] < 0 || (*num)[i] % D != 0) {
            ok = false;
            break;
          }
          const std::int64_t c = (*num)[i] / D;
          const auto& b = coords_[f].basis()[i];
          for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= c * b[j];
        }
        if (ok && lattice_.contains(rest)) return true;
      }
    }
    return false;
  }

  // Filled by structural_decomposition.
  IntegerLattice lattice_;                  // gp(A_0), or gp(A) in the group branch
  std::vector<IntegerCoordinates> coords_;  // per family: L_0 basis then B
  std::size_t l0_size_ = 0;
};

namespace detail {

// Visits all integer points of the box [-r, r]^m in lexicographic order.
template <class Fn>
void for_each_window_point(std::size_t m, std::int64_t r, Fn&& fn) {
  IntVector p(m, -r);
  while (true) {
    fn(static_cast<const IntVector&>(p));
    std::size_t i = m;
    while (i > 0 && p[i - 1] == r) p[--i] = -r;
    if (i == 0) return;
    ++p[i - 1];
  }
}

// Residue numerators t ∈ [0, D)^k of lattice points in the half-open
// parallelepiped spanned by the basis.
inline std::vector<IntVector> parallelepiped_residues(const IntegerCoordinates& K, std::size_t dim) {
  const std::int64_t D = K.det();
  const std::size_t k = K.size();
  std::vector<IntVector> out;
  double count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= static_cast<double>(D);
  if (count > 4e6) throw Error("structural_decomposition: residue enumeration too large");
  IntVector t(k, 0);
  while (true) {
    bool integral = true;
    for (std::size_t j = 0; j < dim && integral; ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < k; ++i) s += t[i] * K.basis()[i][j];
      integral = s % D == 0;
    }
    if (integral) out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == D - 1) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

inline IntVector residue_of(const IntVector& num, std::int64_t D) {
  IntVector r(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) r[i] = num[i] - floor_div(num[i], D) * D;
  return r;
}

// Residues reachable from 0 by adding residues of the given lattice points:
// the image of the monoid they generate in the finite quotient group.
inline std::set<IntVector> reachable_residues(const IntegerCoordinates& K,
                                              const std::vector<IntVector>& points) {
  const std::int64_t D = K.det();
  std::vector<IntVector> steps;
  for (const auto& p : points)
    if (auto n = K.numerators(p)) steps.push_back(residue_of(*n, D));
  std::set<IntVector> seen{IntVector(K.size(), 0)};
  std::vector<IntVector> frontier{IntVector(K.size(), 0)};
  while (!frontier.empty()) {
    IntVector cur = frontier.back();
    frontier.pop_back();
    for (const auto& s : steps) {
      IntVector nx(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) nx[i] = (cur[i] + s[i]) % D;
      if (seen.insert(nx).second) frontier.push_back(nx);
    }
  }
  return seen;
}

inline IntVector point_from_numerators(const IntegerCoordinates& K, const IntVector& t, std::size_t dim) {
  IntVector z(dim, 0);
  for (std::size_t j = 0; j < dim; ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * K.basis()[i][j];
    z[j] = s / K.det();
  }
  return z;
}

}  // namespace detail

/// Window-certified structural decomposition of S ∩ cone(A).
///
/// With an anchor in A_1, every x ∈ S_C in the window is split as
/// x = Σ floor(s_i) a_i + z over (L_0 basis, B); per residue class (B, z) the
/// minimal B-exponent vectors give T(B, z). Without A_1 the group branch picks
/// one representative per coset of gp(A). The result is then checked point by
/// point against S ∩ C over the window.
inline StructuralDecomposition structural_decomposition(const GeneratedMonoid& S, std::vector<IntVector> A,
                                                        std::optional<std::size_t> anchor,
                                                        std::int64_t window) {
  if (!S.contains_zero()) throw PreconditionError("structural_decomposition: S must be a monoid");
  if (window < 0) throw InputError("structural_decomposition: negative window");
  if (A.empty()) throw InputError("structural_decomposition: empty A");
  for (const auto& a : A)
    if (!S.contains(a)) throw PreconditionError("structural_decomposition: A is not a subset of S");
  const std::size_t m = S.dim();
  PolyhedralCone C(A);

  StructuralDecomposition out;
  out.A = A;
  out.window = window;
  out.a0 = C.lineality_indices();
  std::vector<IntVector> a0v;
  for (auto i : out.a0) a0v.push_back(A[i]);

  // Generators of S inside lin(A); their residues certify nonempty classes.
  std::vector<IntVector> s_gens_in_l;
  {
    auto basis_idx = rank_and_basis(C.rational_generators()).basis_indices;
    std::vector<IntVector> basis;
    for (auto i : basis_idx) basis.push_back(A[i]);
    IntegerCoordinates L(basis);
    for (const auto& g : S.generators())
      if (L.numerators(g)) s_gens_in_l.push_back(g);
  }

  if (C.positive_indices().empty()) {
    if (anchor && *anchor >= A.size()) throw InputError("anchor index out of range");
    out.branch = StructuralDecomposition::Branch::group;
    out.lattice_ = IntegerLattice(A, m);
    auto basis_idx = rank_and_basis(C.rational_generators()).basis_indices;
    std::vector<IntVector> basis;
    for (auto i : basis_idx) basis.push_back(A[i]);
    IntegerCoordinates K(basis);
    auto residues = detail::parallelepiped_residues(K, m);
    auto reachable = detail::reachable_residues(K, s_gens_in_l);

    // Coset representatives modulo gp(A): residue points first, then window points.
    std::vector<IntVector> reps;
    auto in_sc = [&](const IntVector& p) { return K.numerators(p).has_value() && S.contains(p); };
    auto known = [&](const IntVector& p) {
      for (const auto& r : reps)
        if (out.lattice_.contains(sub(p, r))) return true;
      return false;
    };
    for (const auto& t : residues) {
      IntVector z = detail::point_from_numerators(K, t, m);
      if (!known(z) && in_sc(z)) reps.push_back(z);
    }
    std::vector<IntVector> window_pts;
    detail::for_each_window_point(m, window, [&](const IntVector& p) {
      if (in_sc(p)) window_pts.push_back(p);
    });
    std::stable_sort(window_pts.begin(), window_pts.end(),
                     [](const IntVector& a, const IntVector& b) { return l1_norm(a) < l1_norm(b); });
    for (const auto& p : window_pts)
      if (!known(p)) reps.push_back(p);
    for (const auto& t : residues) {
      if (!reachable.count(t)) continue;
      if (!known(detail::point_from_numerators(K, t, m)))
        throw IncompleteWindow(detail::point_from_numerators(K, t, m));
    }
    out.T = std::move(reps);
    for (const auto& p : window_pts)
      if (!out.covers(p)) throw Error("structural_decomposition: window verification failed");
    return out;
  }

  if (!anchor) throw PreconditionError("structural_decomposition: A_1 is nonempty, an anchor is required");
  out.branch = StructuralDecomposition::Branch::cone;
  out.families = C.quotient_bases(*anchor);
  out.lattice_ = IntegerLattice(a0v, m);
  std::vector<IntVector> l0b;
  for (auto i : C.lineality_basis()) l0b.push_back(A[i]);
  out.l0_size_ = l0b.size();
  for (const auto& B : out.families) {
    std::vector<IntVector> basis = l0b;
    for (auto i : B) basis.push_back(A[i]);
    out.coords_.emplace_back(basis);
  }

  // Window points of S_C with their (family, residue) classes.
  auto in_cone_family = [&](const IntVector& p, std::size_t f) -> std::optional<IntVector> {
    auto num = out.coords_[f].numerators(p);
    if (!num) return std::nullopt;
    for (std::size_t i = out.l0_size_; i < num->size(); ++i)
      if ((*num)[i] < 0) return std::nullopt;
    return num;
  };
  std::map<std::pair<std::size_t, IntVector>, std::vector<std::pair<IntVector, IntVector>>> classes;
  std::vector<IntVector> window_pts;
  detail::for_each_window_point(m, window, [&](const IntVector& p) {
    bool in_c = false;
    for (std::size_t f = 0; f < out.families.size(); ++f) {
      auto num = in_cone_family(p, f);
      if (!num) continue;
      if (!in_c) {
        if (!S.contains(p)) return;
        in_c = true;
        window_pts.push_back(p);
      }
      const std::int64_t D = out.coords_[f].det();
      const auto& basis = out.coords_[f].basis();
      IntVector u = p;  // p minus its L_0 floor part
      IntVector exps;
      for (std::size_t i = 0; i < num->size(); ++i) {
        const std::int64_t fl = floor_div((*num)[i], D);
        if (i < out.l0_size_)
          for (std::size_t j = 0; j < m; ++j) u[j] -= fl * basis[i][j];
        else
          exps.push_back(fl);
      }
      classes[{f, detail::residue_of(*num, D)}].push_back({exps, u});
    }
  });

  std::set<IntVector> tset;
  for (auto& [key, members] : classes) {
    std::vector<IntVector> exps;
    for (const auto& e : members) exps.push_back(e.first);
    auto mins = minimal_elements(exps);
    for (const auto& mn : mins)
      for (const auto& e : members)
        if (e.first == mn) {
          tset.insert(e.second);
          break;
        }
  }
  out.T.assign(tset.begin(), tset.end());
  std::stable_sort(out.T.begin(), out.T.end(),
                   [](const IntVector& a, const IntVector& b) { return l1_norm(a) < l1_norm(b); });

  for (std::size_t f = 0; f < out.families.size(); ++f) {
    auto reachable = detail::reachable_residues(out.coords_[f], s_gens_in_l);
    for (const auto& r : reachable)
      if (!classes.count({f, r}))
        throw IncompleteWindow(detail::point_from_numerators(out.coords_[f], r, m));
  }
  for (const auto& p : window_pts)
    if (!out.covers(p)) throw Error("structural_decomposition: window verification failed");
  return out;
}

struct LinearizedHom {
  RationalMatrix matrix;
  Rational operator_norm_bound;

  RationalVector operator()(const RationalVector& x) const { return matrix * x; }
};

enum class Norm { l1, linf };

/// Linear extension of a homomorphism known on pairs (x, π(x)) whose x's span lin(S).
/// The matrix vanishes on the orthogonal complement of that span.
inline LinearizedHom linearize_homomorphism(std::span<const std::pair<IntVector, IntVector>> pairs,
                                            Norm norm = Norm::l1) {
  if (pairs.empty()) throw InputError("linearize_homomorphism: no pairs");
  const std::size_t m = pairs.front().first.size();
  const std::size_t l = pairs.front().second.size();
  std::vector<RationalVector> xs, ys;
  for (const auto& [x, y] : pairs) {
    if (x.size() != m || y.size() != l) throw InputError("linearize_homomorphism: dimension mismatch");
    xs.push_back(RationalVector::from_ints(x));
    ys.push_back(RationalVector::from_ints(y));
  }
  auto rb = rank_and_basis(xs);
  LinearizedHom hom;
  if (rb.rank == 0) {
    hom.matrix = RationalMatrix(l, m);
  } else {
    std::vector<RationalVector> bx, by;
    for (auto i : rb.basis_indices) {
      bx.push_back(xs[i]);
      by.push_back(ys[i]);
    }
    RationalMatrix X = RationalMatrix::from_columns(bx);
    RationalMatrix Y = RationalMatrix::from_columns(by);
    RationalMatrix Xt = X.transposed();
    hom.matrix = Y * inverse(Xt * X) * Xt;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    RationalVector implied = hom.matrix * xs[i];
    if (!(implied == ys[i])) throw NotAHomomorphism(xs[i].str(), ys[i].str(), implied.str());
  }
  Rational best = 0;
  const auto& M = hom.matrix;
  if (norm == Norm::l1) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < M.rows(); ++i) s += abs(M(i, j));
      if (s > best) best = s;
    }
  } else {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < M.cols(); ++j) s += abs(M(i, j));
      if (s > best) best = s;
    }
  }
  hom.operator_norm_bound = best;
  return hom;
}

enum class ConePosition { interior, boundary, outside };

inline const char* to_string(ConePosition p) {
  switch (p) {
    case ConePosition::interior: return "interior";
    case ConePosition::boundary: return "boundary";
    case ConePosition::outside: return "outside";
  }
  return "?";
}

/// Position of x relative to O = rint(cone(S)). x is interior iff it is a
/// combination of all generators with strictly positive coefficients; for each
/// generator a_i this is tested by the homogenized system A s = τ x, s_i = 1.
inline ConePosition asymptotic_cone_membership(const RationalVector& x, const GeneratedMonoid& S) {
  const auto& cone = S.cone();
  if (!cone.contains(x)) return ConePosition::outside;
  const std::size_t m = S.dim();
  const std::size_t k = cone.size();
  const auto& g = cone.rational_generators();
  for (std::size_t i = 0; i < k; ++i) {
    RationalMatrix M(m + 1, k + 1);
    std::vector<Rational> rhs(m + 1);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < k; ++j) M(r, j) = g[j][r];
      M(r, k) = -x[r];
    }
    M(m, i) = 1;
    rhs[m] = 1;
    if (!std::holds_alternative<FeasiblePoint>(solve_nonnegative(M, RationalVector(rhs))))
      return ConePosition::boundary;
  }
  return ConePosition::interior;
}

/// Basis of lin(S) taken from S* with x in the interior of its cone.
struct SCone {
  std::vector<RationalVector> generators;
  std::vector<Integer> multipliers;  // smallest n with n·b ∈ S
  std::vector<Rational> coordinates;  // of x, all > 0
};

/// Smallest natural n with n·b ∈ S for a rational b ∈ O (exists since O ∩ Q^m ⊂ S*).
inline Integer smallest_multiplier(const RationalVector& b, const GeneratedMonoid& S, const Integer& bound) {
  const Integer den = b.common_denominator();
  for (Integer j = 1; j <= bound; ++j) {
    Integer n = den * j;
    if (S.contains((Rational(n) * b).to_ints())) return n;
  }
  throw Error("smallest_multiplier: no multiple within the scaling bound");
}

inline SCone enclosing_s_cone(const RationalVector& x, const GeneratedMonoid& S,
                              const std::optional<LinearizedHom>& hom = std::nullopt) {
  if (x.size() != S.dim()) throw InputError("enclosing_s_cone: dimension mismatch");
  if (x.is_zero() || asymptotic_cone_membership(x, S) != ConePosition::interior) throw NotInteriorPoint();
  const auto& g = S.cone().rational_generators();
  std::optional<std::size_t> nontrivial;
  if (hom) {
    for (std::size_t i = 0; i < g.size() && !nontrivial; ++i)
      if (!(*hom)(g[i]).is_zero()) nontrivial = i;
    if (!nontrivial) throw NoNontrivialHom();
  }

  auto basis_idx = rank_and_basis(g).basis_indices;
  std::vector<RationalVector> e;
  for (auto i : basis_idx) e.push_back(g[i]);
  const std::size_t k = e.size();
  auto xi = coordinates_in_basis(x, e);
  Rational total = 0;
  for (const auto& c : xi) total += c;
  if (sgn(total) == 0) {
    for (std::size_t j = 0; j < k; ++j)
      if (sgn(xi[j]) != 0) {
        e[j] = -e[j];
        break;
      }
  }
  RationalVector esum = RationalVector::zero(x.size());
  for (const auto& v : e) esum = esum + v;

  // b_i = x + ε (k e_i - Σ e) satisfies Σ b_i = k x; ε halves until all b_i ∈ O.
  std::vector<RationalVector> b;
  Rational eps = 1;
  bool ok = false;
  for (int level = 0; level < 64 && !ok; ++level, eps /= 2) {
    b.clear();
    ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      RationalVector bi = x + eps * (Rational(static_cast<long>(k)) * e[i] - esum);
      if (asymptotic_cone_membership(bi, S) != ConePosition::interior) ok = false;
      b.push_back(std::move(bi));
    }
  }
  if (!ok) throw Error("enclosing_s_cone: perturbation did not converge");

  auto positive_coords = [&](const std::vector<RationalVector>& fam) -> std::optional<std::vector<Rational>> {
    if (rank(fam) != fam.size()) return std::nullopt;
    auto s = coordinates_in_basis(x, fam);
    for (const auto& c : s)
      if (sgn(c) <= 0) return std::nullopt;
    return s;
  };

  if (hom) {
    const RationalVector& a0 = g[*nontrivial];
    for (std::size_t i = 0; i < k; ++i) {
      if (!(*hom)(b[i]).is_zero()) continue;
      const RationalVector original = b[i];
      bool fixed = false;
      for (long n = 1; n <= (1L << 20) && !fixed; ++n) {
        b[i] = Rational(n) * original + a0;
        fixed = positive_coords(b).has_value();
      }
      if (!fixed) throw Error("enclosing_s_cone: no perturbation keeps x interior");
    }
  }

  auto coords = positive_coords(b);
  if (!coords) throw Error("enclosing_s_cone: construction lost positivity");
  SCone out;
  out.coordinates = std::move(*coords);
  const Integer d = scaling_factor(S);
  for (const auto& bi : b) out.multipliers.push_back(smallest_multiplier(bi, S, d));
  out.generators = std::move(b);
  return out;
}

}  // namespace conegauge
