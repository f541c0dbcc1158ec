#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "conegauge/errors.hpp"
#include "conegauge/models/weight_field.hpp"

namespace conegauge {

enum class FppVariant { full, truncated, fixed_length };

inline const char* to_string(FppVariant v) {
  switch (v) {
    case FppVariant::full: return "full";
    case FppVariant::truncated: return "truncated";
    case FppVariant::fixed_length: return "fixed_length";
  }
  return "?";
}

struct FppQuery {
  IntVector target;
  FppVariant variant = FppVariant::full;
  std::int64_t c = 0;  // truncated: path vertices satisfy |v|_1 <= c
  std::int64_t k = 0;  // fixed_length: number of steps
  std::int64_t box_margin = 1;
};

struct FppOptions {
  std::int64_t max_radius = 4096;
};

struct FppResult {
  bool reachable = false;
  std::int64_t ticks = 0;
  bool certified = false;
  std::int64_t radius = 0;

  double value() const { return reachable ? from_ticks(ticks) : std::numeric_limits<double>::infinity(); }
};

template <std::size_t Dim>
struct TouchedEdge {
  LatticePoint<Dim> lower;  // absolute coordinates
  std::size_t axis;
  auto operator<=>(const TouchedEdge&) const = default;
};

namespace detail {

inline constexpr std::int64_t kInfTicks = std::numeric_limits<std::int64_t>::max() / 4;

/// Dense indexing of the box [-r, r]^Dim.
template <std::size_t Dim>
struct Box {
  std::int64_t r;
  std::int64_t side;
  std::size_t volume;

  explicit Box(std::int64_t radius) : r(radius), side(2 * radius + 1), volume(1) {
    for (std::size_t i = 0; i < Dim; ++i) volume *= static_cast<std::size_t>(side);
  }
  bool inside(const LatticePoint<Dim>& p) const {
    for (auto c : p)
      if (c < -r || c > r) return false;
    return true;
  }
  std::size_t index(const LatticePoint<Dim>& p) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < Dim; ++i) idx = idx * side + static_cast<std::size_t>(p[i] + r);
    return idx;
  }
  LatticePoint<Dim> point(std::size_t idx) const {
    LatticePoint<Dim> p;
    for (std::size_t i = Dim; i-- > 0;) {
      p[i] = static_cast<std::int64_t>(idx % side) - r;
      idx /= side;
    }
    return p;
  }
};

template <std::size_t Dim>
std::int64_t l1(const LatticePoint<Dim>& p) {
  std::int64_t s = 0;
  for (auto c : p) s += c < 0 ? -c : c;
  return s;
}

template <std::size_t Dim>
LatticePoint<Dim> to_point(const IntVector& x) {
  if (x.size() != Dim) throw InputError("fpp: target dimension mismatch");
  LatticePoint<Dim> p;
  for (std::size_t i = 0; i < Dim; ++i) p[i] = x[i];
  return p;
}

template <std::size_t Dim>
struct EdgeWeights {
  const WeightField<Dim>& field;
  std::vector<TouchedEdge<Dim>>* touched;

  // Weight of the edge between v and its neighbour v + dir·e_axis.
  std::int64_t operator()(const LatticePoint<Dim>& v, std::size_t axis, int dir) const {
    LatticePoint<Dim> lower = v;
    if (dir < 0) --lower[axis];
    if (touched) touched->push_back({field.absolute(lower), axis});
    return field.ticks(lower, axis);
  }
};

// Dijkstra from the origin inside the box, stopping when the target is settled.
// exit_bound receives the cheapest cost of leaving the box seen from a settled vertex.
template <std::size_t Dim>
std::int64_t dijkstra(const EdgeWeights<Dim>& w, const Box<Dim>& box, const LatticePoint<Dim>& target,
                      std::int64_t l1_cap, std::int64_t& exit_bound) {
  // Sparse distances: only vertices within the target's passage time are stored.
  std::unordered_map<std::size_t, std::int64_t> dist;
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  LatticePoint<Dim> origin{};
  const std::size_t src = box.index(origin), dst = box.index(target);
  dist[src] = 0;
  heap.push({0, src});
  exit_bound = kInfTicks;
  while (!heap.empty()) {
    auto [d, vi] = heap.top();
    heap.pop();
    if (d != dist.at(vi)) continue;
    if (vi == dst) return d;
    const auto v = box.point(vi);
    for (std::size_t axis = 0; axis < Dim; ++axis) {
      for (int dir : {1, -1}) {
        auto u = v;
        u[axis] += dir;
        if (l1_cap >= 0 && l1(u) > l1_cap) continue;
        const std::int64_t nd = d + w(v, axis, dir);
        if (!box.inside(u)) {
          exit_bound = std::min(exit_bound, nd);
          continue;
        }
        const std::size_t ui = box.index(u);
        auto [it, fresh] = dist.try_emplace(ui, nd);
        if (fresh || nd < it->second) {
          it->second = nd;
          heap.push({nd, ui});
        }
      }
    }
  }
  return kInfTicks;
}

template <std::size_t Dim>
FppResult fixed_length(const EdgeWeights<Dim>& w, const LatticePoint<Dim>& target, std::int64_t k) {
  FppResult out;
  out.certified = true;
  out.radius = k;
  if (l1(target) > k) return out;
  const Box<Dim> box(k);
  std::vector<std::int64_t> cur(box.volume, kInfTicks), nxt(box.volume);
  cur[box.index(LatticePoint<Dim>{})] = 0;
  for (std::int64_t step = 0; step < k; ++step) {
    std::fill(nxt.begin(), nxt.end(), kInfTicks);
    for (std::size_t vi = 0; vi < box.volume; ++vi) {
      if (cur[vi] == kInfTicks) continue;
      const auto v = box.point(vi);
      for (std::size_t axis = 0; axis < Dim; ++axis) {
        for (int dir : {1, -1}) {
          auto u = v;
          u[axis] += dir;
          // Vertices farther than the remaining steps cannot return to the target.
          std::int64_t back = 0;
          for (std::size_t i = 0; i < Dim; ++i) back += std::abs(u[i] - target[i]);
          if (!box.inside(u) || back > k - step - 1) continue;
          const std::size_t ui = box.index(u);
          nxt[ui] = std::min(nxt[ui], cur[vi] + w(v, axis, dir));
        }
      }
    }
    std::swap(cur, nxt);
  }
  const std::int64_t d = cur[box.index(target)];
  if (d != kInfTicks) {
    out.reachable = true;
    out.ticks = d;
  }
  return out;
}

}  // namespace detail

/// Passage time from the origin to the query target on the given field.
/// Passing `touched` records every edge whose weight was read.
template <std::size_t Dim>
FppResult fpp_passage_time(const WeightField<Dim>& field, const FppQuery& q, const FppOptions& opt = {},
                           std::vector<TouchedEdge<Dim>>* touched = nullptr) {
  const auto target = detail::to_point<Dim>(q.target);
  const detail::EdgeWeights<Dim> w{field, touched};
  const std::int64_t norm = detail::l1(target);
  switch (q.variant) {
    case FppVariant::fixed_length:
      if (q.k < 0) throw InputError("fixed_length: k must be >= 0");
      return detail::fixed_length(w, target, q.k);
    case FppVariant::truncated: {
      if (q.c < 0) throw InputError("truncated: c must be >= 0");
      FppResult out;
      out.certified = true;
      out.radius = q.c;
      if (norm > q.c) return out;
      std::int64_t exit_bound;
      const std::int64_t d = detail::dijkstra(w, detail::Box<Dim>(q.c), target, q.c, exit_bound);
      if (d != detail::kInfTicks) {
        out.reachable = true;
        out.ticks = d;
      }
      return out;
    }
    case FppVariant::full: {
      if (q.box_margin < 0) throw InputError("box_margin must be >= 0");
      std::int64_t r = std::max<std::int64_t>(1, norm * (1 + q.box_margin));
      while (true) {
        std::int64_t exit_bound;
        const std::int64_t d = detail::dijkstra(w, detail::Box<Dim>(r), target, -1, exit_bound);
        if (d <= exit_bound) return {true, d, true, r};
        if (2 * r > opt.max_radius) throw BoxLimit(from_ticks(d), r);
        r *= 2;
      }
    }
  }
  throw InputError("fpp: unknown variant");
}

struct SubadditivityReport {
  FppResult whole, first, second;
  bool holds = false;
};

/// Evaluates h(x+y), h(x) and h(y) on the field shifted by x, all on one ω, and
/// checks h(x+y) <= h(x) + h(y; f^x ω) exactly in ticks. For fixed_length the
/// step counts k and l are added on the left.
template <std::size_t Dim>
SubadditivityReport fpp_subadditivity_check(const WeightField<Dim>& field, const IntVector& x, const IntVector& y,
                                            FppVariant variant, std::int64_t k = 0, std::int64_t l = 0,
                                            const FppOptions& opt = {}) {
  if (variant == FppVariant::truncated)
    throw InputError("subadditivity check: truncated passage times are not subadditive");
  if (x.size() != Dim || y.size() != Dim) throw InputError("subadditivity check: dimension mismatch");
  FppQuery qx{x, variant, 0, k}, qy{y, variant, 0, l}, qxy{add(x, y), variant, 0, k + l};
  SubadditivityReport r;
  r.whole = fpp_passage_time(field, qxy, opt);
  r.first = fpp_passage_time(field, qx, opt);
  r.second = fpp_passage_time(field.shifted(x), qy, opt);
  if (!r.first.reachable || !r.second.reachable)
    r.holds = true;
  else
    r.holds = r.whole.reachable && r.whole.ticks <= r.first.ticks + r.second.ticks;
  return r;
}

}  // namespace conegauge
