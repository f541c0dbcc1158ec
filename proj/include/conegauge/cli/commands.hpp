#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "conegauge/cli/config.hpp"
#include "conegauge/cli/output.hpp"
#include "conegauge/cones.hpp"
#include "conegauge/gauges.hpp"
#include "conegauge/monoids.hpp"
#include "conegauge/models/diagnostics.hpp"
#include "conegauge/models/estimation.hpp"
#include "conegauge/models/fpp.hpp"
#include "conegauge/models/iarch.hpp"
#include "conegauge/parallel.hpp"

namespace conegauge::cli {

using Job = std::function<std::vector<OutputFile>()>;

struct RunContext {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

inline constexpr std::int64_t kMaxCoordinate = 1'000'000;
inline constexpr std::int64_t kMaxReps = 1'000'000;

template <class F>
auto checked(F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
}

inline WeightLaw parse_law(Section s) {
  const auto type = s.choice("type", {"constant", "exponential", "uniform", "two_point"});
  WeightLaw law;
  if (type == "constant") {
    law = ConstantLaw{s.real("c", 0, 1e6)};
  } else if (type == "exponential") {
    law = ExponentialLaw{s.real("rate", 1e-6, 1e6, 1.0)};
  } else if (type == "uniform") {
    law = UniformLaw{s.real("lo", 0, 1e6), s.real("hi", 0, 1e6)};
  } else {
    const double p = s.real("p", 0, 1);
    const double v0 = s.real("v0", 0, 1e6);
    law = TwoPointLaw{p, v0, s.real("v1", 0, 1e6)};
  }
  s.finish();
  checked([&] {
    validate(law);
    return 0;
  });
  return law;
}

inline NoiseLaw parse_noise(Section s) {
  const auto type = s.choice("type", {"constant", "lognormal", "exponential"});
  NoiseLaw noise;
  if (type == "constant")
    noise = ConstantNoise{s.real("value", 1e-300, 1e6)};
  else if (type == "lognormal")
    noise = LognormalNoise{s.real("sigma", 0, 10)};
  else
    noise = ExponentialNoise{};
  s.finish();
  return noise;
}

inline void require_dim(const std::vector<IntVector>& v, std::size_t dim, const std::string& what) {
  for (const auto& x : v)
    if (x.size() != dim) throw ConfigError(what + ": every point must have " + std::to_string(dim) + " coordinates");
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- algebra

inline Job parse_algebra(Section& cfg, const RunContext&) {
  const auto op = cfg.choice("operation", {"rank", "coordinates", "cone_membership", "sg_membership",
                                           "scaling_factor", "minimal_elements", "structural_decomposition",
                                           "asymptotic_cone", "enclosing_s_cone", "lineality",
                                           "linearize_homomorphism"});
  auto table = [](std::vector<std::string> header) { return std::make_shared<CsvTable>(std::move(header)); };
  auto done = [](const std::shared_ptr<CsvTable>& t) {
    return std::vector<OutputFile>{{"algebra.csv", t->text()}};
  };

  if (op == "minimal_elements") {
    auto pts = cfg.int_vectors("points", kMaxCoordinate);
    if (pts.empty()) throw ConfigError(cfg.name("points") + " must not be empty");
    require_dim(pts, pts.front().size(), cfg.name("points"));
    for (const auto& p : pts)
      for (auto v : p)
        if (v < 0) throw ConfigError(cfg.name("points") + " must lie in the nonnegative orthant");
    return [=] {
      auto t = table({"point"});
      for (const auto& p : minimal_elements(pts)) t->row({format_point(p)});
      return done(t);
    };
  }

  if (op == "linearize_homomorphism") {
    const auto& raw = cfg.raw("pairs");
    if (!raw.is_array() || raw.empty()) throw ConfigError(cfg.name("pairs") + " must be a nonempty array");
    std::vector<std::pair<IntVector, IntVector>> pairs;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto nm = cfg.name("pairs") + "[" + std::to_string(i) + "]";
      if (!raw[i].is_object()) throw ConfigError(nm + " must be an object {x, y}");
      Section p(raw[i], nm);
      auto x = p.int_vector("x", kMaxCoordinate);
      auto y = p.int_vector("y", kMaxCoordinate);
      p.finish();
      pairs.emplace_back(std::move(x), std::move(y));
    }
    const Norm norm = cfg.choice("norm", {"l1", "linf"}, "l1") == "l1" ? Norm::l1 : Norm::linf;
    return [=] {
      auto h = checked([&] { return linearize_homomorphism(pairs, norm); });
      auto t = table({"row", "coefficients", "norm_bound"});
      for (std::size_t i = 0; i < h.matrix.rows(); ++i)
        t->row({std::to_string(i), format_point(h.matrix.row(i)), h.operator_norm_bound.get_str()});
      return done(t);
    };
  }

  auto gens = cfg.int_vectors("generators", kMaxCoordinate);
  if (gens.empty()) throw ConfigError(cfg.name("generators") + " must not be empty");
  require_dim(gens, gens.front().size(), cfg.name("generators"));
  const std::size_t dim = gens.front().size();

  if (op == "rank") {
    return [=] {
      auto rb = rank_and_basis(to_rational(gens));
      auto t = table({"rank", "basis_indices"});
      t->row({std::to_string(rb.rank), format_list(rb.basis_indices)});
      return done(t);
    };
  }
  if (op == "coordinates") {
    auto pts = cfg.rational_vectors("points");
    for (const auto& p : pts)
      if (p.size() != dim) throw ConfigError(cfg.name("points") + ": dimension mismatch");
    return [=] {
      auto t = table({"point", "coordinates"});
      const auto basis = to_rational(gens);
      for (const auto& p : pts) {
        auto c = checked([&] { return coordinates_in_basis(p, basis); });
        t->row({format_point(p), format_list(c)});
      }
      return done(t);
    };
  }
  if (op == "cone_membership" || op == "asymptotic_cone" || op == "enclosing_s_cone") {
    auto pts = cfg.rational_vectors("points");
    for (const auto& p : pts)
      if (p.size() != dim) throw ConfigError(cfg.name("points") + ": dimension mismatch");
    if (op == "cone_membership") {
      return [=] {
        PolyhedralCone cone(gens);
        auto t = table({"point", "member", "certificate"});
        for (const auto& p : pts) {
          auto m = cone.membership(p);
          if (auto* c = std::get_if<ConeCertificate>(&m))
            t->row({format_point(p), "true", format_list(c->coefficients)});
          else
            t->row({format_point(p), "false", format_point(std::get<SeparatingFunctional>(m).v)});
        }
        return done(t);
      };
    }
    if (op == "asymptotic_cone") {
      return [=] {
        GeneratedMonoid S(gens);
        auto t = table({"point", "position"});
        for (const auto& p : pts) t->row({format_point(p), to_string(asymptotic_cone_membership(p, S))});
        return done(t);
      };
    }
    return [=] {
      GeneratedMonoid S(gens);
      auto t = table({"point", "generator", "multiplier", "coordinate"});
      for (const auto& p : pts) {
        auto c = enclosing_s_cone(p, S);
        for (std::size_t i = 0; i < c.generators.size(); ++i)
          t->row({format_point(p), format_point(c.generators[i]), c.multipliers[i].get_str(),
                  c.coordinates[i].get_str()});
      }
      return done(t);
    };
  }
  if (op == "sg_membership") {
    auto pts = cfg.int_vectors("points", kMaxCoordinate);
    require_dim(pts, dim, cfg.name("points"));
    const auto mode_s = cfg.choice("mode", {"semigroup", "group"}, "semigroup");
    const auto mode = mode_s == "semigroup" ? MembershipMode::semigroup : MembershipMode::group;
    return [=] {
      GeneratedMonoid S(gens);
      auto t = table({"point", "mode", "member", "witness"});
      for (const auto& p : pts) {
        auto w = S.membership(p, mode);
        t->row({format_point(p), mode_s, bool_str(w.has_value()), w ? format_list(*w) : ""});
      }
      return done(t);
    };
  }
  if (op == "scaling_factor") {
    return [=] {
      GeneratedMonoid S(gens);
      auto t = table({"d"});
      t->row({scaling_factor(S).get_str()});
      return done(t);
    };
  }
  if (op == "lineality") {
    return [=] {
      PolyhedralCone cone(gens);
      auto t = table({"index", "generator", "set"});
      for (std::size_t i = 0; i < gens.size(); ++i)
        t->row({std::to_string(i), format_point(gens[i]), cone.in_lineality(i) ? "A0" : "A1"});
      return done(t);
    };
  }

  // structural_decomposition
  auto subset = cfg.int_vectors("subset", kMaxCoordinate, gens);
  require_dim(subset, dim, cfg.name("subset"));
  std::optional<std::size_t> anchor;
  if (cfg.has("anchor"))
    anchor = static_cast<std::size_t>(cfg.integer("anchor", 0, static_cast<std::int64_t>(subset.size()) - 1));
  const auto window = cfg.integer("window", 0, 50, 10);
  return [=] {
    GeneratedMonoid S(gens);
    auto d = checked([&] { return structural_decomposition(S, subset, anchor, window); });
    auto t = table({"kind", "index", "value"});
    const bool cone = d.branch == StructuralDecomposition::Branch::cone;
    t->row({"branch", "", cone ? "cone" : "group"});
    for (std::size_t i = 0; i < d.a0.size(); ++i) t->row({"a0", std::to_string(i), std::to_string(d.a0[i])});
    for (std::size_t i = 0; i < d.families.size(); ++i)
      t->row({"family", std::to_string(i), format_list(d.families[i])});
    for (std::size_t i = 0; i < d.T.size(); ++i) t->row({"t", std::to_string(i), format_point(d.T[i])});
    return done(t);
  };
}

// ---------------------------------------------------------------- fpp

inline Job parse_fpp(Section& cfg, const RunContext& ctx) {
  const WeightLaw law = parse_law(cfg.sub("law"));
  auto targets = cfg.int_vectors("targets", 4096);
  require_dim(targets, 2, cfg.name("targets"));
  const auto vs = cfg.choice("variant", {"full", "truncated", "fixed_length"}, "full");
  const FppVariant variant = vs == "full" ? FppVariant::full
                             : vs == "truncated" ? FppVariant::truncated
                                                 : FppVariant::fixed_length;
  const auto c = cfg.integer("c", 0, 4096, variant == FppVariant::truncated ? std::nullopt : std::optional<std::int64_t>(0));
  const auto k = cfg.integer("k", 0, 20000, variant == FppVariant::fixed_length ? std::nullopt : std::optional<std::int64_t>(0));
  const auto margin = cfg.integer("box_margin", 0, 16, 1);
  FppOptions opt;
  opt.max_radius = cfg.integer("max_radius", 1, 65536, 4096);
  const auto reps = static_cast<std::size_t>(cfg.integer("reps", 1, kMaxReps, 1));
  return [=] {
    const std::size_t n = reps * targets.size();
    std::vector<FppResult> res(n);
    parallel_for(n, ctx.threads, [&](std::size_t idx) {
      const std::size_t r = idx / targets.size(), i = idx % targets.size();
      WeightField<2> field(replication_seed(ctx.seed, r), law);
      res[idx] = fpp_passage_time(field, FppQuery{targets[i], variant, c, k, margin}, opt);
    });
    CsvTable t({"seed", "variant", "x1", "x2", "h", "certified"});
    for (std::size_t idx = 0; idx < n; ++idx) {
      const std::size_t r = idx / targets.size(), i = idx % targets.size();
      t.row({std::to_string(replication_seed(ctx.seed, r)), vs, std::to_string(targets[i][0]),
             std::to_string(targets[i][1]), format_real(res[idx].value()), bool_str(res[idx].certified)});
    }
    return std::vector<OutputFile>{{"fpp.csv", t.text()}};
  };
}

// ---------------------------------------------------------------- iarch

inline Job parse_iarch(Section& cfg, const RunContext& ctx) {
  IarchSpec base;
  base.a = cfg.reals("a", 0, 1e6);
  base.noise = parse_noise(cfg.sub("noise"));
  base.enforce_unit_sum = cfg.boolean("enforce_unit_sum", false);
  checked([&] {
    validate(base);
    return 0;
  });
  const auto k_max = cfg.integer("k_max", 0, 2000);
  const auto n_max = cfg.integer("n_max", 0, 4000);
  const auto reps = static_cast<std::size_t>(cfg.integer("reps", 1, kMaxReps, 1));
  std::vector<IntVector> points;
  if (cfg.has("points")) {
    points = cfg.int_vectors("points", 4000);
    require_dim(points, 2, cfg.name("points"));
    for (const auto& p : points)
      if (p[0] < 0 || p[1] < 0 || p[0] > k_max || p[1] > n_max)
        throw ConfigError(cfg.name("points") + " must lie in [0, k_max] x [0, n_max]");
  }
  return [=] {
    std::vector<IarchTable> tables(reps, IarchTable(0, 0));
    parallel_for(reps, ctx.threads, [&](std::size_t r) {
      IarchSpec s = base;
      s.seed = replication_seed(ctx.seed, r);
      tables[r] = iarch_eta(s, k_max, n_max);
    });
    CsvTable t({"seed", "k", "n", "eta", "h"});
    for (std::size_t r = 0; r < reps; ++r) {
      const auto seed = std::to_string(replication_seed(ctx.seed, r));
      auto emit = [&](std::int64_t kk, std::int64_t nn) {
        t.row({seed, std::to_string(kk), std::to_string(nn), format_real(tables[r].eta(kk, nn)),
               format_real(tables[r].h(kk, nn))});
      };
      if (!points.empty()) {
        for (const auto& p : points) emit(p[0], p[1]);
        continue;
      }
      for (std::int64_t kk = 0; kk <= k_max; ++kk)
        for (std::int64_t nn = 0; nn <= n_max; ++nn)
          if (tables[r].log_eta(kk, nn) > -std::numeric_limits<double>::infinity()) emit(kk, nn);
    }
    return std::vector<OutputFile>{{"iarch.csv", t.text()}};
  };
}

// ---------------------------------------------------------------- gauge

inline std::string format_gauge(const GaugeValue<Rational>& v) {
  return v.minus_infinity ? "-inf" : v.value.get_str();
}
inline std::string format_gauge(const GaugeValue<double>& v) {
  return v.minus_infinity ? "-inf" : format_real(v.value);
}

/// Queries repeat across refinement levels; remember what the oracle returned.
template <class Scalar>
typename GaugeOracle<Scalar>::Fn memoized(typename GaugeOracle<Scalar>::Fn fn) {
  auto cache = std::make_shared<std::map<IntVector, GaugeValue<Scalar>>>();
  auto mu = std::make_shared<std::mutex>();
  return [fn = std::move(fn), cache, mu](const IntVector& x) {
    {
      std::lock_guard lock(*mu);
      if (auto it = cache->find(x); it != cache->end()) return it->second;
    }
    auto v = fn(x);
    std::lock_guard lock(*mu);
    cache->emplace(x, v);
    return v;
  };
}

template <class Scalar>
std::vector<OutputFile> gauge_rows(const GaugeOracle<Scalar>& q, const std::vector<RationalVector>& pts,
                                   int refinement, std::int64_t cap) {
  GaugeExtension<Scalar> ext(q, Integer(static_cast<long>(cap)));
  CsvTable t({"point", "lower", "upper", "refinement"});
  for (const auto& p : pts)
    for (int r = 0; r <= refinement; ++r) {
      auto b = gauge_bounds_at(ext, p, r);
      t.row({format_point(p), format_gauge(b.lower), format_gauge(b.upper), std::to_string(r)});
    }
  return {{"gauge.csv", t.text()}};
}

/// q(y) = g · mean h(m y')/m for y = g y' with y' primitive and m |y'|_1 close to
/// `length`. Positive homogeneity over integer multiples holds by construction,
/// which the extension to rational points relies on.
inline GaugeValue<double> homogeneous_fpp_gauge(const FppModel& model, const IntVector& y, std::int64_t length,
                                                std::size_t reps, const RunContext& ctx) {
  std::int64_t g = 0;
  for (auto v : y) g = std::gcd(g, v < 0 ? -v : v);
  if (g == 0) return {0.0, 0.0, false};
  IntVector p = y;
  for (auto& v : p) v /= g;
  const std::int64_t m = std::max<std::int64_t>(1, (length + l1_norm(p) / 2) / l1_norm(p));
  auto est = estimate_ray_gauge(model, p, {m}, reps, ctx.seed, RayOptions{ctx.threads, false, 1e-12});
  const auto& lv = est.levels.front();
  if (lv.used == 0) throw Error("gauge: no replication reached " + format_point(y));
  const double s = static_cast<double>(g);
  return {s * lv.mean, s * 3 * lv.stderr_, false};
}

inline Job parse_gauge(Section& cfg, const RunContext& ctx) {
  auto gens = cfg.int_vectors("generators", kMaxCoordinate);
  if (gens.empty()) throw ConfigError(cfg.name("generators") + " must not be empty");
  require_dim(gens, gens.front().size(), cfg.name("generators"));
  const std::size_t dim = gens.front().size();
  auto pts = cfg.rational_vectors("points");
  for (const auto& p : pts)
    if (p.size() != dim) throw ConfigError(cfg.name("points") + ": dimension mismatch");
  const int refinement = static_cast<int>(cfg.integer("refinement", 0, 40, 4));
  const auto cap = cfg.integer("cap", 1, 4096, 64);

  Section g = cfg.sub("gauge");
  const auto type = g.choice("type", {"l1", "linf", "polyhedral", "fpp"});
  if (type == "fpp") {
    if (dim != 2) throw ConfigError(cfg.name("generators") + ": the fpp gauge lives on Z^2");
    FppModel model;
    model.law = parse_law(g.sub("law"));
    model.box_margin = g.integer("box_margin", 0, 16, 1);
    model.options.max_radius = g.integer("max_radius", 1, 65536, 4096);
    const auto length = g.integer("scale", 1, 4096, 32);
    const auto reps = static_cast<std::size_t>(g.integer("reps", 1, kMaxReps, 20));
    g.finish();
    return [=] {
      auto domain = std::make_shared<const GeneratedMonoid>(gens);
      typename GaugeOracle<double>::Fn fn = [=](const IntVector& x) {
        return homogeneous_fpp_gauge(model, x, length, reps, ctx);
      };
      return gauge_rows(GaugeOracle<double>(memoized<double>(fn), domain), pts, refinement, cap);
    };
  }

  std::vector<IntVector> functionals;
  if (type == "polyhedral") {
    functionals = g.int_vectors("functionals", kMaxCoordinate);
    if (functionals.empty()) throw ConfigError(g.name("functionals") + " must not be empty");
    require_dim(functionals, dim, g.name("functionals"));
  }
  g.finish();
  return [=] {
    auto domain = std::make_shared<const GeneratedMonoid>(gens);
    typename GaugeOracle<Rational>::Fn fn = [=](const IntVector& x) {
      Rational v;
      if (type == "l1") {
        v = Rational(static_cast<long>(l1_norm(x)));
      } else if (type == "linf") {
        v = Rational(static_cast<long>(linf_norm(x)));
      } else {
        for (std::size_t i = 0; i < functionals.size(); ++i) {
          Rational s = 0;
          for (std::size_t j = 0; j < dim; ++j) s += Rational(static_cast<long>(functionals[i][j] * x[j]));
          if (i == 0 || s > v) v = s;
        }
      }
      return GaugeValue<Rational>{v, Rational(0), false};
    };
    return gauge_rows(GaugeOracle<Rational>(fn, domain), pts, refinement, cap);
  };
}

// ---------------------------------------------------------------- shape

inline SequenceSpec parse_sequence(Section s) {
  SequenceSpec seq;
  const auto kind = s.choice("kind", {"ray", "drift", "mixed_coset"}, "ray");
  seq.kind = kind == "ray" ? SequenceKind::ray : kind == "drift" ? SequenceKind::drift : SequenceKind::mixed_coset;
  if (seq.kind == SequenceKind::drift) seq.drift = s.int_vector("drift", 4096, IntVector{1, 0});
  if (seq.kind == SequenceKind::mixed_coset) seq.offsets = s.int_vectors("offsets", 4096);
  s.finish();
  if (seq.drift.size() > 0 && seq.drift.size() != 2) throw ConfigError("sequence drift must have 2 coordinates");
  require_dim(seq.offsets, 2, "sequence offsets");
  if (seq.kind == SequenceKind::mixed_coset && seq.offsets.empty())
    throw ConfigError("mixed_coset sequence needs at least one offset");
  return seq;
}

template <class M>
std::vector<OutputFile> shape_outputs(const M& model, const IntVector& dir, const SequenceSpec& seq,
                                      const std::vector<std::int64_t>& levels, std::optional<double> q_ref,
                                      const std::vector<std::int64_t>& ray_levels, std::size_t reps,
                                      const RunContext& ctx) {
  double q = 0;
  if (q_ref) {
    q = *q_ref;
  } else {
    // q_hat estimates q(x); the table compares h(x_n)/|x_n|_1, so normalize the same way.
    q = estimate_ray_gauge(model, dir, ray_levels, reps, ctx.seed, RayOptions{ctx.threads, false, 1e-12}).q_hat /
        static_cast<double>(l1_norm(dir));
  }
  auto table = shape_diagnostic(model, dir, seq, levels, q, reps, ctx.seed, ctx.threads);
  CsvTable rows({"n", "rep", "x1", "x2", "h_over_norm"});
  for (const auto& r : table.rows)
    rows.row({std::to_string(r.n), std::to_string(r.rep), std::to_string(r.point[0]), std::to_string(r.point[1]),
              format_real(r.h_over_norm)});
  CsvTable lv({"n", "used", "excluded", "mean", "stderr", "q_ref", "mean_deviation", "max_deviation"});
  for (const auto& s : table.levels)
    lv.row({std::to_string(s.n), std::to_string(s.used), std::to_string(s.excluded), format_real(s.mean),
            format_real(s.stderr_), format_real(q), format_real(s.mean_deviation), format_real(s.max_deviation)});
  return {{"shape.csv", rows.text()}, {"shape_levels.csv", lv.text()}};
}

inline std::vector<std::int64_t> increasing_levels(Section& cfg, const std::string& key) {
  auto v = cfg.integers(key, 1, 1 << 20);
  if (v.empty()) throw ConfigError(cfg.name(key) + " must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) throw ConfigError(cfg.name(key) + " must be strictly increasing");
  return v;
}

inline Job parse_shape(Section& cfg, const RunContext& ctx) {
  Section m = cfg.sub("model");
  const auto type = m.choice("type", {"fpp", "iarch"});
  std::optional<FppModel> fpp;
  std::optional<IarchModel> iarch;
  if (type == "fpp") {
    fpp.emplace();
    fpp->law = parse_law(m.sub("law"));
    fpp->box_margin = m.integer("box_margin", 0, 16, 1);
    fpp->options.max_radius = m.integer("max_radius", 1, 65536, 4096);
  } else {
    iarch.emplace();
    iarch->a = m.reals("a", 0, 1e6);
    iarch->noise = parse_noise(m.sub("noise"));
    checked([&] {
      validate(IarchSpec{iarch->a, 0, iarch->noise, 0, false});
      return 0;
    });
  }
  m.finish();
  const auto dir = cfg.int_vector("direction", 4096);
  if (dir.size() != 2) throw ConfigError(cfg.name("direction") + " must have 2 coordinates");
  const auto seq = parse_sequence(cfg.has("sequence") ? cfg.sub("sequence") : Section(Json::object(), "/sequence"));
  const auto levels = increasing_levels(cfg, "levels");
  const auto reps = static_cast<std::size_t>(cfg.integer("reps", 1, kMaxReps));
  std::optional<double> q_ref;
  std::vector<std::int64_t> ray_levels;
  if (cfg.has("q_ref")) q_ref = cfg.real("q_ref", -1e12, 1e12);
  if (cfg.has("ray_levels")) ray_levels = increasing_levels(cfg, "ray_levels");
  if (q_ref.has_value() == !ray_levels.empty())
    throw ConfigError("shape needs exactly one of " + cfg.name("q_ref") + " and " + cfg.name("ray_levels"));
  return [=] {
    if (fpp) return shape_outputs(*fpp, dir, seq, levels, q_ref, ray_levels, reps, ctx);
    return shape_outputs(*iarch, dir, seq, levels, q_ref, ray_levels, reps, ctx);
  };
}

// ---------------------------------------------------------------- diagnostics

inline CenteredNoise parse_centered(Section& s, const std::string& key) {
  const auto k = s.choice(key, {"rademacher", "exponential", "normal"});
  return k == "rademacher" ? CenteredNoise::rademacher
         : k == "exponential" ? CenteredNoise::exponential
                              : CenteredNoise::normal;
}

inline Job parse_diagnostics(Section& cfg, const RunContext& ctx) {
  const auto mode = cfg.choice("mode", {"truncated_sup", "sphere_max"});
  if (mode == "truncated_sup") {
    const auto kind = parse_centered(cfg, "noise");
    const double eps = cfg.real("epsilon", 1e-9, 1e6);
    const auto horizon = static_cast<std::size_t>(cfg.integer("horizon", 1, 1'000'000));
    const auto samples = static_cast<std::size_t>(cfg.integer("samples", 1, 10'000'000));
    return [=] {
      auto v = sample_truncated_sup(kind, eps, horizon, samples, ctx.seed, ctx.threads);
      CsvTable t({"sample", "value"});
      for (std::size_t i = 0; i < v.size(); ++i) t.row({std::to_string(i), format_real(v[i])});
      return std::vector<OutputFile>{{"diagnostics.csv", t.text()}};
    };
  }
  Section f = cfg.sub("field");
  const auto ftype = f.choice("type", {"constant", "noise"});
  double c = 0;
  CenteredNoise kind = CenteredNoise::rademacher;
  if (ftype == "constant")
    c = f.real("c", -1e12, 1e12);
  else
    kind = parse_centered(f, "kind");
  f.finish();
  const auto radii = increasing_levels(cfg, "radii");
  for (auto n : radii)
    if (n > 100000) throw ConfigError(cfg.name("radii") + " entries must be at most 100000");
  const auto dim = static_cast<std::size_t>(cfg.integer("dim", 1, 3, 2));
  return [=] {
    std::vector<double> stat(radii.size());
    parallel_for(radii.size(), ctx.threads, [&](std::size_t i) {
      stat[i] = sphere_max(
          [&](const IntVector& x) {
            if (ftype == "constant") return c;
            return centered_noise(kind, ctx.seed, 0, hash_key(0, std::span<const std::int64_t>(x)));
          },
          radii[i], dim);
    });
    CsvTable t({"n", "statistic"});
    for (std::size_t i = 0; i < radii.size(); ++i) t.row({std::to_string(radii[i]), format_real(stat[i])});
    return std::vector<OutputFile>{{"diagnostics.csv", t.text()}};
  };
}

}  // namespace conegauge::cli
