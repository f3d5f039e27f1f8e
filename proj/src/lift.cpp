#include "locfin/lift.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "locfin/error.hpp"
#include "locfin/io.hpp"

namespace locfin {

namespace {

using json = nlohmann::json;

std::vector<std::string> ids(const LinCat& c, const std::vector<Index>& s) {
  std::vector<std::string> out;
  for (Index x : s) out.push_back(c.object(x));
  return out;
}

std::vector<std::string> value_ids(const Scope& s, const std::vector<long>& values) {
  std::vector<std::string> out;
  for (long v : values) out.push_back(s.id_of_value(v));
  return out;
}

// by_source: o -> {y : block (o,y) nonzero}; otherwise o -> {x : block (x,o) nonzero}.
std::vector<std::vector<Index>> linked_sets(const Module& m, bool by_source) {
  const Index n = m.cat().size();
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (m.cat().hom_dim(x, y) == 0 || m.block_is_zero(x, y)) continue;
      if (by_source) {
        out[static_cast<std::size_t>(x)].push_back(y);
      } else {
        out[static_cast<std::size_t>(y)].push_back(x);
      }
    }
  }
  return out;
}

DeclaredSet declared_linked(const ModuleGenerator& g, long v, bool by_source) {
  return by_source ? g.forward(v) : g.backward(v);
}

// First nonzero block from an object at an open window end other than o.
std::optional<std::pair<Index, Index>> boundary_touch(const Module& m, const std::vector<std::vector<Index>>& sets) {
  const Scope& s = m.scope();
  for (std::size_t o = 0; o < sets.size(); ++o) {
    for (Index f : sets[o]) {
      if (f != static_cast<Index>(o) && s.at_open_end(f)) return std::pair{static_cast<Index>(o), f};
    }
  }
  return std::nullopt;
}

void require_module(const Module& m) {
  const Verdict v = validate_module(m);
  if (!v.is_certified()) throw Error(ErrorCode::HypothesisNotSatisfied, "input is not a module: " + v.witness.dump());
  if (m.declared() && !m.declared()->locally_finite()) {
    throw Error(ErrorCode::NotLocallyFinite, m.declared()->name() + " is not locally finite");
  }
}

// Right modules are left modules over the opposite category.
bool left_strict(const std::shared_ptr<const Scope>& s, Side side) {
  return check_left_strict(PreorderAnalysis(side == Side::Left ? s : s->opposite())).verdict.is_certified();
}

enum class Target { Comodule, Contramodule };

// Shared part of both lifts: decides from supports and metadata.
LiftReport decide(const Module& m, Target target) {
  const bool by_source = (target == Target::Comodule) == (m.side() == Side::Left);
  const Scope& s = m.scope();
  const LinCat& c = m.cat();
  LiftReport r;
  r.target = target == Target::Comodule ? "comodule" : "contramodule";
  const auto sets = linked_sets(m, by_source);
  for (Index o = 0; o < c.size(); ++o) r.supports[c.object(o)] = ids(c, sets[static_cast<std::size_t>(o)]);
  if (!s.is_window() || s.is_complete()) return r;

  r.flags.push_back("window-relative: " + s.describe());
  bool all_declared = false;
  if (const auto& g = m.declared()) {
    all_declared = true;
    for (Index o = 0; o < c.size(); ++o) {
      const DeclaredSet d = declared_linked(*g, s.value(o), by_source);
      if (d.is_infinite()) {
        json w = {{"object", c.object(o)}, {"declared", "infinite"}, {"module", g->name()}};
        if (target == Target::Comodule || left_strict(m.scope_ptr(), m.side())) {
          r.decision = LiftDecision::NotLiftable;
          r.witness = std::move(w);
          return r;
        }
        r.flags.push_back("declared infinite support at " + c.object(o) +
                          " does not obstruct a contramodule lift: the category is not left strict, and the"
                          " contramodule functor is not fully faithful here");
        r.witness = std::move(w);
        continue;
      }
      if (!d.is_finite()) {
        all_declared = false;
        continue;
      }
      if (!s.covered(d)) {
        r.flags.push_back("declared support of " + c.object(o) + " leaves the window: " +
                          json(value_ids(s, d.members)).dump());
      }
    }
    if (all_declared && !g->uniform_support()) {
      r.flags.push_back("support sets are finite but not uniformly bounded across the generator");
    }
  }
  if (!all_declared) {
    if (auto touch = boundary_touch(m, sets)) {
      r.decision = LiftDecision::WindowLeak;
      r.witness = {{"object", c.object(touch->first)}, {"touches", c.object(touch->second)}};
      return r;
    }
  }
  return r;
}

}  // namespace

std::string_view to_string(LiftDecision d) {
  switch (d) {
    case LiftDecision::Liftable:
      return "Liftable";
    case LiftDecision::NotLiftable:
      return "NotLiftable";
    case LiftDecision::WindowLeak:
      return "WindowLeak";
  }
  return "?";
}

json LiftReport::to_json() const {
  json out = {{"schema_version", kSchemaVersion},
              {"decision", std::string(locfin::to_string(decision))},
              {"target", target},
              {"supports", supports},
              {"witness", witness},
              {"flags", flags}};
  if (comodule) out["lifted"] = comodule_to_json(*comodule);
  if (contramodule) out["lifted"] = contramodule_to_json(*contramodule);
  return out;
}

Module upsilon(const Comodule& m) {
  const GradedCoalgebra& g = m.coalgebra();
  Module out(g.scope_ptr(), m.side(), m.dims());
  const LinCat& c = out.cat();
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      if (!m.has_block(x, y)) continue;
      for (Index a = 0; a < c.hom_dim(x, y); ++a) out.set_action(x, y, a, m.slice(x, y, a));
    }
  }
  return out;
}

Module theta(const Contramodule& p) {
  const GradedCoalgebra& g = p.coalgebra();
  Module out(g.scope_ptr(), p.side(), p.dims());
  const LinCat& c = out.cat();
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      if (!p.has_block(x, y)) continue;
      for (Index a = 0; a < c.hom_dim(x, y); ++a) out.set_action(x, y, a, p.slice(x, y, a));
    }
  }
  return out;
}

LiftReport lift_to_comodule(const Module& m) {
  require_module(m);
  LiftReport r = decide(m, Target::Comodule);
  if (r.decision != LiftDecision::Liftable) return r;
  auto g = std::make_shared<const GradedCoalgebra>(build_coalgebra(m.scope_ptr()));
  const LinCat& c = m.cat();
  Comodule out(g, m.side(), m.dims());
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      if (c.hom_dim(x, y) == 0 || m.block_is_zero(x, y)) continue;
      const Matrix& first = m.action(x, y, 0);
      Matrix block(c.hom_dim(x, y) * first.rows(), first.cols());
      for (Index a = 0; a < c.hom_dim(x, y); ++a) block.middleRows(a * first.rows(), first.rows()) = m.action(x, y, a);
      out.set_block(x, y, std::move(block));
    }
  }
  if (!validate_comodule(out).is_certified() || !(upsilon(out) == m)) {
    throw std::logic_error("comodule lift does not round-trip");
  }
  r.comodule = std::move(out);
  return r;
}

LiftReport lift_to_contramodule(const Module& m) {
  require_module(m);
  LiftReport r = decide(m, Target::Contramodule);
  if (r.decision != LiftDecision::Liftable) return r;
  auto g = std::make_shared<const GradedCoalgebra>(build_coalgebra(m.scope_ptr()));
  const LinCat& c = m.cat();
  Contramodule out(g, m.side(), m.dims());
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      if (c.hom_dim(x, y) == 0 || m.block_is_zero(x, y)) continue;
      const Matrix& first = m.action(x, y, 0);
      Matrix block(first.rows(), c.hom_dim(x, y) * first.cols());
      for (Index a = 0; a < c.hom_dim(x, y); ++a) block.middleCols(a * first.cols(), first.cols()) = m.action(x, y, a);
      out.set_block(x, y, std::move(block));
    }
  }
  if (!validate_contramodule(out).is_certified() || !(theta(out) == m)) {
    throw std::logic_error("contramodule lift does not round-trip");
  }
  r.contramodule = std::move(out);
  return r;
}

std::vector<std::vector<Index>> source_sets(const Module& m) { return linked_sets(m, false); }

Module continued_module(const Module& m, long layers) {
  const Scope& s = m.scope();
  if (!s.has_retraction()) throw Error(ErrorCode::HypothesisNotSatisfied, s.describe() + " has no retraction");
  auto ext = s.enlarged(layers);
  const LinCat& e = ext->cat();
  std::vector<Index> back;
  std::vector<Index> dims;
  for (Index x = 0; x < e.size(); ++x) {
    back.push_back(*s.index_of_value(s.retract(ext->value(x))));
    dims.push_back(m.dim(back.back()));
  }
  Module out(ext, m.side(), dims);
  for (Index x = 0; x < e.size(); ++x) {
    for (Index y = 0; y < e.size(); ++y) {
      for (Index a = 0; a < e.hom_dim(x, y); ++a) {
        const Vector f = s.retract_morphism(ext->value(x), ext->value(y), a);
        out.set_action(x, y, a, m.act(back[static_cast<std::size_t>(x)], back[static_cast<std::size_t>(y)], f));
      }
    }
  }
  return out;
}

namespace {

constexpr long kContinueLayers = 2;

json sets_json(const LinCat& c, const std::vector<std::vector<Index>>& sets) {
  json out = json::object();
  for (Index y = 0; y < c.size(); ++y) out[c.object(y)] = ids(c, sets[static_cast<std::size_t>(y)]);
  return out;
}

// Per-y source sets judged by the policy; shared by both finiteness predicates.
Verdict finite_sources(const Module& m, SupportPolicy policy) {
  const Scope& s = m.scope();
  const LinCat& c = m.cat();
  if (policy == SupportPolicy::Auto) policy = m.declared() ? SupportPolicy::Declared : SupportPolicy::Window;
  const auto window_sets = source_sets(m);
  if (!s.is_window() || s.is_complete()) return Verdict::certified({{"A", sets_json(c, window_sets)}});

  switch (policy) {
    case SupportPolicy::Declared: {
      if (!m.declared()) return Verdict::inconclusive("module has no declared generator");
      json a = json::object();
      for (Index y = 0; y < c.size(); ++y) {
        const DeclaredSet d = m.declared()->backward(s.value(y));
        if (d.is_infinite()) {
          return Verdict::refuted({{"object", c.object(y)}, {"declared", "infinite"}, {"module", m.declared()->name()}},
                                  "infinitely many objects act nonzero into " + c.object(y));
        }
        if (!d.is_finite()) return Verdict::inconclusive("source set of " + c.object(y) + " is not declared");
        a[c.object(y)] = value_ids(s, d.members);
      }
      return Verdict::certified({{"A", a}}, "declared supports, checked at the objects of " + s.describe());
    }
    case SupportPolicy::Continue: {
      if (!s.has_retraction()) return finite_sources(m, SupportPolicy::Window);
      const Module cont = continued_module(m, kContinueLayers);
      const Scope& e = cont.scope();
      const auto sets = source_sets(cont);
      for (Index y = 0; y < e.cat().size(); ++y) {
        for (Index x : sets[static_cast<std::size_t>(y)]) {
          if (x != y && e.at_open_end(x)) {
            return Verdict::refuted({{"object", e.cat().object(y)}, {"from", e.cat().object(x)}, {"policy", "continue"}},
                                    "the boundary repeats forever and keeps acting into " + e.cat().object(y));
          }
        }
      }
      return Verdict::certified({{"A", sets_json(e.cat(), sets)}}, "constant continuation of " + s.describe());
    }
    case SupportPolicy::Window:
    case SupportPolicy::Auto:
      break;
  }
  for (Index y = 0; y < c.size(); ++y) {
    for (Index x : window_sets[static_cast<std::size_t>(y)]) {
      if (x != y && s.at_open_end(x)) {
        return Verdict::inconclusive("source set of " + c.object(y) + " reaches the open end " + c.object(x),
                                     {{"object", c.object(y)}, {"touches", c.object(x)}});
      }
    }
  }
  return Verdict::certified({{"A", sets_json(c, window_sets)}}, "window-relative on " + s.describe());
}

}  // namespace

Verdict is_contrafinite(const Module& p, SupportPolicy policy) {
  if (p.side() != Side::Left) throw Error(ErrorCode::HypothesisNotSatisfied, "contrafiniteness is for left modules");
  return finite_sources(p, policy);
}

Verdict is_cofinite(const Module& n, SupportPolicy policy) {
  if (n.side() != Side::Right) throw Error(ErrorCode::HypothesisNotSatisfied, "cofiniteness is for right modules");
  return finite_sources(n, policy);
}

bool is_big_submodule(const Module& m, const Graded& q) {
  return finite_sources(quotient(m, q), SupportPolicy::Continue).is_certified();
}

Graded minimal_big_submodule(const Module& m) {
  if (m.declared() && !m.declared()->locally_finite()) {
    throw Error(ErrorCode::NotLocallyFinite, m.declared()->name() + " is not locally finite");
  }
  const Scope& s = m.scope();
  if (!s.is_window() || s.is_complete() || !s.has_retraction()) return zero_graded(m);
  // Tail limit at y: every cofinite set of sources still contains the repeating
  // boundary copies, so the limit is the sum of their images.
  const Module cont = continued_module(m, kContinueLayers);
  const Scope& e = cont.scope();
  Graded tail = zero_graded(m);
  for (Index y = 0; y < e.cat().size(); ++y) {
    for (Index x = 0; x < e.cat().size(); ++x) {
      if (x == y || !e.at_open_end(x)) continue;
      // Left actions land in y, right actions in x.
      const Index w = *s.index_of_value(s.retract(e.value(m.side() == Side::Left ? y : x)));
      for (Index a = 0; a < e.cat().hom_dim(x, y); ++a) {
        auto& t = tail[static_cast<std::size_t>(w)];
        t = t + image(cont.action(x, y, a));
      }
    }
  }
  Graded k = generated_submodule(m, tail);
  if (!is_big_submodule(m, k)) throw std::logic_error("closure of the tail limits is not big");
  return k;
}

Module dualize_module(const Module& n) {
  Module out(n.scope_ptr(), n.side() == Side::Left ? Side::Right : Side::Left, n.dims());
  const LinCat& c = n.cat();
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      for (Index a = 0; a < c.hom_dim(x, y); ++a) out.set_action(x, y, a, n.action(x, y, a).transpose());
    }
  }
  return out;
}

Contramodule dualize_comodule(const Comodule& n) {
  Contramodule out(n.coalgebra_ptr(), n.side() == Side::Left ? Side::Right : Side::Left, n.dims());
  for (const auto& [key, block] : n.blocks()) out.set_block(key.first, key.second, block.transpose());
  std::set<std::pair<Index, Index>> support = n.support();
  out.declare_support(std::move(support));
  return out;
}

Comodule anti_equivalence_roundtrip(const Contramodule& p) {
  if (p.side() != Side::Left) throw Error(ErrorCode::HypothesisNotSatisfied, "expects a left contramodule");
  const auto scope = p.coalgebra().scope_ptr();
  const LeftStrictReport strict = check_left_strict(PreorderAnalysis(scope));
  if (!strict.verdict.is_certified()) {
    throw Error(ErrorCode::HypothesisNotCertified, "left strictness is not certified on " + scope->describe());
  }
  Comodule out(p.coalgebra_ptr(), Side::Right, p.dims());
  for (const auto& [key, block] : p.blocks()) out.set_block(key.first, key.second, block.transpose());
  out.declare_support(p.support());
  if (!(dualize_comodule(out) == p) || !validate_comodule(out).is_certified()) {
    throw std::logic_error("dual comodule does not round-trip");
  }
  return out;
}

json y_contrafinite_experiment(std::shared_ptr<const Scope> scope, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  int liftable = 0;
  int y_finite = 0;
  for (int t = 0; t < trials; ++t) {
    const Module m = random_chain_module(scope, rng, 2);
    const LiftReport r = lift_to_contramodule(m);
    if (r.decision != LiftDecision::Liftable) continue;
    ++liftable;
    if (finite_sources(m, SupportPolicy::Window).is_certified()) ++y_finite;
  }
  return {{"schema_version", kSchemaVersion},
          {"scope", scope->describe()},
          {"seed", seed},
          {"trials", trials},
          {"liftable", liftable},
          {"y_contrafinite_everywhere", y_finite},
          {"note", "window data only; a finite window cannot exhibit an infinite source set"}};
}

}  // namespace locfin
