// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "locfin/coalg.hpp"
#include "locfin/error.hpp"
#include "locfin/ext.hpp"
#include "locfin/frontier.hpp"
#include "locfin/gallery.hpp"
#include "locfin/io.hpp"
#include "locfin/lift.hpp"
#include "locfin/order.hpp"

using namespace locfin;
using locfin::testing::all_modules_f2;
using locfin::testing::all_submodules_f2;
using locfin::testing::kSeed;

namespace {

const auto kF2 = FieldDescriptor::prime(2);

struct Outcome {
  bool ok = true;
  std::string detail;
  int checks = 0;

  // Records one check; the first failure message is kept.
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string id(long v) { return CategoryGenerator::format_id(v); }

struct Window {
  const char* name;
  std::string window;
};

std::vector<Window> gallery_windows() {
  std::vector<Window> out;
  for (int n = 1; n <= 5; ++n) out.push_back({"chainA", std::to_string(n)});
  for (const char* w : {"0..0", "-1..1", "-3..3", "0..7", "-5..6"}) out.push_back({"zchain", w});
  for (const char* w : {"-1..-1", "-4..-1", "-6..-1", "-12..-1", "-9..-3"}) out.push_back({"zneg", w});
  for (const char* w : {"-2..2", "0..11"}) out.push_back({"discrete", w});
  out.push_back({"matrix2", "0..1"});
  return out;
}

std::string label(const Window& w) { return std::string(w.name) + "[" + w.window + "]"; }

// Reachability by repeated relaxation over nonzero hom spaces.
std::vector<std::vector<bool>> reach_of(const LinCat& c) {
  const auto n = static_cast<std::size_t>(c.size());
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) r[x][y] = x == y || c.hom_dim(static_cast<Index>(x), static_cast<Index>(y)) > 0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) r[x][y] = r[x][y] || (r[x][k] && r[k][y]);
    }
  }
  return r;
}

// Longest strict chain, by brute-force depth-first search.
Index brute_longest_chain(const LinCat& c) {
  const auto r = reach_of(c);
  const auto n = static_cast<std::size_t>(c.size());
  auto strict = [&](std::size_t x, std::size_t y) { return r[x][y] && !r[y][x]; };
  std::vector<Index> memo(n, -1);
  std::function<Index(std::size_t)> from = [&](std::size_t x) -> Index {
    if (memo[x] >= 0) return memo[x];
    Index best = 0;
    for (std::size_t y = 0; y < n; ++y) {
      if (strict(x, y)) best = std::max(best, 1 + from(y));
    }
    return memo[x] = best;
  };
  Index best = 0;
  for (std::size_t x = 0; x < n; ++x) best = std::max(best, from(x));
  return best;
}

// Least m such that every m-fold composite of long morphisms vanishes. That is
// the number of tensor factors at which the iterated comultiplication of the
// long part first vanishes; computed from the category alone.
Index long_composite_length(const LinCat& c) {
  const auto r = reach_of(c);
  const Index n = c.size();
  auto is_long = [&](Index x, Index y) {
    return r[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] && !r[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
  };
  // Span of the k-fold composites, per component.
  std::vector<Subspace> level(static_cast<std::size_t>(n * n));
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const Index d = c.hom_dim(x, y);
      level[static_cast<std::size_t>(x * n + y)] = is_long(x, y) ? Subspace::full(d) : Subspace(d);
    }
  }
  for (Index m = 1;; ++m) {
    bool any = false;
    for (const auto& s : level) any = any || s.dim() > 0;
    if (!any) return m;
    std::vector<Subspace> next(static_cast<std::size_t>(n * n));
    for (Index x = 0; x < n; ++x) {
      for (Index z = 0; z < n; ++z) {
        Matrix rows = zeros(0, c.hom_dim(x, z));
        for (Index y = 0; y < n; ++y) {
          const Subspace& s = level[static_cast<std::size_t>(x * n + y)];
          if (s.dim() == 0 || !is_long(y, z)) continue;
          for (Index i = 0; i < s.dim(); ++i) {
            for (Index b = 0; b < c.hom_dim(y, z); ++b) {
              const Vector g = unit_vector(c.field(), c.hom_dim(y, z), b);
              const Vector v = c.compose(x, y, z, g, s.basis().row(i).transpose());
              rows.conservativeResize(rows.rows() + 1, Eigen::NoChange);
              rows.row(rows.rows() - 1) = v.transpose();
            }
          }
        }
        next[static_cast<std::size_t>(x * n + z)] = Subspace::span(c.hom_dim(x, z), rows);
      }
    }
    level = std::move(next);
  }
}

Outcome criterion_axioms() {
  Outcome o;
  for (const auto& w : gallery_windows()) {
    const auto s = gallery_instantiate(w.name, w.window);
    o.expect(s->cat().size() <= 12, label(w) + " exceeds 12 objects");
    o.expect(validate_category(s->cat()).is_certified(), label(w) + " not certified");
    o.expect(validate_category(s->cat().opposite()).is_certified(), label(w) + " opposite not certified");
  }
  const auto q = FieldDescriptor::rationals();
  {
    Presentation p = gallery_instantiate("chainA", "4", q)->cat().presentation();
    p.compose[{id(0), id(1), id(3)}] = Tensor3::from_entries({1, 1, 1}, {{0, 0, 0, Scalar::from_int(q, 2)}});
    const Verdict v = validate_category(LinCat(p));
    o.expect(v.is_refuted() && v.witness.at("axiom") == "associativity", "scaled composite not refuted");
  }
  {
    Presentation p = gallery_instantiate("chainA", "2", q)->cat().presentation();
    p.identity[id(0)] = unit_vector(q, 1, 0) * Scalar::from_int(q, 2);
    const Verdict v = validate_category(LinCat(p));
    o.expect(v.is_refuted() && std::string(v.witness.at("axiom")).find("unit") != std::string::npos,
             "doubled identity not refuted");
  }
  {
    Presentation p = gallery_instantiate("chainA", "2", q)->cat().presentation();
    p.identity[id(1)] = Vector::Constant(1, Scalar::zero(q));
    const Verdict v = validate_category(LinCat(p));
    o.expect(v.is_refuted() && v.witness.at("axiom") == "nonzero_object", "zero identity not refuted");
  }
  o.detail = o.ok ? std::to_string(gallery_windows().size()) + " windows certified, 3 corruptions refuted" : o.detail;
  return o;
}

Outcome criterion_coalgebra() {
  Outcome o;
  for (const auto& w : gallery_windows()) {
    const auto s = gallery_instantiate(w.name, w.window);
    const GradedCoalgebra g = build_coalgebra(s);
    o.expect(validate_coalgebra(g).is_certified(), label(w) + " coalgebra invalid");
    o.expect(validate_coalgebra(short_subcoalgebra(g)).is_certified(), label(w) + " short part invalid");
    const Index chain = brute_longest_chain(s->cat());
    o.expect(PreorderAnalysis(s).longest_chain() == chain, label(w) + " order distance disagrees");
    // Counting tensor factors, the long part first vanishes at 1 + longest chain.
    const Index factors = long_composite_length(s->cat());
    o.expect(factors == 1 + chain, label(w) + ": long composites vanish at " + std::to_string(factors));
    // The index counts comultiplications: one less, and at least 1.
    const auto idx = conilpotency_index(long_quotient(g));
    o.expect(idx && *idx == std::max<Index>(1, factors - 1), label(w) + " conilpotency index");
  }
  if (o.ok) o.detail = "coassociative and counital; conilpotency matches 1 + longest chain in tensor factors";
  return o;
}

std::vector<Module> enumerated(const char* n, Side side) {
  return all_modules_f2(gallery_instantiate("chainA", n, kF2), side, 2);
}

// Window-relative support finiteness: no nonzero block reaches an open end of
// the window, so every set of linked objects is finite and seen in full.
bool supports_finite(const Module& m) {
  const Scope& s = m.scope();
  for (Index x = 0; x < m.cat().size(); ++x) {
    for (Index y = 0; y < m.cat().size(); ++y) {
      if (!m.block_is_zero(x, y) && (s.at_open_end(x) || s.at_open_end(y))) return false;
    }
  }
  return true;
}

Outcome criterion_recognition() {
  Outcome o;
  std::size_t total = 0;
  for (const char* n : {"2", "3"}) {
    for (Side side : {Side::Left, Side::Right}) {
      for (const Module& m : enumerated(n, side)) {
        ++total;
        const bool pred = supports_finite(m);
        const LiftReport co = lift_to_comodule(m);
        const LiftReport contra = lift_to_contramodule(m);
        o.expect((co.decision == LiftDecision::Liftable) == pred, "comodule lift disagrees with support predicate");
        o.expect((contra.decision == LiftDecision::Liftable) == pred, "contramodule lift disagrees with support predicate");
        const Verdict fin = side == Side::Left ? is_contrafinite(m) : is_cofinite(m);
        o.expect(fin.is_certified() == pred, "finiteness predicate disagrees");
        if (co.comodule) {
          o.expect(upsilon(*co.comodule) == m, "upsilon round trip");
          o.expect(lift_to_comodule(upsilon(*co.comodule)).comodule == co.comodule, "comodule round trip");
        }
        if (contra.contramodule) {
          o.expect(theta(*contra.contramodule) == m, "theta round trip");
          o.expect(lift_to_contramodule(theta(*contra.contramodule)).contramodule == contra.contramodule,
                   "contramodule round trip");
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(total) + " F_2 modules on A_2, A_3, both sides";
  return o;
}

Outcome criterion_faithful() {
  Outcome o;
  std::size_t pairs = 0;
  for (const char* n : {"2", "3"}) {
    std::vector<Comodule> co;
    std::vector<Contramodule> contra;
    for (const Module& m : enumerated(n, Side::Left)) {
      co.push_back(*lift_to_comodule(m).comodule);
      contra.push_back(*lift_to_contramodule(m).contramodule);
    }
    o.expect(check_left_strict(PreorderAnalysis(co.front().coalgebra().scope_ptr())).verdict.is_certified(),
             std::string("A_") + n + " not left strict");
    for (std::size_t i = 0; i < co.size(); ++i) {
      const Module a = upsilon(co[i]);
      for (std::size_t j = 0; j < co.size(); ++j) {
        const Module b = upsilon(co[j]);
        const Index mod = module_hom_dim(a, b);
        o.expect(comodule_hom_dim(co[i], co[j]) == mod, "comodule hom dimension");
        o.expect(contramodule_hom_dim(contra[i], contra[j]) == mod, "contramodule hom dimension");
        ++pairs;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " ordered pairs, comodule and contramodule";
  return o;
}

Outcome criterion_nakayama() {
  Outcome o;
  int count = 0;
  auto comodule = [&](const Comodule& m, const std::string& what) {
    if (m.total_dim() == 0) return;
    o.expect(nakayama_check(m).is_certified(), what + " comodule");
    ++count;
  };
  auto contramodule = [&](const Contramodule& p, const std::string& what) {
    if (p.total_dim() == 0) return;
    o.expect(nakayama_check(p).is_certified(), what + " contramodule");
    ++count;
  };
  for (const auto& w : gallery_windows()) {
    const auto g = std::make_shared<const GradedCoalgebra>(build_coalgebra(gallery_instantiate(w.name, w.window, kF2)));
    for (Side side : {Side::Left, Side::Right}) {
      for (Index d = 1; d <= 3; ++d) {
        comodule(cofree_comodule(g, side, d), label(w) + " cofree");
        contramodule(free_contramodule(g, side, d), label(w) + " free");
      }
    }
  }
  for (const auto& [spec, w] : std::vector<std::pair<std::string, std::string>>{{"zchain/N_l:0", "-3..3"},
                                                                                {"zchain/N_l:2", "-4..4"},
                                                                                {"zchain/sumN:2", "-4..4"},
                                                                                {"zneg/const", "-6..-1"},
                                                                                {"zneg/single", "-6..-1"}}) {
    const Module m = gallery_module_on(spec, w, kF2);
    const LiftReport co = lift_to_comodule(m);
    if (co.comodule) comodule(*co.comodule, spec);
    const LiftReport contra = lift_to_contramodule(m);
    if (contra.contramodule) contramodule(*contra.contramodule, spec);
  }
  for (const Module& m : enumerated("3", Side::Left)) {
    comodule(*lift_to_comodule(m).comodule, "A_3 enumerated");
    contramodule(*lift_to_contramodule(m).contramodule, "A_3 enumerated");
  }
  try {
    const auto g = std::make_shared<const GradedCoalgebra>(build_coalgebra(gallery_instantiate("chainA", "3", kF2)));
    (void)nakayama_check(Comodule(g, Side::Left, {0, 0, 0}));
    o.expect(false, "zero comodule accepted");
  } catch (const Error&) {
  }
  if (o.ok) o.detail = std::to_string(count) + " nonzero objects, kernel and cokernel nonzero";
  return o;
}

Outcome criterion_extensions() {
  Outcome o;
  constexpr int kTrials = 240;
  const ExtTrialSummary left = run_ext_trials(ClosureKind::ContrafiniteLeft, kTrials, kSeed);
  const ExtTrialSummary right = run_ext_trials(ClosureKind::CofiniteRight, kTrials, kSeed);
  o.expect(left.failed == 0, "contrafinite extension failed");
  o.expect(left.passed >= 200, "fewer than 200 contrafinite extensions ran");
  o.expect(right.failed == 0, "cofinite extension failed");
  o.expect(right.passed == left.passed && right.skipped == left.skipped, "dual trials differ");

  // The biconditional on the same kind of instances, checked directly.
  int direct = 0;
  for (int t = 0; t < kTrials; ++t) {
    std::mt19937_64 rng(kSeed + static_cast<std::uint64_t>(t));
    const long n = 1 + t % 5;
    const auto s = gallery_instantiate("zchain", std::to_string(-n) + ".." + std::to_string(n), kF2);
    const Module p = random_chain_module(s, rng, 2);
    const Module q = random_chain_module(s, rng, 2);
    const ShortExactSeq e = build_extension(random_cocycle(p, q, rng));
    const ShortExactSeq d = dualize_sequence(e);
    for (const auto& [m, dual] : {std::pair{e.sub, d.quot}, std::pair{e.mid, d.mid}, std::pair{e.quot, d.sub}}) {
      const Verdict a = is_contrafinite(m, SupportPolicy::Continue);
      const Verdict b = is_cofinite(dual, SupportPolicy::Continue);
      o.expect(a.status == b.status, "cofinite biconditional");
    }
    const bool ends = is_contrafinite(p, SupportPolicy::Continue).is_certified() &&
                      is_contrafinite(q, SupportPolicy::Continue).is_certified();
    if (ends) {
      o.expect(is_contrafinite(e.mid, SupportPolicy::Continue).is_certified(), "middle term not contrafinite");
      ++direct;
    }
  }
  if (o.ok) {
    std::ostringstream d;
    d << left.passed << " seeded extensions closed (" << left.skipped << " draws skipped), " << right.passed
      << " dual; biconditional on " << 3 * kTrials << " terms, " << direct << " further closed";
    o.detail = d.str();
  }
  return o;
}

Outcome criterion_big_submodule() {
  Outcome o;
  int instances = 0;
  auto check = [&](const Module& m) {
    if (graded_dim(full_graded(m)) > 6) return;
    Graded meet = full_graded(m);
    for (const Graded& q : all_submodules_f2(m)) {
      if (!is_big_submodule(m, q)) continue;
      for (std::size_t x = 0; x < meet.size(); ++x) meet[x] = intersect(meet[x], q[x]);
    }
    o.expect(minimal_big_submodule(m) == meet, "minimal big submodule differs from brute force");
    ++instances;
  };
  for (const char* w : {"-1..1", "-2..0", "-2..1", "-1..2", "-2..2"}) {
    const auto s = gallery_instantiate("zchain", w, kF2);
    std::mt19937_64 rng(kSeed + static_cast<std::uint64_t>(instances));
    for (int t = 0; t < 40; ++t) check(random_chain_module(s, rng, 2));
  }
  for (const auto& [spec, w] : std::vector<std::pair<std::string, std::string>>{
           {"zchain/N", "-2..2"}, {"zchain/N_l:1", "-2..2"}, {"zchain/N_l:0", "-1..1"}, {"zneg/const", "-4..-1"}}) {
    Module m = gallery_module_on(spec, w, kF2);
    check(m);
    m.set_declared(nullptr);
    check(m);
  }
  for (const Module& m : enumerated("3", Side::Left)) check(m);
  if (o.ok) o.detail = std::to_string(instances) + " instances of total dimension <= 6";
  return o;
}

Outcome criterion_counterexamples() {
  Outcome o;
  {
    const auto s = gallery_instantiate("zneg", "-8..-1");
    const PreorderAnalysis a(s);
    const FrontierSearch f = find_standard_frontier(a, s->cat().index_of(id(-1)));
    o.expect(f.verdict.is_refuted(), "zneg frontier at -1 not refuted");
    if (f.verdict.is_refuted()) {
      const auto sizes = f.verdict.witness.at("sizes").get<std::vector<int>>();
      o.expect(std::is_sorted(sizes.begin(), sizes.end(), std::less_equal<>()) && sizes.front() < sizes.back(),
               "zneg witness does not grow");
    }
    o.expect(check_left_strict(a).verdict.is_refuted(), "zneg left strictness not refuted");
  }
  {
    const Module n = gallery_module_on("zchain/N", "-3..3", kF2);
    o.expect(lift_to_comodule(n).decision == LiftDecision::NotLiftable, "N comodule lift");
    o.expect(lift_to_contramodule(n).decision == LiftDecision::NotLiftable, "N contramodule lift");
  }
  std::size_t last = 0;
  for (long l = 0; l <= 4; ++l) {
    const Module m = gallery_module_on("zchain/N_l:" + std::to_string(l), "-6..6", kF2);
    const Verdict v = is_contrafinite(m, SupportPolicy::Declared);
    o.expect(v.is_certified(), "N_l not contrafinite");
    if (!v.is_certified()) continue;
    const auto a = v.witness.at("A").at(id(l)).get<std::vector<std::string>>();
    o.expect(a.size() == static_cast<std::size_t>(2 * l + 1), "N_l witness set size");
    o.expect(a.size() > last, "N_l witness sets do not grow");
    last = a.size();
  }
  if (o.ok) o.detail = "zneg refuted at -1, N not liftable both ways, N_l certified with growing sets";
  return o;
}

Outcome criterion_duality() {
  Outcome o;
  int squares = 0;
  auto square = [&](const Comodule& n, const std::string& what) {
    const std::string lhs = module_to_json(theta(dualize_comodule(n))).dump();
    const std::string rhs = module_to_json(dualize_module(upsilon(n))).dump();
    o.expect(lhs == rhs, what + " duality square");
    ++squares;
  };
  for (const auto& w : gallery_windows()) {
    const auto g = std::make_shared<const GradedCoalgebra>(build_coalgebra(gallery_instantiate(w.name, w.window, kF2)));
    for (Index d = 1; d <= 2; ++d) square(cofree_comodule(g, Side::Right, d), label(w));
  }
  for (const char* w : {"-3..-1", "-6..-1"}) square(*lift_to_comodule(gallery_module_on("zneg/single", w, kF2)).comodule, "single");
  for (const char* n : {"2", "3"}) {
    for (const Module& m : enumerated(n, Side::Right)) square(*lift_to_comodule(m).comodule, "enumerated");
  }
  int involutions = 0;
  for (const char* n : {"2", "3"}) {
    for (const Module& m : enumerated(n, Side::Left)) {
      const Contramodule p = *lift_to_contramodule(m).contramodule;
      const Comodule back = anti_equivalence_roundtrip(p);
      o.expect(dualize_comodule(back) == p, "anti-equivalence is not an involution");
      o.expect(upsilon(back) == dualize_module(m), "anti-equivalence image");
      ++involutions;
    }
  }
  if (o.ok) o.detail = std::to_string(squares) + " squares byte-exact, " + std::to_string(involutions) + " involutions";
  return o;
}

Outcome criterion_boundary() {
  Outcome o;
  int count = 0;
  struct Case {
    std::shared_ptr<const Scope> scope;
    std::string what;
    Index max_dim;
  };
  const auto zneg = gallery_instantiate("zneg", "-3..-1", kF2);
  const std::vector<Case> upper = {{gallery_instantiate("chainA", "2", kF2), "A_2", 2},
                                   {gallery_instantiate("chainA", "3", kF2), "A_3", 2},
                                   {gallery_instantiate("discrete", "-1..1", kF2), "discrete", 2},
                                   {zneg, "zneg", 2}};
  const std::vector<Case> lower = {{gallery_instantiate("chainA", "2", kF2), "A_2", 2},
                                   {gallery_instantiate("chainA", "3", kF2), "A_3", 2},
                                   {gallery_instantiate("discrete", "-1..1", kF2), "discrete", 2},
                                   {zneg->opposite(), "zneg opposite", 2}};
  for (const auto& c : upper) {
    o.expect(check_upper_lower_finite(PreorderAnalysis(c.scope)).first.is_certified(), c.what + " not upper finite");
    for (const Module& m : all_modules_f2(c.scope, Side::Left, c.max_dim)) {
      o.expect(lift_to_comodule(m).decision == LiftDecision::Liftable, c.what + " module not comodule-liftable");
      ++count;
    }
  }
  for (const auto& c : lower) {
    o.expect(check_upper_lower_finite(PreorderAnalysis(c.scope)).second.is_certified(), c.what + " not lower finite");
    for (const Module& m : all_modules_f2(c.scope, Side::Left, c.max_dim)) {
      o.expect(lift_to_contramodule(m).decision == LiftDecision::Liftable, c.what + " module not contramodule-liftable");
      ++count;
    }
  }
  if (o.ok) o.detail = std::to_string(count) + " enumerated modules liftable";
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "axiom validation", 5, criterion_axioms},
      {2, "coalgebra correctness", 5, criterion_coalgebra},
      {3, "recognition", 60, criterion_recognition},
      {4, "full faithfulness", 0, criterion_faithful},
      {5, "nakayama", 0, criterion_nakayama},
      {6, "extension closure", 0, criterion_extensions},
      {7, "minimal big submodule", 120, criterion_big_submodule},
      {8, "counterexamples", 0, criterion_counterexamples},
      {9, "duality square", 0, criterion_duality},
      {10, "boundary equivalences", 0, criterion_boundary},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit; " + o.detail;
    }
    if (!o.ok) ++failures;
    std::printf("criterion %2d %-24s %s  %s (%d checks, %.2f s)\n", c.number, c.name, o.ok ? "PASS" : "FAIL",
                o.detail.c_str(), o.checks, secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
