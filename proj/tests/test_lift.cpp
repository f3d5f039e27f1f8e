#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "locfin/error.hpp"
#include "locfin/gallery.hpp"
#include "locfin/io.hpp"
#include "locfin/lift.hpp"

using namespace locfin;
using locfin::testing::all_modules_f2;
using locfin::testing::all_submodules_f2;
using locfin::testing::kSeed;

namespace {

std::string id(long v) { return CategoryGenerator::format_id(v); }

const auto kF2 = FieldDescriptor::prime(2);

}  // namespace

TEST_CASE("every module on A_2 lifts both ways and round-trips") {
  const auto s = gallery_instantiate("chainA", "2", kF2);
  const auto mods = all_modules_f2(s, Side::Left, 2);
  CHECK(mods.size() == 31);
  for (const Module& m : mods) {
    const LiftReport co = lift_to_comodule(m);
    REQUIRE(co.decision == LiftDecision::Liftable);
    REQUIRE(co.comodule);
    CHECK(upsilon(*co.comodule) == m);
    const LiftReport contra = lift_to_contramodule(m);
    REQUIRE(contra.decision == LiftDecision::Liftable);
    REQUIRE(contra.contramodule);
    CHECK(theta(*contra.contramodule) == m);
  }
  for (const Module& m : all_modules_f2(s, Side::Right, 1)) {
    CHECK(upsilon(*lift_to_comodule(m).comodule) == m);
    CHECK(theta(*lift_to_contramodule(m).contramodule) == m);
  }
}

TEST_CASE("non-modules are rejected") {
  const auto s = gallery_instantiate("chainA", "2", kF2);
  Module m(s, Side::Left, {1, 1});
  m.set_action(0, 0, 0, identity(kF2, 1));
  m.set_action(1, 1, 0, zeros(1, 1));
  CHECK_THROWS_AS(lift_to_comodule(m), Error);
  CHECK_THROWS_AS(gallery_module_on("zchain/sumN", "-2..2"), Error);
}

TEST_CASE("the constant module on zchain") {
  const Module n = gallery_module_on("zchain/N", "-3..3");
  const LiftReport co = lift_to_comodule(n);
  CHECK(co.decision == LiftDecision::NotLiftable);
  CHECK(co.witness.at("declared") == "infinite");
  CHECK(lift_to_contramodule(n).decision == LiftDecision::NotLiftable);
  CHECK(is_contrafinite(n, SupportPolicy::Declared).is_refuted());

  Module bare = n;
  bare.set_declared(nullptr);
  CHECK(lift_to_comodule(bare).decision == LiftDecision::WindowLeak);
  CHECK(lift_to_contramodule(bare).decision == LiftDecision::WindowLeak);
  CHECK(is_contrafinite(bare, SupportPolicy::Window).is_inconclusive());
  CHECK(is_contrafinite(bare, SupportPolicy::Continue).is_refuted());
}

TEST_CASE("N_l is contrafinite with growing sets") {
  std::size_t last = 0;
  for (long l = 0; l <= 3; ++l) {
    const Module m = gallery_module_on("zchain/N_l:" + std::to_string(l), "-5..5");
    const Verdict v = is_contrafinite(m, SupportPolicy::Declared);
    REQUIRE(v.is_certified());
    const auto a = v.witness.at("A").at(id(l)).get<std::vector<std::string>>();
    std::vector<std::string> expect;
    for (long k = -l; k <= l; ++k) expect.push_back(id(k));
    std::sort(expect.begin(), expect.end());
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == expect);
    CHECK(a.size() > last);
    last = a.size();
    const LiftReport r = lift_to_contramodule(m);
    CHECK(r.decision == LiftDecision::Liftable);
    CHECK(theta(*r.contramodule) == m);
  }
}

TEST_CASE("sums of N_l have finite but non-uniform supports") {
  const LiftReport r = lift_to_contramodule(gallery_module_on("zchain/sumN:2", "-4..4"));
  CHECK(r.decision == LiftDecision::Liftable);
  const bool flagged = std::any_of(r.flags.begin(), r.flags.end(),
                                   [](const std::string& f) { return f.find("not uniformly") != std::string::npos; });
  CHECK(flagged);
}

TEST_CASE("zneg: comodules lift, contramodule supports do not obstruct") {
  const Module m = gallery_module_on("zneg/const", "-5..-1");
  const LiftReport contra = lift_to_contramodule(m);
  CHECK(contra.decision == LiftDecision::Liftable);
  CHECK_FALSE(contra.flags.empty());
  CHECK(lift_to_comodule(m).decision == LiftDecision::Liftable);
  const Module single = gallery_module_on("zneg/single", "-5..-1");
  CHECK(single.side() == Side::Right);
  CHECK(lift_to_comodule(single).decision == LiftDecision::Liftable);
}

TEST_CASE("contrafiniteness under continuation is decided by the lower boundary") {
  // Continuing a window of zchain repeats the lowest object with identity maps,
  // so infinitely many sources appear exactly when that component is nonzero.
  const auto s = gallery_instantiate("zchain", "-2..1", kF2);
  std::mt19937_64 rng(kSeed);
  const Index lo = s->cat().index_of(id(-2));
  const Index next = s->cat().index_of(id(-1));
  for (int t = 0; t < 40; ++t) {
    const Module m = random_chain_module(s, rng, 2);
    CHECK(is_contrafinite(m, SupportPolicy::Continue).is_certified() == (m.dim(lo) == 0));
    const bool leaks = !m.block_is_zero(lo, next);
    CHECK(is_contrafinite(m, SupportPolicy::Window).is_inconclusive() == leaks);
  }
}

TEST_CASE("cofiniteness is contrafiniteness of the dual") {
  const auto s = gallery_instantiate("zchain", "-2..2", kF2);
  std::mt19937_64 rng(kSeed + 1);
  for (int t = 0; t < 30; ++t) {
    const Module p = random_chain_module(s, rng, 2);
    const Module n = dualize_module(p);
    CHECK(n.side() == Side::Right);
    CHECK(dualize_module(n) == p);
    for (auto pol : {SupportPolicy::Window, SupportPolicy::Continue}) {
      const Verdict a = is_contrafinite(p, pol);
      const Verdict b = is_cofinite(n, pol);
      CHECK(a.status == b.status);
      CHECK(a.witness == b.witness);
    }
  }
  CHECK_THROWS_AS(is_cofinite(random_chain_module(s, rng, 1)), Error);
}

TEST_CASE("minimal big submodule is the intersection of all big submodules") {
  for (const char* w : {"-1..1", "-2..0"}) {
    const auto s = gallery_instantiate("zchain", w, kF2);
    std::mt19937_64 rng(kSeed + 2);
    for (int t = 0; t < 12; ++t) {
      const Module m = random_chain_module(s, rng, 1);
      Graded meet = full_graded(m);
      for (const Graded& q : all_submodules_f2(m)) {
        if (!is_big_submodule(m, q)) continue;
        for (std::size_t x = 0; x < meet.size(); ++x) meet[x] = intersect(meet[x], q[x]);
      }
      CHECK(minimal_big_submodule(m) == meet);
    }
  }
  CHECK(graded_dim(minimal_big_submodule(gallery_module_on("zchain/N_l:1", "-2..2"))) == 0);
  CHECK(graded_dim(minimal_big_submodule(gallery_module_on("zchain/N", "-2..2"))) == 5);
}

TEST_CASE("continued module is a module that restricts back") {
  const auto s = gallery_instantiate("zchain", "-1..1", kF2);
  std::mt19937_64 rng(kSeed + 3);
  const Module m = random_chain_module(s, rng, 2);
  const Module c = continued_module(m, 2);
  CHECK(c.cat().size() == 7);
  CHECK(validate_module(c).is_certified());
  for (Index x = 0; x < m.cat().size(); ++x) {
    for (Index y = 0; y < m.cat().size(); ++y) {
      const Index cx = c.cat().index_of(m.cat().object(x));
      const Index cy = c.cat().index_of(m.cat().object(y));
      if (m.cat().hom_dim(x, y) > 0) CHECK(c.action(cx, cy, 0) == m.action(x, y, 0));
    }
  }
  CHECK_THROWS_AS(continued_module(gallery_module_on("zneg/const", "-4..-2"), 1), Error);
}

TEST_CASE("duality square and anti-equivalence on A_3") {
  const auto s = gallery_instantiate("chainA", "3", kF2);
  const auto g = std::make_shared<const GradedCoalgebra>(build_coalgebra(s));
  for (Index d : {1, 2}) {
    const Comodule n = cofree_comodule(g, Side::Right, d);
    CHECK(module_to_json(theta(dualize_comodule(n))).dump() == module_to_json(dualize_module(upsilon(n))).dump());
    const Contramodule p = free_contramodule(g, Side::Left, d);
    const Comodule back = anti_equivalence_roundtrip(p);
    CHECK(back.side() == Side::Right);
    CHECK(validate_comodule(back).is_certified());
    CHECK(dualize_comodule(back) == p);
    // The free contramodule is the dual of the cofree comodule.
    CHECK(back == cofree_comodule(g, Side::Right, d));
  }
}

TEST_CASE("anti-equivalence needs left strictness") {
  const auto s = gallery_instantiate("zneg", "-4..-1", kF2);
  const auto g = std::make_shared<const GradedCoalgebra>(build_coalgebra(s));
  CHECK_THROWS_AS(anti_equivalence_roundtrip(free_contramodule(g, Side::Left, 1)), Error);
}

TEST_CASE("lift report json is deterministic") {
  const Module n = gallery_module_on("zchain/N_l:1", "-2..2");
  CHECK(lift_to_contramodule(n).to_json().dump() == lift_to_contramodule(n).to_json().dump());
  CHECK(lift_to_contramodule(n).to_json().at("schema_version") == kSchemaVersion);
}
