#include <doctest.h>

#include "helpers.hpp"
#include "locfin/error.hpp"
#include "locfin/gallery.hpp"
#include "locfin/io.hpp"
#include "locfin/lincat.hpp"

using namespace locfin;

namespace {

std::string id(long v) { return CategoryGenerator::format_id(v); }

LinCat chain(long n, FieldDescriptor f = {}) { return gallery_instantiate("chainA", std::to_string(n), f)->cat(); }

// Composition table of A_n rebuilt from the definition.
bool matches_chain_definition(const LinCat& c, long n) {
  const auto f = c.field();
  if (c.size() != n) return false;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const Index x = c.index_of(id(i));
      const Index y = c.index_of(id(j));
      if (c.hom_dim(x, y) != (i <= j ? 1 : 0)) return false;
      for (long k = 0; k < n; ++k) {
        const Index z = c.index_of(id(k));
        if (i <= j && j <= k && c.compose_basis(x, y, z, 0, 0) != unit_vector(f, 1, 0)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("gallery chains match their definition and validate") {
  for (long n = 1; n <= 5; ++n) {
    const LinCat c = chain(n);
    CHECK(matches_chain_definition(c, n));
    CHECK(validate_category(c).is_certified());
  }
}

TEST_CASE("gallery windows validate") {
  for (const char* name : {"zchain", "zneg", "discrete", "matrix2"}) {
    const auto s = gallery_instantiate(name, "");
    CHECK_MESSAGE(validate_category(s->cat()).is_certified(), name);
  }
  const auto big = gallery_instantiate("zchain", "-6..5");
  CHECK(big->cat().size() == 12);
  CHECK(validate_category(big->cat()).is_certified());
}

TEST_CASE("zchain window restricted to three objects is A_3") {
  const auto s = gallery_instantiate("zchain", "[-2..2]");
  CHECK(s->cat().size() == 5);
  const LinCat& c = s->cat();
  const LinCat sub = c.full_subcategory({c.index_of(id(-1)), c.index_of(id(0)), c.index_of(id(1))});
  const LinCat a3 = chain(3);
  for (Index x = 0; x < 3; ++x) {
    for (Index y = 0; y < 3; ++y) {
      // Lexicographic ids: -001 < +000 < +001 is not the numeric order, so map by value.
      const long vx = *CategoryGenerator::parse_id(sub.object(x));
      const long vy = *CategoryGenerator::parse_id(sub.object(y));
      CHECK(sub.hom_dim(x, y) == a3.hom_dim(a3.index_of(id(vx + 1)), a3.index_of(id(vy + 1))));
    }
  }
}

TEST_CASE("zneg has arrows into -1 only") {
  const auto s = gallery_instantiate("zneg", "[-4..-1]");
  const LinCat& c = s->cat();
  CHECK(c.size() == 4);
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      const bool arrow = x == y || c.object(y) == "-001";
      CHECK(c.hom_dim(x, y) == (arrow ? 1 : 0));
    }
  }
}

TEST_CASE("corrupted presentations are refuted with witnesses") {
  const auto q = FieldDescriptor::rationals();
  SUBCASE("associativity") {
    Presentation p = chain(4, q).presentation();
    p.compose[{id(0), id(1), id(3)}] = Tensor3::from_entries({1, 1, 1}, {{0, 0, 0, Scalar::from_int(q, 2)}});
    const Verdict v = validate_category(LinCat(p));
    CHECK(v.is_refuted());
    CHECK(v.witness.at("axiom") == "associativity");
  }
  SUBCASE("unit") {
    Presentation p = chain(2, q).presentation();
    p.identity[id(0)] = unit_vector(q, 1, 0) * Scalar::from_int(q, 2);
    const Verdict v = validate_category(LinCat(p));
    CHECK(v.is_refuted());
    CHECK(std::string(v.witness.at("axiom")).find("unit") != std::string::npos);
  }
  SUBCASE("zero object") {
    Presentation p = chain(2, q).presentation();
    p.identity[id(1)] = Vector::Constant(1, Scalar::zero(q));
    const Verdict v = validate_category(LinCat(p));
    CHECK(v.is_refuted());
    CHECK(v.witness.at("axiom") == "nonzero_object");
  }
}

TEST_CASE("malformed presentations throw") {
  Presentation p = chain(2).presentation();
  p.compose[{id(0), id(0), id(1)}] = Tensor3(2, 2, 2);
  CHECK_THROWS_AS(LinCat{p}, Error);
  CHECK_THROWS_AS(gallery_instantiate("nope", ""), Error);
  CHECK_THROWS_AS(gallery_instantiate("zchain", "3..1"), Error);
}

TEST_CASE("json round trip and opposite involution") {
  for (long n = 1; n <= 4; ++n) {
    const LinCat c = chain(n, FieldDescriptor::prime(3));
    CHECK(category_from_json(category_to_json(c)) == c);
    CHECK(c.opposite().opposite() == c);
    CHECK(validate_category(c.opposite()).is_certified());
  }
  const LinCat z = gallery_instantiate("zchain", "-2..2")->cat();
  const LinCat op = z.opposite();
  for (Index x = 0; x < z.size(); ++x) {
    for (Index y = 0; y < z.size(); ++y) CHECK(op.hom_dim(y, x) == z.hom_dim(x, y));
  }
}

TEST_CASE("scope windows, enlargement and retraction") {
  const auto s = gallery_instantiate("zchain", "-2..2");
  CHECK(s->is_window());
  CHECK_FALSE(s->is_complete());
  CHECK(s->at_open_end(s->cat().index_of(id(-2))));
  CHECK(s->at_open_end(s->cat().index_of(id(2))));
  CHECK_FALSE(s->at_open_end(s->cat().index_of(id(0))));
  const auto e = s->enlarged(1);
  CHECK(e->lo() == -3);
  CHECK(e->hi() == 3);
  CHECK(s->has_retraction());
  CHECK(s->retract(-7) == -2);
  CHECK(s->retract(9) == 2);
  CHECK(s->retract(1) == 1);
  const auto a = gallery_instantiate("chainA", "3");
  CHECK(a->is_complete());
  const auto zn = gallery_instantiate("zneg", "-4..-1");
  CHECK_FALSE(zn->at_open_end(zn->cat().index_of(id(-1))));
  CHECK(zn->at_open_end(zn->cat().index_of(id(-4))));
  CHECK(zn->downset(zn->cat().index_of(id(-1))).is_infinite());
  CHECK(zn->upset(zn->cat().index_of(id(-3))).is_finite());
}
