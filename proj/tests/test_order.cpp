#include <doctest.h>

#include <functional>
#include <random>

#include "helpers.hpp"
#include "locfin/gallery.hpp"
#include "locfin/order.hpp"

using namespace locfin;

namespace {

std::string id(long v) { return CategoryGenerator::format_id(v); }

// Reachability by repeated squaring of the nonzero-Hom relation.
std::vector<std::vector<bool>> closure(const LinCat& c) {
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

// Longest chain x = u_0 < u_1 < ... < u_d = y of strict steps, by exhaustive DFS.
Index longest(const std::vector<std::vector<bool>>& r, std::size_t x, std::size_t y) {
  auto strict = [&](std::size_t a, std::size_t b) { return r[a][b] && !r[b][a]; };
  std::function<Index(std::size_t)> go = [&](std::size_t u) -> Index {
    if (r[u][y] && r[y][u]) return 0;
    Index best = -1;
    for (std::size_t v = 0; v < r.size(); ++v) {
      if (strict(u, v) && r[v][y]) {
        const Index d = go(v);
        if (d >= 0) best = std::max(best, d + 1);
      }
    }
    return best;
  };
  return go(x);
}

}  // namespace

TEST_CASE("preorder and distances agree with brute force on gallery windows") {
  for (const char* name : {"chainA", "zchain", "zneg", "discrete", "matrix2"}) {
    const auto s = gallery_instantiate(name, "");
    const PreorderAnalysis a(s);
    const auto r = closure(s->cat());
    for (Index x = 0; x < a.size(); ++x) {
      for (Index y = 0; y < a.size(); ++y) {
        const auto ux = static_cast<std::size_t>(x);
        const auto uy = static_cast<std::size_t>(y);
        CHECK(a.preceq(x, y) == r[ux][uy]);
        if (r[ux][uy]) {
          REQUIRE(a.distance(x, y));
          CHECK(*a.distance(x, y) == longest(r, ux, uy));
        } else {
          CHECK_FALSE(a.distance(x, y));
        }
      }
    }
  }
}

TEST_CASE("documented distance and classes") {
  const auto s = gallery_instantiate("zchain", "-3..3");
  const PreorderAnalysis a(s);
  const LinCat& c = s->cat();
  CHECK(*a.distance(c.index_of(id(-2)), c.index_of(id(1))) == 3);
  CHECK(a.longest_chain() == 6);
  const PreorderAnalysis m(gallery_instantiate("matrix2", ""));
  CHECK(m.classes().size() == 1);
  CHECK(m.longest_chain() == 0);
}

TEST_CASE("distance is superadditive and positive exactly on strict pairs") {
  for (const char* w : {"-3..3", "-1..4"}) {
    const PreorderAnalysis a(gallery_instantiate("zchain", w));
    for (Index x = 0; x < a.size(); ++x) {
      for (Index y = 0; y < a.size(); ++y) {
        if (!a.preceq(x, y)) continue;
        CHECK((*a.distance(x, y) >= 1) == a.prec(x, y));
        for (Index z = 0; z < a.size(); ++z) {
          if (a.preceq(y, z)) CHECK(*a.distance(x, z) >= *a.distance(x, y) + *a.distance(y, z));
        }
      }
    }
  }
}

TEST_CASE("morphism classes") {
  const auto q = FieldDescriptor::rationals();
  const PreorderAnalysis m(gallery_instantiate("matrix2", ""));
  CHECK(classify_morphism(m, 0, 1, unit_vector(q, 1, 0)) == MorphismClass::Short);
  const auto s = gallery_instantiate("chainA", "3");
  const PreorderAnalysis a(s);
  CHECK(classify_morphism(a, 0, 2, unit_vector(q, 1, 0)) == MorphismClass::Long);
  CHECK(classify_morphism(a, 0, 2, Vector::Constant(1, Scalar::zero(q))) == MorphismClass::Zero);
  CHECK_THROWS(classify_morphism(a, 0, 2, Vector::Constant(2, Scalar::zero(q))));
}

TEST_CASE("finiteness verdicts") {
  {
    const PreorderAnalysis a(gallery_instantiate("zchain", "-3..3"));
    CHECK(check_interval_finiteness(a).is_certified());
    const auto [up, down] = check_upper_lower_finite(a);
    CHECK(up.is_refuted());
    CHECK(down.is_refuted());
    CHECK_FALSE(up.witness.empty());
  }
  {
    const auto [up, down] = check_upper_lower_finite(PreorderAnalysis(gallery_instantiate("zneg", "")));
    CHECK(up.is_certified());
    CHECK(down.is_refuted());
  }
  {
    const auto [up, down] = check_upper_lower_finite(PreorderAnalysis(gallery_instantiate("discrete", "")));
    CHECK(up.is_certified());
    CHECK(down.is_certified());
  }
  {
    const auto [up, down] = check_upper_lower_finite(PreorderAnalysis(gallery_instantiate("chainA", "4")));
    CHECK(up.is_certified());
    CHECK(down.is_certified());
  }
}
