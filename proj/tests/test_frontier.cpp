#include <doctest.h>

#include "helpers.hpp"
#include "locfin/error.hpp"
#include "locfin/frontier.hpp"
#include "locfin/gallery.hpp"

using namespace locfin;

namespace {

std::string id(long v) { return CategoryGenerator::format_id(v); }

std::vector<Index> idx(const LinCat& c, std::initializer_list<long> vs) {
  std::vector<Index> out;
  for (long v : vs) out.push_back(c.index_of(id(v)));
  std::sort(out.begin(), out.end());
  return out;
}

// Every Hom(z,y), z strictly below y, is spanned by composites through members.
bool factors(const LinCat& c, const PreorderAnalysis& a, Index y, const std::vector<Index>& members) {
  for (Index z = 0; z < c.size(); ++z) {
    if (!a.prec(z, y) || c.hom_dim(z, y) == 0) continue;
    Matrix rows = zeros(0, c.hom_dim(z, y));
    for (Index x : members) {
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        for (Index g = 0; g < c.hom_dim(z, x); ++g) {
          rows.conservativeResize(rows.rows() + 1, Eigen::NoChange);
          rows.row(rows.rows() - 1) = c.compose_basis(z, x, y, h, g).transpose();
        }
      }
    }
    if (rank(tagged(rows, c.field())) != c.hom_dim(z, y)) return false;
  }
  return true;
}

// Smallest, then lexicographically least, factoring subset of the strict down-set.
std::vector<Index> brute_minimal(const LinCat& c, const PreorderAnalysis& a, Index y) {
  const auto down = a.strict_downset(y);
  std::vector<Index> best;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1U << down.size()); ++mask) {
    std::vector<Index> s;
    for (std::size_t i = 0; i < down.size(); ++i) {
      if (mask & (1U << i)) s.push_back(down[i]);
    }
    if (!factors(c, a, y, s)) continue;
    if (!found || s.size() < best.size() || (s.size() == best.size() && s < best)) best = s;
    found = true;
  }
  return best;
}

}  // namespace

TEST_CASE("minimal frontiers agree with subset enumeration") {
  for (const auto& [name, w] : std::vector<std::pair<const char*, const char*>>{
           {"chainA", "4"}, {"zchain", "-2..2"}, {"zneg", "-5..-1"}, {"discrete", "-2..2"}, {"matrix2", "0..1"}}) {
    const auto s = gallery_instantiate(name, w)->as_finite();
    for (const auto& scope : {s, s->opposite()}) {
      const PreorderAnalysis a(scope);
      for (Index y = 0; y < a.size(); ++y) {
        auto got = minimal_frontier_members(a, y);
        std::sort(got.begin(), got.end());
        CHECK_MESSAGE(got == brute_minimal(scope->cat(), a, y), name);
      }
    }
  }
}

TEST_CASE("documented frontiers") {
  {
    const auto s = gallery_instantiate("chainA", "3");
    const FrontierSearch f = find_standard_frontier(PreorderAnalysis(s), s->cat().index_of(id(2)));
    CHECK(f.verdict.is_certified());
    REQUIRE(f.frontier);
    CHECK(f.frontier->members == idx(s->cat(), {1}));
  }
  {
    const auto s = gallery_instantiate("zchain", "-4..4");
    const PreorderAnalysis a(s);
    for (long n = -3; n <= 4; ++n) {
      const FrontierSearch f = find_standard_frontier(a, s->cat().index_of(id(n)));
      CHECK(f.verdict.is_certified());
      REQUIRE(f.frontier);
      CHECK(f.frontier->members == idx(s->cat(), {n - 1}));
      CHECK(f.frontier->exception.empty());
    }
  }
}

TEST_CASE("verify_frontier") {
  const auto s = gallery_instantiate("zchain", "-3..3")->as_finite();
  const PreorderAnalysis a(s);
  const LinCat& c = s->cat();
  const Index y = c.index_of(id(0));
  CHECK(verify_frontier(a, {y, idx(c, {-1}), {}}).is_certified());
  const Verdict bad = verify_frontier(a, {y, idx(c, {-2}), {}});
  CHECK(bad.is_refuted());
  CHECK(bad.witness.at("z") == id(-1));
  CHECK(verify_frontier(a, {y, idx(c, {-2}), idx(c, {-1})}).is_certified());
  CHECK_THROWS_AS(verify_frontier(a, {y, idx(c, {0}), {}}), Error);
  CHECK_THROWS_AS(verify_frontier(a, {y, idx(c, {1}), {}}), Error);
  // On the window itself the down-set of 0 is not covered.
  const auto w = gallery_instantiate("zchain", "-3..3");
  CHECK(verify_frontier(PreorderAnalysis(w), {y, idx(c, {-1}), {}}).is_inconclusive());
}

TEST_CASE("zneg is not left strict at -1") {
  const auto s = gallery_instantiate("zneg", "-6..-1");
  const PreorderAnalysis a(s);
  const FrontierSearch f = find_standard_frontier(a, s->cat().index_of(id(-1)));
  CHECK(f.verdict.is_refuted());
  const auto sizes = f.verdict.witness.at("sizes").get<std::vector<int>>();
  REQUIRE(sizes.size() == 3);
  CHECK(sizes[0] < sizes[1]);
  CHECK(sizes[1] < sizes[2]);
  const LeftStrictReport r = check_left_strict(a);
  CHECK(r.verdict.is_refuted());
  CHECK_FALSE(r.tower);
  // Every other object has the empty frontier.
  CHECK(find_standard_frontier(a, s->cat().index_of(id(-3))).verdict.is_certified());
}

TEST_CASE("degree n frontiers on zchain") {
  const auto s = gallery_instantiate("zchain", "-5..3");
  const LeftStrictReport r = check_left_strict(PreorderAnalysis(s));
  REQUIRE(r.verdict.is_certified());
  REQUIRE(r.tower);
  const LinCat& c = s->cat();
  const Index y = c.index_of(id(0));
  const Frontier f3 = degree_n_frontier(*r.tower, y, 3);
  CHECK(f3.members == idx(c, {-3}));
  CHECK(f3.exception == idx(c, {-2, -1}));
  const auto fin = s->as_finite();
  CHECK(verify_frontier(PreorderAnalysis(fin), f3).is_certified());
  const Frontier f1 = degree_n_frontier(*r.tower, y, 1);
  CHECK(f1.members == idx(c, {-1}));
  CHECK(f1.exception.empty());
  CHECK_THROWS_AS(degree_n_frontier(*r.tower, y, 0), Error);
  for (Index n = 1; n <= 4; ++n) {
    for (Index x : degree_n_frontier(*r.tower, y, n).members) CHECK(*r.tower->analysis().distance(x, y) >= n);
  }
}
