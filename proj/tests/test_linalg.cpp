#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "helpers.hpp"
#include "locfin/error.hpp"
#include "locfin/linalg.hpp"

using namespace locfin;
using locfin::testing::from_ints;
using locfin::testing::random_matrix;

namespace {

// Rank over F_2 by counting the row span.
Index brute_force_rank_f2(const Matrix& m) {
  std::set<std::vector<std::uint32_t>> span;
  const Index rows = m.rows();
  for (std::uint32_t mask = 0; mask < (1U << rows); ++mask) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(m.cols()), 0);
    for (Index r = 0; r < rows; ++r) {
      if (!(mask & (1U << r))) continue;
      for (Index c = 0; c < m.cols(); ++c) v[static_cast<std::size_t>(c)] ^= m(r, c).in(FieldDescriptor::prime(2)).residue();
    }
    span.insert(v);
  }
  Index rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("documented rank, image and kernel examples") {
  const auto q = FieldDescriptor::rationals();
  const auto f2 = FieldDescriptor::prime(2);
  CHECK(rank(from_ints(q, 2, 2, {1, 2, 2, 4})) == 1);
  CHECK(image(from_ints(q, 2, 2, {1, 1, 0, 1})).dim() == 2);
  Subspace k = kernel(from_ints(f2, 1, 2, {1, 1}));
  CHECK(k.dim() == 1);
  CHECK(k.contains(Vector(from_ints(f2, 2, 1, {1, 1}))));
}

TEST_CASE("rank agrees with a brute force span count over F_2") {
  std::mt19937_64 rng(testing::kSeed);
  const auto f2 = FieldDescriptor::prime(2);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix m = random_matrix(rng, f2, 1 + trial % 8, 1 + (trial / 8) % 7, 50);
    CHECK(rank(m) == brute_force_rank_f2(m));
  }
}

TEST_CASE("dense and sparse elimination give the same canonical form") {
  std::mt19937_64 rng(testing::kSeed + 1);
  for (auto f : {FieldDescriptor::rationals(), FieldDescriptor::prime(3), FieldDescriptor::prime(2)}) {
    for (int trial = 0; trial < 40; ++trial) {
      Matrix m = random_matrix(rng, f, 1 + trial % 9, 1 + (trial * 7) % 11, 10 + (trial * 13) % 80);
      Echelon d = row_reduce_dense(m);
      Echelon s = row_reduce_sparse(m);
      REQUIRE(d.pivots == s.pivots);
      CHECK(d.reduced == s.reduced);
    }
    Matrix big = random_matrix(rng, f, 90, 70, 8);
    Echelon d = row_reduce_dense(big);
    Echelon s = row_reduce(big);
    REQUIRE(d.pivots == s.pivots);
    CHECK(d.reduced == s.reduced);
  }
}

TEST_CASE("kernel vectors are annihilated and rank-nullity holds") {
  std::mt19937_64 rng(testing::kSeed + 2);
  for (auto f : {FieldDescriptor::rationals(), FieldDescriptor::prime(5)}) {
    for (int trial = 0; trial < 60; ++trial) {
      Matrix m = random_matrix(rng, f, 1 + trial % 6, 1 + trial % 9, 40);
      Subspace k = kernel(m);
      CHECK(k.dim() + rank(m) == m.cols());
      CHECK(is_zero(m * k.basis().transpose()));
      CHECK(image(m).dim() == rank(m));
    }
  }
}

TEST_CASE("solve returns a solution or reports inconsistency") {
  std::mt19937_64 rng(testing::kSeed + 3);
  const auto q = FieldDescriptor::rationals();
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a = random_matrix(rng, q, 4, 3, 70);
    Matrix x0 = random_matrix(rng, q, 3, 2, 70);
    Matrix b = a * x0;
    CHECK(a * solve(a, b) == b);
  }
  Matrix a = from_ints(q, 2, 1, {1, 1});
  Matrix b = from_ints(q, 2, 1, {1, 2});
  CHECK_THROWS_AS(solve(a, b), Error);
}

TEST_CASE("subspace sum and intersection satisfy the dimension formula") {
  std::mt19937_64 rng(testing::kSeed + 4);
  for (auto f : {FieldDescriptor::rationals(), FieldDescriptor::prime(2)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const Index n = 1 + trial % 7;
      Subspace a = Subspace::span(n, random_matrix(rng, f, trial % 4, n, 50));
      Subspace b = Subspace::span(n, random_matrix(rng, f, trial % 5, n, 50));
      Subspace s = a + b;
      Subspace i = intersect(a, b);
      CHECK(s.dim() + i.dim() == a.dim() + b.dim());
      CHECK(a.contains(i));
      CHECK(b.contains(i));
      CHECK(s.contains(a));
      CHECK(Subspace::span(n, s.basis()) == s);
    }
  }
  CHECK_THROWS_AS(Subspace(2) + Subspace(3), Error);
}

TEST_CASE("quotient coordinates complement the pivots") {
  const auto q = FieldDescriptor::rationals();
  Subspace s = Subspace::span(3, from_ints(q, 1, 3, {0, 1, 1}));
  CHECK(s.free_coordinates() == std::vector<Index>{0, 2});
  CHECK(s.coordinates(Vector(from_ints(q, 3, 1, {0, 2, 2})))(0) == Scalar::from_int(q, 2));
}

TEST_CASE("tensor entries merge and contract bilinearly") {
  const auto q = FieldDescriptor::rationals();
  auto one = Scalar::one(q);
  Tensor3 t = Tensor3::from_entries({2, 2, 1}, {{0, 0, 0, one}, {1, 1, 0, one}, {0, 0, 0, -one}, {1, 0, 0, one}});
  CHECK(t.entries().size() == 2);
  Vector a = from_ints(q, 2, 1, {2, 3});
  Vector b = from_ints(q, 2, 1, {5, 7});
  CHECK(t.contract(a, b)(0) == Scalar::from_int(q, 3 * 7 + 3 * 5));
  CHECK_THROWS_AS(Tensor3::from_entries({1, 1, 1}, {{1, 0, 0, one}}), Error);
}
