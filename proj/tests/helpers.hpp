#pragma once

#include <cstdint>
#include <random>

#include "locfin/linalg.hpp"

namespace locfin::testing {

inline constexpr std::uint64_t kSeed = 20240611;

inline Matrix random_matrix(std::mt19937_64& rng, FieldDescriptor f, Index rows, Index cols, int density_percent = 60) {
  std::uniform_int_distribution<int> coin(0, 99);
  std::uniform_int_distribution<int> value(-3, 3);
  Matrix m = zeros(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      if (coin(rng) < density_percent) m(r, c) = Scalar::from_int(f, value(rng));
    }
  }
  return m;
}

inline Matrix from_ints(FieldDescriptor f, Index rows, Index cols, std::initializer_list<std::int64_t> values) {
  Matrix m(rows, cols);
  auto it = values.begin();
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = Scalar::from_int(f, *it++);
  }
  return m;
}

}  // namespace locfin::testing
