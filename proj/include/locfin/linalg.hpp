#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "locfin/scalar.hpp"

namespace locfin {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Above this many rows or columns row reduction switches to the sparse path.
inline constexpr Index kSparseThreshold = 64;

Matrix zeros(Index rows, Index cols);
Matrix identity(FieldDescriptor f, Index n);
Vector unit_vector(FieldDescriptor f, Index n, Index i);
bool is_zero(const Matrix& m);
/// Rewrites untagged literals as elements of f.
Matrix tagged(const Matrix& m, FieldDescriptor f);

/// Reduced row echelon form with the zero rows dropped.
struct Echelon {
  Matrix reduced;
  std::vector<Index> pivots;
};

Echelon row_reduce(const Matrix& m);
Echelon row_reduce_dense(const Matrix& m);
Echelon row_reduce_sparse(const Matrix& m);

Index rank(const Matrix& m);

/// Dual map of m: V -> W is m^T: W* -> V* in dual bases.
inline Matrix dual_map(const Matrix& m) { return m.transpose(); }

/// Subspace of F^n, stored through its canonical RREF basis. Two subspaces
/// are equal iff their canonical bases agree.
class Subspace {
 public:
  explicit Subspace(Index ambient = 0);

  /// Span of the rows of `rows`.
  static Subspace span(Index ambient, const Matrix& rows);
  /// Span of the columns of `cols`.
  static Subspace span_columns(const Matrix& cols);
  static Subspace full(Index ambient);

  Index ambient_dim() const noexcept { return ambient_; }
  Index dim() const noexcept { return basis_.rows(); }
  /// dim() x ambient_dim(), one basis vector per row.
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<Index>& pivots() const noexcept { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// v minus its components along the basis; zero iff v lies in the subspace.
  Vector reduce(const Vector& v) const;
  /// Coordinates of v in basis(). Throws NoSolution if v is outside.
  Vector coordinates(const Vector& v) const;
  /// Standard coordinates not used as pivots; they give a basis of the quotient.
  std::vector<Index> free_coordinates() const;

  friend Subspace operator+(const Subspace& a, const Subspace& b);
  friend Subspace intersect(const Subspace& a, const Subspace& b);
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Index ambient_;
  Matrix basis_;
  std::vector<Index> pivots_;
};

Subspace intersect(const Subspace& a, const Subspace& b);

/// Null space of m inside F^{cols}.
Subspace kernel(const Matrix& m);
/// Column space of m inside F^{rows}.
Subspace image(const Matrix& m);
/// Some x with a x = b. Throws NoSolution.
Matrix solve(const Matrix& a, const Matrix& b);

/// Sparse 3-tensor over index ranges d1 x d2 x d3.
class Tensor3 {
 public:
  struct Entry {
    Index i;
    Index j;
    Index l;
    Scalar value;
  };

  Tensor3() = default;
  Tensor3(Index d1, Index d2, Index d3) : dims_{d1, d2, d3} {}
  /// Sums duplicate index triples and drops zeros. Throws DimensionMismatch.
  static Tensor3 from_entries(std::array<Index, 3> dims, std::vector<Entry> entries);

  const std::array<Index, 3>& dims() const noexcept { return dims_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Sum over i, j of a_i b_j T_{ijl}.
  Vector contract(const Vector& a, const Vector& b) const;
  /// Coefficient at (i, j, l); zero if absent.
  Scalar at(Index i, Index j, Index l) const;

  friend bool operator==(const Tensor3& a, const Tensor3& b);

 private:
  std::array<Index, 3> dims_{0, 0, 0};
  std::vector<Entry> entries_;
};

}  // namespace locfin
