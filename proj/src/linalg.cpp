#include "locfin/linalg.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "locfin/error.hpp"

namespace locfin {

Matrix zeros(Index rows, Index cols) { return Matrix::Constant(rows, cols, Scalar(0)); }

Matrix identity(FieldDescriptor f, Index n) {
  Matrix m = zeros(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Vector unit_vector(FieldDescriptor f, Index n, Index i) {
  Vector v = Vector::Constant(n, Scalar(0));
  v(i) = Scalar::one(f);
  return v;
}

bool is_zero(const Matrix& m) {
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (!m(r, c).is_zero()) return false;
    }
  }
  return true;
}

Matrix tagged(const Matrix& m, FieldDescriptor f) {
  Matrix out(m.rows(), m.cols());
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) out(r, c) = m(r, c).in(f);
  }
  return out;
}

Echelon row_reduce_dense(const Matrix& input) {
  Matrix m = input;
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = m(r, c).inverse();
    for (Index k = c; k < cols; ++k) m(r, k) *= inv;
    for (Index q = 0; q < rows; ++q) {
      if (q == r || m(q, c).is_zero()) continue;
      const Scalar factor = m(q, c);
      for (Index k = c; k < cols; ++k) {
        if (!m(r, k).is_zero()) m(q, k) -= factor * m(r, k);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.topRows(r), std::move(pivots)};
}

namespace {

using SparseRow = std::map<Index, Scalar>;

// row -= factor * other
void axpy(SparseRow& row, const Scalar& factor, const SparseRow& other) {
  for (const auto& [col, value] : other) {
    auto it = row.find(col);
    if (it == row.end()) {
      row.emplace(col, -(factor * value));
    } else {
      it->second -= factor * value;
      if (it->second.is_zero()) row.erase(it);
    }
  }
}

}  // namespace

Echelon row_reduce_sparse(const Matrix& m) {
  // Pivot rows keyed by pivot column; kept fully reduced against each other.
  std::map<Index, SparseRow> basis;
  for (Index r = 0; r < m.rows(); ++r) {
    SparseRow row;
    for (Index c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) row.emplace(c, m(r, c));
    }
    // Entries of a pivot row sit at or right of its pivot, so one left-to-right
    // sweep clears every pivot column.
    for (auto it = row.begin(); it != row.end();) {
      auto b = basis.find(it->first);
      if (b == basis.end()) {
        ++it;
        continue;
      }
      const Index col = it->first;
      const Scalar factor = it->second;
      axpy(row, factor, b->second);
      it = row.upper_bound(col);
    }
    if (row.empty()) continue;
    const Index lead = row.begin()->first;
    const Scalar inv = row.begin()->second.inverse();
    for (auto& entry : row) entry.second *= inv;
    for (auto& [col, other] : basis) {
      auto hit = other.find(lead);
      if (hit == other.end()) continue;
      const Scalar factor = hit->second;
      axpy(other, factor, row);
    }
    basis.emplace(lead, std::move(row));
  }
  Echelon out{zeros(static_cast<Index>(basis.size()), m.cols()), {}};
  Index r = 0;
  for (const auto& [lead, row] : basis) {
    for (const auto& [col, value] : row) out.reduced(r, col) = value;
    out.pivots.push_back(lead);
    ++r;
  }
  return out;
}

Echelon row_reduce(const Matrix& m) {
  if (m.rows() > kSparseThreshold || m.cols() > kSparseThreshold) return row_reduce_sparse(m);
  return row_reduce_dense(m);
}

Index rank(const Matrix& m) { return static_cast<Index>(row_reduce(m).pivots.size()); }

Subspace::Subspace(Index ambient) : ambient_(ambient), basis_(zeros(0, ambient)) {}

Subspace Subspace::span(Index ambient, const Matrix& rows) {
  if (rows.cols() != ambient) throw Error(ErrorCode::AmbientMismatch, "spanning vectors have the wrong length");
  Subspace s(ambient);
  Echelon e = row_reduce(rows);
  s.basis_ = std::move(e.reduced);
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::span_columns(const Matrix& cols) { return span(cols.rows(), cols.transpose()); }

Subspace Subspace::full(Index ambient) {
  Subspace s(ambient);
  s.basis_ = Matrix::Identity(ambient, ambient);
  for (Index i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Vector Subspace::reduce(const Vector& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  Vector w = v;
  for (Index k = 0; k < dim(); ++k) {
    const Scalar factor = w(pivots_[k]);
    if (factor.is_zero()) continue;
    for (Index c = pivots_[k]; c < ambient_; ++c) {
      if (!basis_(k, c).is_zero()) w(c) -= factor * basis_(k, c);
    }
  }
  return w;
}

bool Subspace::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::AmbientMismatch, "subspaces of different spaces");
  for (Index k = 0; k < other.dim(); ++k) {
    if (!contains(Vector(other.basis_.row(k).transpose()))) return false;
  }
  return true;
}

Vector Subspace::coordinates(const Vector& v) const {
  if (!contains(v)) throw Error(ErrorCode::NoSolution, "vector is not in the subspace");
  Vector c(dim());
  for (Index k = 0; k < dim(); ++k) c(k) = v(pivots_[k]);
  return c;
}

std::vector<Index> Subspace::free_coordinates() const {
  std::vector<Index> out;
  std::size_t k = 0;
  for (Index c = 0; c < ambient_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw Error(ErrorCode::AmbientMismatch, "sum of subspaces of different spaces");
  Matrix stacked(a.dim() + b.dim(), a.ambient_);
  stacked << a.basis_, b.basis_;
  return Subspace::span(a.ambient_, stacked);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw Error(ErrorCode::AmbientMismatch, "intersection of subspaces of different spaces");
  // Pairs (s, t) with s A = t B.
  Matrix stacked(a.dim() + b.dim(), a.ambient_);
  stacked << a.basis_, -b.basis_;
  Subspace pairs = kernel(stacked.transpose());
  Matrix vectors = pairs.basis().leftCols(a.dim()) * a.basis_;
  return Subspace::span(a.ambient_, vectors);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
}

Subspace kernel(const Matrix& m) {
  const Index n = m.cols();
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < n; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  }
  Matrix vectors = zeros(static_cast<Index>(free.size()), n);
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Index f = free[k];
    const Index row = static_cast<Index>(k);
    vectors(row, f) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      vectors(row, e.pivots[r]) = -e.reduced(static_cast<Index>(r), f);
    }
  }
  return Subspace::span(n, vectors);
}

Subspace image(const Matrix& m) { return Subspace::span_columns(m); }

Matrix solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: row counts differ");
  const Index n = a.cols();
  Matrix aug(a.rows(), n + b.cols());
  aug << a, b;
  Echelon e = row_reduce(aug);
  Matrix x = zeros(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const Index p = e.pivots[r];
    if (p >= n) throw Error(ErrorCode::NoSolution, "inconsistent linear system");
    x.row(p) = e.reduced.row(static_cast<Index>(r)).tail(b.cols());
  }
  return x;
}

Tensor3 Tensor3::from_entries(std::array<Index, 3> dims, std::vector<Entry> entries) {
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.l < 0 || e.i >= dims[0] || e.j >= dims[1] || e.l >= dims[2]) {
      throw Error(ErrorCode::DimensionMismatch, "tensor entry index out of range");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return std::tie(x.i, x.j, x.l) < std::tie(y.i, y.j, y.l); });
  Tensor3 t(dims[0], dims[1], dims[2]);
  for (auto& e : entries) {
    if (!t.entries_.empty()) {
      auto& last = t.entries_.back();
      if (last.i == e.i && last.j == e.j && last.l == e.l) {
        last.value += e.value;
        continue;
      }
    }
    t.entries_.push_back(std::move(e));
  }
  std::erase_if(t.entries_, [](const Entry& e) { return e.value.is_zero(); });
  return t;
}

Vector Tensor3::contract(const Vector& a, const Vector& b) const {
  if (a.size() != dims_[0] || b.size() != dims_[1]) throw Error(ErrorCode::DimensionMismatch, "contract: bad lengths");
  Vector out = Vector::Constant(dims_[2], Scalar(0));
  for (const auto& e : entries_) {
    if (a(e.i).is_zero() || b(e.j).is_zero()) continue;
    out(e.l) += a(e.i) * b(e.j) * e.value;
  }
  return out;
}

Scalar Tensor3::at(Index i, Index j, Index l) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::tie(i, j, l),
                             [](const Entry& e, const auto& key) { return std::tie(e.i, e.j, e.l) < key; });
  if (it != entries_.end() && it->i == i && it->j == j && it->l == l) return it->value;
  return Scalar(0);
}

bool operator==(const Tensor3& a, const Tensor3& b) {
  if (a.dims_ != b.dims_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) {
    const auto& x = a.entries_[k];
    const auto& y = b.entries_[k];
    if (x.i != y.i || x.j != y.j || x.l != y.l || x.value != y.value) return false;
  }
  return true;
}

}  // namespace locfin
