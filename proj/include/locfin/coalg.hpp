#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "locfin/generator.hpp"
#include "locfin/module.hpp"

namespace locfin {

/// C = sum over (x,y) of C^{x,y} = Hom(x,y)^*, with the dual basis indexed like
/// the Hom basis. comult(x,z,y) is mu_{x,z,y}: C^{x,y} -> C^{x,z} (x) C^{z,y},
/// stored with entries (l, j, i): e*_l maps to sum c e*_j (x) e*_i. It is the
/// transpose of compose(x,z,y).
class GradedCoalgebra {
 public:
  GradedCoalgebra() = default;
  /// Zero coalgebra on the objects of the scope.
  GradedCoalgebra(std::shared_ptr<const Scope> scope, bool counital);

  const Scope& scope() const noexcept { return *scope_; }
  const std::shared_ptr<const Scope>& scope_ptr() const noexcept { return scope_; }
  FieldDescriptor field() const noexcept { return scope_->cat().field(); }
  Index size() const noexcept { return n_; }
  const std::string& object(Index x) const { return scope_->cat().object(x); }
  bool counital() const noexcept { return counital_; }

  Index dim(Index x, Index y) const { return dims_[slot(x, y)]; }
  Index total_dim() const;
  /// Pairing with the identity of x; empty for noncounital coalgebras.
  const Vector& counit(Index x) const { return counit_[static_cast<std::size_t>(x)]; }
  const Tensor3& comult(Index x, Index z, Index y) const { return comult_[slot3(x, z, y)]; }

  void set_dim(Index x, Index y, Index d) { dims_[slot(x, y)] = d; }
  void set_counit(Index x, Vector v) { counit_[static_cast<std::size_t>(x)] = std::move(v); }
  /// Throws DimensionMismatch if the tensor shape disagrees with the components.
  void set_comult(Index x, Index z, Index y, Tensor3 t);

  /// The coalgebra of the opposite category: C_op^{y,x} = C^{x,y}.
  GradedCoalgebra opposite() const;

  friend bool operator==(const GradedCoalgebra& a, const GradedCoalgebra& b);

 private:
  std::size_t slot(Index x, Index y) const { return static_cast<std::size_t>(x * n_ + y); }
  std::size_t slot3(Index x, Index y, Index z) const { return static_cast<std::size_t>((x * n_ + y) * n_ + z); }

  std::shared_ptr<const Scope> scope_;
  Index n_ = 0;
  bool counital_ = true;
  std::vector<Index> dims_;
  std::vector<Vector> counit_;
  std::vector<Tensor3> comult_;
};

/// Throws IntervalNotFinite if the scope declares an infinite interval.
GradedCoalgebra build_coalgebra(std::shared_ptr<const Scope> scope);
GradedCoalgebra build_coalgebra(const LinCat& c);

/// Components with x ~ y.
GradedCoalgebra short_subcoalgebra(const GradedCoalgebra& g);
/// Noncounital quotient by the short part: components with x < y strictly.
GradedCoalgebra long_quotient(const GradedCoalgebra& g);
/// Least n >= 1 with mu^{(n)} = 0, found by iterating mu on every basis
/// element; nullopt if the coalgebra is not conilpotent. The zero coalgebra has index 1.
std::optional<Index> conilpotency_index(const GradedCoalgebra& d);

/// Coassociativity on every basis element, and counitality if counital.
Verdict validate_coalgebra(const GradedCoalgebra& g);

/// The reachability preorder of the nonzero components.
std::vector<std::vector<bool>> component_preorder(const GradedCoalgebra& g);

/// Comodule over a GradedCoalgebra given by coaction blocks.
///
/// Left: block (x,y) is nu_{x,y}: M_x -> C^{x,y} (x) M_y, shape (c_xy d_y) x d_x,
/// row a*d_y + v. Right: block (x,y) is M_y -> C^{x,y} (x) M_x, shape
/// (c_xy d_x) x d_y, row a*d_x + v; this is a left comodule over the opposite
/// coalgebra with the key reversed.
class Comodule {
 public:
  Comodule() = default;
  Comodule(std::shared_ptr<const GradedCoalgebra> c, Side side, std::vector<Index> dims);

  const GradedCoalgebra& coalgebra() const noexcept { return *coalg_; }
  const std::shared_ptr<const GradedCoalgebra>& coalgebra_ptr() const noexcept { return coalg_; }
  Side side() const noexcept { return side_; }
  Index dim(Index x) const { return dims_.at(static_cast<std::size_t>(x)); }
  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index total_dim() const;

  /// Zero matrix of the right shape when the block is not listed.
  Matrix block(Index x, Index y) const;
  bool has_block(Index x, Index y) const { return blocks_.count({x, y}) > 0; }
  const std::map<std::pair<Index, Index>, Matrix>& blocks() const noexcept { return blocks_; }
  /// Lists the block in the declared support. Throws DimensionMismatch.
  void set_block(Index x, Index y, Matrix m);
  /// Slice of block (x,y) for the dual basis vector a: d_y x d_x on the left,
  /// d_x x d_y on the right.
  Matrix slice(Index x, Index y, Index a) const;

  /// Declared support: the block keys that may be nonzero.
  const std::set<std::pair<Index, Index>>& support() const noexcept { return support_; }
  void declare_support(std::set<std::pair<Index, Index>> s) { support_ = std::move(s); }

  /// Same data with the side flipped, over the given (opposite) coalgebra.
  Comodule mirrored(std::shared_ptr<const GradedCoalgebra> target) const;
  /// Left comodule over the opposite coalgebra for a right comodule; a copy otherwise.
  Comodule as_left() const;

  friend bool operator==(const Comodule& a, const Comodule& b);

 private:
  Index rows_of(Index x, Index y) const;
  Index cols_of(Index x, Index y) const;

  std::shared_ptr<const GradedCoalgebra> coalg_;
  Side side_ = Side::Left;
  std::vector<Index> dims_;
  std::map<std::pair<Index, Index>, Matrix> blocks_;
  std::set<std::pair<Index, Index>> support_;
};

/// Contramodule with finite-support contraaction blocks; unlisted blocks are zero.
///
/// Left: block (x,y) is pi^y_x: Hom(C^{x,y}, P^x) -> P^y, shape d_y x (c_xy d_x),
/// column a*d_x + v for the map sending e*_a to e_v. Right: block (x,y) is
/// Hom(C^{x,y}, P^y) -> P^x, shape d_x x (c_xy d_y), column a*d_y + v.
class Contramodule {
 public:
  Contramodule() = default;
  Contramodule(std::shared_ptr<const GradedCoalgebra> c, Side side, std::vector<Index> dims);

  const GradedCoalgebra& coalgebra() const noexcept { return *coalg_; }
  const std::shared_ptr<const GradedCoalgebra>& coalgebra_ptr() const noexcept { return coalg_; }
  Side side() const noexcept { return side_; }
  Index dim(Index x) const { return dims_.at(static_cast<std::size_t>(x)); }
  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index total_dim() const;

  Matrix block(Index x, Index y) const;
  bool has_block(Index x, Index y) const { return blocks_.count({x, y}) > 0; }
  const std::map<std::pair<Index, Index>, Matrix>& blocks() const noexcept { return blocks_; }
  void set_block(Index x, Index y, Matrix m);
  /// Columns of block (x,y) for the basis morphism a: d_y x d_x on the left.
  Matrix slice(Index x, Index y, Index a) const;

  const std::set<std::pair<Index, Index>>& support() const noexcept { return support_; }
  void declare_support(std::set<std::pair<Index, Index>> s) { support_ = std::move(s); }

  Contramodule mirrored(std::shared_ptr<const GradedCoalgebra> target) const;
  Contramodule as_left() const;

  friend bool operator==(const Contramodule& a, const Contramodule& b);

 private:
  Index rows_of(Index x, Index y) const;
  Index cols_of(Index x, Index y) const;

  std::shared_ptr<const GradedCoalgebra> coalg_;
  Side side_ = Side::Left;
  std::vector<Index> dims_;
  std::map<std::pair<Index, Index>, Matrix> blocks_;
  std::set<std::pair<Index, Index>> support_;
};

/// Coassociativity and counitality on every basis element. Throws SupportMismatch
/// if a nonzero block lies outside the declared support.
Verdict validate_comodule(const Comodule& m);
/// Contraassociativity and contraunitality on every basis input of the listed
/// blocks. Throws SupportMismatch.
Verdict validate_contramodule(const Contramodule& p);

/// C (x) V with coaction mu (x) id. Left: M_x = sum_y C^{x,y} (x) V, basis
/// (y, a, t) in that order.
Comodule cofree_comodule(std::shared_ptr<const GradedCoalgebra> c, Side side, Index dim_v);
/// Hom(C, V) with contraaction dual to mu. Left: P^x = sum_w Hom(C^{w,x}, V),
/// basis (w, a, t) in that order.
Contramodule free_contramodule(std::shared_ptr<const GradedCoalgebra> c, Side side, Index dim_v);

/// Comodule morphisms a -> b, unknowns phi_x row-major in object order.
Subspace comodule_hom_space(const Comodule& a, const Comodule& b);
Index comodule_hom_dim(const Comodule& a, const Comodule& b);
Subspace contramodule_hom_space(const Contramodule& a, const Contramodule& b);
Index contramodule_hom_dim(const Contramodule& a, const Contramodule& b);

/// Kernel of the long part of the coaction, per object.
Graded long_socle(const Comodule& m);
/// Image of the long part of the contraaction, per object.
Graded long_radical(const Contramodule& p);

/// For a nonzero comodule: the coaction restricted to the long quotient is
/// not injective. Throws ZeroInput.
Verdict nakayama_check(const Comodule& m);
/// For a nonzero contramodule: the long part of the contraaction is not onto.
Verdict nakayama_check(const Contramodule& p);

}  // namespace locfin
