#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "locfin/generator.hpp"

namespace locfin {

enum class Side { Left, Right };

std::string_view to_string(Side s);

class ModuleGenerator;

/// Finite-dimensional module over the category of a scope. A left module is
/// a covariant functor: basis morphism a of Hom(x,y) acts M(x) -> M(y). A
/// right module is contravariant: it acts M(y) -> M(x).
class Module {
 public:
  Module() = default;
  Module(std::shared_ptr<const Scope> scope, Side side, std::vector<Index> dims);

  const Scope& scope() const noexcept { return *scope_; }
  const std::shared_ptr<const Scope>& scope_ptr() const noexcept { return scope_; }
  const LinCat& cat() const noexcept { return scope_->cat(); }
  FieldDescriptor field() const noexcept { return cat().field(); }
  Side side() const noexcept { return side_; }
  Index dim(Index x) const { return dims_.at(static_cast<std::size_t>(x)); }
  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index total_dim() const;

  const Matrix& action(Index x, Index y, Index a) const;
  /// Throws DimensionMismatch if the shape is wrong.
  void set_action(Index x, Index y, Index a, Matrix m);
  /// Action of the morphism with coordinates f in Hom(x,y).
  Matrix act(Index x, Index y, const Vector& f) const;
  /// True if every basis morphism of Hom(x,y) acts by zero.
  bool block_is_zero(Index x, Index y) const;

  /// Formula module this one was restricted from, if any.
  const std::shared_ptr<const ModuleGenerator>& declared() const noexcept { return declared_; }
  void set_declared(std::shared_ptr<const ModuleGenerator> g) { declared_ = std::move(g); }

  friend bool operator==(const Module& a, const Module& b);

 private:
  std::size_t slot(Index x, Index y) const { return static_cast<std::size_t>(x * cat().size() + y); }

  std::shared_ptr<const Scope> scope_;
  Side side_ = Side::Left;
  std::vector<Index> dims_;
  std::vector<std::vector<Matrix>> actions_;
  std::shared_ptr<const ModuleGenerator> declared_;
};

/// A module on a category generator given by formulas, with declared
/// supports: forward(x) = {y : Hom(x,y) acts nontrivially} and
/// backward(y) = {x : Hom(x,y) acts nontrivially}.
class ModuleGenerator {
 public:
  virtual ~ModuleGenerator() = default;
  virtual std::string name() const = 0;
  virtual std::shared_ptr<const CategoryGenerator> category() const = 0;
  virtual Side side() const { return Side::Left; }
  virtual Index dim(long x) const = 0;
  virtual Matrix action(long x, long y, Index a) const = 0;
  virtual DeclaredSet forward(long) const { return DeclaredSet::undeclared(); }
  virtual DeclaredSet backward(long) const { return DeclaredSet::undeclared(); }
  virtual bool locally_finite() const { return true; }
  /// False when no single finite bound controls the supports.
  virtual bool uniform_support() const { return true; }

  /// Throws BadWindow if the scope is not a window of category().
  Module restrict(const std::shared_ptr<const ModuleGenerator>& self, std::shared_ptr<const Scope> window) const;
};

/// Functoriality: identities act as identities and compositions compose.
Verdict validate_module(const Module& m);

/// Natural transformations a -> b as a subspace of the graded unknowns
/// (phi(x) row-major, objects in index order).
Subspace module_hom_space(const Module& a, const Module& b);
Index module_hom_dim(const Module& a, const Module& b);
/// Splits a vector of module_hom_space into per-object matrices b(x) x a(x).
std::vector<Matrix> unpack_hom(const Module& a, const Module& b, const Vector& phi);
bool is_module_morphism(const Module& a, const Module& b, const std::vector<Matrix>& phi);

Module direct_sum(const Module& a, const Module& b);
/// Graded subspaces of m; one Subspace per object.
using Graded = std::vector<Subspace>;
Graded zero_graded(const Module& m);
Graded full_graded(const Module& m);
bool is_submodule(const Module& m, const Graded& s);
/// Smallest submodule containing the seeds.
Graded generated_submodule(const Module& m, const Graded& seeds);
/// Throws HypothesisNotSatisfied if s is not a submodule.
Module submodule(const Module& m, const Graded& s);
/// Basis of m(x)/s(x) is given by the free coordinates of s(x).
Module quotient(const Module& m, const Graded& s);
Graded kernel_of(const Module& a, const std::vector<Matrix>& phi);
Graded image_of(const Module& b, const std::vector<Matrix>& phi);
bool graded_contains(const Graded& big, const Graded& small);
Index graded_dim(const Graded& s);

/// Hom(x0, -) as a left module, or Hom(-, x0) as a right module.
Module representable(std::shared_ptr<const Scope> scope, Side side, Index x0);
/// Random left module on a chain window (Hom(x,y) = k for x <= y): random dims
/// in [0, max_dim], random maps for the steps n -> n+1, composites elsewhere.
/// Throws HypothesisNotSatisfied on other categories.
Module random_chain_module(std::shared_ptr<const Scope> scope, std::mt19937_64& rng, Index max_dim);

}  // namespace locfin
