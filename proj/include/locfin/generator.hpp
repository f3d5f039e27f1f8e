#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "locfin/lincat.hpp"

namespace locfin {

/// Metadata a generator may declare about an object set it cannot enumerate.
struct DeclaredSet {
  enum class Kind { Finite, Infinite, Undeclared };
  Kind kind = Kind::Undeclared;
  std::vector<long> members;

  static DeclaredSet finite(std::vector<long> m) { return {Kind::Finite, std::move(m)}; }
  static DeclaredSet infinite() { return {Kind::Infinite, {}}; }
  static DeclaredSet undeclared() { return {Kind::Undeclared, {}}; }

  bool is_finite() const noexcept { return kind == Kind::Finite; }
  bool is_infinite() const noexcept { return kind == Kind::Infinite; }
};

/// A k-linear category on integer objects, described by formulas. Windows
/// [lo..hi] materialize finite full subcategories.
class CategoryGenerator {
 public:
  virtual ~CategoryGenerator() = default;

  virtual std::string name() const = 0;
  virtual FieldDescriptor field() const { return FieldDescriptor::rationals(); }
  virtual std::optional<long> domain_min() const { return std::nullopt; }
  virtual std::optional<long> domain_max() const { return std::nullopt; }
  bool in_domain(long v) const;

  virtual Index hom_dim(long x, long y) const = 0;
  /// Hom(y,z) x Hom(x,y) -> Hom(x,z).
  virtual Tensor3 compose(long x, long y, long z) const = 0;
  virtual Vector identity(long x) const = 0;

  virtual DeclaredSet interval(long, long) const { return DeclaredSet::undeclared(); }
  virtual DeclaredSet upset(long) const { return DeclaredSet::undeclared(); }
  virtual DeclaredSet downset(long) const { return DeclaredSet::undeclared(); }

  /// Whether retract()/retract_morphism() describe a functor onto windows.
  virtual bool has_retraction() const { return false; }
  /// Object part of a functor onto [lo..hi] fixing the window.
  virtual long retract(long v, long lo, long hi) const;
  /// Image of basis morphism a of Hom(x,y) in Hom(retract(x), retract(y)).
  virtual Vector retract_morphism(long x, long y, Index a, long lo, long hi) const;

  /// Sign plus three digits, so that lexicographic order is stable.
  static std::string format_id(long v);
  static std::optional<long> parse_id(const std::string& id);

  LinCat materialize(long lo, long hi) const;
};

/// The category an analysis runs on: either a finite category given in full,
/// or a window of a generator together with the generator's metadata.
class Scope {
 public:
  static std::shared_ptr<const Scope> finite(LinCat c);
  /// Throws BadWindow.
  static std::shared_ptr<const Scope> window(std::shared_ptr<const CategoryGenerator> g, long lo, long hi);

  const LinCat& cat() const noexcept { return *cat_; }
  bool is_window() const noexcept { return generator_ != nullptr; }
  const CategoryGenerator* generator() const noexcept { return generator_.get(); }
  const std::shared_ptr<const CategoryGenerator>& generator_ptr() const noexcept { return generator_; }
  long lo() const noexcept { return lo_; }
  long hi() const noexcept { return hi_; }
  bool is_opposite() const noexcept { return opposite_; }

  /// Generator integer of a window object; the index itself for finite scopes.
  long value(Index x) const;
  std::optional<Index> index_of_value(long v) const;
  std::string id_of_value(long v) const;

  bool continues_below() const;
  bool continues_above() const;
  /// True if x sits at a window end beyond which the generator continues.
  bool at_open_end(Index x) const;
  /// True if the window is the whole generator domain (or the scope is finite).
  bool is_complete() const { return !continues_below() && !continues_above(); }

  /// Declared {y : x <= y}, as values. Finite scopes compute it exactly.
  DeclaredSet upset(Index x) const;
  DeclaredSet downset(Index y) const;
  DeclaredSet interval(Index x, Index y) const;
  /// Finite and inside the window.
  bool covered(const DeclaredSet& s) const;

  std::shared_ptr<const Scope> enlarged(long k) const;
  /// The materialized category on its own, forgetting the generator.
  std::shared_ptr<const Scope> as_finite() const;
  std::shared_ptr<const Scope> opposite() const;

  /// Retraction of a generator object onto this window (window scopes only).
  long retract(long v) const;
  Vector retract_morphism(long x, long y, Index a) const;
  bool has_retraction() const;

  std::string describe() const;
  nlohmann::json to_json() const;

 private:
  Scope() = default;
  std::vector<long> reach(Index start, bool forward) const;

  std::shared_ptr<const LinCat> cat_;
  std::shared_ptr<const CategoryGenerator> generator_;
  long lo_ = 0;
  long hi_ = 0;
  bool opposite_ = false;
  std::vector<long> values_;
};

/// Parses "a..b", "[a..b]" or a single integer n (meaning 0..n-1).
std::pair<long, long> parse_window(const std::string& spec);

}  // namespace locfin
