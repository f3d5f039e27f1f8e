#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locfin/linalg.hpp"
#include "locfin/verdict.hpp"

namespace locfin {

/// Raw description of a k-linear category keyed by object id. compose[(x,y,z)]
/// has entries (i, j, l, c) meaning b^{yz}_i o b^{xy}_j contributes c b^{xz}_l.
struct Presentation {
  FieldDescriptor field;
  std::vector<std::string> objects;
  std::map<std::pair<std::string, std::string>, Index> hom;
  std::map<std::array<std::string, 3>, Tensor3> compose;
  std::map<std::string, Vector> identity;
};

/// Small k-linear category with finitely many objects and finite-dimensional
/// Hom spaces. Objects are kept in lexicographic order; algorithms address
/// them by index.
class LinCat {
 public:
  LinCat() = default;
  /// Throws MalformedPresentation, DimensionMismatch or UnknownObject.
  explicit LinCat(const Presentation& p);

  FieldDescriptor field() const noexcept { return field_; }
  Index size() const noexcept { return static_cast<Index>(objects_.size()); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::string& object(Index x) const { return objects_.at(static_cast<std::size_t>(x)); }
  /// Throws UnknownObject.
  Index index_of(const std::string& id) const;
  std::optional<Index> find(const std::string& id) const;

  Index hom_dim(Index x, Index y) const { return hom_[slot(x, y)]; }
  /// Tensor of Hom(y,z) x Hom(x,y) -> Hom(x,z).
  const Tensor3& compose_tensor(Index x, Index y, Index z) const { return compose_[slot3(x, y, z)]; }
  const Vector& identity(Index x) const { return identity_[static_cast<std::size_t>(x)]; }

  /// g o f for g in Hom(y,z), f in Hom(x,y).
  Vector compose(Index x, Index y, Index z, const Vector& g, const Vector& f) const;
  /// b^{yz}_i o b^{xy}_j.
  Vector compose_basis(Index x, Index y, Index z, Index i, Index j) const;

  LinCat full_subcategory(const std::vector<Index>& objects) const;
  LinCat opposite() const;
  Presentation presentation() const;
  /// FNV-1a over the canonical serialization.
  std::uint64_t fingerprint() const;

  friend bool operator==(const LinCat& a, const LinCat& b);

 private:
  std::size_t slot(Index x, Index y) const { return static_cast<std::size_t>(x * size() + y); }
  std::size_t slot3(Index x, Index y, Index z) const { return static_cast<std::size_t>((x * size() + y) * size() + z); }

  FieldDescriptor field_;
  std::vector<std::string> objects_;
  std::map<std::string, Index> index_;
  std::vector<Index> hom_;
  std::vector<Tensor3> compose_;
  std::vector<Vector> identity_;
};

/// Associativity, unitality and absence of zero objects.
Verdict validate_category(const LinCat& c);

}  // namespace locfin
