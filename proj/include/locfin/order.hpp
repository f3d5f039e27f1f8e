#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "locfin/generator.hpp"

namespace locfin {

enum class MorphismClass { Short, Long, Zero };

std::string_view to_string(MorphismClass c);

/// The preorder x <= y iff a chain of nonzero Hom spaces leads from x to y,
/// its equivalence classes, and the distance d(x,y) = longest chain of
/// strict steps between the classes of x and y.
class PreorderAnalysis {
 public:
  explicit PreorderAnalysis(std::shared_ptr<const Scope> scope);

  const Scope& scope() const noexcept { return *scope_; }
  Index size() const noexcept { return n_; }

  bool preceq(Index x, Index y) const { return reach_[slot(x, y)]; }
  bool prec(Index x, Index y) const { return preceq(x, y) && !preceq(y, x); }
  bool sim(Index x, Index y) const { return preceq(x, y) && preceq(y, x); }

  Index class_of(Index x) const { return class_[static_cast<std::size_t>(x)]; }
  /// Equivalence classes, each sorted, ordered by smallest member.
  const std::vector<std::vector<Index>>& classes() const noexcept { return classes_; }

  /// d(x,y) if x <= y.
  std::optional<Index> distance(Index x, Index y) const;
  /// True when d(x,y) is exact; false when the window may hide longer chains.
  bool distance_exact(Index x, Index y) const;
  /// Largest d(x,y) over the scope.
  Index longest_chain() const;

  std::vector<Index> strict_downset(Index y) const;
  std::vector<Index> strict_upset(Index x) const;
  /// {z : z ~ x for some x in s}.
  std::vector<Index> sim_closure(const std::vector<Index>& s) const;

 private:
  std::size_t slot(Index x, Index y) const { return static_cast<std::size_t>(x * n_ + y); }

  std::shared_ptr<const Scope> scope_;
  Index n_ = 0;
  std::vector<bool> reach_;
  std::vector<Index> class_;
  std::vector<std::vector<Index>> classes_;
  std::vector<Index> dist_;
};

PreorderAnalysis compute_preorder(std::shared_ptr<const Scope> scope);

/// Throws UnknownHomSpace if f has the wrong length.
MorphismClass classify_morphism(const PreorderAnalysis& a, Index x, Index y, const Vector& f);

Verdict check_interval_finiteness(const PreorderAnalysis& a);
/// (upper finite, lower finite).
std::pair<Verdict, Verdict> check_upper_lower_finite(const PreorderAnalysis& a);

}  // namespace locfin
