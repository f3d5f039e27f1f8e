#pragma once

#include <map>
#include <optional>
#include <vector>

#include "locfin/order.hpp"

namespace locfin {

/// Objects X strictly below y through which every morphism z -> y with
/// z outside the exception W factors.
struct Frontier {
  Index target = 0;
  std::vector<Index> members;
  std::vector<Index> exception;
};

/// Throws MalformedFrontier if a member is not strictly below the target.
Verdict verify_frontier(const PreorderAnalysis& a, const Frontier& f);

struct FrontierSearch {
  Verdict verdict;
  std::optional<Frontier> frontier;
};

/// Smallest member set (then lexicographically least) with empty exception,
/// searched in the scope's own category.
std::vector<Index> minimal_frontier_members(const PreorderAnalysis& a, Index y);

/// On windows the search runs in the window category. If y has a declared
/// infinite down-set, the window is also enlarged twice; strictly growing
/// minimal sizes refute left strictness at y.
FrontierSearch find_standard_frontier(const PreorderAnalysis& a, Index y);

/// One chosen frontier X_y per object and the iterated frontiers built from it.
class StandardFrontierTower {
 public:
  StandardFrontierTower(PreorderAnalysis a, std::map<Index, std::vector<Index>> choices);

  const PreorderAnalysis& analysis() const noexcept { return a_; }
  const std::map<Index, std::vector<Index>>& choices() const noexcept { return choices_; }
  /// Throws TowerUnavailable.
  const std::vector<Index>& choice(Index y) const;

 private:
  PreorderAnalysis a_;
  std::map<Index, std::vector<Index>> choices_;
};

struct LeftStrictReport {
  Verdict verdict;
  std::optional<StandardFrontierTower> tower;
};

LeftStrictReport check_left_strict(const PreorderAnalysis& a);

/// X^{(n)} with exception the union of the classes of X^{(1)}..X^{(n-1)}.
/// Throws TowerUnavailable (or MalformedFrontier for n < 1).
Frontier degree_n_frontier(const StandardFrontierTower& t, Index y, Index n);

}  // namespace locfin
