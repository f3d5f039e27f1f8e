#include "locfin/frontier.hpp"

#include <algorithm>
#include <set>

#include "locfin/error.hpp"
#include "locfin/io.hpp"

namespace locfin {

namespace {

nlohmann::json ids(const LinCat& c, const std::vector<Index>& s) {
  nlohmann::json out = nlohmann::json::array();
  for (Index x : s) out.push_back(c.object(x));
  return out;
}

// Span of the composites Hom(x,y) x Hom(z,x) -> Hom(z,y) over x in via.
Subspace factor_image(const LinCat& c, Index z, Index y, const std::vector<Index>& via) {
  std::vector<Vector> vectors;
  for (Index x : via) {
    for (Index i = 0; i < c.hom_dim(x, y); ++i) {
      for (Index j = 0; j < c.hom_dim(z, x); ++j) vectors.push_back(c.compose_basis(z, x, y, i, j));
    }
  }
  Matrix rows = zeros(static_cast<Index>(vectors.size()), c.hom_dim(z, y));
  for (std::size_t r = 0; r < vectors.size(); ++r) rows.row(static_cast<Index>(r)) = vectors[r].transpose();
  return Subspace::span(c.hom_dim(z, y), rows);
}

// First z (with its missing direction) not covered by the members.
std::optional<std::pair<Index, Vector>> uncovered(const PreorderAnalysis& a, Index y, const std::vector<Index>& members,
                                                  const std::vector<Index>& exception) {
  const LinCat& c = a.scope().cat();
  for (Index z : a.strict_downset(y)) {
    if (std::find(exception.begin(), exception.end(), z) != exception.end()) continue;
    if (c.hom_dim(z, y) == 0) continue;
    const Subspace im = factor_image(c, z, y, members);
    if (im.dim() == c.hom_dim(z, y)) continue;
    for (Index l = 0; l < c.hom_dim(z, y); ++l) {
      Vector e = unit_vector(c.field(), c.hom_dim(z, y), l);
      if (!im.contains(e)) return std::pair{z, e};
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict verify_frontier(const PreorderAnalysis& a, const Frontier& f) {
  const Scope& s = a.scope();
  const LinCat& c = s.cat();
  for (Index x : f.members) {
    if (!a.prec(x, f.target)) {
      throw Error(ErrorCode::MalformedFrontier, c.object(x) + " is not strictly below " + c.object(f.target));
    }
  }
  if (auto miss = uncovered(a, f.target, f.members, f.exception)) {
    return Verdict::refuted({{"target", c.object(f.target)},
                             {"z", c.object(miss->first)},
                             {"cokernel_vector", to_json(miss->second, c.field())}},
                            "Hom(z,y) does not factor through the members");
  }
  if (s.is_window() && !s.covered(s.downset(f.target))) {
    return Verdict::inconclusive("down-set of " + c.object(f.target) + " is not covered by " + s.describe(),
                                 {{"target", c.object(f.target)}});
  }
  return Verdict::certified();
}

std::vector<Index> minimal_frontier_members(const PreorderAnalysis& a, Index y) {
  const LinCat& c = a.scope().cat();
  const std::vector<Index> down = a.strict_downset(y);
  // z must be a member whenever the other candidates cannot reach Hom(z,y).
  std::vector<Index> forced;
  std::vector<Index> optional;
  for (Index z : down) {
    std::vector<Index> others;
    for (Index x : down) {
      if (x != z) others.push_back(x);
    }
    if (c.hom_dim(z, y) > 0 && factor_image(c, z, y, others).dim() < c.hom_dim(z, y)) {
      forced.push_back(z);
    } else {
      optional.push_back(z);
    }
  }
  for (std::size_t extra = 0; extra <= optional.size(); ++extra) {
    // All candidates of this size, compared by their sorted member lists.
    std::vector<std::vector<Index>> candidates;
    std::vector<bool> pick(optional.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(extra), true);
    do {
      std::vector<Index> members = forced;
      for (std::size_t k = 0; k < optional.size(); ++k) {
        if (pick[k]) members.push_back(optional[k]);
      }
      std::sort(members.begin(), members.end());
      candidates.push_back(std::move(members));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(candidates.begin(), candidates.end());
    for (const auto& m : candidates) {
      if (!uncovered(a, y, m, {})) return m;
    }
  }
  return down;
}

FrontierSearch find_standard_frontier(const PreorderAnalysis& a, Index y) {
  const Scope& s = a.scope();
  const LinCat& c = s.cat();
  Frontier f{y, minimal_frontier_members(a, y), {}};
  if (!s.is_window() || s.covered(s.downset(y))) return {Verdict::certified({{"members", ids(c, f.members)}}), f};
  const DeclaredSet down = s.downset(y);
  if (!down.is_infinite()) {
    return {Verdict::inconclusive("down-set of " + c.object(y) + " is not declared", {{"members", ids(c, f.members)}}), f};
  }
  // Growth test over the window and two enlargements.
  nlohmann::json windows = nlohmann::json::array();
  nlohmann::json frontiers = nlohmann::json::array();
  std::vector<std::size_t> sizes;
  for (long k = 0; k < 3; ++k) {
    auto bigger = k == 0 ? s.as_finite() : s.enlarged(k)->as_finite();
    const PreorderAnalysis b(bigger);
    const Index yb = bigger->cat().index_of(c.object(y));
    const auto members = minimal_frontier_members(b, yb);
    windows.push_back(k == 0 ? s.describe() : s.enlarged(k)->describe());
    frontiers.push_back(ids(bigger->cat(), members));
    sizes.push_back(members.size());
  }
  nlohmann::json growth = {{"object", c.object(y)}, {"windows", windows}, {"sizes", sizes}, {"frontiers", frontiers}};
  if (sizes[0] < sizes[1] && sizes[1] < sizes[2]) {
    return {Verdict::refuted(growth, "minimal frontier grows with the window while the down-set is declared infinite"),
            std::nullopt};
  }
  growth["members"] = ids(c, f.members);
  return {Verdict::certified(growth, "window-relative: frontier found in " + s.describe() + " and not growing"), f};
}

StandardFrontierTower::StandardFrontierTower(PreorderAnalysis a, std::map<Index, std::vector<Index>> choices)
    : a_(std::move(a)), choices_(std::move(choices)) {
  for (const auto& [y, members] : choices_) {
    for (Index x : members) {
      if (!a_.prec(x, y)) throw Error(ErrorCode::MalformedFrontier, "tower member not strictly below its target");
    }
  }
}

const std::vector<Index>& StandardFrontierTower::choice(Index y) const {
  auto it = choices_.find(y);
  if (it == choices_.end()) {
    throw Error(ErrorCode::TowerUnavailable, "no frontier chosen for " + a_.scope().cat().object(y));
  }
  return it->second;
}

LeftStrictReport check_left_strict(const PreorderAnalysis& a) {
  const LinCat& c = a.scope().cat();
  std::map<Index, std::vector<Index>> choices;
  std::optional<Verdict> inconclusive;
  nlohmann::json table = nlohmann::json::object();
  for (Index y = 0; y < a.size(); ++y) {
    FrontierSearch r = find_standard_frontier(a, y);
    if (r.verdict.is_refuted()) {
      r.verdict.witness["object"] = c.object(y);
      return {r.verdict, std::nullopt};
    }
    if (r.verdict.is_inconclusive() && !inconclusive) inconclusive = r.verdict;
    if (r.frontier) {
      choices[y] = r.frontier->members;
      table[c.object(y)] = ids(c, r.frontier->members);
    }
  }
  if (inconclusive) return {*inconclusive, std::nullopt};
  const bool relative = a.scope().is_window() && !a.scope().is_complete();
  return {Verdict::certified({{"frontiers", table}}, relative ? "window-relative on " + a.scope().describe() : ""),
          StandardFrontierTower(a, std::move(choices))};
}

Frontier degree_n_frontier(const StandardFrontierTower& t, Index y, Index n) {
  if (n < 1) throw Error(ErrorCode::MalformedFrontier, "degree must be positive");
  std::set<Index> current(t.choice(y).begin(), t.choice(y).end());
  std::set<Index> earlier;
  for (Index i = 1; i < n; ++i) {
    earlier.insert(current.begin(), current.end());
    std::set<Index> next;
    for (Index z : current) {
      const auto& xz = t.choice(z);
      next.insert(xz.begin(), xz.end());
    }
    current = std::move(next);
  }
  const auto w = t.analysis().sim_closure(std::vector<Index>(earlier.begin(), earlier.end()));
  return {y, std::vector<Index>(current.begin(), current.end()), w};
}

}  // namespace locfin
