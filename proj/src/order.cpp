#include "locfin/order.hpp"

#include <algorithm>
#include <deque>

#include "locfin/error.hpp"

namespace locfin {

std::string_view to_string(MorphismClass c) {
  switch (c) {
    case MorphismClass::Short: return "Short";
    case MorphismClass::Long: return "Long";
    case MorphismClass::Zero: return "Zero";
  }
  return "Unknown";
}

PreorderAnalysis::PreorderAnalysis(std::shared_ptr<const Scope> scope) : scope_(std::move(scope)) {
  const LinCat& c = scope_->cat();
  n_ = c.size();
  reach_.assign(static_cast<std::size_t>(n_ * n_), false);
  for (Index s = 0; s < n_; ++s) {
    std::deque<Index> queue{s};
    reach_[slot(s, s)] = true;
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (Index v = 0; v < n_; ++v) {
        if (c.hom_dim(u, v) > 0 && !reach_[slot(s, v)]) {
          reach_[slot(s, v)] = true;
          queue.push_back(v);
        }
      }
    }
  }
  // With the closure at hand the strongly connected components are the
  // mutual-reachability classes.
  class_.assign(static_cast<std::size_t>(n_), -1);
  for (Index x = 0; x < n_; ++x) {
    if (class_[static_cast<std::size_t>(x)] >= 0) continue;
    const Index id = static_cast<Index>(classes_.size());
    classes_.emplace_back();
    for (Index y = x; y < n_; ++y) {
      if (sim(x, y)) {
        class_[static_cast<std::size_t>(y)] = id;
        classes_.back().push_back(y);
      }
    }
  }
  // Longest path in the condensation. Classes sorted by the number of
  // strict predecessors form a topological order.
  const Index k = static_cast<Index>(classes_.size());
  auto rep = [&](Index cls) { return classes_[static_cast<std::size_t>(cls)].front(); };
  std::vector<Index> order(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
  auto preds = [&](Index cls) {
    Index count = 0;
    for (Index o = 0; o < k; ++o) count += prec(rep(o), rep(cls)) ? 1 : 0;
    return count;
  };
  std::vector<Index> pred_count(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) pred_count[static_cast<std::size_t>(i)] = preds(i);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return pred_count[static_cast<std::size_t>(a)] < pred_count[static_cast<std::size_t>(b)];
  });
  // cdist[a][b]: longest chain of strict edges from class a to class b, or -1.
  std::vector<Index> cdist(static_cast<std::size_t>(k * k), -1);
  for (Index a = 0; a < k; ++a) {
    cdist[static_cast<std::size_t>(a * k + a)] = 0;
    for (Index b : order) {
      const Index db = cdist[static_cast<std::size_t>(a * k + b)];
      if (db < 0) continue;
      for (Index c2 = 0; c2 < k; ++c2) {
        if (c2 == b) continue;
        // A direct edge between members of the classes.
        bool edge = false;
        for (Index u : classes_[static_cast<std::size_t>(b)]) {
          for (Index v : classes_[static_cast<std::size_t>(c2)]) edge = edge || c.hom_dim(u, v) > 0;
        }
        if (edge) {
          auto& dc = cdist[static_cast<std::size_t>(a * k + c2)];
          dc = std::max(dc, db + 1);
        }
      }
    }
  }
  dist_.assign(static_cast<std::size_t>(n_ * n_), -1);
  for (Index x = 0; x < n_; ++x) {
    for (Index y = 0; y < n_; ++y) dist_[slot(x, y)] = cdist[static_cast<std::size_t>(class_of(x) * k + class_of(y))];
  }
}

std::optional<Index> PreorderAnalysis::distance(Index x, Index y) const {
  const Index d = dist_[slot(x, y)];
  if (d < 0) return std::nullopt;
  return d;
}

bool PreorderAnalysis::distance_exact(Index x, Index y) const {
  if (!scope_->is_window() || scope_->is_complete()) return true;
  return scope_->covered(scope_->interval(x, y));
}

Index PreorderAnalysis::longest_chain() const {
  Index best = 0;
  for (Index d : dist_) best = std::max(best, d);
  return best;
}

std::vector<Index> PreorderAnalysis::strict_downset(Index y) const {
  std::vector<Index> out;
  for (Index z = 0; z < n_; ++z) {
    if (prec(z, y)) out.push_back(z);
  }
  return out;
}

std::vector<Index> PreorderAnalysis::strict_upset(Index x) const {
  std::vector<Index> out;
  for (Index z = 0; z < n_; ++z) {
    if (prec(x, z)) out.push_back(z);
  }
  return out;
}

std::vector<Index> PreorderAnalysis::sim_closure(const std::vector<Index>& s) const {
  std::vector<Index> out;
  for (Index z = 0; z < n_; ++z) {
    if (std::any_of(s.begin(), s.end(), [&](Index x) { return sim(x, z); })) out.push_back(z);
  }
  return out;
}

PreorderAnalysis compute_preorder(std::shared_ptr<const Scope> scope) { return PreorderAnalysis(std::move(scope)); }

MorphismClass classify_morphism(const PreorderAnalysis& a, Index x, Index y, const Vector& f) {
  const LinCat& c = a.scope().cat();
  if (x < 0 || y < 0 || x >= c.size() || y >= c.size() || f.size() != c.hom_dim(x, y)) {
    throw Error(ErrorCode::UnknownHomSpace, "coordinates do not describe an element of a Hom space");
  }
  if (is_zero(f)) return MorphismClass::Zero;
  return a.sim(x, y) ? MorphismClass::Short : MorphismClass::Long;
}

Verdict check_interval_finiteness(const PreorderAnalysis& a) {
  const Scope& s = a.scope();
  if (!s.is_window() || s.is_complete()) return Verdict::certified({}, "finite object set");
  for (Index x = 0; x < a.size(); ++x) {
    for (Index y = 0; y < a.size(); ++y) {
      if (!a.preceq(x, y)) continue;
      const DeclaredSet iv = s.interval(x, y);
      if (!s.covered(iv)) {
        return Verdict::inconclusive(
            iv.kind == DeclaredSet::Kind::Undeclared ? "generator declares no interval bound"
                                                     : "interval not contained in the window",
            {{"x", s.cat().object(x)}, {"y", s.cat().object(y)}, {"window", s.describe()}});
      }
    }
  }
  return Verdict::certified({}, "every interval of " + s.describe() + " is declared finite and lies in the window");
}

namespace {

Verdict finiteness_verdict(const PreorderAnalysis& a, bool upper) {
  const Scope& s = a.scope();
  if (!s.is_window() || s.is_complete()) return Verdict::certified({}, "finite object set");
  bool undeclared = false;
  for (Index x = 0; x < a.size(); ++x) {
    const DeclaredSet d = upper ? s.upset(x) : s.downset(x);
    if (d.is_infinite()) {
      return Verdict::refuted({{"object", s.cat().object(x)}, {upper ? "upset" : "downset", "infinite (declared)"}},
                              "declared by " + s.generator()->name());
    }
    if (d.kind == DeclaredSet::Kind::Undeclared) undeclared = true;
  }
  if (undeclared) return Verdict::inconclusive("generator declares no bound for some object", {{"window", s.describe()}});
  return Verdict::certified({}, "every window object has a declared finite " + std::string(upper ? "up-set" : "down-set") +
                                    "; " + s.describe());
}

}  // namespace

std::pair<Verdict, Verdict> check_upper_lower_finite(const PreorderAnalysis& a) {
  return {finiteness_verdict(a, true), finiteness_verdict(a, false)};
}

}  // namespace locfin
