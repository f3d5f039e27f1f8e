#include "locfin/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

#include "locfin/error.hpp"
#include "locfin/io.hpp"

namespace locfin {

bool CategoryGenerator::in_domain(long v) const {
  const auto lo = domain_min();
  const auto hi = domain_max();
  return (!lo || v >= *lo) && (!hi || v <= *hi);
}

long CategoryGenerator::retract(long v, long lo, long hi) const { return std::clamp(v, lo, hi); }

Vector CategoryGenerator::retract_morphism(long, long, Index, long, long) const {
  throw Error(ErrorCode::HypothesisNotSatisfied, name() + " declares no retraction onto windows");
}

std::string CategoryGenerator::format_id(long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%03ld", v < 0 ? '-' : '+', v < 0 ? -v : v);
  return buf;
}

std::optional<long> CategoryGenerator::parse_id(const std::string& id) {
  if (id.size() < 2 || (id[0] != '+' && id[0] != '-')) return std::nullopt;
  long v = 0;
  for (std::size_t k = 1; k < id.size(); ++k) {
    if (id[k] < '0' || id[k] > '9') return std::nullopt;
    v = v * 10 + (id[k] - '0');
  }
  return id[0] == '-' ? -v : v;
}

LinCat CategoryGenerator::materialize(long lo, long hi) const {
  Presentation p;
  p.field = field();
  std::vector<long> values;
  for (long v = lo; v <= hi; ++v) {
    if (in_domain(v)) values.push_back(v);
  }
  for (long v : values) {
    p.objects.push_back(format_id(v));
    p.identity[format_id(v)] = identity(v);
  }
  for (long x : values) {
    for (long y : values) {
      if (const Index d = hom_dim(x, y); d > 0) p.hom[{format_id(x), format_id(y)}] = d;
    }
  }
  for (long x : values) {
    for (long y : values) {
      if (hom_dim(x, y) == 0) continue;
      for (long z : values) {
        if (hom_dim(y, z) == 0) continue;
        Tensor3 t = compose(x, y, z);
        if (!t.empty()) p.compose[{format_id(x), format_id(y), format_id(z)}] = std::move(t);
      }
    }
  }
  return LinCat(p);
}

std::shared_ptr<const Scope> Scope::finite(LinCat c) {
  std::shared_ptr<Scope> s(new Scope());
  s->cat_ = std::make_shared<const LinCat>(std::move(c));
  for (Index x = 0; x < s->cat_->size(); ++x) s->values_.push_back(x);
  return s;
}

std::shared_ptr<const Scope> Scope::window(std::shared_ptr<const CategoryGenerator> g, long lo, long hi) {
  if (lo > hi) throw Error(ErrorCode::BadWindow, "empty window");
  if (!g->in_domain(lo) || !g->in_domain(hi)) {
    throw Error(ErrorCode::BadWindow, "window [" + std::to_string(lo) + ".." + std::to_string(hi) +
                                          "] leaves the domain of " + g->name());
  }
  std::shared_ptr<Scope> s(new Scope());
  s->cat_ = std::make_shared<const LinCat>(g->materialize(lo, hi));
  s->generator_ = std::move(g);
  s->lo_ = lo;
  s->hi_ = hi;
  for (const auto& id : s->cat_->objects()) s->values_.push_back(*CategoryGenerator::parse_id(id));
  return s;
}

long Scope::value(Index x) const { return values_.at(static_cast<std::size_t>(x)); }

std::optional<Index> Scope::index_of_value(long v) const {
  if (!is_window()) {
    if (v < 0 || v >= cat_->size()) return std::nullopt;
    return v;
  }
  return cat_->find(CategoryGenerator::format_id(v));
}

std::string Scope::id_of_value(long v) const {
  if (!is_window()) return cat_->object(v);
  return CategoryGenerator::format_id(v);
}

bool Scope::continues_below() const {
  if (!is_window()) return false;
  const auto m = generator_->domain_min();
  return !m || *m < lo_;
}

bool Scope::continues_above() const {
  if (!is_window()) return false;
  const auto m = generator_->domain_max();
  return !m || *m > hi_;
}

bool Scope::at_open_end(Index x) const {
  const long v = value(x);
  return (v == lo_ && continues_below()) || (v == hi_ && continues_above());
}

std::vector<long> Scope::reach(Index start, bool forward) const {
  const Index n = cat_->size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<Index> queue{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop_front();
    for (Index v = 0; v < n; ++v) {
      const Index d = forward ? cat_->hom_dim(u, v) : cat_->hom_dim(v, u);
      if (d > 0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
    }
  }
  std::vector<long> out;
  for (Index v = 0; v < n; ++v) {
    if (seen[static_cast<std::size_t>(v)]) out.push_back(value(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

DeclaredSet Scope::upset(Index x) const {
  if (!is_window() || is_complete()) return DeclaredSet::finite(reach(x, true));
  return opposite_ ? generator_->downset(value(x)) : generator_->upset(value(x));
}

DeclaredSet Scope::downset(Index y) const {
  if (!is_window() || is_complete()) return DeclaredSet::finite(reach(y, false));
  return opposite_ ? generator_->upset(value(y)) : generator_->downset(value(y));
}

DeclaredSet Scope::interval(Index x, Index y) const {
  if (!is_window() || is_complete()) {
    std::vector<long> up = reach(x, true);
    std::vector<long> down = reach(y, false);
    std::vector<long> both;
    std::set_intersection(up.begin(), up.end(), down.begin(), down.end(), std::back_inserter(both));
    return DeclaredSet::finite(std::move(both));
  }
  return opposite_ ? generator_->interval(value(y), value(x)) : generator_->interval(value(x), value(y));
}

bool Scope::covered(const DeclaredSet& s) const {
  if (!s.is_finite()) return false;
  return std::all_of(s.members.begin(), s.members.end(), [&](long v) { return index_of_value(v).has_value(); });
}

std::shared_ptr<const Scope> Scope::enlarged(long k) const {
  if (!is_window()) return std::make_shared<const Scope>(*this);
  long lo = lo_;
  long hi = hi_;
  if (continues_below()) lo = generator_->domain_min() ? std::max(lo_ - k, *generator_->domain_min()) : lo_ - k;
  if (continues_above()) hi = generator_->domain_max() ? std::min(hi_ + k, *generator_->domain_max()) : hi_ + k;
  auto s = window(generator_, lo, hi);
  return opposite_ ? s->opposite() : s;
}

std::shared_ptr<const Scope> Scope::as_finite() const { return finite(*cat_); }

std::shared_ptr<const Scope> Scope::opposite() const {
  if (!is_window()) return finite(cat_->opposite());
  std::shared_ptr<Scope> s(new Scope(*this));
  s->cat_ = std::make_shared<const LinCat>(cat_->opposite());
  s->opposite_ = !opposite_;
  return s;
}

bool Scope::has_retraction() const { return is_window() && generator_->has_retraction(); }

long Scope::retract(long v) const {
  if (!has_retraction()) throw Error(ErrorCode::HypothesisNotSatisfied, "scope has no retraction onto the window");
  return generator_->retract(v, lo_, hi_);
}

Vector Scope::retract_morphism(long x, long y, Index a) const {
  if (!has_retraction()) throw Error(ErrorCode::HypothesisNotSatisfied, "scope has no retraction onto the window");
  return opposite_ ? generator_->retract_morphism(y, x, a, lo_, hi_) : generator_->retract_morphism(x, y, a, lo_, hi_);
}

std::string Scope::describe() const {
  if (!is_window()) return "finite:" + hex64(cat_->fingerprint());
  std::string s = generator_->name() + "[" + std::to_string(lo_) + ".." + std::to_string(hi_) + "]";
  return opposite_ ? s + "^op" : s;
}

nlohmann::json Scope::to_json() const {
  if (!is_window()) return {{"kind", "finite"}, {"fingerprint", hex64(cat_->fingerprint())}};
  return {{"kind", "window"}, {"generator", generator_->name()}, {"lo", lo_}, {"hi", hi_}, {"opposite", opposite_}};
}

std::pair<long, long> parse_window(const std::string& spec) {
  std::string s = spec;
  if (!s.empty() && s.front() == '[') s.erase(s.begin());
  if (!s.empty() && s.back() == ']') s.pop_back();
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      std::size_t used = 0;
      const long n = std::stol(s, &used);
      if (used != s.size() || n < 1) throw Error(ErrorCode::BadWindow, "bad window '" + spec + "'");
      return {0, n - 1};
    }
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string a = s.substr(0, dots);
    const std::string b = s.substr(dots + 2);
    const long lo = std::stol(a, &used_lo);
    const long hi = std::stol(b, &used_hi);
    if (used_lo != a.size() || used_hi != b.size() || lo > hi) throw Error(ErrorCode::BadWindow, "bad window '" + spec + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::BadWindow, "bad window '" + spec + "'");
  }
}

}  // namespace locfin
