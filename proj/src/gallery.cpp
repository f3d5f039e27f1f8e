#include "locfin/gallery.hpp"

#include <algorithm>

#include "locfin/error.hpp"

namespace locfin {

namespace {

Tensor3 unit_tensor(FieldDescriptor f) { return Tensor3::from_entries({1, 1, 1}, {{0, 0, 0, Scalar::one(f)}}); }

Vector one_vector(FieldDescriptor f) { return unit_vector(f, 1, 0); }

std::vector<long> range(long lo, long hi) {
  std::vector<long> out;
  for (long v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

// Shared shape of A_n and the integer chain.
class ChainLike : public CategoryGenerator {
 public:
  explicit ChainLike(FieldDescriptor f) : field_(f) {}
  FieldDescriptor field() const override { return field_; }
  Index hom_dim(long x, long y) const override { return in_domain(x) && in_domain(y) && x <= y ? 1 : 0; }
  Tensor3 compose(long x, long y, long z) const override {
    if (hom_dim(x, y) && hom_dim(y, z)) return unit_tensor(field_);
    return Tensor3(hom_dim(y, z), hom_dim(x, y), hom_dim(x, z));
  }
  Vector identity(long) const override { return one_vector(field_); }
  DeclaredSet interval(long x, long y) const override {
    return x <= y ? DeclaredSet::finite(range(x, y)) : DeclaredSet::finite({});
  }
  bool has_retraction() const override { return true; }
  Vector retract_morphism(long, long, Index, long, long) const override { return one_vector(field_); }

 protected:
  FieldDescriptor field_;
};

class FiniteChain final : public ChainLike {
 public:
  FiniteChain(long n, FieldDescriptor f) : ChainLike(f), n_(n) {}
  std::string name() const override { return "chainA"; }
  std::optional<long> domain_min() const override { return 0; }
  std::optional<long> domain_max() const override { return n_ - 1; }
  DeclaredSet upset(long x) const override { return DeclaredSet::finite(range(x, n_ - 1)); }
  DeclaredSet downset(long y) const override { return DeclaredSet::finite(range(0, y)); }

 private:
  long n_;
};

class IntegerChain final : public ChainLike {
 public:
  explicit IntegerChain(FieldDescriptor f) : ChainLike(f) {}
  std::string name() const override { return "zchain"; }
  DeclaredSet upset(long) const override { return DeclaredSet::infinite(); }
  DeclaredSet downset(long) const override { return DeclaredSet::infinite(); }
};

class NegativeStar final : public CategoryGenerator {
 public:
  explicit NegativeStar(FieldDescriptor f) : field_(f) {}
  std::string name() const override { return "zneg"; }
  FieldDescriptor field() const override { return field_; }
  std::optional<long> domain_max() const override { return -1; }
  Index hom_dim(long x, long y) const override {
    if (!in_domain(x) || !in_domain(y)) return 0;
    return x == y || (y == -1 && x <= -2) ? 1 : 0;
  }
  Tensor3 compose(long x, long y, long z) const override {
    // Every composable pair contains an identity.
    if (hom_dim(x, y) && hom_dim(y, z) && (x == y || y == z)) return unit_tensor(field_);
    return Tensor3(hom_dim(y, z), hom_dim(x, y), hom_dim(x, z));
  }
  Vector identity(long) const override { return one_vector(field_); }
  DeclaredSet interval(long x, long y) const override {
    if (x == y) return DeclaredSet::finite({x});
    if (hom_dim(x, y)) return DeclaredSet::finite({x, y});
    return DeclaredSet::finite({});
  }
  DeclaredSet upset(long x) const override {
    return x == -1 ? DeclaredSet::finite({-1}) : DeclaredSet::finite({x, -1});
  }
  DeclaredSet downset(long y) const override {
    return y == -1 ? DeclaredSet::infinite() : DeclaredSet::finite({y});
  }
  bool has_retraction() const override { return true; }
  long retract(long v, long lo, long hi) const override {
    if (hi != -1) throw Error(ErrorCode::HypothesisNotSatisfied, "zneg retracts only onto windows ending at -1");
    return std::max(v, lo);
  }
  Vector retract_morphism(long, long, Index, long, long hi) const override {
    if (hi != -1) throw Error(ErrorCode::HypothesisNotSatisfied, "zneg retracts only onto windows ending at -1");
    return one_vector(field_);
  }

 private:
  FieldDescriptor field_;
};

class Discrete final : public CategoryGenerator {
 public:
  explicit Discrete(FieldDescriptor f) : field_(f) {}
  std::string name() const override { return "discrete"; }
  FieldDescriptor field() const override { return field_; }
  Index hom_dim(long x, long y) const override { return x == y ? 1 : 0; }
  Tensor3 compose(long x, long y, long z) const override {
    if (x == y && y == z) return unit_tensor(field_);
    return Tensor3(hom_dim(y, z), hom_dim(x, y), hom_dim(x, z));
  }
  Vector identity(long) const override { return one_vector(field_); }
  DeclaredSet interval(long x, long y) const override {
    return x == y ? DeclaredSet::finite({x}) : DeclaredSet::finite({});
  }
  DeclaredSet upset(long x) const override { return DeclaredSet::finite({x}); }
  DeclaredSet downset(long y) const override { return DeclaredSet::finite({y}); }
  bool has_retraction() const override { return true; }
  Vector retract_morphism(long, long, Index, long, long) const override { return one_vector(field_); }

 private:
  FieldDescriptor field_;
};

class MatrixUnits final : public CategoryGenerator {
 public:
  explicit MatrixUnits(FieldDescriptor f) : field_(f) {}
  std::string name() const override { return "matrix2"; }
  FieldDescriptor field() const override { return field_; }
  std::optional<long> domain_min() const override { return 0; }
  std::optional<long> domain_max() const override { return 1; }
  Index hom_dim(long x, long y) const override { return in_domain(x) && in_domain(y) ? 1 : 0; }
  Tensor3 compose(long, long, long) const override { return unit_tensor(field_); }
  Vector identity(long) const override { return one_vector(field_); }
  DeclaredSet interval(long, long) const override { return DeclaredSet::finite({0, 1}); }
  DeclaredSet upset(long) const override { return DeclaredSet::finite({0, 1}); }
  DeclaredSet downset(long) const override { return DeclaredSet::finite({0, 1}); }

 private:
  FieldDescriptor field_;
};

}  // namespace

std::shared_ptr<const CategoryGenerator> make_chain(long n, FieldDescriptor f) {
  if (n < 1) throw Error(ErrorCode::BadWindow, "chainA needs at least one object");
  return std::make_shared<FiniteChain>(n, f);
}
std::shared_ptr<const CategoryGenerator> make_zchain(FieldDescriptor f) { return std::make_shared<IntegerChain>(f); }
std::shared_ptr<const CategoryGenerator> make_zneg(FieldDescriptor f) { return std::make_shared<NegativeStar>(f); }
std::shared_ptr<const CategoryGenerator> make_discrete(FieldDescriptor f) { return std::make_shared<Discrete>(f); }
std::shared_ptr<const CategoryGenerator> make_matrix2(FieldDescriptor f) { return std::make_shared<MatrixUnits>(f); }

namespace {

std::function<std::shared_ptr<const Scope>(const std::string&, FieldDescriptor)> windowed(
    std::shared_ptr<const CategoryGenerator> (*make)(FieldDescriptor)) {
  return [make](const std::string& w, FieldDescriptor f) {
    const auto [lo, hi] = parse_window(w);
    return Scope::window(make(f), lo, hi);
  };
}

}  // namespace

const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"chainA", "finite chain A_n; the window is n", "3",
       [](const std::string& w, FieldDescriptor f) {
         const auto [lo, hi] = parse_window(w);
         if (lo != 0) throw Error(ErrorCode::BadWindow, "chainA takes its size n as window");
         return Scope::window(make_chain(hi + 1, f), 0, hi);
       }},
      {"zchain", "integers ordered by <=, Hom(m,n) = k for m <= n; intervals finite, up- and down-sets infinite",
       "-3..3", windowed(&make_zchain)},
      {"zneg", "objects -1,-2,...; f: -n -> -1 with no composites; upper finite but not lower finite, not left strict",
       "-6..-1", windowed(&make_zneg)},
      {"discrete", "integers with identities only; upper and lower finite", "-2..2", windowed(&make_discrete)},
      {"matrix2", "two isomorphic objects with one-dimensional Hom spaces; a single equivalence class", "0..1",
       windowed(&make_matrix2)},
  };
  return entries;
}

std::shared_ptr<const Scope> gallery_instantiate(const std::string& name, const std::string& window, FieldDescriptor f) {
  for (const auto& e : gallery_entries()) {
    if (e.name == name) return e.instantiate(window.empty() ? e.default_window : window, f);
  }
  throw Error(ErrorCode::UnknownGallery, "no gallery entry '" + name + "'");
}

namespace {

Matrix one_by_one(FieldDescriptor f) { return identity(f, 1); }

/// Constant one-dimensional module on [lo..hi] (all integers when unbounded).
class ChainInterval final : public ModuleGenerator {
 public:
  ChainInterval(FieldDescriptor f, std::optional<long> l) : f_(f), l_(l) {}
  std::string name() const override { return l_ ? "zchain/N_l:" + std::to_string(*l_) : "zchain/N"; }
  std::shared_ptr<const CategoryGenerator> category() const override { return make_zchain(f_); }
  Index dim(long x) const override { return in(x) ? 1 : 0; }
  Matrix action(long x, long y, Index) const override {
    return in(x) && in(y) ? one_by_one(f_) : zeros(dim(y), dim(x));
  }
  DeclaredSet forward(long x) const override {
    if (!l_) return DeclaredSet::infinite();
    return in(x) ? DeclaredSet::finite(range(x, *l_)) : DeclaredSet::finite({});
  }
  DeclaredSet backward(long y) const override {
    if (!l_) return DeclaredSet::infinite();
    return in(y) ? DeclaredSet::finite(range(-*l_, y)) : DeclaredSet::finite({});
  }

 private:
  bool in(long x) const { return !l_ || (x >= -*l_ && x <= *l_); }
  FieldDescriptor f_;
  std::optional<long> l_;
};

/// Direct sum of N_l for l = 0..L; L unset means all l.
class ChainIntervalSum final : public ModuleGenerator {
 public:
  ChainIntervalSum(FieldDescriptor f, std::optional<long> L) : f_(f), L_(L) {}
  std::string name() const override { return L_ ? "zchain/sumN:" + std::to_string(*L_) : "zchain/sumN"; }
  std::shared_ptr<const CategoryGenerator> category() const override { return make_zchain(f_); }
  bool locally_finite() const override { return L_.has_value(); }
  bool uniform_support() const override { return false; }
  Index dim(long x) const override {
    if (!L_) throw Error(ErrorCode::NotLocallyFinite, "sum of all N_l is infinite-dimensional at every object");
    return std::max(0L, *L_ - std::labs(x) + 1);
  }
  Matrix action(long x, long y, Index) const override {
    // Summand N_l sits at position l - |x| of M(x).
    Matrix m = zeros(dim(y), dim(x));
    const long lo = std::max(std::labs(x), std::labs(y));
    for (long l = lo; l <= *L_; ++l) m(l - std::labs(y), l - std::labs(x)) = Scalar::one(f_);
    return m;
  }
  DeclaredSet forward(long x) const override {
    if (!L_) return DeclaredSet::infinite();
    return std::labs(x) <= *L_ ? DeclaredSet::finite(range(x, *L_)) : DeclaredSet::finite({});
  }
  DeclaredSet backward(long y) const override {
    if (!L_) return DeclaredSet::infinite();
    return std::labs(y) <= *L_ ? DeclaredSet::finite(range(-*L_, y)) : DeclaredSet::finite({});
  }

 private:
  FieldDescriptor f_;
  std::optional<long> L_;
};

class NegativeConstant final : public ModuleGenerator {
 public:
  explicit NegativeConstant(FieldDescriptor f) : f_(f) {}
  std::string name() const override { return "zneg/const"; }
  std::shared_ptr<const CategoryGenerator> category() const override { return make_zneg(f_); }
  Index dim(long) const override { return 1; }
  Matrix action(long, long, Index) const override { return one_by_one(f_); }
  DeclaredSet forward(long x) const override { return make_zneg(f_)->upset(x); }
  DeclaredSet backward(long y) const override { return make_zneg(f_)->downset(y); }

 private:
  FieldDescriptor f_;
};

class NegativeSingleRight final : public ModuleGenerator {
 public:
  explicit NegativeSingleRight(FieldDescriptor f) : f_(f) {}
  std::string name() const override { return "zneg/single"; }
  std::shared_ptr<const CategoryGenerator> category() const override { return make_zneg(f_); }
  Side side() const override { return Side::Right; }
  Index dim(long x) const override { return x >= -2 ? 1 : 0; }
  Matrix action(long x, long y, Index) const override {
    return x >= -2 && y >= -2 ? one_by_one(f_) : zeros(dim(x), dim(y));
  }
  DeclaredSet forward(long x) const override {
    if (x == -2) return DeclaredSet::finite({-2, -1});
    return x == -1 ? DeclaredSet::finite({-1}) : DeclaredSet::finite({});
  }
  DeclaredSet backward(long y) const override {
    if (y == -1) return DeclaredSet::finite({-2, -1});
    return y == -2 ? DeclaredSet::finite({-2}) : DeclaredSet::finite({});
  }

 private:
  FieldDescriptor f_;
};

std::optional<long> parse_param(const std::string& p) {
  if (p.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const long v = std::stol(p, &used);
    if (used == p.size() && v >= 0) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::UnknownGallery, "bad module parameter '" + p + "'");
}

}  // namespace

const std::vector<GalleryModuleEntry>& gallery_module_entries() {
  static const std::vector<GalleryModuleEntry> entries = {
      {"zchain/N", "constant one-dimensional module with identity actions; supports infinite both ways", ""},
      {"zchain/N_l", "N cut down to [-l..l]; contrafinite with A contained in [-l..l]", "l"},
      {"zchain/sumN", "direct sum of N_0..N_L (all l when L is omitted, which is not locally finite)", "L"},
      {"zneg/const", "constant one-dimensional left module on zneg", ""},
      {"zneg/single", "right module k at -2 and -1 joined by f: -2 -> -1, zero elsewhere", ""},
  };
  return entries;
}

std::shared_ptr<const ModuleGenerator> gallery_module(const std::string& spec, FieldDescriptor f) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "zchain/N" && param.empty()) return std::make_shared<ChainInterval>(f, std::nullopt);
  if (name == "zchain/N_l") {
    if (param.empty()) throw Error(ErrorCode::UnknownGallery, "zchain/N_l needs a parameter l");
    return std::make_shared<ChainInterval>(f, parse_param(param));
  }
  if (name == "zchain/sumN") return std::make_shared<ChainIntervalSum>(f, parse_param(param));
  if (name == "zneg/const" && param.empty()) return std::make_shared<NegativeConstant>(f);
  if (name == "zneg/single" && param.empty()) return std::make_shared<NegativeSingleRight>(f);
  throw Error(ErrorCode::UnknownGallery, "no gallery module '" + spec + "'");
}

Module gallery_module_on(const std::string& spec, const std::string& window, FieldDescriptor f) {
  auto g = gallery_module(spec, f);
  auto scope = gallery_instantiate(g->category()->name(), window, f);
  return g->restrict(g, scope);
}

}  // namespace locfin
