#include "locfin/lincat.hpp"

#include <algorithm>

#include "locfin/error.hpp"
#include "locfin/io.hpp"

namespace locfin {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Certified: return "Certified";
    case Status::Refuted: return "Refuted";
    case Status::Inconclusive: return "InconclusiveAtWindow";
  }
  return "Unknown";
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j = {{"status", std::string(to_string(status))}, {"witness", witness}};
  if (!note.empty()) j["note"] = note;
  return j;
}

LinCat::LinCat(const Presentation& p) : field_(p.field), objects_(p.objects) {
  std::sort(objects_.begin(), objects_.end());
  if (std::adjacent_find(objects_.begin(), objects_.end()) != objects_.end()) {
    throw Error(ErrorCode::MalformedPresentation, "duplicate object id");
  }
  for (std::size_t i = 0; i < objects_.size(); ++i) index_.emplace(objects_[i], static_cast<Index>(i));
  const auto n = static_cast<std::size_t>(size());
  hom_.assign(n * n, 0);
  for (const auto& [key, d] : p.hom) {
    if (d < 0) throw Error(ErrorCode::MalformedPresentation, "negative Hom dimension");
    hom_[slot(index_of(key.first), index_of(key.second))] = d;
  }
  compose_.resize(n * n * n);
  for (Index x = 0; x < size(); ++x) {
    for (Index y = 0; y < size(); ++y) {
      for (Index z = 0; z < size(); ++z) compose_[slot3(x, y, z)] = Tensor3(hom_dim(y, z), hom_dim(x, y), hom_dim(x, z));
    }
  }
  for (const auto& [key, t] : p.compose) {
    const Index x = index_of(key[0]);
    const Index y = index_of(key[1]);
    const Index z = index_of(key[2]);
    const std::array<Index, 3> want{hom_dim(y, z), hom_dim(x, y), hom_dim(x, z)};
    if (t.dims() != want) {
      throw Error(ErrorCode::DimensionMismatch, "composition tensor " + key[0] + "|" + key[1] + "|" + key[2] +
                                                    " does not match the Hom dimensions");
    }
    std::vector<Tensor3::Entry> entries;
    for (const auto& e : t.entries()) entries.push_back({e.i, e.j, e.l, e.value.in(field_)});
    compose_[slot3(x, y, z)] = Tensor3::from_entries(want, std::move(entries));
  }
  identity_.resize(n);
  for (Index x = 0; x < size(); ++x) identity_[static_cast<std::size_t>(x)] = Vector::Constant(hom_dim(x, x), Scalar(0));
  for (const auto& [id, v] : p.identity) {
    const Index x = index_of(id);
    if (v.size() != hom_dim(x, x)) throw Error(ErrorCode::DimensionMismatch, "identity of " + id + " has wrong length");
    Vector tagged_v(v.size());
    for (Index a = 0; a < v.size(); ++a) tagged_v(a) = v(a).in(field_);
    identity_[static_cast<std::size_t>(x)] = tagged_v;
  }
}

Index LinCat::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::UnknownObject, "unknown object '" + id + "'");
  return it->second;
}

std::optional<Index> LinCat::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vector LinCat::compose(Index x, Index y, Index z, const Vector& g, const Vector& f) const {
  if (g.size() != hom_dim(y, z) || f.size() != hom_dim(x, y)) {
    throw Error(ErrorCode::UnknownHomSpace, "morphism coordinates do not match the Hom space");
  }
  return compose_tensor(x, y, z).contract(g, f);
}

Vector LinCat::compose_basis(Index x, Index y, Index z, Index i, Index j) const {
  Vector out = Vector::Constant(hom_dim(x, z), Scalar(0));
  for (const auto& e : compose_tensor(x, y, z).entries()) {
    if (e.i == i && e.j == j) out(e.l) += e.value;
  }
  return out;
}

Presentation LinCat::presentation() const {
  Presentation p;
  p.field = field_;
  p.objects = objects_;
  for (Index x = 0; x < size(); ++x) {
    p.identity[object(x)] = identity(x);
    for (Index y = 0; y < size(); ++y) {
      if (hom_dim(x, y) > 0) p.hom[{object(x), object(y)}] = hom_dim(x, y);
      for (Index z = 0; z < size(); ++z) {
        const Tensor3& t = compose_tensor(x, y, z);
        if (!t.empty()) p.compose[{object(x), object(y), object(z)}] = t;
      }
    }
  }
  return p;
}

LinCat LinCat::full_subcategory(const std::vector<Index>& keep) const {
  Presentation p;
  p.field = field_;
  for (Index x : keep) p.objects.push_back(object(x));
  for (Index x : keep) {
    p.identity[object(x)] = identity(x);
    for (Index y : keep) {
      if (hom_dim(x, y) > 0) p.hom[{object(x), object(y)}] = hom_dim(x, y);
      for (Index z : keep) {
        const Tensor3& t = compose_tensor(x, y, z);
        if (!t.empty()) p.compose[{object(x), object(y), object(z)}] = t;
      }
    }
  }
  return LinCat(p);
}

LinCat LinCat::opposite() const {
  Presentation p;
  p.field = field_;
  p.objects = objects_;
  for (Index x = 0; x < size(); ++x) {
    p.identity[object(x)] = identity(x);
    for (Index y = 0; y < size(); ++y) {
      if (hom_dim(x, y) > 0) p.hom[{object(y), object(x)}] = hom_dim(x, y);
    }
  }
  // In the opposite category f o_op g = g o f, so the op tensor for (z,y,x)
  // has the two input slots of the original (x,y,z) tensor swapped.
  for (Index x = 0; x < size(); ++x) {
    for (Index y = 0; y < size(); ++y) {
      for (Index z = 0; z < size(); ++z) {
        const Tensor3& t = compose_tensor(x, y, z);
        if (t.empty()) continue;
        std::vector<Tensor3::Entry> swapped;
        for (const auto& e : t.entries()) swapped.push_back({e.j, e.i, e.l, e.value});
        p.compose[{object(z), object(y), object(x)}] =
            Tensor3::from_entries({t.dims()[1], t.dims()[0], t.dims()[2]}, std::move(swapped));
      }
    }
  }
  return LinCat(p);
}

std::uint64_t LinCat::fingerprint() const {
  std::string text = field_.to_string() + ";";
  for (const auto& o : objects_) text += o + ",";
  text += ";";
  for (Index x = 0; x < size(); ++x) {
    for (Index a = 0; a < identity(x).size(); ++a) text += identity(x)(a).to_string() + ",";
    text += ";";
    for (Index y = 0; y < size(); ++y) {
      text += std::to_string(hom_dim(x, y)) + ",";
      for (Index z = 0; z < size(); ++z) {
        for (const auto& e : compose_tensor(x, y, z).entries()) {
          text += std::to_string(x) + "." + std::to_string(y) + "." + std::to_string(z) + ":" + std::to_string(e.i) +
                  "." + std::to_string(e.j) + "." + std::to_string(e.l) + "=" + e.value.to_string() + ",";
        }
      }
    }
  }
  return fnv1a(text);
}

bool operator==(const LinCat& a, const LinCat& b) {
  if (!(a.field_ == b.field_) || a.objects_ != b.objects_ || a.hom_ != b.hom_) return false;
  for (std::size_t k = 0; k < a.compose_.size(); ++k) {
    if (!(a.compose_[k] == b.compose_[k])) return false;
  }
  for (std::size_t k = 0; k < a.identity_.size(); ++k) {
    if (a.identity_[k] != b.identity_[k]) return false;
  }
  return true;
}

Verdict validate_category(const LinCat& c) {
  const Index n = c.size();
  const auto f = c.field();
  for (Index x = 0; x < n; ++x) {
    if (is_zero(c.identity(x))) {
      return Verdict::refuted({{"axiom", "nonzero_object"}, {"object", c.object(x)}},
                              "identity morphism is zero, so the object is a zero object");
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (Index a = 0; a < c.hom_dim(x, y); ++a) {
        const Vector e = unit_vector(f, c.hom_dim(x, y), a);
        if (c.compose(x, y, y, c.identity(y), e) != e) {
          return Verdict::refuted({{"axiom", "left_unit"}, {"objects", {c.object(x), c.object(y)}}, {"basis", a}});
        }
        if (c.compose(x, x, y, e, c.identity(x)) != e) {
          return Verdict::refuted({{"axiom", "right_unit"}, {"objects", {c.object(x), c.object(y)}}, {"basis", a}});
        }
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (c.hom_dim(x, y) == 0) continue;
      for (Index z = 0; z < n; ++z) {
        if (c.hom_dim(y, z) == 0) continue;
        for (Index w = 0; w < n; ++w) {
          if (c.hom_dim(z, w) == 0) continue;
          for (Index h = 0; h < c.hom_dim(z, w); ++h) {
            for (Index g = 0; g < c.hom_dim(y, z); ++g) {
              const Vector hg = c.compose_basis(y, z, w, h, g);
              for (Index k = 0; k < c.hom_dim(x, y); ++k) {
                const Vector fk = unit_vector(f, c.hom_dim(x, y), k);
                const Vector lhs = c.compose(x, y, w, hg, fk);
                const Vector rhs = c.compose(x, z, w, unit_vector(f, c.hom_dim(z, w), h), c.compose_basis(x, y, z, g, k));
                if (lhs != rhs) {
                  return Verdict::refuted({{"axiom", "associativity"},
                                           {"objects", {c.object(x), c.object(y), c.object(z), c.object(w)}},
                                           {"basis", {h, g, k}},
                                           {"lhs", to_json(lhs, f)},
                                           {"rhs", to_json(rhs, f)}});
                }
              }
            }
          }
        }
      }
    }
  }
  return Verdict::certified();
}

}  // namespace locfin
