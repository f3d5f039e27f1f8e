#include "locfin/module.hpp"

#include <algorithm>
#include <numeric>

#include "locfin/error.hpp"

namespace locfin {

std::string_view to_string(Side s) { return s == Side::Left ? "left" : "right"; }

Module::Module(std::shared_ptr<const Scope> scope, Side side, std::vector<Index> dims)
    : scope_(std::move(scope)), side_(side), dims_(std::move(dims)) {
  const Index n = cat().size();
  if (static_cast<Index>(dims_.size()) != n) throw Error(ErrorCode::DimensionMismatch, "one dimension per object expected");
  for (Index d : dims_) {
    if (d < 0) throw Error(ErrorCode::DimensionMismatch, "negative module dimension");
  }
  actions_.resize(static_cast<std::size_t>(n * n));
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const Index rows = side_ == Side::Left ? dim(y) : dim(x);
      const Index cols = side_ == Side::Left ? dim(x) : dim(y);
      actions_[slot(x, y)].assign(static_cast<std::size_t>(cat().hom_dim(x, y)), zeros(rows, cols));
    }
  }
}

Index Module::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), Index{0}); }

const Matrix& Module::action(Index x, Index y, Index a) const {
  const auto& v = actions_.at(slot(x, y));
  if (a < 0 || a >= static_cast<Index>(v.size())) throw Error(ErrorCode::UnknownHomSpace, "no such basis morphism");
  return v[static_cast<std::size_t>(a)];
}

void Module::set_action(Index x, Index y, Index a, Matrix m) {
  auto& v = actions_.at(slot(x, y));
  if (a < 0 || a >= static_cast<Index>(v.size())) throw Error(ErrorCode::UnknownHomSpace, "no such basis morphism");
  auto& slot_m = v[static_cast<std::size_t>(a)];
  if (m.rows() != slot_m.rows() || m.cols() != slot_m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "action matrix for " + cat().object(x) + "|" + cat().object(y) +
                                                  " should be " + std::to_string(slot_m.rows()) + "x" +
                                                  std::to_string(slot_m.cols()));
  }
  slot_m = tagged(m, field());
}

Matrix Module::act(Index x, Index y, const Vector& f) const {
  if (f.size() != cat().hom_dim(x, y)) throw Error(ErrorCode::UnknownHomSpace, "morphism has wrong length");
  const auto& v = actions_[slot(x, y)];
  Matrix out = zeros(side_ == Side::Left ? dim(y) : dim(x), side_ == Side::Left ? dim(x) : dim(y));
  for (Index a = 0; a < f.size(); ++a) {
    if (!f(a).is_zero()) out += f(a) * v[static_cast<std::size_t>(a)];
  }
  return out;
}

bool Module::block_is_zero(Index x, Index y) const {
  const auto& v = actions_[slot(x, y)];
  return std::all_of(v.begin(), v.end(), [](const Matrix& m) { return is_zero(m); });
}

bool operator==(const Module& a, const Module& b) {
  if (a.side_ != b.side_ || a.dims_ != b.dims_) return false;
  if (a.scope_ != b.scope_ && !(a.cat() == b.cat())) return false;
  for (std::size_t k = 0; k < a.actions_.size(); ++k) {
    for (std::size_t i = 0; i < a.actions_[k].size(); ++i) {
      if (a.actions_[k][i] != b.actions_[k][i]) return false;
    }
  }
  return true;
}

Module ModuleGenerator::restrict(const std::shared_ptr<const ModuleGenerator>& self,
                                 std::shared_ptr<const Scope> window) const {
  if (!window->is_window() || window->is_opposite() || window->generator()->name() != category()->name()) {
    throw Error(ErrorCode::BadWindow, name() + " lives on " + category()->name());
  }
  const LinCat& c = window->cat();
  std::vector<Index> dims;
  for (Index x = 0; x < c.size(); ++x) dims.push_back(dim(window->value(x)));
  Module m(window, side(), dims);
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      for (Index a = 0; a < c.hom_dim(x, y); ++a) m.set_action(x, y, a, action(window->value(x), window->value(y), a));
    }
  }
  m.set_declared(self);
  return m;
}

namespace {

Index first_nonzero_column(const Matrix& m) {
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (!m(r, c).is_zero()) return c;
    }
  }
  return -1;
}

}  // namespace

Verdict validate_module(const Module& m) {
  const LinCat& c = m.cat();
  const auto f = c.field();
  for (Index x = 0; x < c.size(); ++x) {
    if (m.act(x, x, c.identity(x)) != identity(f, m.dim(x))) {
      return Verdict::refuted({{"axiom", "identity"}, {"object", c.object(x)}});
    }
  }
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      if (c.hom_dim(x, y) == 0) continue;
      for (Index z = 0; z < c.size(); ++z) {
        for (Index g = 0; g < c.hom_dim(y, z); ++g) {
          for (Index k = 0; k < c.hom_dim(x, y); ++k) {
            const Matrix lhs = m.act(x, z, c.compose_basis(x, y, z, g, k));
            const Matrix rhs = m.side() == Side::Left ? Matrix(m.action(y, z, g) * m.action(x, y, k))
                                                      : Matrix(m.action(x, y, k) * m.action(y, z, g));
            if (lhs != rhs) {
              return Verdict::refuted({{"axiom", "composition"},
                                       {"objects", {c.object(x), c.object(y), c.object(z)}},
                                       {"basis", {g, k}},
                                       {"vector", first_nonzero_column(lhs - rhs)}});
            }
          }
        }
      }
    }
  }
  return Verdict::certified();
}

namespace {

struct HomSystem {
  Matrix equations;
  std::vector<Index> offsets;
  Index unknowns = 0;
};

void check_compatible(const Module& a, const Module& b) {
  if (a.side() != b.side()) throw Error(ErrorCode::DimensionMismatch, "modules on different sides");
  if (a.scope_ptr() != b.scope_ptr() && !(a.cat() == b.cat())) {
    throw Error(ErrorCode::DimensionMismatch, "modules over different categories");
  }
}

HomSystem hom_system(const Module& a, const Module& b) {
  check_compatible(a, b);
  const LinCat& c = a.cat();
  const Index n = c.size();
  HomSystem sys;
  for (Index x = 0; x < n; ++x) {
    sys.offsets.push_back(sys.unknowns);
    sys.unknowns += b.dim(x) * a.dim(x);
  }
  // Unknown for phi(x)[r][k].
  auto var = [&](Index x, Index r, Index k) { return sys.offsets[static_cast<std::size_t>(x)] + r * a.dim(x) + k; };
  std::vector<std::vector<std::pair<Index, Scalar>>> rows;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        const Matrix& ma = a.action(x, y, h);
        const Matrix& mb = b.action(x, y, h);
        // Left: mb phi(x) = phi(y) ma. Right: mb phi(y) = phi(x) ma.
        const Index src = a.side() == Side::Left ? x : y;
        const Index dst = a.side() == Side::Left ? y : x;
        for (Index r = 0; r < b.dim(dst); ++r) {
          for (Index col = 0; col < a.dim(src); ++col) {
            std::vector<std::pair<Index, Scalar>> row;
            for (Index k = 0; k < b.dim(src); ++k) {
              if (!mb(r, k).is_zero()) row.emplace_back(var(src, k, col), mb(r, k));
            }
            for (Index k = 0; k < a.dim(dst); ++k) {
              if (!ma(k, col).is_zero()) row.emplace_back(var(dst, r, k), -ma(k, col));
            }
            if (!row.empty()) rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  sys.equations = zeros(static_cast<Index>(rows.size()), sys.unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [col, v] : rows[r]) sys.equations(static_cast<Index>(r), col) += v;
  }
  return sys;
}

}  // namespace

Subspace module_hom_space(const Module& a, const Module& b) { return kernel(hom_system(a, b).equations); }

Index module_hom_dim(const Module& a, const Module& b) {
  HomSystem sys = hom_system(a, b);
  return sys.unknowns - rank(sys.equations);
}

std::vector<Matrix> unpack_hom(const Module& a, const Module& b, const Vector& phi) {
  std::vector<Matrix> out;
  Index pos = 0;
  for (Index x = 0; x < a.cat().size(); ++x) {
    Matrix m(b.dim(x), a.dim(x));
    for (Index r = 0; r < b.dim(x); ++r) {
      for (Index k = 0; k < a.dim(x); ++k) m(r, k) = phi(pos++);
    }
    out.push_back(std::move(m));
  }
  if (pos != phi.size()) throw Error(ErrorCode::DimensionMismatch, "hom vector has wrong length");
  return out;
}

bool is_module_morphism(const Module& a, const Module& b, const std::vector<Matrix>& phi) {
  check_compatible(a, b);
  const LinCat& c = a.cat();
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        const auto& px = phi[static_cast<std::size_t>(x)];
        const auto& py = phi[static_cast<std::size_t>(y)];
        const bool ok = a.side() == Side::Left ? (b.action(x, y, h) * px == py * a.action(x, y, h))
                                               : (b.action(x, y, h) * py == px * a.action(x, y, h));
        if (!ok) return false;
      }
    }
  }
  return true;
}

Module direct_sum(const Module& a, const Module& b) {
  check_compatible(a, b);
  const LinCat& c = a.cat();
  std::vector<Index> dims;
  for (Index x = 0; x < c.size(); ++x) dims.push_back(a.dim(x) + b.dim(x));
  Module s(a.scope_ptr(), a.side(), dims);
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        const Matrix& ma = a.action(x, y, h);
        const Matrix& mb = b.action(x, y, h);
        Matrix m = zeros(ma.rows() + mb.rows(), ma.cols() + mb.cols());
        m.topLeftCorner(ma.rows(), ma.cols()) = ma;
        m.bottomRightCorner(mb.rows(), mb.cols()) = mb;
        s.set_action(x, y, h, m);
      }
    }
  }
  return s;
}

Graded zero_graded(const Module& m) {
  Graded g;
  for (Index d : m.dims()) g.emplace_back(d);
  return g;
}

Graded full_graded(const Module& m) {
  Graded g;
  for (Index d : m.dims()) g.push_back(Subspace::full(d));
  return g;
}

namespace {

// (source, target) of the linear map attached to Hom(x,y).
std::pair<Index, Index> ends(const Module& m, Index x, Index y) {
  return m.side() == Side::Left ? std::pair{x, y} : std::pair{y, x};
}

}  // namespace

bool is_submodule(const Module& m, const Graded& s) {
  const LinCat& c = m.cat();
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      const auto [src, dst] = ends(m, x, y);
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        const Matrix moved = m.action(x, y, h) * s[static_cast<std::size_t>(src)].basis().transpose();
        for (Index k = 0; k < moved.cols(); ++k) {
          if (!s[static_cast<std::size_t>(dst)].contains(Vector(moved.col(k)))) return false;
        }
      }
    }
  }
  return true;
}

Graded generated_submodule(const Module& m, const Graded& seeds) {
  const LinCat& c = m.cat();
  Graded s = seeds;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index x = 0; x < c.size(); ++x) {
      for (Index y = 0; y < c.size(); ++y) {
        const auto [src, dst] = ends(m, x, y);
        auto& target = s[static_cast<std::size_t>(dst)];
        for (Index h = 0; h < c.hom_dim(x, y); ++h) {
          const Matrix moved = m.action(x, y, h) * s[static_cast<std::size_t>(src)].basis().transpose();
          Subspace grown = target + Subspace::span_columns(moved);
          if (grown.dim() != target.dim()) {
            target = std::move(grown);
            changed = true;
          }
        }
      }
    }
  }
  return s;
}

Module submodule(const Module& m, const Graded& s) {
  if (!is_submodule(m, s)) throw Error(ErrorCode::HypothesisNotSatisfied, "graded subspace is not a submodule");
  const LinCat& c = m.cat();
  std::vector<Index> dims;
  for (const auto& sub : s) dims.push_back(sub.dim());
  Module out(m.scope_ptr(), m.side(), dims);
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      const auto [src, dst] = ends(m, x, y);
      const Subspace& ss = s[static_cast<std::size_t>(src)];
      const Subspace& sd = s[static_cast<std::size_t>(dst)];
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        Matrix a = zeros(sd.dim(), ss.dim());
        for (Index k = 0; k < ss.dim(); ++k) {
          a.col(k) = sd.coordinates(m.action(x, y, h) * ss.basis().row(k).transpose());
        }
        out.set_action(x, y, h, a);
      }
    }
  }
  return out;
}

Module quotient(const Module& m, const Graded& s) {
  if (!is_submodule(m, s)) throw Error(ErrorCode::HypothesisNotSatisfied, "graded subspace is not a submodule");
  const LinCat& c = m.cat();
  std::vector<std::vector<Index>> free;
  std::vector<Index> dims;
  for (const auto& sub : s) {
    free.push_back(sub.free_coordinates());
    dims.push_back(static_cast<Index>(free.back().size()));
  }
  Module out(m.scope_ptr(), m.side(), dims);
  const auto f = m.field();
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      const auto [src, dst] = ends(m, x, y);
      const auto& fs = free[static_cast<std::size_t>(src)];
      const auto& fd = free[static_cast<std::size_t>(dst)];
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        Matrix a = zeros(static_cast<Index>(fd.size()), static_cast<Index>(fs.size()));
        for (std::size_t k = 0; k < fs.size(); ++k) {
          const Vector moved = m.action(x, y, h) * unit_vector(f, m.dim(src), fs[k]);
          const Vector r = s[static_cast<std::size_t>(dst)].reduce(moved);
          for (std::size_t t = 0; t < fd.size(); ++t) a(static_cast<Index>(t), static_cast<Index>(k)) = r(fd[t]);
        }
        out.set_action(x, y, h, a);
      }
    }
  }
  return out;
}

Graded kernel_of(const Module& a, const std::vector<Matrix>& phi) {
  Graded g;
  for (Index x = 0; x < a.cat().size(); ++x) g.push_back(kernel(phi[static_cast<std::size_t>(x)]));
  return g;
}

Graded image_of(const Module& b, const std::vector<Matrix>& phi) {
  Graded g;
  for (Index x = 0; x < b.cat().size(); ++x) {
    const Matrix& p = phi[static_cast<std::size_t>(x)];
    g.push_back(p.cols() == 0 ? Subspace(b.dim(x)) : image(p));
  }
  return g;
}

bool graded_contains(const Graded& big, const Graded& small) {
  for (std::size_t k = 0; k < big.size(); ++k) {
    if (!big[k].contains(small[k])) return false;
  }
  return true;
}

Index graded_dim(const Graded& s) {
  Index d = 0;
  for (const auto& sub : s) d += sub.dim();
  return d;
}

Module representable(std::shared_ptr<const Scope> scope, Side side, Index x0) {
  const LinCat& c = scope->cat();
  std::vector<Index> dims;
  for (Index x = 0; x < c.size(); ++x) dims.push_back(side == Side::Left ? c.hom_dim(x0, x) : c.hom_dim(x, x0));
  Module m(scope, side, dims);
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      for (Index h = 0; h < c.hom_dim(x, y); ++h) {
        if (side == Side::Left) {
          Matrix a = zeros(dims[static_cast<std::size_t>(y)], dims[static_cast<std::size_t>(x)]);
          for (Index j = 0; j < a.cols(); ++j) a.col(j) = c.compose_basis(x0, x, y, h, j);
          m.set_action(x, y, h, a);
        } else {
          Matrix a = zeros(dims[static_cast<std::size_t>(x)], dims[static_cast<std::size_t>(y)]);
          for (Index j = 0; j < a.cols(); ++j) a.col(j) = c.compose_basis(x, y, x0, j, h);
          m.set_action(x, y, h, a);
        }
      }
    }
  }
  return m;
}

Module random_chain_module(std::shared_ptr<const Scope> scope, std::mt19937_64& rng, Index max_dim) {
  const LinCat& c = scope->cat();
  const auto f = c.field();
  std::vector<Index> order(static_cast<std::size_t>(c.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return scope->value(a) < scope->value(b); });
  const Vector one = unit_vector(f, 1, 0);
  bool chain = true;
  for (Index x = 0; x < c.size() && chain; ++x) {
    chain = c.identity(x) == one;
    for (Index y = 0; y < c.size() && chain; ++y) {
      chain = c.hom_dim(x, y) == (scope->value(x) <= scope->value(y) ? 1 : 0);
      for (Index z = 0; z < c.size() && chain; ++z) {
        if (c.hom_dim(x, y) == 1 && c.hom_dim(y, z) == 1) chain = c.compose_basis(x, y, z, 0, 0) == one;
      }
    }
  }
  if (!chain) throw Error(ErrorCode::HypothesisNotSatisfied, "random_chain_module needs a chain category");
  std::uniform_int_distribution<Index> dim_dist(0, max_dim);
  std::uniform_int_distribution<std::uint32_t> coeff(0, 6);
  std::vector<Index> dims(static_cast<std::size_t>(c.size()));
  for (Index x = 0; x < c.size(); ++x) dims[static_cast<std::size_t>(x)] = dim_dist(rng);
  // step[k]: map from order[k] to order[k+1].
  std::vector<Matrix> step;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const Index from = dims[static_cast<std::size_t>(order[k])];
    const Index to = dims[static_cast<std::size_t>(order[k + 1])];
    Matrix s(to, from);
    for (Index r = 0; r < to; ++r) {
      for (Index col = 0; col < from; ++col) s(r, col) = Scalar::from_int(f, coeff(rng) % (f.is_rational() ? 3 : f.characteristic()));
    }
    step.push_back(s);
  }
  Module m(scope, Side::Left, dims);
  for (std::size_t i = 0; i < order.size(); ++i) {
    Matrix acc = identity(f, dims[static_cast<std::size_t>(order[i])]);
    const Index x = order[i];
    m.set_action(x, x, 0, acc);
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      acc = Matrix(step[j - 1] * acc);
      m.set_action(x, order[j], 0, acc);
    }
  }
  return m;
}

}  // namespace locfin
