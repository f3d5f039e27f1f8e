#include "locfin/io.hpp"

#include <cstdio>

#include "locfin/coalg.hpp"
#include "locfin/error.hpp"
#include "locfin/gallery.hpp"
#include "locfin/lincat.hpp"
#include "locfin/module.hpp"

namespace locfin {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string join_key(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) {
    if (!out.empty()) out += '|';
    out += p;
  }
  return out;
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto bar = key.find('|', start);
    out.push_back(key.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

json to_json(const Scalar& s, FieldDescriptor f) {
  const Scalar t = s.in(f);
  if (f.is_prime()) return t.residue();
  return t.to_string();
}

json to_json(const Vector& v, FieldDescriptor f) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k), f));
  return out;
}

json to_json(const Matrix& m, FieldDescriptor f) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c), f));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedPresentation, what); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key '") + key + "'");
  return j.at(key);
}

Index as_index(const json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<Index>();
}

}  // namespace

Scalar scalar_from_json(const json& j, FieldDescriptor f) {
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<std::int64_t>());
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  malformed("scalar must be an integer or a \"num/den\" string");
}

Vector vector_from_json(const json& j, FieldDescriptor f) {
  if (!j.is_array()) malformed("vector must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Index>(k)) = scalar_from_json(j[k], f);
  return v;
}

Matrix matrix_from_json(const json& j, FieldDescriptor f, Index rows, Index cols) {
  if (!j.is_array()) malformed("matrix must be an array of rows");
  if ((rows == 0 || cols == 0) && j.empty()) return zeros(rows, cols);
  if (static_cast<Index>(j.size()) != rows) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorCode::DimensionMismatch, "expected rows of length " + std::to_string(cols));
    }
    for (Index c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row[static_cast<std::size_t>(c)], f);
  }
  return m;
}

json field_to_json(FieldDescriptor f) {
  if (f.is_rational()) return "Q";
  return {{"Fp", f.characteristic()}};
}

FieldDescriptor field_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Q") return FieldDescriptor::rationals();
    if (s.size() > 1 && s[0] == 'F') {
      const auto digits = s.substr(s[1] == '_' ? 2 : 1);
      try {
        return FieldDescriptor::prime(static_cast<std::uint32_t>(std::stoul(digits)));
      } catch (const std::logic_error&) {
      }
    }
    malformed("unknown field '" + s + "'");
  }
  if (j.is_object() && j.contains("Fp") && j.at("Fp").is_number_unsigned()) {
    return FieldDescriptor::prime(j.at("Fp").get<std::uint32_t>());
  }
  malformed("field must be \"Q\" or {\"Fp\": p}");
}

json category_to_json(const LinCat& c) {
  const auto f = c.field();
  json hom = json::object();
  json compose = json::object();
  json ident = json::object();
  for (Index x = 0; x < c.size(); ++x) {
    ident[c.object(x)] = to_json(c.identity(x), f);
    for (Index y = 0; y < c.size(); ++y) {
      if (c.hom_dim(x, y) > 0) hom[join_key({c.object(x), c.object(y)})] = c.hom_dim(x, y);
      for (Index z = 0; z < c.size(); ++z) {
        const Tensor3& t = c.compose_tensor(x, y, z);
        if (t.empty()) continue;
        json entries = json::array();
        for (const auto& e : t.entries()) entries.push_back({e.i, e.j, e.l, to_json(e.value, f)});
        compose[join_key({c.object(x), c.object(y), c.object(z)})] = std::move(entries);
      }
    }
  }
  return {{"schema_version", kSchemaVersion}, {"field", field_to_json(f)}, {"objects", c.objects()},
          {"hom", hom},  {"compose", compose},  {"identity", ident},
          {"fingerprint", hex64(c.fingerprint())}};
}

LinCat category_from_json(const json& j) {
  Presentation p;
  p.field = field_from_json(require(j, "field"));
  const json& objs = require(j, "objects");
  if (!objs.is_array()) malformed("objects must be an array");
  for (const auto& o : objs) {
    if (!o.is_string()) malformed("object ids must be strings");
    p.objects.push_back(o.get<std::string>());
  }
  if (j.contains("hom")) {
    for (const auto& [key, d] : j.at("hom").items()) {
      const auto parts = split_key(key);
      if (parts.size() != 2) malformed("hom key '" + key + "' must be \"x|y\"");
      p.hom[{parts[0], parts[1]}] = as_index(d, "Hom dimension");
    }
  }
  auto hom_of = [&](const std::string& x, const std::string& y) -> Index {
    auto it = p.hom.find({x, y});
    return it == p.hom.end() ? 0 : it->second;
  };
  if (j.contains("compose")) {
    for (const auto& [key, entries] : j.at("compose").items()) {
      const auto parts = split_key(key);
      if (parts.size() != 3) malformed("compose key '" + key + "' must be \"x|y|z\"");
      if (!entries.is_array()) malformed("compose entries must be an array");
      std::vector<Tensor3::Entry> list;
      for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 4) malformed("compose entry must be [i, j, l, value]");
        list.push_back({as_index(e[0], "i"), as_index(e[1], "j"), as_index(e[2], "l"), scalar_from_json(e[3], p.field)});
      }
      p.compose[{parts[0], parts[1], parts[2]}] = Tensor3::from_entries(
          {hom_of(parts[1], parts[2]), hom_of(parts[0], parts[1]), hom_of(parts[0], parts[2])}, std::move(list));
    }
  }
  for (const auto& [key, v] : require(j, "identity").items()) p.identity[key] = vector_from_json(v, p.field);
  return LinCat(p);
}

json scope_reference(const Scope& s) {
  if (s.is_window() && !s.is_opposite()) {
    return {{"category", "gallery:" + s.generator()->name()},
            {"window", std::to_string(s.lo()) + ".." + std::to_string(s.hi())}};
  }
  return {{"category", category_to_json(s.cat())}};
}

std::shared_ptr<const Scope> scope_from_reference(const json& j, std::shared_ptr<const Scope> fallback) {
  if (!j.contains("category")) {
    if (!fallback) malformed("document names no category");
    return fallback;
  }
  const json& c = j.at("category");
  if (c.is_object()) return Scope::finite(category_from_json(c));
  if (c.is_string()) {
    const auto s = c.get<std::string>();
    if (s.rfind("gallery:", 0) == 0) {
      const FieldDescriptor f = j.contains("field") ? field_from_json(j.at("field")) : FieldDescriptor();
      return gallery_instantiate(s.substr(8), j.value("window", std::string()), f);
    }
    if (fallback) return fallback;
  }
  malformed("category must be an embedded category or \"gallery:<name>\"");
}

namespace {

Side side_from_json(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  malformed("side must be \"left\" or \"right\"");
}

std::vector<Index> dims_from_json(const json& j, const LinCat& c) {
  std::vector<Index> dims(static_cast<std::size_t>(c.size()), 0);
  for (const auto& [key, d] : j.items()) dims[static_cast<std::size_t>(c.index_of(key))] = as_index(d, "dimension");
  return dims;
}

json dims_to_json(const std::vector<Index>& dims, const LinCat& c) {
  json out = json::object();
  for (Index x = 0; x < c.size(); ++x) out[c.object(x)] = dims[static_cast<std::size_t>(x)];
  return out;
}

}  // namespace

json module_to_json(const Module& m) {
  const LinCat& c = m.cat();
  const auto f = m.field();
  json action = json::object();
  for (Index x = 0; x < c.size(); ++x) {
    for (Index y = 0; y < c.size(); ++y) {
      if (c.hom_dim(x, y) == 0) continue;
      json list = json::array();
      for (Index a = 0; a < c.hom_dim(x, y); ++a) list.push_back(to_json(m.action(x, y, a), f));
      action[join_key({c.object(x), c.object(y)})] = std::move(list);
    }
  }
  json out = scope_reference(m.scope());
  out["schema_version"] = kSchemaVersion;
  out["field"] = field_to_json(f);
  out["side"] = std::string(to_string(m.side()));
  out["dims"] = dims_to_json(m.dims(), c);
  out["action"] = std::move(action);
  if (m.declared()) out["declared"] = m.declared()->name();
  return out;
}

Module module_from_json(const json& j, std::shared_ptr<const Scope> scope) {
  auto s = scope_from_reference(j, std::move(scope));
  const LinCat& c = s->cat();
  Module m(s, side_from_json(require(j, "side")), dims_from_json(require(j, "dims"), c));
  const auto f = c.field();
  if (j.contains("action")) {
    for (const auto& [key, list] : j.at("action").items()) {
      const auto parts = split_key(key);
      if (parts.size() != 2) malformed("action key '" + key + "' must be \"x|y\"");
      const Index x = c.index_of(parts[0]);
      const Index y = c.index_of(parts[1]);
      if (!list.is_array() || static_cast<Index>(list.size()) != c.hom_dim(x, y)) {
        throw Error(ErrorCode::DimensionMismatch, "action " + key + " needs one matrix per basis morphism");
      }
      const Index rows = m.side() == Side::Left ? m.dim(y) : m.dim(x);
      const Index cols = m.side() == Side::Left ? m.dim(x) : m.dim(y);
      for (Index a = 0; a < c.hom_dim(x, y); ++a) {
        m.set_action(x, y, a, matrix_from_json(list[static_cast<std::size_t>(a)], f, rows, cols));
      }
    }
  }
  if (j.contains("declared")) m.set_declared(gallery_module(j.at("declared").get<std::string>(), f));
  return m;
}

json coalgebra_to_json(const GradedCoalgebra& g) {
  const auto f = g.field();
  json components = json::object();
  json counit = json::object();
  json comult = json::object();
  for (Index x = 0; x < g.size(); ++x) {
    if (g.counital()) counit[g.object(x)] = to_json(g.counit(x), f);
    for (Index y = 0; y < g.size(); ++y) {
      if (g.dim(x, y) > 0) components[join_key({g.object(x), g.object(y)})] = g.dim(x, y);
      for (Index z = 0; z < g.size(); ++z) {
        const Tensor3& t = g.comult(x, z, y);
        if (t.empty()) continue;
        json entries = json::array();
        for (const auto& e : t.entries()) entries.push_back({e.i, e.j, e.l, to_json(e.value, f)});
        comult[join_key({g.object(x), g.object(z), g.object(y)})] = std::move(entries);
      }
    }
  }
  json out = scope_reference(g.scope());
  out["schema_version"] = kSchemaVersion;
  out["field"] = field_to_json(f);
  out["counital"] = g.counital();
  out["components"] = std::move(components);
  out["counit"] = std::move(counit);
  out["comult"] = std::move(comult);
  return out;
}

namespace {

template <typename M>
json structure_to_json(const M& m, const char* key) {
  const GradedCoalgebra& g = m.coalgebra();
  const auto f = g.field();
  json blocks = json::object();
  for (const auto& [xy, block] : m.blocks()) blocks[join_key({g.object(xy.first), g.object(xy.second)})] = to_json(block, f);
  json support = json::array();
  for (const auto& [x, y] : m.support()) support.push_back(join_key({g.object(x), g.object(y)}));
  json out = json::object();
  out["schema_version"] = kSchemaVersion;
  out["field"] = field_to_json(f);
  out["side"] = std::string(to_string(m.side()));
  out["dims"] = dims_to_json(m.dims(), g.scope().cat());
  out[key] = std::move(blocks);
  out["support"] = std::move(support);
  return out;
}

template <typename M>
M structure_from_json(const json& j, std::shared_ptr<const GradedCoalgebra> c, const char* key) {
  const LinCat& cat = c->scope().cat();
  M m(c, side_from_json(require(j, "side")), dims_from_json(require(j, "dims"), cat));
  auto pair_of = [&](const std::string& k) {
    const auto parts = split_key(k);
    if (parts.size() != 2) malformed("block key '" + k + "' must be \"x|y\"");
    return std::pair{cat.index_of(parts[0]), cat.index_of(parts[1])};
  };
  if (j.contains(key)) {
    for (const auto& [k, block] : j.at(key).items()) {
      const auto [x, y] = pair_of(k);
      const Matrix zero = m.block(x, y);
      m.set_block(x, y, matrix_from_json(block, c->field(), zero.rows(), zero.cols()));
    }
  }
  if (j.contains("support")) {
    std::set<std::pair<Index, Index>> s;
    for (const auto& k : j.at("support")) s.insert(pair_of(k.get<std::string>()));
    m.declare_support(std::move(s));
  }
  return m;
}

}  // namespace

json comodule_to_json(const Comodule& m) { return structure_to_json(m, "coaction"); }

Comodule comodule_from_json(const json& j, std::shared_ptr<const GradedCoalgebra> c) {
  return structure_from_json<Comodule>(j, std::move(c), "coaction");
}

json contramodule_to_json(const Contramodule& m) { return structure_to_json(m, "contraaction"); }

Contramodule contramodule_from_json(const json& j, std::shared_ptr<const GradedCoalgebra> c) {
  return structure_from_json<Contramodule>(j, std::move(c), "contraaction");
}

}  // namespace locfin
