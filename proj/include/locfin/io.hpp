#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "locfin/linalg.hpp"

namespace locfin {

class LinCat;
class Module;
class Scope;
class GradedCoalgebra;
class Comodule;
class Contramodule;

inline constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t v);

/// Rationals as "num/den" strings, F_p values as integers.
nlohmann::json to_json(const Scalar& s, FieldDescriptor f);
nlohmann::json to_json(const Vector& v, FieldDescriptor f);
/// Row-major list of rows.
nlohmann::json to_json(const Matrix& m, FieldDescriptor f);

Scalar scalar_from_json(const nlohmann::json& j, FieldDescriptor f);
Vector vector_from_json(const nlohmann::json& j, FieldDescriptor f);
/// Expects `rows` rows of `cols` entries; an empty list is accepted when either is 0.
Matrix matrix_from_json(const nlohmann::json& j, FieldDescriptor f, Index rows, Index cols);

nlohmann::json field_to_json(FieldDescriptor f);
FieldDescriptor field_from_json(const nlohmann::json& j);

nlohmann::json category_to_json(const LinCat& c);
LinCat category_from_json(const nlohmann::json& j);

/// {"category": "gallery:<name>", "window": "lo..hi"} for gallery windows,
/// the embedded category otherwise.
nlohmann::json scope_reference(const Scope& s);
/// Reads the reference written by scope_reference; returns fallback when the
/// document names no category.
std::shared_ptr<const Scope> scope_from_reference(const nlohmann::json& j, std::shared_ptr<const Scope> fallback);

nlohmann::json module_to_json(const Module& m);
/// `scope` is used when the document names no category of its own.
Module module_from_json(const nlohmann::json& j, std::shared_ptr<const Scope> scope);

nlohmann::json coalgebra_to_json(const GradedCoalgebra& c);
nlohmann::json comodule_to_json(const Comodule& m);
Comodule comodule_from_json(const nlohmann::json& j, std::shared_ptr<const GradedCoalgebra> c);
nlohmann::json contramodule_to_json(const Contramodule& m);
Contramodule contramodule_from_json(const nlohmann::json& j, std::shared_ptr<const GradedCoalgebra> c);

/// Key "a|b|c" for object tuples.
std::string join_key(std::initializer_list<std::string_view> parts);
std::vector<std::string> split_key(const std::string& key);

}  // namespace locfin
