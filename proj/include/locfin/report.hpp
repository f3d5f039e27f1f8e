#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace locfin {

/// One row of the gallery claims table: a statement about a gallery entry,
/// the verdict it should produce and the verdict computed now.
struct ClaimCheck {
  std::string name;
  std::string statement;
  std::string expected;
  std::string computed;
  nlohmann::json detail = nlohmann::json::object();

  bool ok() const { return expected == computed; }
};

std::vector<ClaimCheck> gallery_claims();
/// {"schema_version", "claims": [...], "all_ok"}.
nlohmann::json claims_report();

}  // namespace locfin
