#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace locfin {

enum class Status { Certified, Refuted, Inconclusive };

std::string_view to_string(Status s);

/// Outcome of a decision procedure. Refutations carry a witness; verdicts
/// obtained on a finite window say so in `note`.
struct Verdict {
  Status status = Status::Certified;
  nlohmann::json witness = nlohmann::json::object();
  std::string note;

  static Verdict certified(nlohmann::json witness = nlohmann::json::object(), std::string note = {}) {
    return {Status::Certified, std::move(witness), std::move(note)};
  }
  static Verdict refuted(nlohmann::json witness, std::string note = {}) {
    return {Status::Refuted, std::move(witness), std::move(note)};
  }
  static Verdict inconclusive(std::string note, nlohmann::json witness = nlohmann::json::object()) {
    return {Status::Inconclusive, std::move(witness), std::move(note)};
  }

  bool is_certified() const noexcept { return status == Status::Certified; }
  bool is_refuted() const noexcept { return status == Status::Refuted; }
  bool is_inconclusive() const noexcept { return status == Status::Inconclusive; }

  nlohmann::json to_json() const;
};

}  // namespace locfin
