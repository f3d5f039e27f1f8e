#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "locfin/coalg.hpp"
#include "locfin/frontier.hpp"

namespace locfin {

/// The E-module underlying a comodule: basis morphism a of Hom(x,y) acts by
/// the slice of the coaction block at the dual basis vector a.
Module upsilon(const Comodule& m);
/// The E-module underlying a contramodule: the contraaction restricted to
/// the summand Hom(C^{x,y}, P^x).
Module theta(const Contramodule& p);

enum class LiftDecision { Liftable, NotLiftable, WindowLeak };

std::string_view to_string(LiftDecision d);

struct LiftReport {
  LiftDecision decision = LiftDecision::Liftable;
  std::string target;
  /// Per object o, the objects linked to o by a nonzero action block: Y_x for
  /// left comodule lifts, Z_y for left contramodule lifts (ids).
  std::map<std::string, std::vector<std::string>> supports;
  nlohmann::json witness = nlohmann::json::object();
  std::vector<std::string> flags;
  std::optional<Comodule> comodule;
  std::optional<Contramodule> contramodule;

  nlohmann::json to_json() const;
};

/// On windows, a declared infinite support refutes the lift and a support
/// touching an open window end without declaration gives WindowLeak.
/// Throws HypothesisNotSatisfied if m is not a module.
LiftReport lift_to_comodule(const Module& m);
/// As above; a declared infinite Z_y refutes the lift only on left strict scopes.
LiftReport lift_to_contramodule(const Module& m);

/// How supports beyond a window are judged.
///   Declared: the module generator's forward/backward metadata.
///   Window: the window data; supports reaching an open end are inconclusive.
///   Continue: the module pulled back along the scope's retraction, so the
///     boundary objects repeat forever.
///   Auto: Declared when the module has a generator, Window otherwise.
enum class SupportPolicy { Auto, Declared, Window, Continue };

/// {x : Hom(x,y) acts nonzero} for every y, on the window.
std::vector<std::vector<Index>> source_sets(const Module& m);

/// Left modules only. Certified verdicts carry the sets A_{P,y} as "A".
Verdict is_contrafinite(const Module& p, SupportPolicy policy = SupportPolicy::Auto);
/// Right modules only; same sets with the actions N(y) -> N(x).
Verdict is_cofinite(const Module& n, SupportPolicy policy = SupportPolicy::Auto);

/// Pullback of m along the retraction of scope.enlarged(layers) onto the window.
/// Throws HypothesisNotSatisfied if the scope has no retraction.
Module continued_module(const Module& m, long layers);

/// A submodule q of m is big when m/q is contrafinite (Continue policy).
bool is_big_submodule(const Module& m, const Graded& q);
/// Smallest big submodule: tail limits of the action images, closed under
/// the action, then checked to be big. Throws NotLocallyFinite.
Graded minimal_big_submodule(const Module& m);

/// Componentwise transpose; flips the side.
Module dualize_module(const Module& n);
/// Right comodule N to the left contramodule N^* (and left to right).
Contramodule dualize_comodule(const Comodule& n);
/// Right comodule N with dualize_comodule(N) == p. Throws
/// HypothesisNotCertified unless the scope is certified left strict.
Comodule anti_equivalence_roundtrip(const Contramodule& p);

/// Searches random modules on a window for an object y with finite-dimensional
/// P(y) whose source set is not finite. Reports counts only.
nlohmann::json y_contrafinite_experiment(std::shared_ptr<const Scope> scope, std::uint64_t seed, int trials);

}  // namespace locfin
