#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "locfin/lift.hpp"

namespace locfin {

/// Off-diagonal data of a block upper-triangular module structure on
/// P(o) + Q(o). blocks[{x,y,a}] is c_a: Q(x) -> P(y) for a left module and
/// Q(y) -> P(x) for a right module, with a a basis morphism of Hom(x,y).
struct Cocycle {
  Module sub;
  Module quot;
  std::map<std::array<Index, 3>, Matrix> blocks;

  /// Zero matrix of the right shape if absent.
  Matrix block(Index x, Index y, Index a) const;
  /// Throws DimensionMismatch.
  void set_block(Index x, Index y, Index a, Matrix m);
};

/// c_{g f} = p_g c_f + c_g q_f (left; mirrored for right modules) and
/// c_{id} = 0. The witness names the failing pair.
Verdict check_cocycle(const Cocycle& c);

/// All cocycles between sub and quot, as a subspace of the concatenated
/// block entries (keys in (x,y,a) order, each block row-major).
Subspace cocycle_space(const Module& sub, const Module& quot);
Cocycle cocycle_from_vector(const Module& sub, const Module& quot, const Vector& v);
/// Random combination of a basis of cocycle_space.
Cocycle random_cocycle(const Module& sub, const Module& quot, std::mt19937_64& rng);

struct ShortExactSeq {
  Module sub;
  Module mid;
  Module quot;
  std::vector<Matrix> inject;
  std::vector<Matrix> surject;
};

/// Exactness per object and naturality of both maps.
Verdict validate_sequence(const ShortExactSeq& s);

/// Throws CocycleViolated.
ShortExactSeq build_extension(const Cocycle& c);

/// 0 -> Q* -> T* -> P* -> 0 for 0 -> P -> T -> Q -> 0.
ShortExactSeq dualize_sequence(const ShortExactSeq& s);

enum class ClosureKind { ContrafiniteLeft, CofiniteRight, ComoduleImageRight };

std::string_view to_string(ClosureKind k);
/// Throws Usage on unknown names.
ClosureKind closure_kind_from_string(std::string_view s);

/// Decides whether mid satisfies the predicate that sub and quot satisfy.
/// For ContrafiniteLeft on a certified left strict scope the sets A_{T,y}
/// are also checked against the bound {y}~ + W_y^(m) built from the
/// standard frontiers. Throws HypothesisNotSatisfied if sub or quot fails
/// the predicate.
Verdict closure_test(ClosureKind kind, const ShortExactSeq& s);

/// Random submodules (kernels of random endomorphisms), their quotients and
/// pairwise direct sums of comodule-liftable modules must stay liftable.
Verdict sub_quot_sum_closure_test(const std::vector<Module>& family, std::uint64_t seed, int samples = 4);

/// Submodules generated by the first j standard basis vectors (objects in
/// order), keeping the terms where the chain grows. The last term is m.
std::vector<Graded> locally_finite_filtration(const Module& m);

/// Right modules on the zneg window lo..-1 (lo <= -2): k at every -n with
/// n >= 2, extended by k at -1 along f: -n -> -1 with c_f = 1. Sub and quot
/// carry finite declared supports; the middle term does not.
ShortExactSeq zneg_comodule_image_counterexample(long lo, FieldDescriptor f = FieldDescriptor::prime(2));

struct ExtTrialSummary {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  nlohmann::json counterexample;  // null when none
  nlohmann::json to_json() const;
};

/// Seeded random trials over F_2 zchain windows -N..N (N = 1..5): random
/// contrafinite pairs, random cocycle, closure_test on the extension.
/// CofiniteRight runs on the dual sequences. ComoduleImageRight runs the
/// zneg construction on growing windows. Trial t uses seed + t.
ExtTrialSummary run_ext_trials(ClosureKind kind, int trials, std::uint64_t seed);

}  // namespace locfin
