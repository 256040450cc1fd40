#pragma once

// Root datum of the identity component of the fixed points of a group
// action, and comparisons of restricted roots.

#include <cstddef>
#include <optional>
#include <vector>

#include "conorm/gamma_action.hpp"

namespace conorm {

struct FoldProvenance {
  std::vector<std::size_t> source_roots;  // surviving source roots restricting here
  std::vector<std::size_t> orbit;         // orbit of the first of them
  std::int64_t multiplier = 1;            // c in beta^v = c * (orbit sum of coroots)
};

/// X^*(T) is the free coinvariant quotient of X^*(T~) (coordinates Z^m via
/// `restriction`), X_v(T) = X_v(T~)^Gamma with basis the columns of
/// `corestriction`; the two are in perfect duality.
struct FoldedDatum {
  GammaAction source;
  BasedRootDatum fixed;
  LatticeMap restriction;    // m x n
  LatticeMap corestriction;  // n x m
  std::vector<FoldProvenance> provenance;  // indexed by root of `fixed`
};

FoldedDatum fold(const GammaAction& a);

/// i^* x = (1/|Gamma|) sum_g g(x), a Gamma-invariant rational vector.
RatVector averaged_restriction(const GammaAction& a, const Vec& x);

/// Source roots that survive folding (every element of the stabilizer acts
/// trivially on the root space).
std::vector<bool> surviving_roots(const GammaAction& a);

struct RestrictedRootComparison {
  std::vector<RatVector> phi;             // restricted roots of the action
  std::vector<RatVector> phi_pinned;      // ... of its pinned projection
  std::vector<RatVector> phi_pinned_short;
  bool phi_in_pinned = true;
  bool pinned_short_in_phi = true;
  std::optional<RatVector> inclusion_witness;  // in phi, not in phi_pinned
  std::optional<RatVector> short_witness;      // short in phi_pinned, not in phi
  StabilizerReport hypothesis;
};

RestrictedRootComparison restricted_root_comparison(const GammaAction& a);

/// Dual roots (folded coroots) compared on the shared cocharacter lattice
/// X_v(T), in basis coordinates.
struct DualLengthComparison {
  std::vector<Vec> dual;               // coroots of fold(a)
  std::vector<Vec> dual_pinned;        // coroots of fold(pinned_projection(a))
  std::vector<Vec> dual_pinned_long;
  bool long_in_dual = true;
  bool dual_in_pinned = true;
  bool two_lengths = false;
  bool sandwich() const { return long_in_dual && dual_in_pinned; }
};

/// Throws InvalidArgument unless every component stabilizer is cyclic and
/// faithful and at least one acts nontrivially.
DualLengthComparison dual_length_comparison(const GammaAction& a);

/// For each folded simple reflection, search the Gamma-fixed source Weyl
/// elements (|W| <= cap) for one inducing it on X^*(T).  Returns the number
/// of folded simple reflections that were matched.
std::size_t weyl_embedding_matches(const FoldedDatum& f, std::size_t cap = 10'000);

/// Restrictions of Gamma-orbits of source simple roots that survive.
std::vector<Vec> restricted_simple_orbits(const FoldedDatum& f);

}  // namespace conorm
