#pragma once

// Norm and conorm maps as integer matrices, and isogenies stored by their
// character pullback.
//
// Coordinates: the dual torus T^* of the fixed group has cocharacter lattice
// X^*(T) (coinvariant coordinates of the fold) and the dual torus of the
// source group has cocharacter lattice X^*(T~) = Z^n.  The identifications
// with the dual data are the identity on these coordinates.

#include <string>
#include <vector>

#include "conorm/folding.hpp"

namespace conorm {

struct NormData {
  GammaAction action;
  FoldedDatum folded;
  LatticeMap norm_on_cochar;  // n x n, lambda -> sum_g g.lambda; image in X_v(T)
  LatticeMap norm_pullback;   // n x m, chi -> sum_g g.(any lift of chi)
};

struct ConormData {
  NormData norm;
  LatticeMap conorm_matrix;  // n x m, X_v(T^*) -> X_v(T~^*)

  std::size_t source_rank() const { return conorm_matrix.domain_rank(); }
  std::size_t target_rank() const { return conorm_matrix.codomain_rank(); }
};

NormData build_norm(const GammaAction& a);
NormData build_norm(const FoldedDatum& f);
ConormData build_conorm(const GammaAction& a);
ConormData build_conorm(const FoldedDatum& f);

/// norm_pullback kills the coinvariant relations (so it is independent of
/// the lift) and <pullback(chi), lambda> = <chi, norm(lambda)> on all
/// generators.  Returns the violations.
ValidationReport check_norm(const NormData& n);

/// Character pullback F: X^*(target) -> X^*(source) of a central isogeny
/// source -> target.
struct Isogeny {
  RootDatum source;
  RootDatum target;
  LatticeMap char_pullback;
  std::string name;
};

/// Injective, finite cokernel, roots of the target onto roots of the source
/// and source coroots onto target coroots.
ValidationReport validate_isogeny(const Isogeny& phi);
/// Order of the kernel (the cokernel of the pullback).
Integer isogeny_degree(const Isogeny& phi);
Isogeny identity_isogeny(const RootDatum& rd);
/// Isogeny between the dual data, direction reversed.
Isogeny dual_isogeny(const Isogeny& phi);

/// Quotient of a based datum by the central subgroup cut out by a
/// sublattice M (columns) of X containing all roots: X' = M Z^k.
BasedRootDatum central_quotient(const BasedRootDatum& b, const LatticeMap& m);
/// The isogeny b -> central_quotient(b, m).
Isogeny quotient_isogeny(const BasedRootDatum& b, const LatticeMap& m, std::string name = "");
/// Push an action through the quotient: diagrams M^{-1} D M, twists M^T t.
/// Throws InvalidArgument if M Z^k is not stable.
GammaAction quotient_action(const GammaAction& a, const LatticeMap& m);

/// Is the isogeny equivariant for the two actions (same group, F D'_g =
/// D_g F and matching twist pairings on the target roots)?
bool is_equivariant(const GammaAction& source, const GammaAction& target, const Isogeny& phi);

struct IsogenySquareReport {
  LatticeMap lhs;  // phi~^ o conorm'   (on X^*(T'))
  LatticeMap rhs;  // conorm o phi^     (on X^*(T'))
  LatticeMap folded_pullback;  // induced isogeny of the fixed groups
  bool equal = false;
};

/// Throws InvalidArgument if phi is not equivariant.
IsogenySquareReport verify_isogeny_square(const GammaAction& source, const GammaAction& target,
                                          const Isogeny& phi);

}  // namespace conorm
