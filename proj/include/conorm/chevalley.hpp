#pragma once

// Chevalley structure constants by the extraspecial-pair method, and
// propagation of automorphism scalars from simple root vectors to all root
// vectors.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "conorm/exact_lattice.hpp"
#include "conorm/root_datum.hpp"

namespace conorm {

class StructureConstants {
 public:
  StructureConstants() = default;

  const BasedRootDatum& base() const { return base_; }
  /// Positive roots ordered by height, then by simple-root coordinates in
  /// decreasing lexicographic order (so alpha_1 < alpha_2 < ...).
  const std::vector<std::size_t>& order() const { return order_; }
  /// Position of a positive root in order(); nullopt for negative roots.
  std::optional<std::size_t> position(std::size_t root) const;

  /// N(root i, root j): [e_i, e_j] = N e_{i+j}.  Zero when i + j is not a root.
  std::int64_t operator()(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  /// Extraspecial pair of a non-simple positive root.
  std::optional<std::pair<std::size_t, std::size_t>> extraspecial_pair(std::size_t root) const;
  /// Largest p with root(j) - p*root(i) a root.
  std::int64_t string_below(std::size_t i, std::size_t j) const;
  const Rational& squared_length(std::size_t i) const { return lengths_[i]; }

  friend StructureConstants build_structure_constants(const BasedRootDatum& base);

 private:
  BasedRootDatum base_;
  std::size_t n_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_;  // n_ for negative roots
  std::vector<std::int64_t> table_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> extraspecial_;
  std::vector<Rational> lengths_;
};

/// Signs +(p+1) on extraspecial pairs; all other constants follow from the
/// Chevalley relations.  Works for any datum (a torus gives an empty table).
StructureConstants build_structure_constants(const BasedRootDatum& base);

/// Permutation of root indices induced by a lattice automorphism of X.
/// Throws InvalidArgument if d does not preserve the root set.
std::vector<std::size_t> root_permutation(const RootDatum& rd, const LatticeMap& d);

/// Exponents c(alpha) in Q/Z with phi(e_alpha) = zeta^{c(alpha)} e_{d(alpha)}
/// for the automorphism with diagram part d and the given exponents on the
/// simple root vectors.  Indexed by root.  Throws InvalidArgument if d does
/// not permute the simple roots.
std::vector<QmodZ> propagate_scalars(const StructureConstants& sc, const LatticeMap& d,
                                     const std::vector<QmodZ>& simple_scalars);

/// Pinned case: all simple exponents zero.
std::vector<QmodZ> propagate_scalars(const StructureConstants& sc, const LatticeMap& d);

}  // namespace conorm
