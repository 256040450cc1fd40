#pragma once

// Root data, based root data, Weyl groups, invariant forms and Cartan-type
// recognition.  Roots live in X = Z^rank and coroots in the dual lattice
// X^v = Z^rank; the pairing is the standard dot product.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "conorm/exact_lattice.hpp"

namespace conorm {

class RootDatum {
 public:
  RootDatum() = default;
  /// Roots and coroots are index-aligned.  Only shapes are checked here;
  /// use validate() for the root-datum axioms.
  RootDatum(std::size_t rank, std::vector<Vec> roots, std::vector<Vec> coroots);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return roots_.size(); }
  const std::vector<Vec>& roots() const { return roots_; }
  const std::vector<Vec>& coroots() const { return coroots_; }
  const Vec& root(std::size_t i) const { return roots_[i]; }
  const Vec& coroot(std::size_t i) const { return coroots_[i]; }

  std::optional<std::size_t> find_root(const Vec& v) const;
  std::optional<std::size_t> find_coroot(const Vec& v) const;
  /// Index of -root(i); the datum must be closed under negation.
  std::size_t negative(std::size_t i) const;

  /// Same datum, roots permuted into a canonical (lexicographic) order.
  RootDatum sorted() const;

  friend bool operator==(const RootDatum& a, const RootDatum& b) {
    return a.rank_ == b.rank_ && a.roots_ == b.roots_ && a.coroots_ == b.coroots_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Vec> roots_;
  std::vector<Vec> coroots_;
  std::unordered_map<Vec, std::size_t, VecHash> root_index_;
  std::unordered_map<Vec, std::size_t, VecHash> coroot_index_;
};

/// Report-valued validation result.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const RootDatum& rd);

/// Root datum together with a base.  Construction checks that the chosen
/// roots form a base and precomputes simple-root coordinates, heights and
/// the decomposition into irreducible components.
class BasedRootDatum {
 public:
  BasedRootDatum() = default;
  BasedRootDatum(RootDatum datum, std::vector<std::size_t> simple_indices);

  const RootDatum& datum() const { return datum_; }
  std::size_t rank() const { return datum_.rank(); }
  const std::vector<std::size_t>& simple_indices() const { return simple_; }
  std::size_t semisimple_rank() const { return simple_.size(); }
  const Vec& simple_root(std::size_t k) const { return datum_.root(simple_[k]); }
  const Vec& simple_coroot(std::size_t k) const { return datum_.coroot(simple_[k]); }

  /// Coordinates of root i in the simple roots.
  const Vec& coordinates(std::size_t i) const { return coords_[i]; }
  std::int64_t height(std::size_t i) const;
  bool is_positive(std::size_t i) const { return positive_[i]; }
  /// Position of root i among the simple roots, or nullopt.
  std::optional<std::size_t> simple_position(std::size_t i) const;
  std::vector<std::size_t> positive_roots() const;

  /// Cartan matrix a_ij = <alpha_j, alpha_i^v>.
  const std::vector<Vec>& cartan_matrix() const { return cartan_; }
  /// Irreducible components as lists of simple positions.
  const std::vector<std::vector<std::size_t>>& components() const { return components_; }
  /// Component index of root i.
  std::size_t component_of(std::size_t i) const { return component_of_root_[i]; }
  /// Root indices in component c.
  std::vector<std::size_t> component_roots(std::size_t c) const;

 private:
  RootDatum datum_;
  std::vector<std::size_t> simple_;
  std::vector<Vec> coords_;
  std::vector<bool> positive_;
  std::vector<Vec> cartan_;
  std::vector<std::vector<std::size_t>> components_;
  std::vector<std::size_t> component_of_root_;
};

/// Standard base: positive roots are those whose first nonzero coordinate is
/// positive; simple roots are the indecomposable positive roots, ordered by
/// root index.
BasedRootDatum standard_base(const RootDatum& rd);

/// Weyl group element: its action on X and its canonical reduced word
/// (lexicographically least, from breadth-first generation).
struct WeylElement {
  SmallMatrix action;
  std::vector<std::size_t> word;  // simple positions; matrix = s_{w0} s_{w1} ...

  LatticeMap matrix() const { return action.to_lattice_map(); }
  std::size_t length() const { return word.size(); }
};

inline constexpr std::size_t kDefaultWeylCap = 1'000'000;

/// Simple reflection s_k as a matrix acting on X.
SmallMatrix simple_reflection(const BasedRootDatum& b, std::size_t k);

/// All Weyl group elements in breadth-first order (by length, then word).
/// Throws WeylCapExceeded if the group is larger than `cap`.
std::vector<WeylElement> weyl_group(const BasedRootDatum& b, std::size_t cap = kDefaultWeylCap);
std::vector<WeylElement> weyl_group(const RootDatum& rd, std::size_t cap = kDefaultWeylCap);

using RationalMatrix = std::vector<RatVector>;

/// W-invariant positive semidefinite form on X (x) Q, positive definite on
/// the root span, normalized so long roots of every component have squared
/// length 2.
RationalMatrix invariant_inner_product(const RootDatum& rd);
Rational form_value(const RationalMatrix& form, const Vec& x, const Vec& y);

enum class RootLength { Short, Long };
std::string to_string(RootLength l);

/// Short/long per irreducible component; in simply-laced components every
/// root is reported long.
RootLength classify_length(const RootDatum& rd, std::size_t root_index);
std::vector<RootLength> classify_lengths(const RootDatum& rd);

struct ComponentType {
  char family = 'A';
  std::size_t rank = 0;
  std::string label() const { return std::string(1, family) + std::to_string(rank); }
  friend bool operator==(const ComponentType&, const ComponentType&) = default;
};

struct CartanType {
  std::vector<ComponentType> components;  // sorted by (family, rank)
  std::size_t central_rank = 0;

  std::vector<std::string> labels() const;
  /// e.g. "C2", "A1xA1", "A3+T1", "T2" for a torus.
  std::string to_string() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

CartanType cartan_type(const RootDatum& rd);
/// Type of one irreducible component (an index into b.components()).
ComponentType component_type(const BasedRootDatum& b, std::size_t component);
CartanType cartan_type(const BasedRootDatum& b);

/// (S + S) intersected with the roots stays in S, and S = -S.
bool is_closed_subsystem(const RootDatum& rd, const std::vector<std::size_t>& subset);

/// Swap X with X^v and roots with coroots.  The dual of the dual is the
/// original datum on the nose.
RootDatum dual_root_datum(const RootDatum& rd);
BasedRootDatum dual_based_root_datum(const BasedRootDatum& b);

/// Order of the torsion subgroup of X / Z[roots] (the product of the
/// invariant factors of the root matrix).  1 for adjoint data.
Integer root_lattice_index(const RootDatum& rd);

enum class LatticeKind { SimplyConnected, Adjoint };

/// Cartan matrix of an irreducible type in Bourbaki numbering (0-based).
std::vector<Vec> cartan_matrix_of_type(char family, std::size_t rank);

/// Semisimple datum with the given Cartan matrix (a_ij = <alpha_j,
/// alpha_i^v>), X spanned by fundamental weights (simply connected) or by
/// simple roots (adjoint).  Simple roots are returned as the base, in order.
BasedRootDatum from_cartan_matrix(const std::vector<Vec>& cartan, LatticeKind kind);

/// Sub-datum on the same lattices consisting of the listed roots.
RootDatum sub_datum(const RootDatum& rd, const std::vector<std::size_t>& subset);

}  // namespace conorm
