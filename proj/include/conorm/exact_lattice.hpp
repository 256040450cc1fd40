#pragma once

// Exact integer and rational linear algebra: lattice maps, Smith and Hermite
// normal forms, sublattices, coinvariant quotients and torsion points of
// tori.  Nothing in here uses floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace conorm {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Small machine-integer vector; used for roots, coroots and torsion
/// numerators, whose entries are bounded at desk scale.
using Vec = std::vector<std::int64_t>;

namespace detail {
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const Integer& v);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
}  // namespace detail

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(std::int64_t s, const Vec& a);
std::int64_t dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& a);
std::string to_string(const Vec& v);

class SmallMatrix;

/// Integer matrix with declared domain and codomain ranks.  Column j is the
/// image of the j-th basis vector of the domain.
class LatticeMap {
 public:
  LatticeMap() = default;
  LatticeMap(std::size_t codomain_rank, std::size_t domain_rank);

  static LatticeMap identity(std::size_t n);
  static LatticeMap zero(std::size_t codomain_rank, std::size_t domain_rank);
  /// Row-major literal; all rows must have equal length.  `domain_rank` is
  /// only consulted when the list is empty.
  static LatticeMap from_rows(const std::vector<Vec>& rows, std::size_t domain_rank = 0);
  static LatticeMap from_columns(const std::vector<Vec>& cols, std::size_t codomain_rank);
  static LatticeMap from_columns(const std::vector<IntVector>& cols, std::size_t codomain_rank);
  static LatticeMap diagonal(const IntVector& d);
  /// [a | b] (same codomain) and [a ; b] (same domain).
  static LatticeMap hstack(const LatticeMap& a, const LatticeMap& b);
  static LatticeMap vstack(const LatticeMap& a, const LatticeMap& b);

  std::size_t codomain_rank() const { return rows_; }
  std::size_t domain_rank() const { return cols_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  LatticeMap transpose() const;
  IntVector apply(const IntVector& x) const;
  Vec apply(const Vec& x) const;
  RatVector apply(const RatVector& x) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  Integer determinant() const;
  std::size_t rank() const;
  bool is_unimodular() const;
  /// Integral inverse of a unimodular matrix, nullopt otherwise.
  std::optional<LatticeMap> unimodular_inverse() const;
  /// Inverse over the rationals; throws SingularSystem.
  std::vector<RatVector> rational_inverse() const;

  SmallMatrix to_small() const;
  std::string to_string() const;

  friend LatticeMap operator*(const LatticeMap& a, const LatticeMap& b);
  friend LatticeMap operator+(const LatticeMap& a, const LatticeMap& b);
  friend LatticeMap operator-(const LatticeMap& a, const LatticeMap& b);
  friend LatticeMap operator*(const Integer& s, const LatticeMap& a);
  friend bool operator==(const LatticeMap& a, const LatticeMap& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const LatticeMap& m);

/// Dense int64 matrix for hot loops (Weyl group enumeration, orbit sweeps).
/// Arithmetic is overflow-checked.
class SmallMatrix {
 public:
  SmallMatrix() = default;
  SmallMatrix(std::size_t rows, std::size_t cols);
  static SmallMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<std::int64_t>& data() const { return data_; }

  Vec apply(const Vec& x) const;
  SmallMatrix transpose() const;
  LatticeMap to_lattice_map() const;

  friend SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b);
  friend bool operator==(const SmallMatrix& a, const SmallMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

struct SmallMatrixHash {
  std::size_t operator()(const SmallMatrix& m) const noexcept;
};
struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept;
};

/// U * m * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.
struct SmithForm {
  LatticeMap U;
  LatticeMap D;
  LatticeMap V;
  std::size_t rank = 0;

  IntVector invariant_factors() const;  // the nonzero diagonal entries
};

SmithForm smith_normal_form(const LatticeMap& m);

/// Row-style Hermite normal form (echelon, positive pivots, entries above a
/// pivot reduced into [0, pivot)); zero rows are removed.
LatticeMap row_hermite_normal_form(const LatticeMap& m);

/// Basis (as columns) of the integer kernel of m; the kernel is saturated.
LatticeMap integer_kernel(const LatticeMap& m);

/// Some rational solution of a·x = b, or nullopt if none exists.
std::optional<RatVector> solve_rational(const LatticeMap& a, const RatVector& b);

/// Sublattice of Z^ambient_rank, stored by a basis in canonical column HNF.
class Sublattice {
 public:
  Sublattice() = default;
  /// The span of the given generator columns (not saturated).
  static Sublattice span(const LatticeMap& generators);
  static Sublattice full(std::size_t n);
  static Sublattice zero(std::size_t n);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.domain_rank(); }
  const LatticeMap& basis() const { return basis_; }

  bool contains(const IntVector& x) const;
  bool contains(const Vec& x) const;
  /// Coordinates of x in the basis, nullopt if x is not in the lattice.
  std::optional<IntVector> coordinates(const IntVector& x) const;
  bool is_saturated() const;
  Sublattice saturation() const;
  /// Index of this lattice in its saturation.
  Integer saturation_index() const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) = default;

 private:
  Sublattice(std::size_t n, LatticeMap basis);

  std::size_t ambient_rank_ = 0;
  LatticeMap basis_;
};

/// Free quotient of Z^ambient_rank by a saturated sublattice.
struct QuotientLattice {
  std::size_t ambient_rank = 0;
  Sublattice relations;      // saturated
  LatticeMap projection;     // (ambient_rank - relations.rank()) x ambient_rank, surjective
  std::size_t raw_relation_rank = 0;  // rank of the relation span before saturation

  std::size_t rank() const { return projection.codomain_rank(); }
  /// Some integral section L with projection * L = identity.
  LatticeMap section() const;
};

/// Vectors fixed by every generator; saturated, canonical HNF basis.
Sublattice fixed_sublattice(std::span<const LatticeMap> generators);

/// Quotient of Z^n by the saturation of span{g(x) - x}.  The projection is
/// the transpose of the fixed-sublattice basis of the transposed generators,
/// so it pairs perfectly with that basis.
QuotientLattice coinvariant_quotient(std::span<const LatticeMap> generators);

/// Element of Q/Z, normalized to 0 <= num < den and gcd(num, den) = 1.
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  std::string to_string() const;

  friend QmodZ operator+(const QmodZ& a, const QmodZ& b);
  friend QmodZ operator-(const QmodZ& a, const QmodZ& b);
  friend QmodZ operator-(const QmodZ& a);
  friend QmodZ operator*(std::int64_t k, const QmodZ& a);
  friend bool operator==(const QmodZ& a, const QmodZ& b) = default;
  friend auto operator<=>(const QmodZ& a, const QmodZ& b) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const QmodZ& q);

/// Element of (Q/Z)^rank in canonical form: numerators in [0, den) and
/// gcd(numerators, den) = 1.  Models a torsion point of a torus whose
/// cocharacter lattice is Z^rank.
class TorsionVector {
 public:
  TorsionVector() = default;
  explicit TorsionVector(std::size_t rank);
  TorsionVector(Vec numerators, std::int64_t denominator);
  static TorsionVector from_rationals(const RatVector& x);

  std::size_t rank() const { return num_.size(); }
  const Vec& numerators() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_zero() const { return den_ == 1; }

  /// x -> m x, reduced.
  TorsionVector transform(const SmallMatrix& m) const;
  TorsionVector transform(const LatticeMap& m) const;
  /// Pairing with an integral vector, as an element of Q/Z.
  QmodZ pair(const Vec& v) const;
  RatVector to_rationals() const;
  std::string to_string() const;

  friend TorsionVector operator+(const TorsionVector& a, const TorsionVector& b);
  friend TorsionVector operator-(const TorsionVector& a);
  friend TorsionVector operator*(std::int64_t k, const TorsionVector& a);
  friend bool operator==(const TorsionVector& a, const TorsionVector& b) = default;
  /// Canonical total order: denominator first, then numerators lexicographically.
  friend std::strong_ordering operator<=>(const TorsionVector& a, const TorsionVector& b);

 private:
  void reduce();

  Vec num_;
  std::int64_t den_ = 1;
};

struct TorsionVectorHash {
  std::size_t operator()(const TorsionVector& t) const noexcept;
};

std::ostream& operator<<(std::ostream& os, const TorsionVector& t);

/// All x in (Q/Z)^n with m x = x.  Requires det(m - I) != 0; returns
/// exactly |det(m - I)| canonical vectors.  Throws SingularSystem otherwise,
/// and InvalidArgument if the count exceeds `limit`.
std::vector<TorsionVector> solve_torsion_fixed(const LatticeMap& m,
                                               std::size_t limit = 10'000'000);

}  // namespace conorm
