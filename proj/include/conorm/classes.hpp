#pragma once

// Semisimple classes of a dual group as Weyl orbits of torsion points of its
// maximal torus, Frobenius-stable classes over finite fields, the conorm on
// classes, and checks of the factorization statements for the conorm.

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "conorm/duality.hpp"

namespace conorm {

/// Weyl group of a group datum D acting on torus points in X_v(D) (x) Q/Z.
class WeylOrbits {
 public:
  WeylOrbits() = default;
  explicit WeylOrbits(const RootDatum& group, std::size_t cap = kDefaultWeylCap);

  const RootDatum& datum() const { return datum_; }
  std::size_t rank() const { return datum_.rank(); }
  /// Matrices acting on cocharacters.
  const std::vector<SmallMatrix>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

  TorsionVector canonical(const TorsionVector& x) const;
  std::unordered_set<TorsionVector, TorsionVectorHash> orbit(const TorsionVector& x) const;
  bool same_class(const TorsionVector& x, const TorsionVector& y) const;

 private:
  RootDatum datum_;
  std::vector<SmallMatrix> elements_;
};

/// Orbits for the dual group of g: the Weyl group of g acting on X^*(g).
WeylOrbits dual_group_orbits(const RootDatum& g, std::size_t cap = kDefaultWeylCap);

struct GeometricClass {
  TorsionVector representative;  // least element of the orbit
  friend bool operator==(const GeometricClass&, const GeometricClass&) = default;
  friend auto operator<=>(const GeometricClass& a, const GeometricClass& b) {
    return a.representative <=> b.representative;
  }
};

GeometricClass canonicalize_class(const WeylOrbits& w, const TorsionVector& x);

/// x -> q tau(x) on torus points of a group over F_q.
struct FrobeniusStructure {
  std::int64_t q = 2;
  std::int64_t p = 2;
  LatticeMap tau;

  /// Split form; throws InvalidArgument unless q is a prime power.
  static FrobeniusStructure split(std::int64_t q, std::size_t rank);
  FrobeniusStructure(std::int64_t q, LatticeMap tau);
  FrobeniusStructure() = default;

  TorsionVector apply(const TorsionVector& x) const;
};

/// Smallest prime dividing q if q is a prime power, 0 otherwise.
std::int64_t prime_of_prime_power(std::int64_t q);

struct StableClass {
  GeometricClass cls;
  std::int64_t q = 0;
  friend bool operator==(const StableClass&, const StableClass&) = default;
};

bool is_frobenius_stable(const WeylOrbits& w, const TorsionVector& x, const FrobeniusStructure& f);

/// All Frobenius-stable Weyl orbits, sorted by representative: for each w,
/// the fixed points of w o (q tau), deduplicated by orbit.
std::vector<StableClass> enumerate_stable_classes(const WeylOrbits& w, const FrobeniusStructure& f);

TorsionVector conorm_point(const ConormData& cd, const TorsionVector& s);
GeometricClass conorm_class(const ConormData& cd, const WeylOrbits& big, const GeometricClass& c);
/// Throws InternalError if the image is not stable for the big Frobenius.
StableClass lift_stable_class(const ConormData& cd, const WeylOrbits& big, const StableClass& c,
                              const FrobeniusStructure& big_frob);

/// Do the conorms of all W(G^*)-translates of s lie in one W(G~^*)-orbit?
bool conorm_well_defined_at(const ConormData& cd, const WeylOrbits& small, const WeylOrbits& big,
                            const TorsionVector& s);

/// Result of a verification: overall verdict plus human-readable lines.
struct VerifyReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;
  std::vector<std::string> witnesses;

  void check(bool ok, const std::string& what);
};

/// Z/(r m) shifting r copies of h: the conorm is x -> (m x, ..., m x) once
/// X^*(T) is identified with X^*(h) through the first factor.
VerifyReport verify_product_conorm(std::size_t r, std::size_t m, const BasedRootDatum& h);

/// Trivial action of order m: conorm = m I, and on every stable class for
/// each q the class of s maps to the class of s^m.
VerifyReport verify_trivial_conorm(const BasedRootDatum& b, std::size_t m,
                                   const std::vector<std::int64_t>& qs);

/// The action of Gamma / Gamma_0 induced on the fold of Gamma_0.
struct InducedQuotientAction {
  GammaAction sub;        // Gamma_0 on the source
  FoldedDatum sub_fold;   // G_0
  GammaAction quotient;   // Gamma / Gamma_0 on G_0
  LatticeMap identification;  // X^*(T) coordinates of fold(a) -> those of fold(quotient)
};

InducedQuotientAction induced_quotient_action(const GammaAction& a,
                                              const std::vector<std::size_t>& normal);

VerifyReport verify_normal_subgroup_composition(const GammaAction& a,
                                                const std::vector<std::size_t>& normal,
                                                const std::vector<std::int64_t>& qs = {2, 3});

VerifyReport verify_pinning_factorization(const GammaAction& a,
                                          const std::vector<std::int64_t>& qs = {2, 3, 5});

struct LeviSubdatum {
  std::vector<std::size_t> centralizer_roots;  // <alpha, s> = 0
  std::vector<std::size_t> roots;              // the Levi hull
  RootDatum datum;
  bool proper = false;
};

/// Centralizer subsystem of s in the group datum and the Levi subsystem
/// generated by it (roots in its rational span).
LeviSubdatum levi_for_element(const RootDatum& group, const TorsionVector& s);

/// s is a torus point of the dual of the fixed group of a.
VerifyReport verify_levi_factorization(const GammaAction& a, const TorsionVector& s);

VerifyReport verify_isogeny(const GammaAction& source, const GammaAction& target, const Isogeny& phi);
VerifyReport verify_root_inclusion(const GammaAction& a);
VerifyReport verify_long_roots(const GammaAction& a);

}  // namespace conorm
