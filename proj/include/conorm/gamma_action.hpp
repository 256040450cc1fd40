#pragma once

// Finite groups given by multiplication tables, and their actions on a
// based root datum by (diagram automorphism, torus twist) pairs.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conorm/chevalley.hpp"
#include "conorm/exact_lattice.hpp"
#include "conorm/root_datum.hpp"

namespace conorm {

class FiniteGroup;

struct QuotientGroup;

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<std::size_t>>{{0}}) {}
  /// Checks closure, associativity, identity and inverses; throws
  /// InvalidArgument with the first failing triple otherwise.
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> mult,
                       std::vector<std::string> names = {});

  static FiniteGroup trivial() { return FiniteGroup(); }
  static FiniteGroup cyclic(std::size_t n);
  /// S3 with elements e, (123), (132), (12), (13), (23).
  static FiniteGroup symmetric3();
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  std::size_t size() const { return mult_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mult_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, std::size_t k) const;
  std::size_t order(std::size_t a) const;
  const std::vector<std::vector<std::size_t>>& table() const { return mult_; }
  const std::vector<std::string>& names() const { return names_; }
  std::string name(std::size_t a) const;

  /// Sorted subgroup generated by the given elements.
  std::vector<std::size_t> generated_subgroup(const std::vector<std::size_t>& gens) const;
  bool is_subgroup(const std::vector<std::size_t>& s) const;
  bool is_normal(const std::vector<std::size_t>& s) const;
  /// Is the subgroup s cyclic?
  bool is_cyclic(const std::vector<std::size_t>& s) const;
  /// All normal subgroups, sorted.
  std::vector<std::vector<std::size_t>> normal_subgroups() const;
  QuotientGroup quotient(const std::vector<std::size_t>& normal) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.mult_ == b.mult_;
  }

 private:
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<std::string> names_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

struct QuotientGroup {
  FiniteGroup group;
  std::vector<std::size_t> coset_of;        // element of the big group -> coset
  std::vector<std::size_t> representative;  // coset -> least element
};

/// Action of a finite group on a based root datum.  Element g acts on X by
/// diagram(g), which must permute the simple roots, composed with Int(t_g)
/// for the twist t_g in X_v (x) Q/Z.  On cocharacters g acts by the inverse
/// transpose of diagram(g).
class GammaAction {
 public:
  GammaAction() = default;
  /// Builds caches; shapes are checked, the action axioms are not (see
  /// validate_action).
  GammaAction(FiniteGroup group, BasedRootDatum base, std::vector<LatticeMap> diagram,
              std::vector<TorsionVector> twist, std::string name = "");

  /// Twist-free action with the given diagram parts.
  static GammaAction pinned(FiniteGroup group, BasedRootDatum base, std::vector<LatticeMap> diagram,
                            std::string name = "");
  static GammaAction trivial(BasedRootDatum base, std::size_t order = 1);

  const std::string& name() const { return name_; }
  const FiniteGroup& group() const { return group_; }
  const BasedRootDatum& base() const { return base_; }
  const RootDatum& datum() const { return base_.datum(); }
  std::size_t rank() const { return base_.rank(); }
  const StructureConstants& structure_constants() const { return sc_; }

  const LatticeMap& diagram(std::size_t g) const { return diagram_[g]; }
  const std::vector<LatticeMap>& diagrams() const { return diagram_; }
  /// Action on cocharacters, diagram(g)^{-T}.
  const LatticeMap& cochar_action(std::size_t g) const { return cochar_[g]; }
  const TorsionVector& twist(std::size_t g) const { return twist_[g]; }
  const std::vector<TorsionVector>& twists() const { return twist_; }
  /// Root index of g(root i).
  std::size_t act(std::size_t g, std::size_t root) const { return perm_[g][root]; }
  const std::vector<std::size_t>& root_permutation(std::size_t g) const { return perm_[g]; }
  /// Scalar exponent of the pinned part: X_a -> zeta^c X_{g a}.
  const QmodZ& pinned_scalar(std::size_t g, std::size_t root) const { return pinned_[g][root]; }
  bool is_pinned() const;

 private:
  std::string name_;
  FiniteGroup group_;
  BasedRootDatum base_;
  StructureConstants sc_;
  std::vector<LatticeMap> diagram_;
  std::vector<LatticeMap> cochar_;
  std::vector<TorsionVector> twist_;
  std::vector<std::vector<std::size_t>> perm_;
  std::vector<std::vector<QmodZ>> pinned_;
};

ValidationReport validate_action(const GammaAction& a);

/// Same diagrams, all twists zero.
GammaAction pinned_projection(const GammaAction& a);

/// Equality of actions: same group table, same diagram matrices and the same
/// pairings <alpha, t_g> for every root and element.
bool same_action(const GammaAction& a, const GammaAction& b);

/// Restriction to the sub-datum on a Gamma-stable closed set of roots (a
/// union of components, a Levi subsystem, ...).  Its base is the set of
/// indecomposable positive roots in the subset; root vector scalars of the
/// big action on that base are absorbed into the twists.
GammaAction restrict_action(const GammaAction& a, const std::vector<std::size_t>& roots);

/// The same action restricted to a subgroup (elements relabelled in
/// increasing order of their index in the big group).
GammaAction restrict_to_subgroup(const GammaAction& a, const std::vector<std::size_t>& subgroup);

std::vector<std::size_t> root_orbit(const GammaAction& a, std::size_t root);
std::vector<std::size_t> root_stabilizer(const GammaAction& a, std::size_t root);

/// Exponent c with g(X_a) = zeta^c X_{g a}: pinned part plus <g a, t_g>.
QmodZ root_space_scalar(const GammaAction& a, std::size_t g, std::size_t root);

/// Kernel of g -> phi(g) (elements acting as the identity automorphism).
std::vector<std::size_t> action_kernel(const GammaAction& a);

struct ComponentStabilizer {
  std::vector<std::size_t> simple_positions;
  ComponentType type;
  std::size_t stabilizer_order = 1;  // in the image group phi(Gamma)
  std::size_t image_order = 1;       // as permutations of the component
  bool cyclic = true;
  bool faithful = true;
  bool trivial = true;  // acts trivially on the component
};

struct StabilizerReport {
  std::vector<ComponentStabilizer> components;

  /// "cyclic and acts faithfully" for every component.
  bool cyclic_faithful() const;
  /// every A_{2n} component's stabilizer acts trivially or faithfully.
  bool trivial_or_faithful_on_even_a() const;
  /// First component failing cyclic_faithful, if any.
  std::optional<std::size_t> witness() const;
};

StabilizerReport stabilizer_hypothesis(const GammaAction& a);

}  // namespace conorm
