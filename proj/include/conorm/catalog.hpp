#pragma once

// Named groups, actions and isogenies.
//
// Coordinates: GL(n) in the standard basis e_i; Sp(2n) and SO(n) in the
// standard symplectic/orthogonal coordinates; SL, PGL, Spin and the
// exceptional types in fundamental-weight (simply connected) or simple-root
// (adjoint) coordinates built from Bourbaki-numbered Cartan matrices.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conorm/duality.hpp"

namespace conorm {

BasedRootDatum gl_datum(std::size_t n);
BasedRootDatum sl_datum(std::size_t n);
BasedRootDatum pgl_datum(std::size_t n);
BasedRootDatum torus_datum(std::size_t n);
/// Sp(2n); the argument is n.
BasedRootDatum sp_datum(std::size_t n);
/// SO(N) split, N >= 2.
BasedRootDatum so_datum(std::size_t N);
/// Spin(N), N >= 5.
BasedRootDatum spin_datum(std::size_t N);
BasedRootDatum exceptional_datum(char family, std::size_t rank, LatticeKind kind);
/// Orthogonal direct sum; simple roots in factor order.
BasedRootDatum product_datum(const std::vector<BasedRootDatum>& factors);

/// Permutation matrix with p(sigma(i), i) = 1.
LatticeMap permutation_diagram(const std::vector<std::size_t>& sigma);
/// Block matrix acting by `blocks[k]` from factor k to factor target[k].
LatticeMap block_diagram(const std::vector<std::size_t>& target, const std::vector<LatticeMap>& blocks);

/// Z/(r m) acting on H^r by cyclically shifting the factors; the
/// stabilizer of a factor has order m and acts trivially on it.
GammaAction product_action(const BasedRootDatum& h, std::size_t r, std::size_t m);
/// Z/4 on H x H generated by (x, y) -> (d y, x), for an involution d of H.
GammaAction z4_composite(const GammaAction& involution);

/// Twisted actions t_g = chi(g) z: chi a homomorphism to Z/N and z a
/// torsion point of order dividing N whose root pairings are constant on
/// diagram orbits of simple roots.  Candidates are visited in a fixed order;
/// the first satisfying `accept` is returned.
std::optional<GammaAction> search_twisted_action(
    const GammaAction& pinned, std::size_t N,
    const std::function<bool(const GammaAction&)>& accept);

struct Preset {
  std::string name;
  BasedRootDatum datum;
  std::string doc;
  std::vector<std::string> actions;
};

/// Names like "GL4", "GL(4)", "SL3", "PGL2", "Sp4", "SO5", "Spin8", "E6ad",
/// "E6sc", "F4", "G2", "D4", "D4ad", "T2", and products "GL2xGL2".
/// Throws InvalidArgument for unknown names.
Preset preset(const std::string& name);
GammaAction preset_action(const Preset& p, const std::string& action);
GammaAction preset_action(const std::string& preset_name, const std::string& action);

/// Every (preset, action) pair exercised by the test suites.
std::vector<std::pair<std::string, std::string>> catalog_actions();

struct GoldenFold {
  std::string preset;
  std::string action;
  std::string type;  // expected cartan_type(...).to_string() of the fold
  std::string note;
};
std::vector<GoldenFold> golden_folds();

struct IsogenyPreset {
  Isogeny isogeny;
  GammaAction source_action;
  GammaAction target_action;
};

/// "SL2-PGL2", "SLn-PGLn", "SL2xSL2-PGL2xPGL2" (swap), "SLnxGL1-GLn",
/// "SpinN-SON", "GL2n-GL2n/mu2" (outer-SO action).  The action name picks
/// the action on the source where several make sense.
IsogenyPreset preset_isogeny(const std::string& name, const std::string& action = "");
std::vector<std::pair<std::string, std::string>> catalog_isogenies();

}  // namespace conorm
