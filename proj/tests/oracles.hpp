#pragma once

// Brute-force oracles for stable class counts, independent of the
// Weyl-element enumeration used by the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "conorm/classes.hpp"

namespace oracle {

inline std::int64_t ipow(std::int64_t b, std::size_t e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// lcm(q^d - 1, d <= n): every point of an orbit of size <= n under
/// multiplication by q has denominator dividing it.
inline std::int64_t gl_modulus(std::size_t n, std::int64_t q) {
  std::int64_t m = 1;
  for (std::size_t d = 1; d <= n; ++d) m = std::lcm(m, ipow(q, d) - 1);
  return m;
}

/// Semisimple classes of GL(n) over F_q as multisets of n elements of
/// (1/M)Z/Z stable under x -> qx.  Sweeps all sorted n-tuples.
inline std::set<std::vector<std::int64_t>> gl_stable_multisets(std::size_t n, std::int64_t q) {
  const std::int64_t m = gl_modulus(n, q);
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur(n, 0), img(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) img[i] = cur[i] * q % m;
    std::sort(img.begin(), img.end());
    if (img == cur) out.insert(cur);
    // next nondecreasing tuple
    std::size_t k = n;
    while (k > 0 && cur[k - 1] == m - 1) --k;
    if (k == 0) break;
    ++cur[k - 1];
    for (std::size_t j = k; j < n; ++j) cur[j] = cur[k - 1];
  }
  return out;
}

/// Canonical torus points of the multisets, for comparison with the library.
inline std::set<conorm::TorsionVector> gl_stable_points(const conorm::WeylOrbits& w, std::size_t n,
                                                        std::int64_t q) {
  const std::int64_t m = gl_modulus(n, q);
  std::set<conorm::TorsionVector> out;
  for (const auto& ms : gl_stable_multisets(n, q))
    out.insert(w.canonical(conorm::TorsionVector(conorm::Vec(ms.begin(), ms.end()), m)));
  return out;
}

/// Stable orbits among all points of (1/M)Z/Z)^n, for any datum and
/// Frobenius; orbits are identified by their full point sets.
inline std::size_t sweep_stable_orbits(const conorm::WeylOrbits& w, const conorm::FrobeniusStructure& f,
                                       std::int64_t m) {
  const std::size_t n = w.rank();
  std::set<std::set<conorm::TorsionVector>> orbits;
  std::vector<std::int64_t> cur(n, 0);
  while (true) {
    conorm::TorsionVector x(conorm::Vec(cur.begin(), cur.end()), m);
    auto orb = w.orbit(x);
    if (orb.count(f.apply(x))) orbits.insert(std::set<conorm::TorsionVector>(orb.begin(), orb.end()));
    std::size_t k = n;
    while (k > 0 && cur[k - 1] == m - 1) cur[--k] = 0;
    if (k == 0) break;
    ++cur[k - 1];
  }
  return orbits.size();
}

}  // namespace oracle
