#include "doctest.h"

#include <map>

#include "conorm/chevalley.hpp"
#include "conorm/error.hpp"

using namespace conorm;

namespace {

BasedRootDatum simply_connected(char f, std::size_t n) {
  return from_cartan_matrix(cartan_matrix_of_type(f, n), LatticeKind::SimplyConnected);
}

// GL(n) with e_i - e_{i+1} as base.
BasedRootDatum gl(std::size_t n) {
  std::vector<Vec> r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        Vec v(n, 0);
        v[i] = 1;
        v[j] = -1;
        r.push_back(v);
      }
  return standard_base(RootDatum(n, r, r));
}

LatticeMap permutation_matrix(const std::vector<std::size_t>& sigma) {
  LatticeMap p(sigma.size(), sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) p(sigma[i], i) = 1;
  return p;
}

// Sparse Lie algebra element: indices < rank are Cartan coordinates (a
// cocharacter), index rank + r is the root vector e_r.
using Elem = std::map<std::size_t, std::int64_t>;

Elem bracket_basis(const StructureConstants& sc, std::size_t a, std::size_t b) {
  const RootDatum& rd = sc.base().datum();
  const std::size_t n = rd.rank();
  Elem out;
  if (a < n && b < n) return out;
  if (a < n) {
    Elem r = bracket_basis(sc, b, a);
    for (auto& [k, v] : r) v = -v;
    return r;
  }
  const std::size_t r = a - n;
  if (b < n) {  // [e_r, h_b] = -<r, b> e_r
    std::int64_t v = -rd.root(r)[b];
    if (v) out[a] = v;
    return out;
  }
  const std::size_t s = b - n;
  if (rd.root(r) == -rd.root(s)) {
    const Vec& cv = rd.coroot(r);
    for (std::size_t k = 0; k < n; ++k)
      if (cv[k]) out[k] = cv[k];
    return out;
  }
  if (auto t = rd.find_root(rd.root(r) + rd.root(s))) out[n + *t] = sc(r, s);
  return out;
}

Elem bracket(const StructureConstants& sc, const Elem& x, const Elem& y) {
  Elem out;
  for (auto [a, u] : x)
    for (auto [b, v] : y)
      for (auto [k, w] : bracket_basis(sc, a, b)) out[k] += u * v * w;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

void check_integrity(const BasedRootDatum& b) {
  StructureConstants sc = build_structure_constants(b);
  const RootDatum& rd = b.datum();
  const std::size_t n = rd.size(), rank = rd.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool sum = rd.find_root(rd.root(i) + rd.root(j)).has_value();
      CHECK((sc(i, j) != 0) == sum);
      CHECK(sc(i, j) == -sc(j, i));
      if (sum) CHECK(std::abs(sc(i, j)) == sc.string_below(i, j) + 1);
    }
  // Jacobi identity on all triples of root vectors
  std::size_t failures = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Elem x{{rank + i, 1}}, y{{rank + j, 1}}, z{{rank + k, 1}};
        Elem total = bracket(sc, x, bracket(sc, y, z));
        for (auto [key, v] : bracket(sc, y, bracket(sc, z, x))) total[key] += v;
        for (auto [key, v] : bracket(sc, z, bracket(sc, x, y))) total[key] += v;
        std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
        if (!total.empty()) ++failures;
      }
  CHECK(failures == 0);
}

// theta(X) = -J X^T J^{-1} on gl(n) with J antidiagonal, alternating signs.
// Returns the scalar eps with theta(E_ij) = eps E_{n-1-j, n-1-i}.
std::int64_t outer_scalar(std::size_t n, std::size_t i, std::size_t j) {
  auto sign = [&](std::size_t k) -> std::int64_t { return k % 2 == 0 ? 1 : -1; };
  // J e_k = sign(k) e_{n-1-k};  J^{-1} = J^T
  // -J E_ji J^T = -sign(j) sign(i) E_{n-1-j, n-1-i}
  return -sign(j) * sign(i);
}

}  // namespace

TEST_CASE("A2 signs") {
  BasedRootDatum b = simply_connected('A', 2);
  StructureConstants sc = build_structure_constants(b);
  CHECK(sc(0, 1) == 1);
  CHECK(sc(1, 0) == -1);
  REQUIRE(sc.order().size() == 3);
  CHECK(sc.order()[0] == 0);
  CHECK(sc.order()[1] == 1);
}

TEST_CASE("A1 and tori have no sums") {
  StructureConstants sc = build_structure_constants(simply_connected('A', 1));
  CHECK(sc(0, 1) == 0);
  CHECK(sc(1, 0) == 0);
  StructureConstants t = build_structure_constants(standard_base(RootDatum(2, {}, {})));
  CHECK(t.order().empty());
}

TEST_CASE("C2 short plus short is 2") {
  BasedRootDatum b = simply_connected('C', 2);
  StructureConstants sc = build_structure_constants(b);
  const RootDatum& rd = b.datum();
  auto lengths = classify_lengths(rd);
  for (std::size_t i = 0; i < rd.size(); ++i)
    for (std::size_t j = 0; j < rd.size(); ++j) {
      auto s = rd.find_root(rd.root(i) + rd.root(j));
      if (!s) continue;
      if (lengths[i] == RootLength::Short && lengths[j] == RootLength::Short)
        CHECK(std::abs(sc(i, j)) == 2);
      else
        CHECK(std::abs(sc(i, j)) == 1);
    }
}

TEST_CASE("structure constant integrity") {
  for (auto [f, n] : std::vector<std::pair<char, std::size_t>>{
           {'A', 3}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}, {'B', 2}, {'F', 4}})
    check_integrity(simply_connected(f, n));
  check_integrity(gl(4));
}

TEST_CASE("pinned scalars: A2 highest root gets -1") {
  BasedRootDatum b = simply_connected('A', 2);
  StructureConstants sc = build_structure_constants(b);
  auto c = propagate_scalars(sc, permutation_matrix({1, 0}));
  auto top = *b.datum().find_root(b.simple_root(0) + b.simple_root(1));
  CHECK(c[top] == QmodZ(1, 2));
  CHECK(c[0].is_zero());
  CHECK(c[1].is_zero());
  CHECK(c[b.datum().negative(top)] == QmodZ(1, 2));
}

TEST_CASE("pinned scalars agree with a matrix realization on gl(n)") {
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u}) {
    BasedRootDatum b = gl(n);
    StructureConstants sc = build_structure_constants(b);
    LatticeMap d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(n - 1 - k, k) = -1;
    auto c = propagate_scalars(sc, d);
    const RootDatum& rd = b.datum();
    // the pinning: theta(E_{i,i+1}) = E_{n-2-i, n-1-i} with scalar 1
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(outer_scalar(n, i, i + 1) == 1);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = n - 1 - i;
      if (i == j) continue;
      Vec v(n, 0);
      v[i] = 1;
      v[j] = -1;
      std::size_t r = *rd.find_root(v);
      QmodZ expect = outer_scalar(n, i, j) == 1 ? QmodZ() : QmodZ(1, 2);
      CHECK_MESSAGE(c[r] == expect, "n=" << n << " root " << to_string(v));
    }
  }
}

TEST_CASE("A3 pinned involution fixes the highest root vector") {
  BasedRootDatum b = simply_connected('A', 3);
  StructureConstants sc = build_structure_constants(b);
  auto c = propagate_scalars(sc, permutation_matrix({2, 1, 0}));
  const RootDatum& rd = b.datum();
  auto top = *rd.find_root(b.simple_root(0) + b.simple_root(1) + b.simple_root(2));
  CHECK(c[top].is_zero());
  CHECK(c[1].is_zero());
}

TEST_CASE("propagated scalars are independent of the decomposition") {
  struct Case {
    char f;
    std::size_t n;
    std::vector<std::size_t> sigma;
  };
  std::vector<Case> cases{{'A', 2, {1, 0}},       {'A', 3, {2, 1, 0}},    {'A', 4, {3, 2, 1, 0}},
                          {'D', 4, {0, 1, 3, 2}}, {'D', 4, {2, 1, 3, 0}}, {'D', 5, {0, 1, 2, 4, 3}},
                          {'E', 6, {5, 1, 4, 3, 2, 0}}};
  for (const auto& cs : cases) {
    BasedRootDatum b = simply_connected(cs.f, cs.n);
    StructureConstants sc = build_structure_constants(b);
    LatticeMap d = permutation_matrix(cs.sigma);
    auto c = propagate_scalars(sc, d);
    auto perm = root_permutation(b.datum(), d);
    const RootDatum& rd = b.datum();
    std::size_t order = 1;
    {
      auto p = perm;
      while (true) {
        bool id = true;
        for (std::size_t i = 0; i < p.size(); ++i) id = id && p[i] == i;
        if (id) break;
        for (auto& x : p) x = perm[x];
        ++order;
      }
    }
    bool a_even = cs.f == 'A' && cs.n % 2 == 0;
    bool witness = false;
    for (std::size_t i = 0; i < rd.size(); ++i) {
      // phi^order = id: the exponents along each cycle sum to zero.  For a
      // fixed root this is order * c = 0.
      QmodZ cycle;
      std::size_t x = i;
      for (std::size_t k = 0; k < order; ++k, x = perm[x]) cycle = cycle + c[x];
      CHECK(cycle.is_zero());
      if (perm[i] == i) CHECK((static_cast<std::int64_t>(order) * c[i]).is_zero());
      if (perm[i] == i) {
        if (!a_even) CHECK(c[i].is_zero());
        if (!c[i].is_zero()) witness = true;
      }
      for (std::size_t j = 0; j < rd.size(); ++j) {
        auto s = rd.find_root(rd.root(i) + rd.root(j));
        if (!s) continue;
        QmodZ sign = sc(perm[i], perm[j]) == sc(i, j) ? QmodZ() : QmodZ(1, 2);
        CHECK(c[*s] == c[i] + c[j] + sign);
      }
    }
    CHECK(witness == a_even);
  }
}

TEST_CASE("non-diagram maps are rejected") {
  BasedRootDatum b = simply_connected('A', 2);
  StructureConstants sc = build_structure_constants(b);
  LatticeMap minus = LatticeMap::from_rows({{-1, 0}, {0, -1}});
  CHECK_THROWS_AS(propagate_scalars(sc, minus), InvalidArgument);
}
