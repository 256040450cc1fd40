#include "doctest.h"

#include <random>
#include <set>

#include "conorm/catalog.hpp"
#include "conorm/classes.hpp"
#include "conorm/error.hpp"
#include "oracles.hpp"

using namespace conorm;

namespace {

std::set<TorsionVector> reps(const std::vector<StableClass>& cs) {
  std::set<TorsionVector> out;
  for (const auto& c : cs) out.insert(c.cls.representative);
  return out;
}

}  // namespace

TEST_CASE("canonical forms of classes") {
  auto gl2 = dual_group_orbits(gl_datum(2).datum());
  CHECK(gl2.order() == 2);
  CHECK(canonicalize_class(gl2, TorsionVector(2)).representative.is_zero());
  CHECK(gl2.same_class(TorsionVector({1, 0}, 2), TorsionVector({0, 1}, 2)));
  CHECK(canonicalize_class(gl2, TorsionVector({1, 0}, 2)) == canonicalize_class(gl2, TorsionVector({0, 1}, 2)));
  CHECK_FALSE(gl2.same_class(TorsionVector({1, 0}, 2), TorsionVector({1, 1}, 2)));

  // classes for the PGL2 side live on the SL2 dual: x ~ -x
  auto sl2_side = dual_group_orbits(pgl_datum(2).datum());
  CHECK(sl2_side.same_class(TorsionVector({1}, 3), TorsionVector({2}, 3)));
  CHECK(canonicalize_class(sl2_side, TorsionVector({2}, 3)).representative == TorsionVector({1}, 3));

  CHECK_THROWS_AS(canonicalize_class(gl2, TorsionVector(3)), RankMismatch);
}

TEST_CASE("prime powers and Frobenius structures") {
  CHECK(prime_of_prime_power(2) == 2);
  CHECK(prime_of_prime_power(4) == 2);
  CHECK(prime_of_prime_power(9) == 3);
  CHECK(prime_of_prime_power(25) == 5);
  CHECK(prime_of_prime_power(6) == 0);
  CHECK(prime_of_prime_power(1) == 0);
  CHECK_THROWS_AS(FrobeniusStructure::split(6, 2), InvalidArgument);
  auto f = FrobeniusStructure::split(3, 2);
  CHECK(f.apply(TorsionVector({1, 1}, 8)) == TorsionVector({3, 3}, 8));
}

TEST_CASE("stable classes: small counts") {
  auto gl1 = dual_group_orbits(gl_datum(1).datum());
  for (std::int64_t q : {2, 3, 4, 5, 7})
    CHECK(enumerate_stable_classes(gl1, FrobeniusStructure::split(q, 1)).size() == static_cast<std::size_t>(q - 1));

  auto gl2 = dual_group_orbits(gl_datum(2).datum());
  auto six = enumerate_stable_classes(gl2, FrobeniusStructure::split(3, 2));
  CHECK(six.size() == 6);
  for (const auto& c : six) {
    CHECK(c.q == 3);
    CHECK(c.cls.representative.denominator() % 3 != 0);
    CHECK(is_frobenius_stable(gl2, c.cls.representative, FrobeniusStructure::split(3, 2)));
    CHECK(gl2.canonical(c.cls.representative) == c.cls.representative);
  }
  // the same six classes from an exhaustive sweep over denominators dividing 8
  CHECK(oracle::sweep_stable_orbits(gl2, FrobeniusStructure::split(3, 2), 8) == 6);

  // SL2 dual of PGL2, q = 3
  auto sl2_side = dual_group_orbits(pgl_datum(2).datum());
  auto sc = enumerate_stable_classes(sl2_side, FrobeniusStructure::split(3, 1));
  CHECK(sc.size() == oracle::sweep_stable_orbits(sl2_side, FrobeniusStructure::split(3, 1), 8));
  CHECK(sc.size() == 3);
}

TEST_CASE("stable classes of GL(n) agree with the multiset sweep") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto w = dual_group_orbits(gl_datum(n).datum());
    for (std::int64_t q : {2, 3, 4, 5}) {
      CAPTURE(n);
      CAPTURE(q);
      auto got = enumerate_stable_classes(w, FrobeniusStructure::split(q, n));
      auto expected = oracle::gl_stable_points(w, n, q);
      CHECK(got.size() == static_cast<std::size_t>(oracle::ipow(q, n - 1) * (q - 1)));
      CHECK(reps(got) == expected);
    }
  }
}

TEST_CASE("stable classes for a non-split Frobenius") {
  // unitary form of GL(2): tau(x1, x2) = (-x2, -x1)
  LatticeMap tau(2, 2);
  tau(0, 1) = -1;
  tau(1, 0) = -1;
  auto w = dual_group_orbits(gl_datum(2).datum());
  for (std::int64_t q : {2, 3}) {
    FrobeniusStructure f(q, tau);
    auto got = enumerate_stable_classes(w, f);
    CHECK(got.size() == static_cast<std::size_t>(q * (q + 1)));
    CHECK(got.size() == oracle::sweep_stable_orbits(w, f, oracle::gl_modulus(2, q) * (q + 1)));
  }
}

TEST_CASE("conorm on points and classes") {
  auto triv = build_conorm(GammaAction::trivial(gl_datum(2), 2));
  CHECK(conorm_point(triv, TorsionVector({1, 2}, 5)) == TorsionVector({2, 4}, 5));
  CHECK(conorm_point(triv, TorsionVector(2)).is_zero());

  auto swap = build_conorm(preset_action("GL2xGL2", "swap"));
  auto big = dual_group_orbits(gl_datum(2).datum());
  auto x = TorsionVector({1, 2}, 3);
  auto image = conorm_point(swap, x);
  // (x, x) up to the identification of X^*(T) with the first factor
  CHECK(image.numerators()[0] == image.numerators()[2]);
  CHECK(image.numerators()[1] == image.numerators()[3]);

  auto sp = preset_action("GL4", "pinned-involution");
  auto cd = build_conorm(sp);
  auto small = dual_group_orbits(fold(sp).fixed.datum());
  auto gl4 = dual_group_orbits(gl_datum(4).datum());
  CHECK(conorm_class(cd, gl4, GeometricClass{TorsionVector(2)}).representative.is_zero());
  auto regular = TorsionVector({1, 2}, 7);
  auto orbit = small.orbit(regular);
  auto target = conorm_class(cd, gl4, GeometricClass{regular});
  for (const auto& y : orbit) CHECK(conorm_class(cd, gl4, GeometricClass{y}) == target);
  (void)big;
}

TEST_CASE("lifting stable classes") {
  // trivial action of order 2 on GL(2), q = 3: x -> 2x
  auto b = gl_datum(2);
  auto cd = build_conorm(GammaAction::trivial(b, 2));
  auto w = dual_group_orbits(b.datum());
  auto f = FrobeniusStructure::split(3, 2);
  for (const auto& c : enumerate_stable_classes(w, f)) {
    auto lifted = lift_stable_class(cd, w, c, f);
    CHECK(lifted.cls.representative == w.canonical(2 * c.cls.representative));
  }

  // SO(4) -> GL(4)
  auto so = preset_action("GL4", "outer-SO");
  auto socd = build_conorm(so);
  auto small = dual_group_orbits(fold(so).fixed.datum());
  auto big = dual_group_orbits(so.datum());
  auto f4 = FrobeniusStructure::split(3, 4);
  auto zero = lift_stable_class(socd, big, StableClass{GeometricClass{TorsionVector(2)}, 3}, f4);
  CHECK(zero.cls.representative.is_zero());
  auto classes = enumerate_stable_classes(small, FrobeniusStructure::split(3, 2));
  CHECK(classes.size() == 9);
  for (const auto& c : classes) CHECK_NOTHROW(lift_stable_class(socd, big, c, f4));
}

TEST_CASE("well-definedness on random points") {
  std::mt19937 rng(11);
  for (const auto& [p, name] : catalog_actions()) {
    auto a = preset_action(p, name);
    auto f = fold(a);
    auto cd = build_conorm(f);
    auto small = dual_group_orbits(f.fixed.datum());
    auto big = dual_group_orbits(a.datum());
    std::uniform_int_distribution<std::int64_t> den(1, 12);
    for (int trial = 0; trial < 10; ++trial) {
      std::int64_t d = den(rng);
      std::uniform_int_distribution<std::int64_t> num(0, d - 1);
      Vec v(small.rank());
      for (auto& e : v) e = num(rng);
      CAPTURE(p);
      CAPTURE(name);
      CHECK(conorm_well_defined_at(cd, small, big, TorsionVector(v, d)));
    }
  }
}

TEST_CASE("Levi subdata") {
  auto gl4 = gl_datum(4).datum();
  auto whole = levi_for_element(gl4, TorsionVector(4));
  CHECK_FALSE(whole.proper);
  CHECK(whole.roots.size() == 12);
  auto gl3 = levi_for_element(gl4, TorsionVector({0, 0, 0, 1}, 2));
  CHECK(gl3.proper);
  CHECK(gl3.roots.size() == 6);
  CHECK(cartan_type(gl3.datum).to_string() == "A2+T2");  // GL(3) x GL(1)
  auto torus = levi_for_element(gl4, TorsionVector({0, 1, 2, 3}, 5));
  CHECK(torus.roots.empty());
  // an isolated point: the centralizer A1xA1 is proper but spans, so no proper Levi contains it
  auto sp = sp_datum(2).datum();
  auto iso = levi_for_element(sp, TorsionVector({1, 0}, 2));
  CHECK(iso.centralizer_roots.size() == 4);
  CHECK(iso.roots.size() == 8);
  CHECK_FALSE(iso.proper);
}

TEST_CASE("verification reports") {
  CHECK(verify_product_conorm(2, 1, gl_datum(2)).pass);
  CHECK(verify_product_conorm(1, 1, gl_datum(3)).pass);
  CHECK(verify_product_conorm(4, 1, gl_datum(1)).pass);
  CHECK(verify_product_conorm(2, 2, sl_datum(2)).pass);

  CHECK(verify_trivial_conorm(gl_datum(2), 2, {2, 3}).pass);
  CHECK(verify_trivial_conorm(sp_datum(2), 3, {2}).pass);

  auto z4 = preset_action("GL3xGL3", "Z4-composite");
  CHECK(verify_normal_subgroup_composition(z4, {0, 2}).pass);
  CHECK(verify_normal_subgroup_composition(z4, {0, 1, 2, 3}).pass);
  CHECK(verify_normal_subgroup_composition(z4, {0}).pass);
  CHECK_THROWS_AS(verify_normal_subgroup_composition(preset_action("D4", "S3"), {0, 3}), InvalidArgument);
  CHECK(verify_normal_subgroup_composition(preset_action("D4", "S3"), {0, 1, 2}).pass);

  CHECK(verify_pinning_factorization(preset_action("GL4", "outer-SO")).pass);
  CHECK(verify_pinning_factorization(preset_action("GL4", "pinned-involution")).pass);
  CHECK(verify_pinning_factorization(preset_action("E6ad", "inner-twisted-involution"), {2}).pass);
  CHECK_FALSE(verify_pinning_factorization(preset_action("D4", "S3")).pass);

  auto bs = preset_action("GL4", "block-swap");
  CHECK(verify_levi_factorization(bs, TorsionVector({0, 0, 1, 2}, 3)).pass);
  auto central = verify_levi_factorization(bs, TorsionVector(4));
  CHECK_FALSE(central.pass);
  CHECK(verify_levi_factorization(GammaAction::trivial(gl_datum(3), 2), TorsionVector({0, 0, 1}, 2)).pass);

  for (const auto& [name, action] : catalog_isogenies()) {
    auto ip = preset_isogeny(name, action);
    CAPTURE(name);
    CHECK(verify_isogeny(ip.source_action, ip.target_action, ip.isogeny).pass);
  }

  for (const auto& [p, name] : catalog_actions()) {
    CAPTURE(p);
    CAPTURE(name);
    CHECK(verify_root_inclusion(preset_action(p, name)).pass);
  }
  CHECK(verify_long_roots(preset_action("GL4", "outer-SO")).pass);
  CHECK(verify_long_roots(preset_action("E6ad", "inner-twisted-involution")).pass);
}
