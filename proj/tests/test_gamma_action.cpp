#include "doctest.h"

#include <random>
#include <set>

#include "conorm/catalog.hpp"
#include "conorm/error.hpp"
#include "conorm/gamma_action.hpp"

using namespace conorm;

namespace {

std::size_t root_index(const BasedRootDatum& b, const Vec& coords) {
  Vec v(b.rank(), 0);
  for (std::size_t k = 0; k < coords.size(); ++k) v = v + coords[k] * b.simple_root(k);
  auto i = b.datum().find_root(v);
  REQUIRE(i.has_value());
  return *i;
}

bool is_group(const FiniteGroup& g) {
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (g.mul(a, g.inverse(a)) != g.identity()) return false;
    for (std::size_t b = 0; b < g.size(); ++b)
      for (std::size_t c = 0; c < g.size(); ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("finite groups: tables, subgroups and quotients") {
  auto z4 = FiniteGroup::cyclic(4);
  auto s3 = FiniteGroup::symmetric3();
  auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  for (const auto* g : {&z4, &s3, &v4}) CHECK(is_group(*g));
  CHECK(z4.order(1) == 4);
  CHECK(z4.power(1, 2) == 2);
  CHECK(z4.is_cyclic({0, 1, 2, 3}));
  CHECK_FALSE(v4.is_cyclic({0, 1, 2, 3}));
  CHECK_FALSE(s3.is_cyclic({0, 1, 2, 3, 4, 5}));

  // S3 has normal subgroups 1, A3, S3; the transposition subgroup is not normal
  auto normals = s3.normal_subgroups();
  CHECK(normals.size() == 3);
  CHECK(s3.is_normal({0, 1, 2}));
  CHECK_FALSE(s3.is_normal({0, 3}));
  CHECK(s3.generated_subgroup({1}) == std::vector<std::size_t>{0, 1, 2});

  auto q = z4.quotient({0, 2});
  CHECK(q.group.size() == 2);
  CHECK(q.coset_of[1] == q.coset_of[3]);
  CHECK(q.coset_of[0] == q.coset_of[2]);
  CHECK(is_group(q.group));
  CHECK_THROWS_AS(s3.quotient({0, 3}), InvalidArgument);

  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}), InvalidArgument);
}

TEST_CASE("validate_action: catalog actions are valid") {
  for (const auto& [p, name] : catalog_actions()) {
    CAPTURE(p);
    CAPTURE(name);
    auto r = validate_action(preset_action(p, name));
    CHECK(r.ok());
  }
  CHECK(validate_action(GammaAction::trivial(gl_datum(3), 5)).ok());
}

TEST_CASE("validate_action: a twist breaking the cocycle condition is reported") {
  auto good = preset_action("GL4", "pinned-involution");
  REQUIRE(validate_action(good).ok());
  auto twists = good.twists();
  // t_theta = (1/3, 0, 0, 0): t_e = 0 = t_theta + theta t_theta fails on e1 - e4
  twists[1] = TorsionVector({1, 0, 0, 0}, 3);
  GammaAction bad(good.group(), good.base(), good.diagrams(), twists);
  auto r = validate_action(bad);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("validate_action: a diagram that is not a homomorphism is reported") {
  auto b = gl_datum(3);
  auto flip = preset_action("GL3", "pinned-involution").diagram(1);
  // Z/3 cannot act through an involution
  std::vector<LatticeMap> d{LatticeMap::identity(3), flip, flip};
  GammaAction bad(FiniteGroup::cyclic(3), b, d, std::vector<TorsionVector>(3, TorsionVector(3)));
  CHECK_FALSE(validate_action(bad).ok());
}

TEST_CASE("root orbits and stabilizers") {
  auto a2 = preset_action("SL3", "pinned-involution");
  const auto& b = a2.base();
  auto a1 = root_index(b, {1, 0});
  auto a2r = root_index(b, {0, 1});
  auto high = root_index(b, {1, 1});
  CHECK(root_orbit(a2, a1) == std::vector<std::size_t>{std::min(a1, a2r), std::max(a1, a2r)});
  CHECK(root_stabilizer(a2, a1) == std::vector<std::size_t>{0});
  CHECK(root_orbit(a2, high) == std::vector<std::size_t>{high});
  CHECK(root_stabilizer(a2, high).size() == 2);

  auto tri = preset_action("D4", "triality");
  auto center = root_index(tri.base(), {0, 1, 0, 0});
  CHECK(root_orbit(tri, center) == std::vector<std::size_t>{center});

  // orbit-stabilizer on every root of every catalog action
  for (const auto& [p, name] : catalog_actions()) {
    auto a = preset_action(p, name);
    for (std::size_t r = 0; r < a.datum().size(); ++r)
      CHECK(root_orbit(a, r).size() * root_stabilizer(a, r).size() == a.group().size());
  }
}

TEST_CASE("root space scalars") {
  auto a2 = preset_action("SL3", "pinned-involution");
  auto high = root_index(a2.base(), {1, 1});
  CHECK(root_space_scalar(a2, 1, high) == QmodZ(1, 2));
  for (std::size_t r = 0; r < a2.datum().size(); ++r) CHECK(root_space_scalar(a2, 0, r).is_zero());

  // outer-SO: the twist supplies 1/2 on the root e1 - e4 fixed by theta
  auto so = preset_action("GL4", "outer-SO");
  Vec e14{1, 0, 0, -1};
  auto i = so.datum().find_root(e14);
  REQUIRE(i.has_value());
  CHECK(so.act(1, *i) == *i);
  CHECK(root_space_scalar(so, 1, *i) == QmodZ(1, 2));
}

TEST_CASE("pinned actions have zero scalar on simple roots") {
  for (const auto& [p, name] : catalog_actions()) {
    auto a = pinned_projection(preset_action(p, name));
    CAPTURE(p);
    CAPTURE(name);
    CHECK(a.is_pinned());
    for (std::size_t g = 0; g < a.group().size(); ++g)
      for (auto s : a.base().simple_indices()) CHECK(root_space_scalar(a, g, s).is_zero());
  }
}

TEST_CASE("root space scalars satisfy the cocycle identity") {
  std::mt19937 rng(7);
  for (const auto& [p, name] : catalog_actions()) {
    auto a = preset_action(p, name);
    const auto& G = a.group();
    std::uniform_int_distribution<std::size_t> pick_g(0, G.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_r(0, a.datum().size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      auto g = pick_g(rng), h = pick_g(rng), r = pick_r(rng);
      CAPTURE(p);
      CAPTURE(name);
      CHECK(root_space_scalar(a, G.mul(g, h), r) ==
            root_space_scalar(a, g, a.act(h, r)) + root_space_scalar(a, h, r));
    }
  }
}

TEST_CASE("pinned projection") {
  auto so = preset_action("GL4", "outer-SO");
  auto sp = preset_action("GL4", "pinned-involution");
  CHECK(same_action(pinned_projection(so), sp));
  CHECK_FALSE(same_action(so, sp));
  for (const auto& [p, name] : catalog_actions()) {
    auto a = preset_action(p, name);
    auto once = pinned_projection(a);
    CHECK(same_action(pinned_projection(once), once));
    if (a.is_pinned()) CHECK(same_action(once, a));
  }
  auto triv = GammaAction::trivial(sl_datum(3), 2);
  CHECK(same_action(pinned_projection(triv), triv));
}

TEST_CASE("stabilizer hypothesis") {
  auto e6 = stabilizer_hypothesis(preset_action("E6ad", "pinned-involution"));
  CHECK(e6.cyclic_faithful());
  CHECK(e6.trivial_or_faithful_on_even_a());

  auto s3 = stabilizer_hypothesis(preset_action("D4", "S3"));
  CHECK_FALSE(s3.cyclic_faithful());
  REQUIRE(s3.witness().has_value());
  CHECK_FALSE(s3.components[*s3.witness()].cyclic);

  auto triv = stabilizer_hypothesis(GammaAction::trivial(gl_datum(3), 2));
  CHECK(triv.trivial_or_faithful_on_even_a());
  CHECK(triv.components.front().trivial);
  // stabilizers live in the image of Gamma, which is trivial here
  CHECK(triv.components.front().stabilizer_order == 1);
  CHECK(triv.components.front().faithful);
  CHECK(triv.cyclic_faithful());

  auto tri = stabilizer_hypothesis(preset_action("D4", "triality"));
  CHECK(tri.cyclic_faithful());
}

TEST_CASE("action kernel") {
  CHECK(action_kernel(GammaAction::trivial(gl_datum(2), 3)).size() == 3);
  CHECK(action_kernel(preset_action("GL4", "pinned-involution")) == std::vector<std::size_t>{0});
  // the shift by 2 on GL2 x GL2 has kernel of order 2
  CHECK(action_kernel(preset_action("GL2xGL2", "shift2")).size() == 2);
}

TEST_CASE("restriction to sub-data and subgroups") {
  // the GL3 x GL3 composite restricted to the square of the generator
  auto z4 = preset_action("GL3xGL3", "Z4-composite");
  auto sub = restrict_to_subgroup(z4, {0, 2});
  CHECK(sub.group().size() == 2);
  CHECK(validate_action(sub).ok());
  CHECK(sub.diagram(1) == z4.diagram(2));

  // a Levi of GL4 stable under the block swap: roots inside the 2+2 blocks
  auto bs = preset_action("GL4", "block-swap");
  std::vector<std::size_t> levi;
  for (std::size_t i = 0; i < bs.datum().size(); ++i) {
    const auto& r = bs.datum().root(i);
    if ((r[0] != 0 || r[1] != 0) != (r[2] != 0 || r[3] != 0)) levi.push_back(i);
  }
  REQUIRE(levi.size() == 4);
  auto la = restrict_action(bs, levi);
  CHECK(la.datum().size() == 4);
  CHECK(la.base().semisimple_rank() == 2);
  CHECK(validate_action(la).ok());
  for (std::size_t g = 0; g < 2; ++g)
    for (std::size_t r = 0; r < la.datum().size(); ++r) {
      auto big = bs.datum().find_root(la.datum().root(r));
      REQUIRE(big.has_value());
      CHECK(root_space_scalar(la, g, r) == root_space_scalar(bs, g, *big));
    }
}
