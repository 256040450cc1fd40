#include "conorm/gamma_action.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "conorm/error.hpp"

namespace conorm {

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> mult, std::vector<std::string> names)
    : mult_(std::move(mult)), names_(std::move(names)) {
  const std::size_t n = mult_.size();
  if (n == 0) throw InvalidArgument("group table is empty");
  for (const auto& row : mult_) {
    if (row.size() != n) throw InvalidArgument("group table is not square");
    for (auto x : row)
      if (x >= n) throw InvalidArgument("group table entry out of range");
  }
  if (!names_.empty() && names_.size() != n) throw InvalidArgument("wrong number of element names");
  std::optional<std::size_t> e;
  for (std::size_t c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mult_[c][x] == x && mult_[x][c] == x;
    if (ok) e = c;
  }
  if (!e) throw InvalidArgument("group table has no identity");
  identity_ = *e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]])
          throw InvalidArgument("group table is not associative at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mult_[a][b] == identity_) inverse_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (inverse_[a] == n) throw InvalidArgument("element " + std::to_string(a) + " has no inverse");
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n));
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m[a][b] = (a + b) % n;
    names[a] = a == 0 ? "e" : a == 1 ? "g" : "g^" + std::to_string(a);
  }
  return FiniteGroup(std::move(m), std::move(names));
}

FiniteGroup FiniteGroup::symmetric3() {
  using P = std::array<std::size_t, 3>;
  const std::vector<P> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
  std::vector<std::vector<std::size_t>> m(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      P c{perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]};
      m[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup(std::move(m), {"e", "(123)", "(132)", "(12)", "(13)", "(23)"});
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::vector<std::size_t>> m(na * nb, std::vector<std::size_t>(na * nb));
  std::vector<std::string> names(na * nb);
  for (std::size_t x = 0; x < na * nb; ++x) {
    names[x] = "(" + a.name(x / nb) + "," + b.name(x % nb) + ")";
    for (std::size_t y = 0; y < na * nb; ++y)
      m[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return FiniteGroup(std::move(m), std::move(names));
}

std::string FiniteGroup::name(std::size_t a) const {
  return names_.empty() ? std::to_string(a) : names_[a];
}

std::size_t FiniteGroup::power(std::size_t a, std::size_t k) const {
  std::size_t r = identity_;
  for (std::size_t i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::size_t FiniteGroup::order(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::vector<std::size_t> FiniteGroup::generated_subgroup(const std::vector<std::size_t>& gens) const {
  std::set<std::size_t> s{identity_};
  std::vector<std::size_t> todo{identity_};
  while (!todo.empty()) {
    std::size_t x = todo.back();
    todo.pop_back();
    for (auto g : gens) {
      std::size_t y = mul(x, g);
      if (s.insert(y).second) todo.push_back(y);
    }
  }
  return {s.begin(), s.end()};
}

bool FiniteGroup::is_subgroup(const std::vector<std::size_t>& s) const {
  std::set<std::size_t> set(s.begin(), s.end());
  if (!set.count(identity_)) return false;
  for (auto a : set)
    for (auto b : set)
      if (!set.count(mul(a, b))) return false;
  return true;
}

bool FiniteGroup::is_normal(const std::vector<std::size_t>& s) const {
  if (!is_subgroup(s)) return false;
  std::set<std::size_t> set(s.begin(), s.end());
  for (std::size_t g = 0; g < size(); ++g)
    for (auto x : set)
      if (!set.count(mul(mul(g, x), inverse(g)))) return false;
  return true;
}

bool FiniteGroup::is_cyclic(const std::vector<std::size_t>& s) const {
  return std::any_of(s.begin(), s.end(), [&](std::size_t x) { return order(x) == s.size(); });
}

std::vector<std::vector<std::size_t>> FiniteGroup::normal_subgroups() const {
  auto normal_closure = [&](std::vector<std::size_t> gens) {
    std::vector<std::size_t> all;
    for (auto x : gens)
      for (std::size_t g = 0; g < size(); ++g) all.push_back(mul(mul(g, x), inverse(g)));
    return generated_subgroup(all);
  };
  std::set<std::vector<std::size_t>> found{{identity_}};
  std::vector<std::vector<std::size_t>> todo{{identity_}};
  while (!todo.empty()) {
    auto n = todo.back();
    todo.pop_back();
    for (std::size_t g = 0; g < size(); ++g) {
      auto gens = n;
      gens.push_back(g);
      auto m = normal_closure(gens);
      if (found.insert(m).second) todo.push_back(m);
    }
  }
  std::vector<std::vector<std::size_t>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

QuotientGroup FiniteGroup::quotient(const std::vector<std::size_t>& normal) const {
  if (!is_normal(normal)) throw InvalidArgument("quotient by a subgroup that is not normal");
  QuotientGroup q;
  q.coset_of.assign(size(), size());
  for (std::size_t g = 0; g < size(); ++g) {
    if (q.coset_of[g] != size()) continue;
    const std::size_t id = q.representative.size();
    q.representative.push_back(g);
    for (auto n : normal) q.coset_of[mul(g, n)] = id;
  }
  const std::size_t k = q.representative.size();
  std::vector<std::vector<std::size_t>> m(k, std::vector<std::size_t>(k));
  std::vector<std::string> names(k);
  for (std::size_t a = 0; a < k; ++a) {
    names[a] = name(q.representative[a]) + "N";
    for (std::size_t b = 0; b < k; ++b)
      m[a][b] = q.coset_of[mul(q.representative[a], q.representative[b])];
  }
  q.group = FiniteGroup(std::move(m), std::move(names));
  return q;
}

// ---------------------------------------------------------------- GammaAction

GammaAction::GammaAction(FiniteGroup group, BasedRootDatum base, std::vector<LatticeMap> diagram,
                         std::vector<TorsionVector> twist, std::string name)
    : name_(std::move(name)),
      group_(std::move(group)),
      base_(std::move(base)),
      diagram_(std::move(diagram)),
      twist_(std::move(twist)) {
  const std::size_t n = base_.rank();
  if (diagram_.size() != group_.size() || twist_.size() != group_.size())
    throw InvalidArgument("action needs one diagram and one twist per group element");
  sc_ = build_structure_constants(base_);
  for (std::size_t g = 0; g < group_.size(); ++g) {
    if (diagram_[g].rows() != n || diagram_[g].cols() != n)
      throw RankMismatch("diagram of element " + group_.name(g) + " has the wrong shape");
    if (twist_[g].rank() != n)
      throw RankMismatch("twist of element " + group_.name(g) + " has the wrong rank");
    auto inv = diagram_[g].unimodular_inverse();
    if (!inv) throw InvalidArgument("diagram of element " + group_.name(g) + " is not invertible over Z");
    cochar_.push_back(inv->transpose());
    perm_.push_back(conorm::root_permutation(base_.datum(), diagram_[g]));
    pinned_.push_back(propagate_scalars(sc_, diagram_[g]));
  }
}

GammaAction GammaAction::pinned(FiniteGroup group, BasedRootDatum base, std::vector<LatticeMap> diagram,
                                std::string name) {
  std::vector<TorsionVector> t(group.size(), TorsionVector(base.rank()));
  return GammaAction(std::move(group), std::move(base), std::move(diagram), std::move(t),
                     std::move(name));
}

GammaAction GammaAction::trivial(BasedRootDatum base, std::size_t order) {
  const std::size_t n = base.rank();
  std::vector<LatticeMap> d(order, LatticeMap::identity(n));
  return pinned(FiniteGroup::cyclic(order), std::move(base), std::move(d),
                "trivial(" + std::to_string(order) + ")");
}

bool GammaAction::is_pinned() const {
  for (const auto& t : twist_)
    for (std::size_t k = 0; k < base_.semisimple_rank(); ++k)
      if (!t.pair(base_.simple_root(k)).is_zero()) return false;
  return true;
}

ValidationReport validate_action(const GammaAction& a) {
  ValidationReport rep;
  const FiniteGroup& G = a.group();
  const RootDatum& rd = a.datum();
  const std::size_t n = a.rank();
  if (a.diagram(G.identity()) != LatticeMap::identity(n))
    rep.violations.push_back("identity element does not act by the identity diagram");
  for (std::size_t g = 0; g < G.size(); ++g)
    for (std::size_t h = 0; h < G.size(); ++h)
      if (a.diagram(G.mul(g, h)) != a.diagram(g) * a.diagram(h))
        rep.violations.push_back("diagram is not a homomorphism at (" + G.name(g) + ", " +
                                 G.name(h) + ")");
  for (std::size_t g = 0; g < G.size(); ++g) {
    LatticeMap dt = a.diagram(g).transpose();
    for (std::size_t i = 0; i < rd.size(); ++i)
      if (dt.apply(rd.coroot(a.act(g, i))) != rd.coroot(i)) {
        rep.violations.push_back("diagram of " + G.name(g) + " does not carry coroot " +
                                 to_string(rd.coroot(i)) + " to the coroot of the image root");
        break;
      }
  }
  // t_{gh} = t_g + g.t_h modulo the center:  <a, t_gh> = <a, t_g> + <g^{-1} a, t_h>
  for (std::size_t g = 0; g < G.size(); ++g) {
    const auto& inv = a.root_permutation(G.inverse(g));
    for (std::size_t h = 0; h < G.size(); ++h) {
      const TorsionVector& tgh = a.twist(G.mul(g, h));
      for (std::size_t i = 0; i < rd.size(); ++i) {
        QmodZ lhs = tgh.pair(rd.root(i));
        QmodZ rhs = a.twist(g).pair(rd.root(i)) + a.twist(h).pair(rd.root(inv[i]));
        if (lhs != rhs) {
          rep.violations.push_back("cocycle condition fails for (" + G.name(g) + ", " + G.name(h) +
                                   ") at root " + to_string(rd.root(i)) + ": " + lhs.to_string() +
                                   " != " + rhs.to_string());
          break;
        }
      }
    }
  }
  return rep;
}

GammaAction pinned_projection(const GammaAction& a) {
  return GammaAction::pinned(a.group(), a.base(), a.diagrams(),
                             a.name().empty() ? "" : a.name() + "/pinned");
}

bool same_action(const GammaAction& a, const GammaAction& b) {
  if (!(a.group() == b.group()) || a.datum() != b.datum()) return false;
  for (std::size_t g = 0; g < a.group().size(); ++g) {
    if (a.diagram(g) != b.diagram(g)) return false;
    for (const auto& r : a.datum().roots())
      if (a.twist(g).pair(r) != b.twist(g).pair(r)) return false;
  }
  return true;
}

GammaAction restrict_action(const GammaAction& a, const std::vector<std::size_t>& roots) {
  std::vector<std::size_t> sorted(roots.begin(), roots.end());
  std::sort(sorted.begin(), sorted.end());
  std::set<std::size_t> set(sorted.begin(), sorted.end());
  for (std::size_t g = 0; g < a.group().size(); ++g)
    for (auto r : sorted)
      if (!set.count(a.act(g, r))) throw InvalidArgument("root subset is not stable under the group");
  const RootDatum& rd = a.datum();
  // simple roots of the subsystem: positive roots that are not a sum of two
  // positive roots of the subsystem
  std::vector<std::size_t> simple;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const std::size_t i = sorted[k];
    if (!a.base().is_positive(i)) continue;
    bool decomposable = false;
    for (auto j : sorted) {
      if (j == i || !a.base().is_positive(j)) continue;
      auto d = rd.find_root(rd.root(i) - rd.root(j));
      if (d && set.count(*d) && a.base().is_positive(*d)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(k);
  }
  BasedRootDatum sub(sub_datum(rd, sorted), simple);
  // Keep the big root vectors of the new simple roots as the pinning.  The
  // big action may scale them; fold that scalar into the twist.
  LatticeMap rows(simple.size(), a.rank());
  for (std::size_t r = 0; r < simple.size(); ++r)
    for (std::size_t c = 0; c < a.rank(); ++c) rows(r, c) = rd.root(sorted[simple[r]])[c];
  std::vector<TorsionVector> twists;
  for (std::size_t g = 0; g < a.group().size(); ++g) {
    RatVector target(simple.size());
    bool any = false;
    for (std::size_t r = 0; r < simple.size(); ++r) {
      // <g alpha, delta> = pinned scalar of g on alpha, alpha = g^{-1}(simple r)
      const std::size_t pre = a.act(a.group().inverse(g), sorted[simple[r]]);
      const QmodZ& c = a.pinned_scalar(g, pre);
      target[r] = Rational(c.num(), c.den());
      any = any || !c.is_zero();
    }
    if (!any) {
      twists.push_back(a.twist(g));
      continue;
    }
    auto delta = solve_rational(rows, target);
    if (!delta) throw InternalError("cannot absorb root vector scalars into a twist");
    RatVector t = a.twist(g).to_rationals();
    for (std::size_t c = 0; c < t.size(); ++c) t[c] += (*delta)[c];
    twists.push_back(TorsionVector::from_rationals(t));
  }
  return GammaAction(a.group(), std::move(sub), a.diagrams(), std::move(twists), a.name());
}

GammaAction restrict_to_subgroup(const GammaAction& a, const std::vector<std::size_t>& subgroup) {
  const FiniteGroup& G = a.group();
  if (!G.is_subgroup(subgroup)) throw InvalidArgument("elements do not form a subgroup");
  std::vector<std::size_t> h(subgroup.begin(), subgroup.end());
  std::sort(h.begin(), h.end());
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < h.size(); ++k) pos[h[k]] = k;
  std::vector<std::vector<std::size_t>> table(h.size(), std::vector<std::size_t>(h.size()));
  std::vector<std::string> names;
  std::vector<LatticeMap> diagrams;
  std::vector<TorsionVector> twists;
  for (std::size_t x = 0; x < h.size(); ++x) {
    for (std::size_t y = 0; y < h.size(); ++y) table[x][y] = pos.at(G.mul(h[x], h[y]));
    names.push_back(G.name(h[x]));
    diagrams.push_back(a.diagram(h[x]));
    twists.push_back(a.twist(h[x]));
  }
  return GammaAction(FiniteGroup(std::move(table), std::move(names)), a.base(), std::move(diagrams),
                     std::move(twists), a.name());
}

std::vector<std::size_t> root_orbit(const GammaAction& a, std::size_t root) {
  std::set<std::size_t> s;
  for (std::size_t g = 0; g < a.group().size(); ++g) s.insert(a.act(g, root));
  return {s.begin(), s.end()};
}

std::vector<std::size_t> root_stabilizer(const GammaAction& a, std::size_t root) {
  std::vector<std::size_t> s;
  for (std::size_t g = 0; g < a.group().size(); ++g)
    if (a.act(g, root) == root) s.push_back(g);
  return s;
}

QmodZ root_space_scalar(const GammaAction& a, std::size_t g, std::size_t root) {
  return a.pinned_scalar(g, root) + a.twist(g).pair(a.datum().root(a.act(g, root)));
}

std::vector<std::size_t> action_kernel(const GammaAction& a) {
  std::vector<std::size_t> k;
  const std::size_t n = a.rank();
  for (std::size_t g = 0; g < a.group().size(); ++g) {
    if (a.diagram(g) != LatticeMap::identity(n)) continue;
    bool inner_trivial = true;
    for (std::size_t s = 0; s < a.base().semisimple_rank(); ++s)
      inner_trivial = inner_trivial && a.twist(g).pair(a.base().simple_root(s)).is_zero();
    if (inner_trivial) k.push_back(g);
  }
  return k;
}

bool StabilizerReport::cyclic_faithful() const { return !witness().has_value(); }

std::optional<std::size_t> StabilizerReport::witness() const {
  for (std::size_t c = 0; c < components.size(); ++c)
    if (!components[c].cyclic || !components[c].faithful) return c;
  return std::nullopt;
}

bool StabilizerReport::trivial_or_faithful_on_even_a() const {
  for (const auto& c : components)
    if (c.type.family == 'A' && c.type.rank % 2 == 0 && !c.trivial && !c.faithful) return false;
  return true;
}

StabilizerReport stabilizer_hypothesis(const GammaAction& a) {
  StabilizerReport rep;
  const FiniteGroup& G = a.group();
  const BasedRootDatum& b = a.base();
  auto kernel = action_kernel(a);
  std::set<std::size_t> kset(kernel.begin(), kernel.end());
  for (std::size_t c = 0; c < b.components().size(); ++c) {
    ComponentStabilizer cs;
    cs.simple_positions = b.components()[c];
    cs.type = component_type(b, c);
    std::set<std::size_t> roots;
    for (auto p : cs.simple_positions) roots.insert(b.simple_indices()[p]);
    std::vector<std::size_t> stab;
    std::set<std::vector<std::size_t>> images;
    for (std::size_t g = 0; g < G.size(); ++g) {
      std::vector<std::size_t> img;
      bool inside = true;
      for (auto r : roots) {
        img.push_back(a.act(g, r));
        inside = inside && roots.count(img.back());
      }
      if (!inside) continue;
      stab.push_back(g);
      images.insert(img);
    }
    cs.stabilizer_order = stab.size() / kernel.size();
    cs.image_order = images.size();
    cs.faithful = cs.image_order == cs.stabilizer_order;
    cs.trivial = cs.image_order == 1;
    cs.cyclic = false;
    for (auto g : stab) {
      std::size_t k = 1, x = g;
      while (!kset.count(x)) {
        x = G.mul(x, g);
        ++k;
      }
      if (k == cs.stabilizer_order) cs.cyclic = true;
    }
    rep.components.push_back(std::move(cs));
  }
  return rep;
}

}  // namespace conorm
