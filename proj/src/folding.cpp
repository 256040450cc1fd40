#include "conorm/folding.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "conorm/error.hpp"

namespace conorm {

namespace {

Vec to_vec(const IntVector& x) {
  Vec v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = detail::to_int64(x[i]);
  return v;
}

bool survives(const GammaAction& a, std::size_t root) {
  for (auto g : root_stabilizer(a, root))
    if (!root_space_scalar(a, g, root).is_zero()) return false;
  return true;
}

}  // namespace

std::vector<bool> surviving_roots(const GammaAction& a) {
  std::vector<bool> out(a.datum().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = survives(a, i);
  return out;
}

RatVector averaged_restriction(const GammaAction& a, const Vec& x) {
  RatVector sum(a.rank());
  for (std::size_t g = 0; g < a.group().size(); ++g) {
    Vec y = a.diagram(g).apply(x);
    for (std::size_t k = 0; k < y.size(); ++k) sum[k] += y[k];
  }
  for (auto& s : sum) s /= static_cast<std::int64_t>(a.group().size());
  return sum;
}

FoldedDatum fold(const GammaAction& a) {
  const std::size_t n = a.rank();
  const RootDatum& rd = a.datum();
  std::vector<LatticeMap> cochar, chars;
  for (std::size_t g = 0; g < a.group().size(); ++g) {
    cochar.push_back(a.cochar_action(g));
    chars.push_back(a.diagram(g));
  }
  Sublattice fixed = fixed_sublattice(cochar);
  QuotientLattice coinv = coinvariant_quotient(chars);
  // both come from the same canonical basis, so restriction is its transpose
  if (coinv.projection != fixed.basis().transpose())
    throw InternalError("coinvariant projection does not pair perfectly with the fixed cocharacters");

  FoldedDatum f;
  f.restriction = coinv.projection;
  f.corestriction = fixed.basis();
  const std::size_t m = fixed.rank();

  struct Entry {
    Vec coroot;
    FoldProvenance prov;
    bool positive = false;
  };
  std::map<Vec, Entry> folded;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    if (!survives(a, i)) continue;
    Vec beta = f.restriction.apply(rd.root(i));
    auto orbit = root_orbit(a, i);
    Vec sum(n, 0);
    for (auto j : orbit) sum = sum + rd.coroot(j);
    const std::int64_t p = dot(rd.root(i), sum);
    if (p != 1 && p != 2)
      throw InternalError("coroot multiplier 2/" + std::to_string(p) + " for root " +
                          to_string(rd.root(i)) + " is not 1 or 2");
    auto coords = fixed.coordinates(IntVector(sum.begin(), sum.end()));
    if (!coords) throw InternalError("orbit sum of coroots is not fixed");
    Vec coroot = (2 / p) * to_vec(*coords);
    auto [it, fresh] = folded.try_emplace(beta);
    Entry& e = it->second;
    if (fresh) {
      e.coroot = coroot;
      e.prov.orbit = orbit;
      e.prov.multiplier = 2 / p;
      e.positive = a.base().is_positive(i);
    } else if (e.coroot != coroot) {
      throw InternalError("roots restricting to " + to_string(beta) + " give different coroots");
    }
    e.prov.source_roots.push_back(i);
  }

  std::vector<Vec> roots, coroots;
  std::vector<bool> positive;
  for (auto& [beta, e] : folded) {
    roots.push_back(beta);
    coroots.push_back(e.coroot);
    positive.push_back(e.positive);
    f.provenance.push_back(std::move(e.prov));
  }
  RootDatum datum(m, roots, coroots);
  auto report = validate(datum);
  if (!report.ok()) throw InternalError("folded datum is invalid: " + report.violations.front());

  std::vector<std::size_t> simple;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!positive[i]) continue;
    bool decomposable = false;
    for (std::size_t j = 0; j < roots.size() && !decomposable; ++j) {
      if (!positive[j] || j == i) continue;
      auto k = datum.find_root(roots[i] - roots[j]);
      decomposable = k && positive[*k];
    }
    if (!decomposable) simple.push_back(i);
  }
  f.fixed = BasedRootDatum(std::move(datum), std::move(simple));
  f.source = a;
  return f;
}

RestrictedRootComparison restricted_root_comparison(const GammaAction& a) {
  RestrictedRootComparison r;
  r.hypothesis = stabilizer_hypothesis(a);
  FoldedDatum f = fold(a);
  GammaAction pinned = pinned_projection(a);
  FoldedDatum fp = fold(pinned);

  auto rational_roots = [](const FoldedDatum& fd) {
    std::vector<RatVector> out;
    for (const auto& p : fd.provenance)
      out.push_back(averaged_restriction(fd.source, fd.source.datum().root(p.source_roots.front())));
    return out;
  };
  r.phi = rational_roots(f);
  r.phi_pinned = rational_roots(fp);
  auto lengths = classify_lengths(fp.fixed.datum());
  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (lengths[i] == RootLength::Short) r.phi_pinned_short.push_back(r.phi_pinned[i]);
  std::sort(r.phi.begin(), r.phi.end());
  std::sort(r.phi_pinned.begin(), r.phi_pinned.end());
  std::sort(r.phi_pinned_short.begin(), r.phi_pinned_short.end());

  auto contains = [](const std::vector<RatVector>& s, const RatVector& x) {
    return std::binary_search(s.begin(), s.end(), x);
  };
  for (const auto& x : r.phi)
    if (!contains(r.phi_pinned, x)) {
      r.phi_in_pinned = false;
      if (!r.inclusion_witness) r.inclusion_witness = x;
    }
  for (const auto& x : r.phi_pinned_short)
    if (!contains(r.phi, x)) {
      r.pinned_short_in_phi = false;
      if (!r.short_witness) r.short_witness = x;
    }
  return r;
}

DualLengthComparison dual_length_comparison(const GammaAction& a) {
  StabilizerReport hyp = stabilizer_hypothesis(a);
  if (auto w = hyp.witness())
    throw InvalidArgument("stabilizer of component " + hyp.components[*w].type.label() +
                          " is not cyclic and faithful");
  bool nontrivial = std::any_of(hyp.components.begin(), hyp.components.end(),
                                [](const ComponentStabilizer& c) { return !c.trivial; });
  if (!nontrivial) throw InvalidArgument("no component has a nontrivial stabilizer");

  FoldedDatum f = fold(a);
  FoldedDatum fp = fold(pinned_projection(a));
  DualLengthComparison r;
  r.dual = f.fixed.datum().coroots();
  r.dual_pinned = fp.fixed.datum().coroots();
  RootDatum pinned_dual = dual_root_datum(fp.fixed.datum());
  auto lengths = classify_lengths(pinned_dual);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] == RootLength::Long)
      r.dual_pinned_long.push_back(pinned_dual.root(i));
    else
      r.two_lengths = true;
  }
  std::sort(r.dual.begin(), r.dual.end());
  std::sort(r.dual_pinned.begin(), r.dual_pinned.end());
  std::sort(r.dual_pinned_long.begin(), r.dual_pinned_long.end());
  r.long_in_dual = std::includes(r.dual.begin(), r.dual.end(), r.dual_pinned_long.begin(),
                                 r.dual_pinned_long.end());
  r.dual_in_pinned =
      std::includes(r.dual_pinned.begin(), r.dual_pinned.end(), r.dual.begin(), r.dual.end());
  return r;
}

std::size_t weyl_embedding_matches(const FoldedDatum& f, std::size_t cap) {
  const GammaAction& a = f.source;
  auto W = weyl_group(a.base(), cap);
  std::vector<SmallMatrix> diagrams;
  for (const auto& d : a.diagrams()) diagrams.push_back(d.to_small());
  SmallMatrix p = f.restriction.to_small();
  std::vector<SmallMatrix> fixed_images;
  for (const auto& w : W) {
    bool commutes = std::all_of(diagrams.begin(), diagrams.end(), [&](const SmallMatrix& d) {
      return d * w.action == w.action * d;
    });
    if (commutes) fixed_images.push_back(p * w.action);
  }
  std::size_t matched = 0;
  for (std::size_t k = 0; k < f.fixed.semisimple_rank(); ++k) {
    SmallMatrix target = simple_reflection(f.fixed, k) * p;
    if (std::find(fixed_images.begin(), fixed_images.end(), target) != fixed_images.end()) ++matched;
  }
  return matched;
}

std::vector<Vec> restricted_simple_orbits(const FoldedDatum& f) {
  const GammaAction& a = f.source;
  std::set<Vec> out;
  for (std::size_t k = 0; k < a.base().semisimple_rank(); ++k) {
    const std::size_t i = a.base().simple_indices()[k];
    if (survives(a, i)) out.insert(f.restriction.apply(a.datum().root(i)));
  }
  return {out.begin(), out.end()};
}

}  // namespace conorm
