#include "conorm/duality.hpp"

#include <set>

#include "conorm/error.hpp"

namespace conorm {

namespace {

LatticeMap coinvariant_section(const GammaAction& a) {
  return coinvariant_quotient(a.diagrams()).section();
}

std::optional<Vec> integral(const RatVector& x) {
  Vec v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (denominator(x[i]) != 1) return std::nullopt;
    v[i] = detail::to_int64(numerator(x[i]));
  }
  return v;
}

RatVector to_rational(const IntVector& x) { return RatVector(x.begin(), x.end()); }

}  // namespace

NormData build_norm(const FoldedDatum& f) {
  NormData d;
  d.action = f.source;
  d.folded = f;
  const GammaAction& a = f.source;
  const std::size_t n = a.rank();
  LatticeMap section = coinvariant_section(a);
  d.norm_on_cochar = LatticeMap::zero(n, n);
  d.norm_pullback = LatticeMap::zero(n, section.domain_rank());
  for (std::size_t g = 0; g < a.group().size(); ++g) {
    d.norm_on_cochar = d.norm_on_cochar + a.cochar_action(g);
    d.norm_pullback = d.norm_pullback + a.diagram(g) * section;
  }
  return d;
}

NormData build_norm(const GammaAction& a) { return build_norm(fold(a)); }

ConormData build_conorm(const FoldedDatum& f) {
  ConormData c;
  c.norm = build_norm(f);
  c.conorm_matrix = c.norm.norm_pullback;
  return c;
}

ConormData build_conorm(const GammaAction& a) { return build_conorm(fold(a)); }

ValidationReport check_norm(const NormData& d) {
  ValidationReport rep;
  const GammaAction& a = d.action;
  QuotientLattice q = coinvariant_quotient(a.diagrams());
  const LatticeMap& rel = q.relations.basis();
  LatticeMap summed = LatticeMap::zero(a.rank(), a.rank());
  for (const auto& dg : a.diagrams()) summed = summed + dg;
  if (!(summed * rel).is_zero()) rep.violations.push_back("norm pullback depends on the lift");

  const LatticeMap& b = d.folded.corestriction;
  for (std::size_t j = 0; j < a.rank(); ++j) {
    IntVector image = d.norm_on_cochar.column(j);
    auto y = solve_rational(b, to_rational(image));
    auto yi = y ? integral(*y) : std::nullopt;
    if (!yi) {
      rep.violations.push_back("norm of cocharacter " + std::to_string(j) + " is not fixed");
      continue;
    }
    // <pullback(e_k), e_j> = <e_k, y>
    for (std::size_t k = 0; k < d.norm_pullback.domain_rank(); ++k)
      if (d.norm_pullback(j, k) != (*yi)[k])
        rep.violations.push_back("adjointness fails at (" + std::to_string(k) + ", " +
                                 std::to_string(j) + ")");
  }
  return rep;
}

ValidationReport validate_isogeny(const Isogeny& phi) {
  ValidationReport rep;
  const LatticeMap& f = phi.char_pullback;
  if (f.rows() != phi.source.rank() || f.cols() != phi.target.rank()) {
    rep.violations.push_back("pullback has the wrong shape");
    return rep;
  }
  if (!f.is_square() || f.determinant() == 0) {
    rep.violations.push_back("pullback is not injective with finite cokernel");
    return rep;
  }
  if (phi.source.size() != phi.target.size())
    rep.violations.push_back("source and target have different numbers of roots");
  std::set<std::size_t> hit;
  LatticeMap ft = f.transpose();
  for (std::size_t i = 0; i < phi.target.size(); ++i) {
    auto s = phi.source.find_root(f.apply(phi.target.root(i)));
    if (!s) {
      rep.violations.push_back("target root " + to_string(phi.target.root(i)) +
                               " does not pull back to a root");
      continue;
    }
    hit.insert(*s);
    if (ft.apply(phi.source.coroot(*s)) != phi.target.coroot(i))
      rep.violations.push_back("coroot of " + to_string(phi.source.root(*s)) +
                               " does not push forward to the matching coroot");
  }
  if (hit.size() != phi.target.size()) rep.violations.push_back("roots do not correspond bijectively");
  return rep;
}

Integer isogeny_degree(const Isogeny& phi) {
  Integer d = phi.char_pullback.determinant();
  return d < 0 ? Integer(-d) : d;
}

Isogeny identity_isogeny(const RootDatum& rd) {
  return Isogeny{rd, rd, LatticeMap::identity(rd.rank()), "identity"};
}

Isogeny dual_isogeny(const Isogeny& phi) {
  return Isogeny{dual_root_datum(phi.target), dual_root_datum(phi.source),
                 phi.char_pullback.transpose(), phi.name.empty() ? "" : phi.name + "^"};
}

BasedRootDatum central_quotient(const BasedRootDatum& b, const LatticeMap& m) {
  const RootDatum& rd = b.datum();
  if (m.rows() != rd.rank() || !m.is_square() || m.determinant() == 0)
    throw InvalidArgument("central quotient needs a full-rank square sublattice basis");
  LatticeMap mt = m.transpose();
  std::vector<Vec> roots, coroots;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    auto x = solve_rational(m, RatVector(rd.root(i).begin(), rd.root(i).end()));
    auto xi = x ? integral(*x) : std::nullopt;
    if (!xi) throw InvalidArgument("root " + to_string(rd.root(i)) + " is not in the sublattice");
    roots.push_back(*xi);
    coroots.push_back(mt.apply(rd.coroot(i)));
  }
  return BasedRootDatum(RootDatum(m.cols(), roots, coroots), b.simple_indices());
}

Isogeny quotient_isogeny(const BasedRootDatum& b, const LatticeMap& m, std::string name) {
  return Isogeny{b.datum(), central_quotient(b, m).datum(), m, std::move(name)};
}

GammaAction quotient_action(const GammaAction& a, const LatticeMap& m) {
  BasedRootDatum target = central_quotient(a.base(), m);
  auto inv = m.rational_inverse();
  std::vector<LatticeMap> diagrams;
  std::vector<TorsionVector> twists;
  LatticeMap mt = m.transpose();
  for (std::size_t g = 0; g < a.group().size(); ++g) {
    LatticeMap dm = a.diagram(g) * m;
    LatticeMap d(m.cols(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      IntVector col = dm.column(c);
      for (std::size_t r = 0; r < m.cols(); ++r) {
        Rational v = 0;
        for (std::size_t k = 0; k < col.size(); ++k) v += inv[r][k] * Rational(col[k]);
        if (denominator(v) != 1) throw InvalidArgument("sublattice is not stable under the action");
        d(r, c) = numerator(v);
      }
    }
    diagrams.push_back(std::move(d));
    twists.push_back(a.twist(g).transform(mt));
  }
  return GammaAction(a.group(), std::move(target), std::move(diagrams), std::move(twists),
                     a.name());
}

bool is_equivariant(const GammaAction& source, const GammaAction& target, const Isogeny& phi) {
  if (!(source.group() == target.group())) return false;
  const LatticeMap& f = phi.char_pullback;
  for (std::size_t g = 0; g < source.group().size(); ++g) {
    if (f * target.diagram(g) != source.diagram(g) * f) return false;
    for (const auto& r : target.datum().roots())
      if (target.twist(g).pair(r) != source.twist(g).pair(f.apply(r))) return false;
  }
  return true;
}

IsogenySquareReport verify_isogeny_square(const GammaAction& source, const GammaAction& target,
                                          const Isogeny& phi) {
  if (!is_equivariant(source, target, phi))
    throw InvalidArgument("isogeny does not intertwine the two actions");
  ConormData c = build_conorm(source);
  ConormData ct = build_conorm(target);
  IsogenySquareReport r;
  r.folded_pullback =
      c.norm.folded.restriction * phi.char_pullback * coinvariant_section(target);
  r.lhs = phi.char_pullback * ct.conorm_matrix;
  r.rhs = c.conorm_matrix * r.folded_pullback;
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace conorm
