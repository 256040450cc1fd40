#include "conorm/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <mutex>
#include <regex>
#include <set>

#include "conorm/error.hpp"

namespace conorm {

namespace {

Vec unit(std::size_t n, std::size_t i, std::int64_t s = 1) {
  Vec v(n, 0);
  v[i] = s;
  return v;
}

Vec pair_vec(std::size_t n, std::size_t i, std::int64_t a, std::size_t j, std::int64_t b) {
  Vec v(n, 0);
  v[i] += a;
  v[j] += b;
  return v;
}

BasedRootDatum with_base(const RootDatum& rd, const std::vector<Vec>& simple) {
  std::vector<std::size_t> idx;
  for (const auto& s : simple) {
    auto i = rd.find_root(s);
    if (!i) throw InternalError("simple root " + to_string(s) + " missing from preset");
    idx.push_back(*i);
  }
  return BasedRootDatum(rd, idx);
}

// +-e_i +- e_j for i < j, with coroots the same vectors.
void add_d_roots(std::size_t n, std::vector<Vec>& roots, std::vector<Vec>& coroots) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::int64_t a : {1, -1})
        for (std::int64_t b : {1, -1}) {
          roots.push_back(pair_vec(n, i, a, j, b));
          coroots.push_back(pair_vec(n, i, a, j, b));
        }
}

std::vector<Vec> chain_simple(std::size_t n) {
  std::vector<Vec> s;
  for (std::size_t i = 0; i + 1 < n; ++i) s.push_back(pair_vec(n, i, 1, i + 1, -1));
  return s;
}

// d(e_i) = -e_{n-1-i}
LatticeMap gl_outer(std::size_t n) {
  LatticeMap d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(n - 1 - i, i) = -1;
  return d;
}

std::vector<std::size_t> reversal(std::size_t k) {
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = k - 1 - i;
  return s;
}

GammaAction involution(const BasedRootDatum& b, LatticeMap d, std::string name,
                       TorsionVector twist = {}) {
  if (twist.rank() == 0) twist = TorsionVector(b.rank());
  return GammaAction(FiniteGroup::cyclic(2), b, {LatticeMap::identity(b.rank()), std::move(d)},
                     {TorsionVector(b.rank()), std::move(twist)}, std::move(name));
}

GammaAction cyclic_action(const BasedRootDatum& b, const LatticeMap& gen, std::size_t order,
                          std::string name) {
  std::vector<LatticeMap> ds{LatticeMap::identity(b.rank())};
  for (std::size_t k = 1; k < order; ++k) ds.push_back(gen * ds.back());
  return GammaAction::pinned(FiniteGroup::cyclic(order), b, std::move(ds), std::move(name));
}

std::size_t parse_suffix(const std::string& s, const std::string& prefix, std::size_t dflt) {
  if (s.size() == prefix.size()) return dflt;
  return static_cast<std::size_t>(std::stoul(s.substr(prefix.size())));
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

struct ParsedName {
  std::string family;  // GL, SL, PGL, Sp, SO, Spin, T, or an exceptional label
  std::size_t n = 0;
};

ParsedName parse_single(const std::string& name) {
  static const std::set<std::string> exceptional{"E6", "E6ad", "E6sc", "F4", "G2",
                                                 "D4", "D4sc", "D4ad"};
  if (exceptional.count(name)) return {name, 0};
  static const std::regex re(R"(^(GL|SL|PGL|Sp|SO|Spin|T)\(?([0-9]+)\)?$)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw InvalidArgument("unknown preset '" + name + "'");
  ParsedName p{m[1], static_cast<std::size_t>(std::stoul(m[2]))};
  if (p.family == "Sp" && (p.n == 0 || p.n % 2)) throw InvalidArgument("Sp(N) needs even N");
  if (p.family == "Spin" && p.n < 5) throw InvalidArgument("Spin(N) presets start at N = 5");
  if (p.family == "SO" && p.n < 2) throw InvalidArgument("SO(N) presets start at N = 2");
  if (p.n == 0 && p.family != "T") throw InvalidArgument("preset '" + name + "' needs n >= 1");
  return p;
}

std::vector<std::string> split_product(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == 'x' && i + 1 < name.size() && std::isupper(static_cast<unsigned char>(name[i + 1])) &&
        !cur.empty()) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += name[i];
    }
  }
  parts.push_back(cur);
  return parts;
}

BasedRootDatum single_datum(const ParsedName& p) {
  const auto& f = p.family;
  if (f == "GL") return gl_datum(p.n);
  if (f == "SL") return sl_datum(p.n);
  if (f == "PGL") return pgl_datum(p.n);
  if (f == "Sp") return sp_datum(p.n / 2);
  if (f == "SO") return so_datum(p.n);
  if (f == "Spin") return spin_datum(p.n);
  if (f == "T") return torus_datum(p.n);
  if (f == "E6" || f == "E6ad") return exceptional_datum('E', 6, LatticeKind::Adjoint);
  if (f == "E6sc") return exceptional_datum('E', 6, LatticeKind::SimplyConnected);
  if (f == "F4") return exceptional_datum('F', 4, LatticeKind::SimplyConnected);
  if (f == "G2") return exceptional_datum('G', 2, LatticeKind::SimplyConnected);
  if (f == "D4" || f == "D4sc") return exceptional_datum('D', 4, LatticeKind::SimplyConnected);
  if (f == "D4ad") return exceptional_datum('D', 4, LatticeKind::Adjoint);
  throw InvalidArgument("unknown preset family '" + f + "'");
}

std::vector<std::string> single_actions(const ParsedName& p) {
  const auto& f = p.family;
  std::vector<std::string> a{"trivial"};
  if ((f == "GL" && p.n >= 2) || ((f == "SL" || f == "PGL") && p.n >= 3))
    a.push_back("pinned-involution");
  if (f == "GL" && p.n % 2 == 0) {
    a.push_back("outer-SO");
    a.push_back("block-swap");
  }
  if ((f == "SO" || f == "Spin") && p.n % 2 == 0 && p.n >= 4) a.push_back("pinned-involution");
  if (starts_with(f, "E6")) {
    a.push_back("pinned-involution");
    a.push_back("inner-twisted-involution");
  }
  if (starts_with(f, "D4"))
    for (const char* s : {"pinned-involution", "triality", "S3", "triality-twisted", "S3-twisted"})
      a.push_back(s);
  return a;
}

const std::vector<std::size_t> kE6Involution{5, 1, 4, 3, 2, 0};
const std::vector<std::size_t> kD4Swap{0, 1, 3, 2};
const std::vector<std::size_t> kD4Triality{2, 1, 3, 0};

GammaAction d4_s3(const BasedRootDatum& b) {
  // leaves 0, 2, 3 of D4 labelled 0, 1, 2 in the order used by symmetric3()
  const std::vector<std::size_t> leaf{0, 2, 3};
  const std::vector<std::array<std::size_t, 3>> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                                      {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
  std::vector<LatticeMap> ds;
  for (const auto& p : perms) {
    std::vector<std::size_t> sigma{0, 1, 2, 3};
    for (std::size_t k = 0; k < 3; ++k) sigma[leaf[k]] = leaf[p[k]];
    ds.push_back(permutation_diagram(sigma));
  }
  return GammaAction::pinned(FiniteGroup::symmetric3(), b, std::move(ds), "S3");
}

GammaAction twisted_by_search(const GammaAction& pinned, std::size_t N,
                              const std::function<bool(const GammaAction&)>& accept,
                              const std::string& name) {
  auto found = search_twisted_action(pinned, N, accept);
  if (!found) throw InternalError("no twisted action '" + name + "' found by search");
  return GammaAction(found->group(), found->base(), found->diagrams(), found->twists(), name);
}

std::string fold_type(const GammaAction& a) { return cartan_type(fold(a).fixed).to_string(); }

// Actions that need a search are computed once per preset name.
template <class F>
GammaAction cached(const std::string& key, F&& make) {
  static std::mutex mu;
  static std::map<std::string, GammaAction> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  GammaAction a = make();
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(a)).first->second;
}

GammaAction single_action(const ParsedName& p, const BasedRootDatum& b, const std::string& action,
                          const std::string& preset_name) {
  const auto& f = p.family;
  const std::size_t n = b.rank();
  if (starts_with(action, "trivial")) {
    GammaAction t = GammaAction::trivial(b, parse_suffix(action, "trivial", 2));
    return t;
  }
  if (action == "pinned-involution") {
    if (f == "GL" && p.n >= 2) return involution(b, gl_outer(n), action);
    if ((f == "SL" || f == "PGL") && p.n >= 3)
      return involution(b, permutation_diagram(reversal(p.n - 1)), action);
    if (f == "SO" && p.n % 2 == 0 && p.n >= 4) {
      LatticeMap d = LatticeMap::identity(n);
      d(n - 1, n - 1) = -1;
      return involution(b, d, action);
    }
    if (f == "Spin" && p.n % 2 == 0 && p.n >= 6) {
      const std::size_t r = p.n / 2;
      std::vector<std::size_t> sigma(r);
      for (std::size_t i = 0; i < r; ++i) sigma[i] = i;
      std::swap(sigma[r - 1], sigma[r - 2]);
      return involution(b, permutation_diagram(sigma), action);
    }
    if (starts_with(f, "E6")) return involution(b, permutation_diagram(kE6Involution), action);
    if (starts_with(f, "D4")) return involution(b, permutation_diagram(kD4Swap), action);
  }
  if (action == "outer-SO" && f == "GL" && p.n % 2 == 0) {
    Vec num(n, 0);
    for (std::size_t i = 0; i < n / 2; ++i) num[i] = 1;
    return involution(b, gl_outer(n), action, TorsionVector(num, 2));
  }
  if (action == "block-swap" && f == "GL" && p.n % 2 == 0) {
    // conjugation by the block swap, moved into the torus: Int(diag(1,..,1,-1,..,-1))
    Vec num(n, 0);
    for (std::size_t i = n / 2; i < n; ++i) num[i] = 1;
    return involution(b, LatticeMap::identity(n), action, TorsionVector(num, 2));
  }
  if (action == "inner-twisted-involution" && starts_with(f, "E6")) {
    return cached(preset_name + "/" + action, [&] {
      return twisted_by_search(involution(b, permutation_diagram(kE6Involution), action), 2,
                               [](const GammaAction& a) { return fold_type(a) == "C4"; }, action);
    });
  }
  if (starts_with(f, "D4")) {
    if (action == "triality") return cyclic_action(b, permutation_diagram(kD4Triality), 3, action);
    if (action == "S3") return d4_s3(b);
    if (action == "triality-twisted")
      return cached(preset_name + "/" + action, [&] {
        return twisted_by_search(cyclic_action(b, permutation_diagram(kD4Triality), 3, action), 3,
                                 [](const GammaAction& a) { return fold_type(a) == "A2"; }, action);
      });
    if (action == "S3-twisted")
      return cached(preset_name + "/" + action, [&] {
        return twisted_by_search(d4_s3(b), 2,
                                 [](const GammaAction& a) {
                                   return !restricted_root_comparison(a).pinned_short_in_phi;
                                 },
                                 action);
      });
  }
  throw InvalidArgument("preset '" + preset_name + "' has no action '" + action + "'");
}

}  // namespace

// ---------------------------------------------------------------- data

BasedRootDatum gl_datum(std::size_t n) {
  std::vector<Vec> r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) r.push_back(pair_vec(n, i, 1, j, -1));
  return with_base(RootDatum(n, r, r), chain_simple(n));
}

BasedRootDatum sl_datum(std::size_t n) {
  if (n < 2) return torus_datum(0);
  return from_cartan_matrix(cartan_matrix_of_type('A', n - 1), LatticeKind::SimplyConnected);
}

BasedRootDatum pgl_datum(std::size_t n) {
  if (n < 2) return torus_datum(0);
  return from_cartan_matrix(cartan_matrix_of_type('A', n - 1), LatticeKind::Adjoint);
}

BasedRootDatum torus_datum(std::size_t n) { return BasedRootDatum(RootDatum(n, {}, {}), {}); }

BasedRootDatum sp_datum(std::size_t n) {
  std::vector<Vec> roots, coroots;
  add_d_roots(n, roots, coroots);
  for (std::size_t i = 0; i < n; ++i)
    for (std::int64_t s : {1, -1}) {
      roots.push_back(unit(n, i, 2 * s));
      coroots.push_back(unit(n, i, s));
    }
  auto simple = chain_simple(n);
  simple.push_back(unit(n, n - 1, 2));
  return with_base(RootDatum(n, roots, coroots), simple);
}

BasedRootDatum so_datum(std::size_t N) {
  const std::size_t n = N / 2;
  std::vector<Vec> roots, coroots;
  add_d_roots(n, roots, coroots);
  auto simple = chain_simple(n);
  if (N % 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::int64_t s : {1, -1}) {
        roots.push_back(unit(n, i, s));
        coroots.push_back(unit(n, i, 2 * s));
      }
    simple.push_back(unit(n, n - 1));
  } else if (n >= 2) {
    simple.push_back(pair_vec(n, n - 2, 1, n - 1, 1));
  }
  return with_base(RootDatum(n, roots, coroots), simple);
}

BasedRootDatum spin_datum(std::size_t N) {
  if (N < 5) throw InvalidArgument("Spin(N) presets start at N = 5");
  return from_cartan_matrix(cartan_matrix_of_type(N % 2 ? 'B' : 'D', N / 2),
                            LatticeKind::SimplyConnected);
}

BasedRootDatum exceptional_datum(char family, std::size_t rank, LatticeKind kind) {
  return from_cartan_matrix(cartan_matrix_of_type(family, rank), kind);
}

BasedRootDatum product_datum(const std::vector<BasedRootDatum>& factors) {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.rank();
  std::vector<Vec> roots, coroots;
  std::vector<std::size_t> simple;
  std::size_t offset = 0;
  for (const auto& f : factors) {
    const RootDatum& rd = f.datum();
    const std::size_t base_index = roots.size();
    for (std::size_t i = 0; i < rd.size(); ++i) {
      Vec r(n, 0), c(n, 0);
      std::copy(rd.root(i).begin(), rd.root(i).end(), r.begin() + static_cast<std::ptrdiff_t>(offset));
      std::copy(rd.coroot(i).begin(), rd.coroot(i).end(), c.begin() + static_cast<std::ptrdiff_t>(offset));
      roots.push_back(std::move(r));
      coroots.push_back(std::move(c));
    }
    for (auto s : f.simple_indices()) simple.push_back(base_index + s);
    offset += f.rank();
  }
  return BasedRootDatum(RootDatum(n, roots, coroots), simple);
}

LatticeMap permutation_diagram(const std::vector<std::size_t>& sigma) {
  LatticeMap p(sigma.size(), sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) p(sigma[i], i) = 1;
  return p;
}

LatticeMap block_diagram(const std::vector<std::size_t>& target, const std::vector<LatticeMap>& blocks) {
  std::vector<std::size_t> offset{0};
  for (const auto& b : blocks) offset.push_back(offset.back() + b.cols());
  const std::size_t n = offset.back();
  LatticeMap d(n, n);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const LatticeMap& b = blocks[k];
    if (b.rows() != blocks[target[k]].cols()) throw RankMismatch("block sizes do not match");
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) d(offset[target[k]] + r, offset[k] + c) = b(r, c);
  }
  return d;
}

GammaAction product_action(const BasedRootDatum& h, std::size_t r, std::size_t m) {
  if (r == 0 || m == 0) throw InvalidArgument("product action needs r, m >= 1");
  BasedRootDatum b = product_datum(std::vector<BasedRootDatum>(r, h));
  std::vector<std::size_t> shift(r);
  for (std::size_t k = 0; k < r; ++k) shift[k] = (k + 1) % r;
  LatticeMap gen = block_diagram(shift, std::vector<LatticeMap>(r, LatticeMap::identity(h.rank())));
  return cyclic_action(b, gen, r * m, "shift(r=" + std::to_string(r) + ",m=" + std::to_string(m) + ")");
}

GammaAction z4_composite(const GammaAction& inv) {
  const FiniteGroup& g = inv.group();
  if (g.size() != 2) throw InvalidArgument("z4_composite needs an involution");
  const std::size_t theta = g.identity() == 0 ? 1 : 0;
  const std::size_t n = inv.rank();
  BasedRootDatum b = product_datum({inv.base(), inv.base()});
  // (x, y) -> (d y, x): factor 0 goes to factor 1 unchanged, factor 1 to factor 0 via d
  LatticeMap gen = block_diagram({1, 0}, {LatticeMap::identity(n), inv.diagram(theta)});
  GammaAction a = cyclic_action(b, gen, 4, "Z4-composite");
  if (!inv.twist(theta).is_zero()) throw InvalidArgument("z4_composite needs a pinned involution");
  return a;
}

std::optional<GammaAction> search_twisted_action(
    const GammaAction& pinned, std::size_t N,
    const std::function<bool(const GammaAction&)>& accept) {
  const FiniteGroup& G = pinned.group();
  const BasedRootDatum& b = pinned.base();
  const std::size_t k = b.semisimple_rank(), s = G.size();
  // homomorphisms G -> Z/N
  std::vector<std::vector<std::size_t>> homs;
  std::vector<std::size_t> chi(s, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == s) {
      for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y)
          if (chi[G.mul(x, y)] != (chi[x] + chi[y]) % N) return;
      if (std::any_of(chi.begin(), chi.end(), [](std::size_t v) { return v != 0; })) homs.push_back(chi);
      return;
    }
    if (i == G.identity()) {
      chi[i] = 0;
      rec(i + 1);
      return;
    }
    for (std::size_t v = 0; v < N; ++v) {
      chi[i] = v;
      rec(i + 1);
    }
  };
  rec(0);

  // diagram orbits of simple positions
  std::vector<std::size_t> orbit_of(k, k);
  std::size_t orbits = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (orbit_of[i] != k) continue;
    for (std::size_t g = 0; g < s; ++g)
      orbit_of[*b.simple_position(pinned.act(g, b.simple_indices()[i]))] = orbits;
    ++orbits;
  }
  LatticeMap simple_rows(k, b.rank());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < b.rank(); ++c) simple_rows(i, c) = b.simple_root(i)[c];

  for (const auto& h : homs) {
    std::vector<std::size_t> vals(orbits, 0);
    while (true) {
      // next value vector (skip the zero vector)
      std::size_t pos = 0;
      while (pos < orbits && ++vals[pos] == N) vals[pos++] = 0;
      if (pos == orbits) break;
      RatVector target(k);
      for (std::size_t i = 0; i < k; ++i)
        target[i] = Rational(static_cast<std::int64_t>(vals[orbit_of[i]]), static_cast<std::int64_t>(N));
      auto t = solve_rational(simple_rows, target);
      if (!t) continue;
      TorsionVector z = TorsionVector::from_rationals(*t);
      std::vector<TorsionVector> twists;
      for (std::size_t g = 0; g < s; ++g) twists.push_back(static_cast<std::int64_t>(h[g]) * z);
      GammaAction cand(G, b, pinned.diagrams(), twists, pinned.name());
      if (!validate_action(cand).ok()) continue;
      if (accept(cand)) return cand;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- presets

Preset preset(const std::string& name) {
  auto parts = split_product(name);
  Preset p;
  p.name = name;
  if (parts.size() == 1) {
    ParsedName pn = parse_single(name);
    p.datum = single_datum(pn);
    p.actions = single_actions(pn);
    p.doc = "split form in preset coordinates";
    return p;
  }
  std::vector<BasedRootDatum> factors;
  for (const auto& part : parts) factors.push_back(single_datum(parse_single(part)));
  p.datum = product_datum(factors);
  p.actions = {"trivial"};
  if (std::all_of(parts.begin(), parts.end(), [&](const std::string& s) { return s == parts[0]; })) {
    p.actions.push_back("cyclic");
    p.actions.push_back("shift<m>");
    if (parts.size() == 2) {
      p.actions.push_back("swap");
      auto single = single_actions(parse_single(parts[0]));
      if (std::find(single.begin(), single.end(), "pinned-involution") != single.end())
        p.actions.push_back("Z4-composite");
    }
  }
  p.doc = "product of " + std::to_string(parts.size()) + " factors";
  return p;
}

GammaAction preset_action(const Preset& p, const std::string& action) {
  auto parts = split_product(p.name);
  if (parts.size() == 1) return single_action(parse_single(p.name), p.datum, action, p.name);
  if (starts_with(action, "trivial")) return GammaAction::trivial(p.datum, parse_suffix(action, "trivial", 2));
  const bool same = std::all_of(parts.begin(), parts.end(), [&](const std::string& s) { return s == parts[0]; });
  if (same) {
    BasedRootDatum h = single_datum(parse_single(parts[0]));
    if (action == "cyclic" || (action == "swap" && parts.size() == 2)) {
      GammaAction a = product_action(h, parts.size(), 1);
      return GammaAction(a.group(), a.base(), a.diagrams(), a.twists(), action);
    }
    if (starts_with(action, "shift")) {
      GammaAction a = product_action(h, parts.size(), parse_suffix(action, "shift", 1));
      return GammaAction(a.group(), a.base(), a.diagrams(), a.twists(), action);
    }
    if (action == "Z4-composite" && parts.size() == 2)
      return z4_composite(single_action(parse_single(parts[0]), h, "pinned-involution", parts[0]));
  }
  throw InvalidArgument("preset '" + p.name + "' has no action '" + action + "'");
}

GammaAction preset_action(const std::string& preset_name, const std::string& action) {
  return preset_action(preset(preset_name), action);
}

std::vector<std::pair<std::string, std::string>> catalog_actions() {
  return {{"GL2", "trivial"},
          {"GL3", "pinned-involution"},
          {"GL4", "pinned-involution"},
          {"GL4", "outer-SO"},
          {"GL4", "block-swap"},
          {"GL4", "trivial3"},
          {"GL6", "outer-SO"},
          {"SL3", "pinned-involution"},
          {"SL4", "pinned-involution"},
          {"SL5", "pinned-involution"},
          {"PGL3", "pinned-involution"},
          {"Sp4", "trivial"},
          {"SO5", "trivial"},
          {"SO8", "pinned-involution"},
          {"Spin8", "pinned-involution"},
          {"G2", "trivial"},
          {"F4", "trivial"},
          {"E6ad", "pinned-involution"},
          {"E6ad", "inner-twisted-involution"},
          {"E6sc", "pinned-involution"},
          {"D4", "triality"},
          {"D4", "S3"},
          {"D4", "triality-twisted"},
          {"D4", "S3-twisted"},
          {"D4ad", "triality"},
          {"GL2xGL2", "swap"},
          {"GL2xGL2", "shift2"},
          {"SL2xSL2xSL2", "cyclic"},
          {"GL3xGL3", "Z4-composite"}};
}

std::vector<GoldenFold> golden_folds() {
  return {{"GL4", "pinned-involution", "C2", "GL(4) -> Sp(4)"},
          {"GL6", "pinned-involution", "C3", "GL(6) -> Sp(6)"},
          {"GL8", "pinned-involution", "C4", "GL(8) -> Sp(8)"},
          {"GL4", "outer-SO", "A1xA1", "GL(4) -> SO(4), type D2"},
          {"GL6", "outer-SO", "A3", "GL(6) -> SO(6), type D3"},
          {"GL8", "outer-SO", "D4", "GL(8) -> SO(8)"},
          {"SL3", "pinned-involution", "A1", "SL(3) -> SO(3), type B1"},
          {"SL5", "pinned-involution", "B2", "SL(5) -> SO(5)"},
          {"SL7", "pinned-involution", "B3", "SL(7) -> SO(7)"},
          {"SO8", "pinned-involution", "B3", "SO(8) -> SO(7)"},
          {"Spin8", "pinned-involution", "B3", "D4 -> B3"},
          {"E6ad", "pinned-involution", "F4", "E6 -> F4"},
          {"E6sc", "pinned-involution", "F4", "E6 -> F4"},
          {"D4", "triality", "G2", "D4 -> G2"},
          {"D4", "S3", "G2", "D4 -> G2 under the full S3"},
          {"D4ad", "triality", "G2", "D4 -> G2"},
          {"E6ad", "inner-twisted-involution", "C4", "E6 -> C4 (twisted)"},
          {"D4", "triality-twisted", "A2", "D4 -> A2 (twisted)"},
          {"GL4", "block-swap", "A1xA1+T2", "GL(4) -> GL(2) x GL(2)"},
          {"GL2xGL2", "swap", "A1+T1", "diagonal GL(2)"},
          {"GL3xGL3", "Z4-composite", "A1", "diagonal SO(3)"},
          {"GL3", "pinned-involution", "A1", "GL(3) -> SO(3)"},
          {"SL4", "pinned-involution", "C2", "SL(4) -> Sp(4)"},
          {"PGL3", "pinned-involution", "A1", "PGL(3) -> SO(3)"},
          {"D4", "S3-twisted", "A1xA1", "D4 -> SO(4) inside G2 (twisted involution)"},
          {"GL2xGL2", "shift2", "A1+T1", "diagonal GL(2), stabilizer acting trivially"},
          {"SL2xSL2xSL2", "cyclic", "A1", "diagonal SL(2)"},
          {"GL2", "trivial", "A1+T1", "trivial action"},
          {"GL4", "trivial3", "A3+T1", "trivial action"},
          {"Sp4", "trivial", "C2", "trivial action"},
          {"SO5", "trivial", "B2", "trivial action"},
          {"G2", "trivial", "G2", "trivial action"},
          {"F4", "trivial", "F4", "trivial action"}};
}

// ---------------------------------------------------------------- isogenies

namespace {

LatticeMap root_span_with(const BasedRootDatum& b, const std::vector<Vec>& extra) {
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < b.semisimple_rank(); ++k) cols.push_back(b.simple_root(k));
  for (const auto& e : extra) cols.push_back(e);
  return Sublattice::span(LatticeMap::from_columns(cols, b.rank())).basis();
}

LatticeMap block_diag(const LatticeMap& a, const LatticeMap& b) {
  return block_diagram({0, 1}, {a, b});
}

IsogenyPreset make_isogeny(const GammaAction& source, const LatticeMap& m, const std::string& name) {
  IsogenyPreset p{quotient_isogeny(source.base(), m, name), source, quotient_action(source, m)};
  return p;
}

}  // namespace

IsogenyPreset preset_isogeny(const std::string& name, const std::string& action) {
  static const std::regex sl_pgl(R"(^SL(\d+)-PGL(\d+)$)");
  static const std::regex sl_gl(R"(^SL(\d+)xGL1-GL(\d+)$)");
  static const std::regex spin_so(R"(^Spin(\d+)-SO(\d+)$)");
  static const std::regex gl_mu2(R"(^GL(\d+)-GL(\d+)/mu2$)");
  std::smatch m;
  auto same = [&] { return m[1] == m[2]; };
  if (name == "SL2xSL2-PGL2xPGL2") {
    BasedRootDatum h = sl_datum(2);
    LatticeMap root = root_span_with(h, {});
    GammaAction a = product_action(h, 2, 1);
    return make_isogeny(GammaAction(a.group(), a.base(), a.diagrams(), a.twists(), "swap"),
                        block_diag(root, root), name);
  }
  if (std::regex_match(name, m, sl_pgl) && same()) {
    const std::size_t n = std::stoul(m[1]);
    Preset p = preset("SL" + std::to_string(n));
    std::string act = action.empty() ? (n >= 3 ? "pinned-involution" : "trivial") : action;
    return make_isogeny(preset_action(p, act), root_span_with(p.datum, {}), name);
  }
  if (std::regex_match(name, m, sl_gl) && same()) {
    const std::size_t n = std::stoul(m[1]);
    BasedRootDatum sl = sl_datum(n);
    BasedRootDatum b = product_datum({sl, torus_datum(1)});
    // e_i restricted to the SL(n) torus, in fundamental weights: w_i - w_{i-1}
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < n; ++i) {
      Vec c(n, 0);
      if (i + 1 < n) c[i] += 1;
      if (i > 0) c[i - 1] -= 1;
      c[n - 1] = 1;
      cols.push_back(c);
    }
    LatticeMap f = LatticeMap::from_columns(cols, n);
    std::string act = action.empty() ? "pinned-involution" : action;
    GammaAction a = starts_with(act, "trivial")
                        ? GammaAction::trivial(b, parse_suffix(act, "trivial", 2))
                        : [&] {
                            if (act != "pinned-involution" || n < 2)
                              throw InvalidArgument("isogeny '" + name + "' has no action '" + act + "'");
                            LatticeMap inv(1, 1);
                            inv(0, 0) = -1;
                            LatticeMap d = block_diag(permutation_diagram(reversal(n - 1)), inv);
                            return involution(b, d, act);
                          }();
    return make_isogeny(a, f, name);
  }
  if (std::regex_match(name, m, spin_so) && same()) {
    const std::size_t N = std::stoul(m[1]);
    Preset p = preset("Spin" + std::to_string(N));
    std::string act = action.empty() ? (N % 2 == 0 && N >= 6 ? "pinned-involution" : "trivial") : action;
    return make_isogeny(preset_action(p, act), root_span_with(p.datum, {unit(p.datum.rank(), 0)}), name);
  }
  if (std::regex_match(name, m, gl_mu2) && same()) {
    const std::size_t n = std::stoul(m[1]);
    Preset p = preset("GL" + std::to_string(n));
    std::string act = action.empty() ? "outer-SO" : action;
    return make_isogeny(preset_action(p, act), root_span_with(p.datum, {unit(n, 0, 2)}), name);
  }
  throw InvalidArgument("unknown isogeny preset '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> catalog_isogenies() {
  return {{"SL2-PGL2", "trivial"},
          {"SL3-PGL3", "pinned-involution"},
          {"SL2xSL2-PGL2xPGL2", "swap"},
          {"SL2xGL1-GL2", "pinned-involution"},
          {"SL3xGL1-GL3", "pinned-involution"},
          {"SL4xGL1-GL4", "trivial"},
          {"Spin5-SO5", "trivial"},
          {"Spin8-SO8", "pinned-involution"},
          {"GL4-GL4/mu2", "outer-SO"},
          {"GL4-GL4/mu2", "block-swap"}};
}

}  // namespace conorm
