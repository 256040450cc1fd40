// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conorm/catalog.hpp"
#include "conorm/classes.hpp"
#include "conorm/config.hpp"
#include "conorm/error.hpp"

#include "oracles.hpp"
#include "structure_checks.hpp"

using namespace conorm;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

bool run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.failures.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool in_time = limit_s <= 0 || secs < limit_s;
  bool ok = o.pass && in_time;
  std::printf("[%s] %d: %s: %s (%.2f s", ok ? "PASS" : "FAIL", id, title.c_str(), o.summary.c_str(), secs);
  if (limit_s > 0) std::printf(", limit %.0f s", limit_s);
  std::printf(")\n");
  if (!in_time) std::printf("       over the time limit\n");
  std::size_t shown = 0;
  for (const auto& f : o.failures) {
    if (shown++ == 10) {
      std::printf("       ... %zu more\n", o.failures.size() - 10);
      break;
    }
    std::printf("       %s\n", f.c_str());
  }
  std::fflush(stdout);
  return ok;
}

std::string label(const std::string& p, const std::string& a) { return p + "/" + a; }

// ------------------------------------------------------------------ 1

Outcome golden_table() {
  Outcome o;
  std::size_t matched = 0;
  auto table = golden_folds();
  std::set<std::pair<std::string, std::string>> covered;
  for (const auto& g : table) {
    covered.insert({g.preset, g.action});
    auto got = cartan_type(fold(preset_action(g.preset, g.action)).fixed).to_string();
    if (got == g.type)
      ++matched;
    else
      o.require(false, label(g.preset, g.action) + ": expected " + g.type + ", got " + got);
  }
  for (const auto& [p, a] : catalog_actions())
    o.require(covered.count({p, a}) > 0, label(p, a) + " has no expected type");
  o.summary = std::to_string(matched) + "/" + std::to_string(table.size()) + " fixed-group types match";
  return o;
}

// ------------------------------------------------------------------ 2

Outcome highest_root_scalar() {
  Outcome o;
  auto a = preset_action("SL3", "pinned-involution");
  const auto& b = a.base();
  std::size_t top = 0;
  for (std::size_t i : b.positive_roots())
    if (b.height(i) > b.height(top) || !b.is_positive(top)) top = i;
  o.require(b.height(top) == 2, "highest root has height 2");
  std::size_t g = 1;
  o.require(a.act(g, top) == top, "involution fixes the highest root");
  QmodZ c = root_space_scalar(a, g, top);
  o.require(c == QmodZ(1, 2), "scalar on the highest root space is -1, got exponent " + c.to_string());
  auto survive = surviving_roots(a);
  o.require(!survive[top], "highest root survives");
  auto f = fold(a);
  Vec image = f.restriction.apply(b.datum().root(top));
  o.require(!f.fixed.datum().find_root(image).has_value(), "restricted highest root is a root of the fold");
  o.require(f.fixed.datum().size() == 2, "fold has 2 roots, got " + std::to_string(f.fixed.datum().size()));
  o.require(f.fixed.semisimple_rank() == 1, "fold has semisimple rank 1");
  o.summary = "scalar -1 (exponent " + c.to_string() + "), restricted highest root excluded, fold " +
              cartan_type(f.fixed).to_string() + " with " + std::to_string(f.fixed.datum().size()) + " roots";
  return o;
}

// ------------------------------------------------------------------ 3

Outcome lemma_suite() {
  Outcome o;
  std::size_t inclusion = 0, shorts = 0, sandwiches = 0, single_length = 0;
  for (const auto& [p, name] : catalog_actions()) {
    auto a = preset_action(p, name);
    auto cmp = restricted_root_comparison(a);
    const auto& h = cmp.hypothesis;
    if (h.trivial_or_faithful_on_even_a()) {
      ++inclusion;
      o.require(cmp.phi_in_pinned, label(p, name) + ": restricted roots not inside the pinned ones");
    }
    if (h.cyclic_faithful()) {
      ++shorts;
      o.require(cmp.pinned_short_in_phi, label(p, name) + ": a short pinned restricted root is missing");
      bool acts = std::any_of(h.components.begin(), h.components.end(),
                              [](const ComponentStabilizer& s) { return !s.trivial; });
      if (acts) {
        auto d = dual_length_comparison(a);
        ++sandwiches;
        if (!d.two_lengths) ++single_length;
        o.require(d.long_in_dual, label(p, name) + ": long pinned dual roots not in the dual roots");
        o.require(d.dual_in_pinned, label(p, name) + ": dual roots not in the pinned dual roots");
      }
    }
  }
  std::ostringstream s;
  s << "inclusion " << inclusion << " actions, short roots " << shorts << ", sandwich " << sandwiches << " ("
    << single_length << " with a single root length)";
  o.summary = s.str();
  return o;
}

// ------------------------------------------------------------------ 4, 5

void absorb(Outcome& o, const VerifyReport& r) {
  if (!r.pass) {
    o.require(false, r.name + " failed");
    for (const auto& d : r.details) o.failures.push_back("  " + d);
    for (const auto& w : r.witnesses) o.failures.push_back("  witness " + w);
  }
}

Outcome pinning_factorization() {
  Outcome o;
  auto r = verify_pinning_factorization(preset_action("GL4", "outer-SO"), {2, 3, 5});
  absorb(o, r);
  o.summary = "GL4/outer-SO, q in {2,3,5}: " + std::to_string(r.details.size()) + " checks";
  return o;
}

Outcome identity_suite() {
  Outcome o;
  std::size_t reports = 0;
  auto take = [&](const VerifyReport& r) {
    ++reports;
    absorb(o, r);
  };
  take(verify_product_conorm(2, 1, gl_datum(2)));
  take(verify_product_conorm(3, 1, sl_datum(2)));
  take(verify_product_conorm(2, 2, gl_datum(2)));
  take(verify_product_conorm(2, 3, sl_datum(3)));
  take(verify_trivial_conorm(gl_datum(2), 2, {2, 3, 5}));
  take(verify_trivial_conorm(gl_datum(3), 3, {2, 4}));
  take(verify_trivial_conorm(sp_datum(2), 2, {3, 5}));
  take(verify_normal_subgroup_composition(preset_action("GL3xGL3", "Z4-composite"), {0, 2}, {2, 3}));
  std::size_t squares = 0;
  for (const auto& [name, action] : catalog_isogenies()) {
    bool wanted = name == "SL2-PGL2" || (name.rfind("SL", 0) == 0 && name.find("xGL1-GL") != std::string::npos);
    if (!wanted) continue;
    auto ip = preset_isogeny(name, action);
    take(verify_isogeny(ip.source_action, ip.target_action, ip.isogeny));
    ++squares;
  }
  o.require(squares >= 3, "expected SL2-PGL2 and at least two SL(n)xGL1-GL(n) isogenies");
  o.summary = std::to_string(reports) + " reports (product, power map, Z/4 composite, " + std::to_string(squares) +
              " isogeny squares)";
  return o;
}

// ------------------------------------------------------------------ 6

Outcome well_definedness() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  const std::int64_t primes[] = {2, 3, 5};
  std::size_t points = 0, actions = 0;
  for (const auto& [p, name] : catalog_actions()) {
    auto a = preset_action(p, name);
    auto cd = build_conorm(a);
    auto small = dual_group_orbits(cd.norm.folded.fixed.datum());
    auto big = dual_group_orbits(a.datum());
    const std::size_t m = cd.source_rank();
    ++actions;
    std::size_t bad = 0;
    for (int k = 0; k < 100; ++k) {
      std::int64_t prime = primes[k % 3];
      std::vector<std::int64_t> dens;
      for (std::int64_t d = 1; d <= 24; ++d)
        if (std::gcd(d, prime) == 1) dens.push_back(d);
      std::int64_t den = dens[rng() % dens.size()];
      Vec num(m);
      for (auto& x : num) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den));
      TorsionVector s(num, den);
      ++points;
      if (!conorm_well_defined_at(cd, small, big, s)) {
        if (bad++ < 3) o.failures.push_back(label(p, name) + " at " + s.to_string());
        o.pass = false;
      }
    }
  }
  o.summary = std::to_string(points) + " points over " + std::to_string(actions) + " actions, " +
              std::to_string(o.failures.size()) + " failures";
  return o;
}

// ------------------------------------------------------------------ 7

Outcome class_counts() {
  Outcome o;
  std::size_t cases = 0, swept = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto w = dual_group_orbits(gl_datum(n).datum());
    for (std::int64_t q : {2, 3, 4, 5}) {
      ++cases;
      auto f = FrobeniusStructure::split(q, n);
      auto got = enumerate_stable_classes(w, f);
      std::set<TorsionVector> reps;
      for (const auto& c : got) reps.insert(c.cls.representative);
      auto expected = oracle::gl_stable_points(w, n, q);
      std::size_t formula = static_cast<std::size_t>(oracle::ipow(q, n - 1) * (q - 1));
      std::string tag = "GL" + std::to_string(n) + " q=" + std::to_string(q);
      o.require(reps.size() == got.size(), tag + ": duplicate classes");
      o.require(reps == expected, tag + ": classes differ from the multiset sweep");
      o.require(got.size() == formula, tag + ": " + std::to_string(got.size()) + " classes, expected " +
                                           std::to_string(formula));
      // the orbit sweep over all points is affordable for small moduli
      std::int64_t mod = oracle::gl_modulus(n, q);
      if (oracle::ipow(mod, n) <= 2'000'000) {
        ++swept;
        o.require(oracle::sweep_stable_orbits(w, f, mod) == got.size(), tag + ": orbit sweep disagrees");
      }
    }
  }
  o.summary = std::to_string(cases) + " (n, q) cases match q^(n-1)(q-1) and the multiset sweep, " +
              std::to_string(swept) + " also the full orbit sweep";
  return o;
}

// ------------------------------------------------------------------ 8

Outcome levi_factorization() {
  Outcome o;
  auto a = preset_action("GL4", "block-swap");
  auto f = fold(a);
  std::vector<TorsionVector> pts = {TorsionVector({0, 0, 1, 2}, 3), parse_point("1/5,1/5,0,1/2"),
                                    parse_point("1/3,2/3,1/4,1/4")};
  for (const auto& s : pts) {
    auto levi = levi_for_element(f.fixed.datum(), s);
    o.require(levi.centralizer_roots.size() == 2, s.to_string() + " is not subregular");
    absorb(o, verify_levi_factorization(a, s));
  }
  o.summary = "GL4/block-swap at 3 subregular points";
  return o;
}

// ------------------------------------------------------------------ 9

struct NamedDatum {
  std::string name;
  BasedRootDatum datum;
};

std::vector<NamedDatum> integrity_data() {
  std::vector<NamedDatum> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back({"A" + std::to_string(n), gl_datum(n + 1)});
  for (std::size_t n = 2; n <= 6; ++n) out.push_back({"B" + std::to_string(n), so_datum(2 * n + 1)});
  for (std::size_t n = 2; n <= 6; ++n) out.push_back({"C" + std::to_string(n), sp_datum(n)});
  for (std::size_t n = 4; n <= 6; ++n) out.push_back({"D" + std::to_string(n), so_datum(2 * n)});
  out.push_back({"G2", exceptional_datum('G', 2, LatticeKind::Adjoint)});
  out.push_back({"F4", exceptional_datum('F', 4, LatticeKind::Adjoint)});
  out.push_back({"E6", exceptional_datum('E', 6, LatticeKind::Adjoint)});
  std::set<std::string> seen;
  for (const auto& [p, name] : catalog_actions()) {
    if (!seen.insert(p).second) continue;
    auto pr = preset(p);
    if (pr.datum.semisimple_rank() <= 6) out.push_back({p, pr.datum});
  }
  return out;
}

Outcome structure_integrity() {
  Outcome o;
  std::size_t data = 0, pairs = 0, triples = 0;
  for (const auto& nd : integrity_data()) {
    ++data;
    auto c = structure::integrity(nd.datum);
    pairs += c.pairs;
    triples += c.triples;
    o.require(c.sign_failures == 0, nd.name + ": " + std::to_string(c.sign_failures) + " bad constants");
    o.require(c.jacobi_failures == 0, nd.name + ": " + std::to_string(c.jacobi_failures) + " Jacobi failures");
  }
  // scalars propagated along every diagram of every catalog action, from the
  // pinned simple exponents and from nonzero ones
  std::mt19937_64 rng(7);
  std::size_t automorphisms = 0;
  for (const auto& [p, name] : catalog_actions()) {
    auto a = preset_action(p, name);
    const auto& b = a.base();
    for (std::size_t g = 0; g < a.group().size(); ++g) {
      std::vector<QmodZ> pinned(b.semisimple_rank()), random(b.semisimple_rank());
      for (std::size_t k = 0; k < pinned.size(); ++k) {
        pinned[k] = a.pinned_scalar(g, b.simple_indices()[k]);
        random[k] = QmodZ(static_cast<std::int64_t>(rng() % 12), 12);
      }
      for (const auto& sc : {pinned, random}) {
        ++automorphisms;
        std::size_t bad = structure::scalar_failures(b, a.diagram(g), sc);
        o.require(bad == 0, label(p, name) + " element " + std::to_string(g) + ": " + std::to_string(bad) +
                                " non-additive scalars");
      }
    }
  }
  std::ostringstream s;
  s << data << " data, " << pairs << " pairs, " << triples << " Jacobi triples, " << automorphisms
    << " propagated automorphisms";
  o.summary = s.str();
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "folding golden table", 5, golden_table);
  ok &= run(2, "highest root scalar in A2", 0, highest_root_scalar);
  ok &= run(3, "restricted root lemmas", 5, lemma_suite);
  ok &= run(4, "pinning factorization on classes", 60, pinning_factorization);
  ok &= run(5, "conorm identities", 30, identity_suite);
  ok &= run(6, "well-definedness on random points", 0, well_definedness);
  ok &= run(7, "GL(n) stable class counts", 60, class_counts);
  ok &= run(8, "Levi factorization", 10, levi_factorization);
  ok &= run(9, "structure constant integrity", 30, structure_integrity);
  std::printf("%s\n", ok ? "all criteria pass" : "some criteria FAILED");
  return ok ? 0 : 1;
}
