#include "conorm/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "conorm/error.hpp"

namespace conorm {

// ---------------------------------------------------------------- RootDatum

RootDatum::RootDatum(std::size_t rank, std::vector<Vec> roots, std::vector<Vec> coroots)
    : rank_(rank), roots_(std::move(roots)), coroots_(std::move(coroots)) {
  if (roots_.size() != coroots_.size())
    throw InvalidArgument("root and coroot lists have different lengths");
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (roots_[i].size() != rank_ || coroots_[i].size() != rank_)
      throw RankMismatch("root or coroot " + std::to_string(i) + " has the wrong rank");
    root_index_.emplace(roots_[i], i);
    coroot_index_.emplace(coroots_[i], i);
  }
}

std::optional<std::size_t> RootDatum::find_root(const Vec& v) const {
  auto it = root_index_.find(v);
  if (it == root_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RootDatum::find_coroot(const Vec& v) const {
  auto it = coroot_index_.find(v);
  if (it == coroot_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootDatum::negative(std::size_t i) const {
  auto j = find_root(-roots_[i]);
  if (!j) throw InvalidArgument("root set is not closed under negation");
  return *j;
}

RootDatum RootDatum::sorted() const {
  std::vector<std::size_t> idx(roots_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return roots_[a] < roots_[b];
  });
  std::vector<Vec> r, c;
  for (auto i : idx) {
    r.push_back(roots_[i]);
    c.push_back(coroots_[i]);
  }
  return RootDatum(rank_, std::move(r), std::move(c));
}

ValidationReport validate(const RootDatum& rd) {
  ValidationReport rep;
  auto add = [&](std::string s) { rep.violations.push_back(std::move(s)); };
  const std::size_t n = rd.size();
  std::set<Vec> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.insert(rd.root(i)).second) add("duplicate root " + to_string(rd.root(i)));
    if (is_zero(rd.root(i))) add("zero root at index " + std::to_string(i));
  }
  if (!rep.ok()) return rep;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& a = rd.root(i);
    const Vec& av = rd.coroot(i);
    if (dot(a, av) != 2)
      add("<alpha,alpha^v> != 2 for root " + to_string(a) + " (pairing " +
          std::to_string(dot(a, av)) + ")");
    auto neg = rd.find_root(-a);
    if (!neg)
      add("-alpha missing for root " + to_string(a));
    else if (rd.coroot(*neg) != -av)
      add("coroot of -alpha is not -alpha^v for root " + to_string(a));
    if (rd.find_root(2 * a)) add("non-reduced: 2*alpha is a root for " + to_string(a));
  }
  if (!rep.ok()) return rep;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& a = rd.root(i);
    const Vec& av = rd.coroot(i);
    for (std::size_t j = 0; j < n; ++j) {
      Vec b = rd.root(j) - dot(rd.root(j), av) * a;
      auto k = rd.find_root(b);
      if (!k) {
        add("reflection in " + to_string(a) + " sends root " + to_string(rd.root(j)) +
            " outside the root set");
        continue;
      }
      Vec bv = rd.coroot(j) - dot(a, rd.coroot(j)) * av;
      if (rd.coroot(*k) != bv)
        add("dual reflection in " + to_string(av) + " is incompatible at coroot " +
            to_string(rd.coroot(j)));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- BasedRootDatum

BasedRootDatum::BasedRootDatum(RootDatum datum, std::vector<std::size_t> simple_indices)
    : datum_(std::move(datum)), simple_(std::move(simple_indices)) {
  const std::size_t n = datum_.rank();
  const std::size_t k = simple_.size();
  for (auto s : simple_)
    if (s >= datum_.size()) throw InvalidArgument("simple index out of range");

  std::vector<Vec> cols;
  for (auto s : simple_) cols.push_back(datum_.root(s));
  LatticeMap smat = LatticeMap::from_columns(cols, n);
  SmithForm snf = smith_normal_form(smat);
  if (snf.rank != k) throw InvalidArgument("simple roots are linearly dependent");

  coords_.resize(datum_.size());
  positive_.resize(datum_.size());
  for (std::size_t i = 0; i < datum_.size(); ++i) {
    IntVector a(datum_.root(i).begin(), datum_.root(i).end());
    IntVector y = snf.U.apply(a);
    for (std::size_t r = k; r < n; ++r)
      if (y[r] != 0)
        throw InvalidArgument("root " + to_string(datum_.root(i)) +
                              " is not in the span of the simple roots");
    IntVector z(k);
    for (std::size_t r = 0; r < k; ++r) {
      if (y[r] % snf.D(r, r) != 0)
        throw InvalidArgument("root " + to_string(datum_.root(i)) +
                              " is not an integral combination of the simple roots");
      z[r] = y[r] / snf.D(r, r);
    }
    Vec c(k);
    for (std::size_t r = 0; r < k; ++r) {
      Integer s = 0;
      for (std::size_t t = 0; t < k; ++t) s += snf.V(r, t) * z[t];
      c[r] = detail::to_int64(s);
    }
    bool nonneg = std::all_of(c.begin(), c.end(), [](auto x) { return x >= 0; });
    bool nonpos = std::all_of(c.begin(), c.end(), [](auto x) { return x <= 0; });
    if (!nonneg && !nonpos)
      throw InvalidArgument("not a base: root " + to_string(datum_.root(i)) +
                            " has coordinates of mixed sign");
    coords_[i] = std::move(c);
    positive_[i] = nonneg;
  }

  cartan_.assign(k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) cartan_[i][j] = dot(simple_root(j), simple_coroot(i));

  // connected components of the Dynkin graph
  std::vector<std::size_t> comp(k, k);
  for (std::size_t start = 0; start < k; ++start) {
    if (comp[start] != k) continue;
    std::size_t id = components_.size();
    components_.emplace_back();
    std::deque<std::size_t> q{start};
    comp[start] = id;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop_front();
      components_[id].push_back(u);
      for (std::size_t v = 0; v < k; ++v)
        if (comp[v] == k && cartan_[u][v] != 0) {
          comp[v] = id;
          q.push_back(v);
        }
    }
    std::sort(components_[id].begin(), components_[id].end());
  }
  component_of_root_.resize(datum_.size());
  for (std::size_t i = 0; i < datum_.size(); ++i) {
    for (std::size_t r = 0; r < k; ++r)
      if (coords_[i][r] != 0) {
        component_of_root_[i] = comp[r];
        break;
      }
  }
}

std::int64_t BasedRootDatum::height(std::size_t i) const {
  return std::accumulate(coords_[i].begin(), coords_[i].end(), std::int64_t{0});
}

std::optional<std::size_t> BasedRootDatum::simple_position(std::size_t i) const {
  for (std::size_t k = 0; k < simple_.size(); ++k)
    if (simple_[k] == i) return k;
  return std::nullopt;
}

std::vector<std::size_t> BasedRootDatum::positive_roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < datum_.size(); ++i)
    if (positive_[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> BasedRootDatum::component_roots(std::size_t c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < datum_.size(); ++i)
    if (component_of_root_[i] == c) out.push_back(i);
  return out;
}

BasedRootDatum standard_base(const RootDatum& rd) {
  auto lex_positive = [](const Vec& v) {
    for (auto x : v)
      if (x != 0) return x > 0;
    return false;
  };
  std::vector<std::size_t> simple;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    if (!lex_positive(rd.root(i))) continue;
    bool decomposable = false;
    for (std::size_t j = 0; j < rd.size() && !decomposable; ++j) {
      if (j == i || !lex_positive(rd.root(j))) continue;
      Vec d = rd.root(i) - rd.root(j);
      if (lex_positive(d) && rd.find_root(d)) decomposable = true;
    }
    if (!decomposable) simple.push_back(i);
  }
  return BasedRootDatum(rd, std::move(simple));
}

// ---------------------------------------------------------------- Weyl group

SmallMatrix simple_reflection(const BasedRootDatum& b, std::size_t k) {
  const std::size_t n = b.rank();
  const Vec& a = b.simple_root(k);
  const Vec& av = b.simple_coroot(k);
  SmallMatrix m = SmallMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) -= a[r] * av[c];
  return m;
}

std::vector<WeylElement> weyl_group(const BasedRootDatum& b, std::size_t cap) {
  const std::size_t n = b.rank();
  std::vector<SmallMatrix> gens;
  for (std::size_t k = 0; k < b.semisimple_rank(); ++k) gens.push_back(simple_reflection(b, k));

  std::vector<WeylElement> out;
  std::unordered_map<SmallMatrix, std::size_t, SmallMatrixHash> seen;
  out.push_back({SmallMatrix::identity(n), {}});
  seen.emplace(out[0].action, 0);
  std::size_t level_begin = 0;
  while (level_begin < out.size()) {
    std::size_t level_end = out.size();
    for (std::size_t idx = level_begin; idx < level_end; ++idx) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        SmallMatrix m = out[idx].action * gens[k];
        if (seen.count(m)) continue;
        if (out.size() >= cap)
          throw WeylCapExceeded("Weyl group has more than " + std::to_string(cap) + " elements");
        std::vector<std::size_t> word = out[idx].word;
        word.push_back(k);
        seen.emplace(m, out.size());
        out.push_back({std::move(m), std::move(word)});
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::vector<WeylElement> weyl_group(const RootDatum& rd, std::size_t cap) {
  return weyl_group(standard_base(rd), cap);
}

// ---------------------------------------------------------------- lengths

RationalMatrix invariant_inner_product(const RootDatum& rd) {
  const std::size_t n = rd.rank();
  RationalMatrix form(n, RatVector(n, Rational(0)));
  if (rd.size() == 0) return form;
  BasedRootDatum b = standard_base(rd);
  for (std::size_t c = 0; c < b.components().size(); ++c) {
    auto roots = b.component_roots(c);
    std::vector<std::vector<Integer>> raw(n, std::vector<Integer>(n, 0));
    for (auto i : roots) {
      const Vec& av = rd.coroot(i);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) raw[x][y] += Integer(av[x]) * av[y];
    }
    Integer longest = 0;
    for (auto i : roots) {
      const Vec& a = rd.root(i);
      Integer v = 0;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) v += raw[x][y] * a[x] * a[y];
      longest = std::max(longest, v);
    }
    Rational scale(Integer(2), longest);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) form[x][y] += scale * Rational(raw[x][y]);
  }
  return form;
}

Rational form_value(const RationalMatrix& form, const Vec& x, const Vec& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) s += form[i][j] * x[i] * y[j];
  }
  return s;
}

std::string to_string(RootLength l) { return l == RootLength::Short ? "short" : "long"; }

std::vector<RootLength> classify_lengths(const RootDatum& rd) {
  RationalMatrix form = invariant_inner_product(rd);
  std::vector<RootLength> out(rd.size());
  for (std::size_t i = 0; i < rd.size(); ++i)
    out[i] = form_value(form, rd.root(i), rd.root(i)) == 2 ? RootLength::Long : RootLength::Short;
  return out;
}

RootLength classify_length(const RootDatum& rd, std::size_t root_index) {
  if (root_index >= rd.size()) throw InvalidArgument("root index out of range");
  return classify_lengths(rd)[root_index];
}

// ---------------------------------------------------------------- Cartan type

std::vector<std::string> CartanType::labels() const {
  std::vector<std::string> out;
  for (const auto& c : components) out.push_back(c.label());
  return out;
}

std::string CartanType::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) s += (i ? "x" : "") + components[i].label();
  if (components.empty()) return "T" + std::to_string(central_rank);
  if (central_rank > 0) s += "+T" + std::to_string(central_rank);
  return s;
}

namespace {

ComponentType recognize_component(const BasedRootDatum& b, const std::vector<std::size_t>& nodes) {
  const auto& a = b.cartan_matrix();
  const std::size_t k = nodes.size();
  if (k == 1) return {'A', 1};
  std::map<std::size_t, std::vector<std::size_t>> adj;
  std::int64_t max_bond = 1;
  std::pair<std::size_t, std::size_t> multi{0, 0};
  for (auto i : nodes)
    for (auto j : nodes)
      if (i != j && a[i][j] != 0) {
        adj[i].push_back(j);
        std::int64_t m = a[i][j] * a[j][i];
        if (m > max_bond) {
          max_bond = m;
          multi = {i, j};
        }
      }
  if (max_bond == 3) return {'G', 2};
  if (max_bond == 2) {
    auto [i, j] = multi;
    if (k == 4 && adj[i].size() == 2 && adj[j].size() == 2) return {'F', 4};
    if (k == 2) {
      // B2 and C2 share a Cartan matrix; tell them apart by the lattice:
      // the long roots are divisible by 2 in X exactly for the C2 datum.
      std::size_t long_node = a[i][j] == -2 ? j : i;
      const Vec& r = b.simple_root(long_node);
      bool even = std::all_of(r.begin(), r.end(), [](auto x) { return x % 2 == 0; });
      return {even ? 'C' : 'B', 2};
    }
    std::size_t end = adj[i].size() == 1 ? i : j;
    std::size_t other = end == i ? j : i;
    // a[end][other] = <alpha_other, alpha_end^v> is -2 iff alpha_end is short
    return {a[end][other] == -2 ? 'B' : 'C', k};
  }
  std::vector<std::size_t> branch;
  for (auto i : nodes)
    if (adj[i].size() >= 3) branch.push_back(i);
  if (branch.empty()) return {'A', k};
  if (branch.size() > 1 || adj[branch[0]].size() > 3)
    throw InternalError("Dynkin diagram is not of finite type");
  std::vector<std::size_t> arms;
  for (auto start : adj[branch[0]]) {
    std::size_t prev = branch[0], cur = start, len = 1;
    while (true) {
      std::size_t next = prev;
      for (auto v : adj[cur])
        if (v != prev) next = v;
      if (next == prev) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {'D', k};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', k};
  throw InternalError("Dynkin diagram is not of finite type");
}

}  // namespace

CartanType cartan_type(const BasedRootDatum& b) {
  CartanType t;
  for (const auto& comp : b.components()) t.components.push_back(recognize_component(b, comp));
  std::sort(t.components.begin(), t.components.end(), [](const auto& x, const auto& y) {
    return std::pair(x.family, x.rank) < std::pair(y.family, y.rank);
  });
  t.central_rank = b.rank() - b.semisimple_rank();
  return t;
}

CartanType cartan_type(const RootDatum& rd) { return cartan_type(standard_base(rd)); }

ComponentType component_type(const BasedRootDatum& b, std::size_t component) {
  return recognize_component(b, b.components().at(component));
}

// ---------------------------------------------------------------- misc

bool is_closed_subsystem(const RootDatum& rd, const std::vector<std::size_t>& subset) {
  std::set<std::size_t> s(subset.begin(), subset.end());
  for (auto i : s) {
    if (i >= rd.size()) throw InvalidArgument("subset index out of range");
    auto neg = rd.find_root(-rd.root(i));
    if (!neg || !s.count(*neg)) return false;
  }
  for (auto i : s)
    for (auto j : s) {
      auto k = rd.find_root(rd.root(i) + rd.root(j));
      if (k && !s.count(*k)) return false;
    }
  return true;
}

RootDatum dual_root_datum(const RootDatum& rd) {
  return RootDatum(rd.rank(), rd.coroots(), rd.roots());
}

BasedRootDatum dual_based_root_datum(const BasedRootDatum& b) {
  return BasedRootDatum(dual_root_datum(b.datum()), b.simple_indices());
}

Integer root_lattice_index(const RootDatum& rd) {
  if (rd.size() == 0) return 1;
  SmithForm snf = smith_normal_form(LatticeMap::from_columns(rd.roots(), rd.rank()));
  Integer p = 1;
  for (const auto& d : snf.invariant_factors()) p *= d;
  return p;
}

std::vector<Vec> cartan_matrix_of_type(char family, std::size_t n) {
  auto bad = [&] {
    return InvalidArgument("no Cartan type " + std::string(1, family) + std::to_string(n));
  };
  const bool ok = (family == 'A' && n >= 1) || (family == 'B' && n >= 2) ||
                  (family == 'C' && n >= 2) || (family == 'D' && n >= 3) ||
                  (family == 'E' && n >= 6 && n <= 8) || (family == 'F' && n == 4) ||
                  (family == 'G' && n == 2);
  if (!ok) throw bad();
  std::vector<Vec> a(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](std::size_t i, std::size_t j) { a[i][j] = a[j][i] = -1; };
  switch (family) {
    case 'A':
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;
      break;
    case 'C':
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;
      break;
    case 'D':
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(2, 3);
      link(1, 3);
      for (std::size_t i = 3; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a[2][1] = -2;
      break;
    case 'G':
      a[0][1] = -1;
      a[1][0] = -3;
      break;
  }
  return a;
}

BasedRootDatum from_cartan_matrix(const std::vector<Vec>& cartan, LatticeKind kind) {
  const std::size_t k = cartan.size();
  for (const auto& row : cartan)
    if (row.size() != k) throw InvalidArgument("Cartan matrix must be square");
  std::vector<Vec> roots, coroots;
  for (std::size_t j = 0; j < k; ++j) {
    Vec e(k, 0);
    e[j] = 1;
    Vec col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = cartan[i][j];
    if (kind == LatticeKind::SimplyConnected) {
      roots.push_back(col);  // alpha_j = sum_i a_ij omega_i
      coroots.push_back(e);
    } else {
      roots.push_back(e);
      coroots.push_back(cartan[j]);  // <alpha_i, alpha_j^v> = a_ji
    }
  }
  std::unordered_map<Vec, std::size_t, VecHash> index;
  for (std::size_t i = 0; i < k; ++i) index.emplace(roots[i], i);
  for (std::size_t head = 0; head < roots.size(); ++head) {
    for (std::size_t s = 0; s < k; ++s) {
      Vec r = roots[head] - dot(roots[head], coroots[s]) * roots[s];
      if (index.count(r)) continue;
      Vec rv = coroots[head] - dot(roots[s], coroots[head]) * coroots[s];
      index.emplace(r, roots.size());
      roots.push_back(std::move(r));
      coroots.push_back(std::move(rv));
      if (roots.size() > 100000) throw InvalidArgument("Cartan matrix is not of finite type");
    }
  }
  std::vector<std::size_t> simple(k);
  std::iota(simple.begin(), simple.end(), 0);
  return BasedRootDatum(RootDatum(k, std::move(roots), std::move(coroots)), std::move(simple));
}

RootDatum sub_datum(const RootDatum& rd, const std::vector<std::size_t>& subset) {
  std::vector<Vec> r, c;
  for (auto i : subset) {
    if (i >= rd.size()) throw InvalidArgument("subset index out of range");
    r.push_back(rd.root(i));
    c.push_back(rd.coroot(i));
  }
  return RootDatum(rd.rank(), std::move(r), std::move(c));
}

}  // namespace conorm
