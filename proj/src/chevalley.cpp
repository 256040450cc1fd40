#include "conorm/chevalley.hpp"

#include <algorithm>
#include <functional>

#include "conorm/error.hpp"

namespace conorm {

std::optional<std::size_t> StructureConstants::position(std::size_t root) const {
  if (position_[root] == n_) return std::nullopt;
  return position_[root];
}

std::optional<std::pair<std::size_t, std::size_t>> StructureConstants::extraspecial_pair(
    std::size_t root) const {
  return extraspecial_[root];
}

std::int64_t StructureConstants::string_below(std::size_t i, std::size_t j) const {
  const RootDatum& rd = base_.datum();
  std::int64_t p = 0;
  while (rd.find_root(rd.root(j) - (p + 1) * rd.root(i))) ++p;
  return p;
}

StructureConstants build_structure_constants(const BasedRootDatum& base) {
  StructureConstants sc;
  sc.base_ = base;
  const RootDatum& rd = sc.base_.datum();
  const std::size_t n = rd.size();
  sc.n_ = n;
  sc.table_.assign(n * n, 0);
  sc.position_.assign(n, n);
  sc.extraspecial_.assign(n, std::nullopt);
  sc.lengths_.resize(n);
  RationalMatrix form = invariant_inner_product(rd);
  for (std::size_t i = 0; i < n; ++i) sc.lengths_[i] = form_value(form, rd.root(i), rd.root(i));

  sc.order_ = base.positive_roots();
  std::sort(sc.order_.begin(), sc.order_.end(), [&](std::size_t a, std::size_t b) {
    if (base.height(a) != base.height(b)) return base.height(a) < base.height(b);
    return base.coordinates(a) > base.coordinates(b);
  });
  for (std::size_t k = 0; k < sc.order_.size(); ++k) sc.position_[sc.order_[k]] = k;

  std::vector<char> known(n * n, 0);
  auto as_int = [](const Rational& r) {
    if (boost::multiprecision::denominator(r) != 1)
      throw InternalError("structure constant is not integral: " + r.str());
    return detail::to_int64(boost::multiprecision::numerator(r));
  };

  std::function<std::int64_t(std::size_t, std::size_t)> N = [&](std::size_t x,
                                                                  std::size_t y) -> std::int64_t {
    auto z = rd.find_root(rd.root(x) + rd.root(y));
    if (!z) return 0;
    const bool px = base.is_positive(x), py = base.is_positive(y);
    if (px && py) {
      if (!known[x * n + y]) throw InternalError("structure constant requested out of order");
      return sc.table_[x * n + y];
    }
    if (!px && !py) return -N(rd.negative(x), rd.negative(y));
    // x + y + t = 0:  N(x,y)/(t,t) = N(y,t)/(x,x) = N(t,x)/(y,y)
    const std::size_t t = rd.negative(*z);
    const Rational& lt = sc.lengths_[t];
    if (base.is_positive(t) == px) return as_int(lt / sc.lengths_[y] * N(t, x));
    return as_int(lt / sc.lengths_[x] * N(y, t));
  };

  for (std::size_t xi : sc.order_) {
    if (base.height(xi) == 1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r : sc.order_) {
      if (base.height(r) >= base.height(xi)) break;
      auto s = rd.find_root(rd.root(xi) - rd.root(r));
      if (s && base.is_positive(*s) && sc.position_[r] < sc.position_[*s]) pairs.emplace_back(r, *s);
    }
    if (pairs.empty()) throw InternalError("positive root is not a sum of two positive roots");
    auto [a, b] = pairs.front();
    sc.extraspecial_[xi] = std::pair(a, b);
    const std::int64_t nab = sc.string_below(a, b) + 1;
    sc.table_[a * n + b] = nab;
    sc.table_[b * n + a] = -nab;
    known[a * n + b] = known[b * n + a] = 1;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      auto [r, s] = pairs[k];
      const std::size_t na = rd.negative(a), nb = rd.negative(b);
      Rational sum = 0;
      if (auto sa = rd.find_root(rd.root(s) - rd.root(a)))
        sum += Rational(N(s, na) * N(r, nb)) / sc.lengths_[*sa];
      if (auto ra = rd.find_root(rd.root(r) - rd.root(a)))
        sum += Rational(N(na, r) * N(s, nb)) / sc.lengths_[*ra];
      const std::int64_t v = as_int(sc.lengths_[xi] / nab * sum);
      if (std::abs(v) != sc.string_below(r, s) + 1)
        throw InternalError("structure constant violates the +-(p+1) rule");
      sc.table_[r * n + s] = v;
      sc.table_[s * n + r] = -v;
      known[r * n + s] = known[s * n + r] = 1;
    }
  }

  std::vector<std::int64_t> full(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) full[x * n + y] = N(x, y);
  sc.table_ = std::move(full);
  return sc;
}

std::vector<std::size_t> root_permutation(const RootDatum& rd, const LatticeMap& d) {
  if (d.rows() != rd.rank() || d.cols() != rd.rank())
    throw RankMismatch("automorphism has the wrong rank");
  std::vector<std::size_t> perm(rd.size());
  for (std::size_t i = 0; i < rd.size(); ++i) {
    auto j = rd.find_root(d.apply(rd.root(i)));
    if (!j) throw InvalidArgument("map does not preserve the roots: " + to_string(rd.root(i)));
    perm[i] = *j;
  }
  return perm;
}

std::vector<QmodZ> propagate_scalars(const StructureConstants& sc, const LatticeMap& d,
                                     const std::vector<QmodZ>& simple_scalars) {
  const BasedRootDatum& b = sc.base();
  const RootDatum& rd = b.datum();
  if (simple_scalars.size() != b.semisimple_rank())
    throw InvalidArgument("one scalar per simple root is required");
  auto perm = root_permutation(rd, d);
  for (std::size_t k = 0; k < b.semisimple_rank(); ++k)
    if (!b.simple_position(perm[b.simple_indices()[k]]))
      throw InvalidArgument("diagram map does not preserve the base");
  std::vector<QmodZ> c(rd.size());
  for (std::size_t i : sc.order()) {
    if (auto k = b.simple_position(i)) {
      c[i] = simple_scalars[*k];
      continue;
    }
    auto [x, y] = *sc.extraspecial_pair(i);
    const std::int64_t before = sc(x, y), after = sc(perm[x], perm[y]);
    if (std::abs(before) != std::abs(after))
      throw InternalError("structure constants are not preserved in absolute value");
    c[i] = c[x] + c[y] + (after == before ? QmodZ() : QmodZ(1, 2));
  }
  for (std::size_t i : sc.order()) c[rd.negative(i)] = -c[i];
  return c;
}

std::vector<QmodZ> propagate_scalars(const StructureConstants& sc, const LatticeMap& d) {
  return propagate_scalars(sc, d, std::vector<QmodZ>(sc.base().semisimple_rank()));
}

}  // namespace conorm
