#include "conorm/exact_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "conorm/error.hpp"

namespace conorm {

namespace detail {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("int64 overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("int64 overflow in multiplication");
  return r;
}

std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw InternalError("integer does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

using detail::checked_add;
using detail::checked_mul;

// ---------------------------------------------------------------- Vec

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw RankMismatch("vector sizes differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

Vec operator-(const Vec& a, const Vec& b) { return a + (-b); }

Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec operator*(std::int64_t s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(s, a[i]);
  return r;
}

std::int64_t dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw RankMismatch("pairing of vectors of different rank");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- LatticeMap

LatticeMap::LatticeMap(std::size_t codomain_rank, std::size_t domain_rank)
    : rows_(codomain_rank), cols_(domain_rank), data_(codomain_rank * domain_rank) {}

LatticeMap LatticeMap::identity(std::size_t n) {
  LatticeMap m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

LatticeMap LatticeMap::zero(std::size_t codomain_rank, std::size_t domain_rank) {
  return LatticeMap(codomain_rank, domain_rank);
}

LatticeMap LatticeMap::from_rows(const std::vector<Vec>& rows, std::size_t domain_rank) {
  std::size_t cols = rows.empty() ? domain_rank : rows.front().size();
  LatticeMap m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw RankMismatch("ragged matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

LatticeMap LatticeMap::from_columns(const std::vector<Vec>& cols, std::size_t codomain_rank) {
  LatticeMap m(codomain_rank, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != codomain_rank) throw RankMismatch("column of wrong length");
    for (std::size_t r = 0; r < codomain_rank; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

LatticeMap LatticeMap::from_columns(const std::vector<IntVector>& cols, std::size_t codomain_rank) {
  LatticeMap m(codomain_rank, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != codomain_rank) throw RankMismatch("column of wrong length");
    for (std::size_t r = 0; r < codomain_rank; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

LatticeMap LatticeMap::diagonal(const IntVector& d) {
  LatticeMap m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

LatticeMap LatticeMap::hstack(const LatticeMap& a, const LatticeMap& b) {
  if (a.rows_ != b.rows_) throw RankMismatch("hstack: codomain ranks differ");
  LatticeMap m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
  }
  return m;
}

LatticeMap LatticeMap::vstack(const LatticeMap& a, const LatticeMap& b) {
  if (a.cols_ != b.cols_) throw RankMismatch("vstack: domain ranks differ");
  LatticeMap m(a.rows_ + b.rows_, a.cols_);
  for (std::size_t c = 0; c < a.cols_; ++c) {
    for (std::size_t r = 0; r < a.rows_; ++r) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows_; ++r) m(a.rows_ + r, c) = b(r, c);
  }
  return m;
}

IntVector LatticeMap::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector LatticeMap::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

LatticeMap LatticeMap::transpose() const {
  LatticeMap t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntVector LatticeMap::apply(const IntVector& x) const {
  if (x.size() != cols_) throw RankMismatch("apply: vector rank differs from domain rank");
  IntVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

Vec LatticeMap::apply(const Vec& x) const {
  IntVector big(x.begin(), x.end());
  IntVector y = apply(big);
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = detail::to_int64(y[i]);
  return out;
}

RatVector LatticeMap::apply(const RatVector& x) const {
  if (x.size() != cols_) throw RankMismatch("apply: vector rank differs from domain rank");
  RatVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += Rational((*this)(r, c)) * x[c];
  return y;
}

bool LatticeMap::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

Integer LatticeMap::determinant() const {
  if (!is_square()) throw RankMismatch("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  std::vector<Integer> a = data_;
  auto at = [&](std::size_t r, std::size_t c) -> Integer& { return a[r * n + c]; };
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

std::size_t LatticeMap::rank() const { return smith_normal_form(*this).rank; }

bool LatticeMap::is_unimodular() const {
  if (!is_square()) return false;
  Integer d = determinant();
  return d == 1 || d == -1;
}

std::optional<LatticeMap> LatticeMap::unimodular_inverse() const {
  if (!is_unimodular()) return std::nullopt;
  auto inv = rational_inverse();
  LatticeMap m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& v = inv[r][c];
      if (denominator(v) != 1) throw InternalError("unimodular inverse is not integral");
      m(r, c) = numerator(v);
    }
  return m;
}

std::vector<RatVector> LatticeMap::rational_inverse() const {
  if (!is_square()) throw RankMismatch("inverse of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<RatVector> a(n, RatVector(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = Rational((*this)(r, c));
    a[r][n + r] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw SingularSystem("matrix is singular");
    std::swap(a[k], a[p]);
    Rational piv = a[k][k];
    for (auto& v : a[k]) v /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<RatVector> inv(n, RatVector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv[r][c] = a[r][n + c];
  return inv;
}

SmallMatrix LatticeMap::to_small() const {
  SmallMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = detail::to_int64((*this)(r, c));
  return m;
}

std::string LatticeMap::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

LatticeMap operator*(const LatticeMap& a, const LatticeMap& b) {
  if (a.cols_ != b.rows_) throw RankMismatch("composition of maps with mismatched inner ranks");
  LatticeMap m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& v = a(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) += v * b(k, c);
    }
  return m;
}

LatticeMap operator+(const LatticeMap& a, const LatticeMap& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw RankMismatch("sum of maps of different shape");
  LatticeMap m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

LatticeMap operator-(const LatticeMap& a, const LatticeMap& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw RankMismatch("difference of maps of different shape");
  LatticeMap m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

LatticeMap operator*(const Integer& s, const LatticeMap& a) {
  LatticeMap m = a;
  for (auto& v : m.data_) v *= s;
  return m;
}

std::ostream& operator<<(std::ostream& os, const LatticeMap& m) { return os << m.to_string(); }

// ---------------------------------------------------------------- SmallMatrix

SmallMatrix::SmallMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

SmallMatrix SmallMatrix::identity(std::size_t n) {
  SmallMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec SmallMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw RankMismatch("apply: vector rank differs from domain rank");
  Vec y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::int64_t v = data_[r * cols_ + c];
      if (v != 0) s = checked_add(s, checked_mul(v, x[c]));
    }
    y[r] = s;
  }
  return y;
}

SmallMatrix SmallMatrix::transpose() const {
  SmallMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

LatticeMap SmallMatrix::to_lattice_map() const {
  LatticeMap m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
  return m;
}

SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b) {
  if (a.cols_ != b.rows_) throw RankMismatch("composition of maps with mismatched inner ranks");
  SmallMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      std::int64_t v = a(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) = checked_add(m(r, c), checked_mul(v, b(k, c)));
    }
  return m;
}

namespace {
std::size_t hash_range(const std::int64_t* p, std::size_t n, std::size_t seed) {
  for (std::size_t i = 0; i < n; ++i) {
    seed ^= std::hash<std::int64_t>{}(p[i]) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}
}  // namespace

std::size_t SmallMatrixHash::operator()(const SmallMatrix& m) const noexcept {
  return hash_range(m.data().data(), m.data().size(), m.rows() * 131 + m.cols());
}

std::size_t VecHash::operator()(const Vec& v) const noexcept {
  return hash_range(v.data(), v.size(), v.size());
}

// ---------------------------------------------------------------- SNF / HNF

namespace {

void swap_rows(LatticeMap& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}
void swap_cols(LatticeMap& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}
// row[dst] += f * row[src]
void add_row(LatticeMap& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += f * m(src, c);
}
void add_col(LatticeMap& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += f * m(r, src);
}
void negate_row(LatticeMap& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

// Floor division for cpp_int (which truncates toward zero).
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

IntVector SmithForm::invariant_factors() const {
  IntVector d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const LatticeMap& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  LatticeMap a = m;
  LatticeMap u = LatticeMap::identity(rows);
  LatticeMap v = LatticeMap::identity(cols);
  std::size_t t = 0;
  const std::size_t limit = std::min(rows, cols);
  while (t < limit) {
    // Pivot: nonzero entry of minimal absolute value in the trailing block.
    std::size_t pr = rows, pc = cols;
    Integer best = 0;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        const Integer& x = a(r, c);
        if (x != 0 && (best == 0 || abs(x) < best)) {
          best = abs(x);
          pr = r;
          pc = c;
        }
      }
    if (pr == rows) break;
    swap_rows(a, t, pr);
    swap_rows(u, t, pr);
    swap_cols(a, t, pc);
    swap_cols(v, t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a(r, t) == 0) continue;
        Integer q = floor_div(a(r, t), a(t, t));
        add_row(a, r, t, -q);
        add_row(u, r, t, -q);
        if (a(r, t) != 0) {
          swap_rows(a, t, r);
          swap_rows(u, t, r);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a(t, c) == 0) continue;
        Integer q = floor_div(a(t, c), a(t, t));
        add_col(a, c, t, -q);
        add_col(v, c, t, -q);
        if (a(t, c) != 0) {
          swap_cols(a, t, c);
          swap_cols(v, t, c);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into the pivot row and redo.
      for (std::size_t r = t + 1; r < rows && clean; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (a(r, c) % a(t, t) != 0) {
            add_row(a, t, r, 1);
            add_row(u, t, r, 1);
            clean = false;
            break;
          }
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
    ++t;
  }
  return SmithForm{std::move(u), std::move(a), std::move(v), t};
}

LatticeMap row_hermite_normal_form(const LatticeMap& m) {
  LatticeMap a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
      if (best == rows) break;
      swap_rows(a, r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        add_row(a, i, r, -floor_div(a(i, c), a(r, c)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) negate_row(a, r);
    for (std::size_t i = 0; i < r; ++i) add_row(a, i, r, -floor_div(a(i, c), a(r, c)));
    pivot_cols.push_back(c);
    ++r;
  }
  LatticeMap h(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < cols; ++c) h(i, c) = a(i, c);
  return h;
}

LatticeMap integer_kernel(const LatticeMap& m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t n = m.cols();
  LatticeMap k(n, n - s.rank);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r) k(r, j - s.rank) = s.V(r, j);
  return k;
}

std::optional<RatVector> solve_rational(const LatticeMap& a, const RatVector& b) {
  if (b.size() != a.rows()) throw RankMismatch("solve: right-hand side has wrong length");
  SmithForm s = smith_normal_form(a);
  RatVector ub = s.U.apply(b);
  RatVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      y[i] = ub[i] / Rational(s.D(i, i));
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

// ---------------------------------------------------------------- Sublattice

Sublattice::Sublattice(std::size_t n, LatticeMap basis) : ambient_rank_(n), basis_(std::move(basis)) {}

Sublattice Sublattice::span(const LatticeMap& generators) {
  const std::size_t n = generators.codomain_rank();
  if (generators.domain_rank() == 0) return zero(n);
  LatticeMap h = row_hermite_normal_form(generators.transpose());
  return Sublattice(n, h.transpose());
}

Sublattice Sublattice::full(std::size_t n) { return Sublattice(n, LatticeMap::identity(n)); }

Sublattice Sublattice::zero(std::size_t n) { return Sublattice(n, LatticeMap(n, 0)); }

std::optional<IntVector> Sublattice::coordinates(const IntVector& x) const {
  if (x.size() != ambient_rank_) throw RankMismatch("vector not in ambient lattice");
  RatVector rx(x.begin(), x.end());
  auto sol = solve_rational(basis_, rx);
  if (!sol) return std::nullopt;
  IntVector c(sol->size());
  for (std::size_t i = 0; i < sol->size(); ++i) {
    if (denominator((*sol)[i]) != 1) return std::nullopt;
    c[i] = numerator((*sol)[i]);
  }
  return c;
}

bool Sublattice::contains(const IntVector& x) const { return coordinates(x).has_value(); }

bool Sublattice::contains(const Vec& x) const { return contains(IntVector(x.begin(), x.end())); }

Sublattice Sublattice::saturation() const {
  if (rank() == 0) return *this;
  // Annihilator of the annihilator.
  LatticeMap perp = integer_kernel(basis_.transpose());
  if (perp.domain_rank() == 0) return full(ambient_rank_);
  return span(integer_kernel(perp.transpose()));
}

bool Sublattice::is_saturated() const { return saturation() == *this; }

Integer Sublattice::saturation_index() const {
  if (rank() == 0) return 1;
  SmithForm s = smith_normal_form(basis_);
  Integer idx = 1;
  for (const auto& d : s.invariant_factors()) idx *= d;
  return idx;
}

LatticeMap QuotientLattice::section() const {
  // projection is surjective: solve projection * x = e_i for integral x.
  SmithForm s = smith_normal_form(projection);
  const std::size_t r = projection.codomain_rank();
  const std::size_t n = projection.domain_rank();
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) throw InternalError("quotient projection is not surjective");
  // x = V * [U e_i; 0]
  LatticeMap top(n, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < r; ++c) top(i, c) = s.U(i, c);
  return s.V * top;
}

namespace {
void check_generators(std::span<const LatticeMap> gens, std::size_t& n) {
  if (gens.empty()) throw InvalidArgument("at least one generator is required");
  n = gens.front().rows();
  for (const auto& g : gens)
    if (!g.is_square() || g.rows() != n) throw RankMismatch("generators must be square of equal rank");
}
}  // namespace

Sublattice fixed_sublattice(std::span<const LatticeMap> generators) {
  std::size_t n = 0;
  check_generators(generators, n);
  LatticeMap stacked(0, n);
  for (const auto& g : generators) stacked = LatticeMap::vstack(stacked, g - LatticeMap::identity(n));
  LatticeMap k = integer_kernel(stacked);
  if (k.domain_rank() == 0) return Sublattice::zero(n);
  return Sublattice::span(k);
}

QuotientLattice coinvariant_quotient(std::span<const LatticeMap> generators) {
  std::size_t n = 0;
  check_generators(generators, n);
  std::vector<LatticeMap> transposed;
  LatticeMap rel(n, 0);
  for (const auto& g : generators) {
    transposed.push_back(g.transpose());
    rel = LatticeMap::hstack(rel, g - LatticeMap::identity(n));
  }
  QuotientLattice q;
  q.ambient_rank = n;
  Sublattice raw = Sublattice::span(rel);
  q.raw_relation_rank = raw.rank();
  q.relations = raw.saturation();
  Sublattice dual_fixed = fixed_sublattice(transposed);
  q.projection = dual_fixed.basis().transpose();
  if (q.projection.codomain_rank() + q.relations.rank() != n)
    throw InternalError("coinvariant quotient rank bookkeeping failed");
  return q;
}

// ---------------------------------------------------------------- Q/Z

QmodZ::QmodZ(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw InvalidArgument("Q/Z denominator must be positive");
  num = detail::mod_floor(num, den);
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string QmodZ::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

QmodZ operator+(const QmodZ& a, const QmodZ& b) {
  std::int64_t l = std::lcm(a.den_, b.den_);
  return QmodZ(checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l);
}

QmodZ operator-(const QmodZ& a) { return QmodZ(-a.num_, a.den_); }

QmodZ operator-(const QmodZ& a, const QmodZ& b) { return a + (-b); }

QmodZ operator*(std::int64_t k, const QmodZ& a) {
  return QmodZ(checked_mul(detail::mod_floor(k, a.den_), a.num_), a.den_);
}

std::ostream& operator<<(std::ostream& os, const QmodZ& q) { return os << q.to_string(); }

// ---------------------------------------------------------------- TorsionVector

TorsionVector::TorsionVector(std::size_t rank) : num_(rank, 0), den_(1) {}

TorsionVector::TorsionVector(Vec numerators, std::int64_t denominator)
    : num_(std::move(numerators)), den_(denominator) {
  if (den_ <= 0) throw InvalidArgument("torsion vector denominator must be positive");
  reduce();
}

void TorsionVector::reduce() {
  std::int64_t g = den_;
  for (auto& x : num_) {
    x = detail::mod_floor(x, den_);
    g = std::gcd(g, x);
  }
  if (g > 1) {
    for (auto& x : num_) x /= g;
    den_ /= g;
  }
}

TorsionVector TorsionVector::from_rationals(const RatVector& x) {
  Integer l = 1;
  for (const auto& v : x) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v));
  Vec num(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Integer n = boost::multiprecision::numerator(x[i]) * (l / boost::multiprecision::denominator(x[i]));
    n %= l;
    if (n < 0) n += l;
    num[i] = detail::to_int64(n);
  }
  return TorsionVector(std::move(num), detail::to_int64(l));
}

TorsionVector TorsionVector::transform(const SmallMatrix& m) const {
  return TorsionVector(m.apply(num_), den_);
}

TorsionVector TorsionVector::transform(const LatticeMap& m) const {
  IntVector x(num_.begin(), num_.end());
  IntVector y = m.apply(x);
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    Integer r = y[i] % den_;
    if (r < 0) r += den_;
    out[i] = static_cast<std::int64_t>(r);
  }
  return TorsionVector(std::move(out), den_);
}

QmodZ TorsionVector::pair(const Vec& v) const {
  if (v.size() != num_.size()) throw RankMismatch("pairing with vector of different rank");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s = detail::mod_floor(checked_add(s, checked_mul(detail::mod_floor(v[i], den_), num_[i])), den_);
  return QmodZ(s, den_);
}

RatVector TorsionVector::to_rationals() const {
  RatVector r(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) r[i] = Rational(num_[i], den_);
  return r;
}

std::string TorsionVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < num_.size(); ++i) {
    os << (i ? "," : "");
    QmodZ q(num_[i], den_);
    os << q.to_string();
  }
  os << ')';
  return os.str();
}

TorsionVector operator+(const TorsionVector& a, const TorsionVector& b) {
  if (a.rank() != b.rank()) throw RankMismatch("sum of torsion vectors of different rank");
  std::int64_t l = std::lcm(a.den_, b.den_);
  Vec n(a.rank());
  for (std::size_t i = 0; i < n.size(); ++i)
    n[i] = checked_add(checked_mul(a.num_[i], l / a.den_), checked_mul(b.num_[i], l / b.den_));
  return TorsionVector(std::move(n), l);
}

TorsionVector operator-(const TorsionVector& a) { return TorsionVector(-a.num_, a.den_); }

TorsionVector operator*(std::int64_t k, const TorsionVector& a) {
  Vec n(a.rank());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = checked_mul(detail::mod_floor(k, a.den_), a.num_[i]);
  return TorsionVector(std::move(n), a.den_);
}

std::strong_ordering operator<=>(const TorsionVector& a, const TorsionVector& b) {
  if (auto c = a.den_ <=> b.den_; c != 0) return c;
  return a.num_ <=> b.num_;
}

std::size_t TorsionVectorHash::operator()(const TorsionVector& t) const noexcept {
  return VecHash{}(t.numerators()) * 31 + std::hash<std::int64_t>{}(t.denominator());
}

std::ostream& operator<<(std::ostream& os, const TorsionVector& t) { return os << t.to_string(); }

std::vector<TorsionVector> solve_torsion_fixed(const LatticeMap& m, std::size_t limit) {
  if (!m.is_square()) throw RankMismatch("solve_torsion_fixed: map must be square");
  const std::size_t n = m.rows();
  SmithForm s = smith_normal_form(m - LatticeMap::identity(n));
  if (s.rank < n) throw SingularSystem("m - I is singular; the fixed torsion set is infinite");
  IntVector d = s.invariant_factors();
  Integer count = 1;
  for (const auto& x : d) count *= x;
  if (count > limit) throw InvalidArgument("torsion fixed-point count " + count.str() + " exceeds limit");
  // Solutions: x = V D^{-1} w for w_i in [0, d_i).  Common denominator d_{n-1}.
  const Integer big = n ? d.back() : Integer(1);
  const std::int64_t den = detail::to_int64(big);
  std::vector<Vec> scaled_cols(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    Integer f = big / d[i];
    for (std::size_t r = 0; r < n; ++r) {
      Integer v = (s.V(r, i) * f) % big;
      if (v < 0) v += big;
      scaled_cols[i][r] = detail::to_int64(v);
    }
  }
  std::vector<std::int64_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = detail::to_int64(d[i]);
  std::vector<TorsionVector> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::int64_t> w(n, 0);
  Vec acc(n, 0);
  while (true) {
    out.emplace_back(acc, den);
    std::size_t i = 0;
    for (; i < n; ++i) {
      ++w[i];
      for (std::size_t r = 0; r < n; ++r) acc[r] = detail::mod_floor(acc[r] + scaled_cols[i][r], den);
      if (w[i] < radix[i]) break;
      // wrapped: acc has advanced radix[i] steps, which is 0 mod den.
      w[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace conorm
