#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "qoperad/rational.hpp"

namespace qop {

// Sparse matrix over the rationals. Entries are kept sorted by (row, col)
// with no duplicates and no stored zeros.
class SparseMatrix {
 public:
  struct Entry {
    long row;
    long col;
    Rational value;
  };

  SparseMatrix() : rows_(0), cols_(0) {}
  SparseMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void add(long r, long c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("SparseMatrix::add: index out of range");
    if (v.is_zero()) return;
    accum_[{r, c}] += v;
  }

  // Collapses accumulated additions into the entry list.
  void finalize() {
    for (auto& [rc, v] : accum_) {
      if (!v.is_zero()) entries_.push_back({rc.first, rc.second, v});
    }
    accum_.clear();
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    // merge duplicates from repeated finalize/add rounds
    std::vector<Entry> merged;
    for (auto& e : entries_) {
      if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
        merged.back().value += e.value;
      else
        merged.push_back(e);
    }
    entries_.clear();
    for (auto& e : merged)
      if (!e.value.is_zero()) entries_.push_back(e);
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (const auto& e : entries_) t.add(e.col, e.row, e.value);
    t.finalize();
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
    // rows of b, indexed for the multiply
    std::vector<std::vector<std::pair<long, Rational>>> brows(b.rows_);
    for (const auto& e : b.entries_) brows[e.row].push_back({e.col, e.value});
    SparseMatrix c(a.rows_, b.cols_);
    for (const auto& e : a.entries_)
      for (const auto& [col, val] : brows[e.col]) c.add(e.row, col, e.value * val);
    c.finalize();
    return c;
  }

  bool is_zero() const { return entries_.empty(); }

  bool operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (entries_.size() != o.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].row != o.entries_[i].row) return false;
      if (entries_[i].col != o.entries_[i].col) return false;
      if (entries_[i].value != o.entries_[i].value) return false;
    }
    return true;
  }

 private:
  long rows_, cols_;
  std::vector<Entry> entries_;
  std::map<std::pair<long, long>, Rational> accum_;
};

namespace detail {

using IntRow = std::vector<std::pair<long, mpz_class>>;  // sorted by column

// Clears denominators and strips content; rank is unchanged.
inline IntRow primitive_row(std::vector<std::pair<long, Rational>> row) {
  mpz_class l = 1;
  for (auto& [c, v] : row) l = lcm(l, v.den());
  mpz_class g = 0;
  IntRow out;
  out.reserve(row.size());
  for (auto& [c, v] : row) {
    mpz_class z = v.num() * (l / v.den());
    g = gcd(g, z);
    out.push_back({c, z});
  }
  if (g > 1)
    for (auto& [c, z] : out) z /= g;
  return out;
}

inline void strip_content(IntRow& row) {
  mpz_class g = 0;
  for (auto& [c, z] : row) {
    g = gcd(g, z);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, z] : row) z /= g;
}

// row_t := row_t * a - row_p * b, sparse merge; result content-stripped.
inline IntRow row_combine(const IntRow& t, const mpz_class& a, const IntRow& p,
                          const mpz_class& b) {
  IntRow out;
  out.reserve(t.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < t.size() || j < p.size()) {
    if (j == p.size() || (i < t.size() && t[i].first < p[j].first)) {
      out.push_back({t[i].first, t[i].second * a});
      ++i;
    } else if (i == t.size() || p[j].first < t[i].first) {
      out.push_back({p[j].first, -p[j].second * b});
      ++j;
    } else {
      mpz_class v = t[i].second * a - p[j].second * b;
      if (v != 0) out.push_back({t[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  strip_content(out);
  return out;
}

}  // namespace detail

// Exact rank over Q. Fraction-free elimination on content-stripped integer
// rows with Markowitz-style pivot selection to limit fill-in.
inline long rank(const SparseMatrix& m) {
  std::vector<detail::IntRow> rows;
  {
    std::vector<std::vector<std::pair<long, Rational>>> raw(m.rows());
    for (const auto& e : m.entries()) raw[e.row].push_back({e.col, e.value});
    for (auto& r : raw)
      if (!r.empty()) rows.push_back(detail::primitive_row(std::move(r)));
  }
  long rank_count = 0;
  std::vector<char> active(rows.size(), 1);
  std::vector<long> col_count(m.cols(), 0);
  for (const auto& r : rows)
    for (const auto& [c, z] : r) ++col_count[c];

  std::size_t remaining = rows.size();
  while (remaining > 0) {
    // Markowitz pivot: minimize (nnz(row)-1)*(nnz(col)-1), small entries first.
    long best_row = -1, best_col = -1;
    unsigned long best_score = ~0ul;
    std::size_t best_digits = ~std::size_t(0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!active[i]) continue;
      for (const auto& [c, z] : rows[i]) {
        unsigned long score =
            (unsigned long)(rows[i].size() - 1) * (unsigned long)(col_count[c] - 1);
        std::size_t digits = mpz_size(z.get_mpz_t());
        if (score < best_score || (score == best_score && digits < best_digits)) {
          best_score = score;
          best_digits = digits;
          best_row = static_cast<long>(i);
          best_col = c;
        }
      }
    }
    if (best_row < 0) break;

    const detail::IntRow pivot_row = rows[best_row];
    mpz_class pivot_val;
    for (const auto& [c, z] : pivot_row)
      if (c == best_col) pivot_val = z;

    active[best_row] = 0;
    --remaining;
    ++rank_count;
    for (const auto& [c, z] : pivot_row) --col_count[c];
    rows[best_row].clear();

    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!active[i]) continue;
      mpz_class coeff = 0;
      for (const auto& [c, z] : rows[i])
        if (c == best_col) {
          coeff = z;
          break;
        }
      if (coeff == 0) continue;
      for (const auto& [c, z] : rows[i]) --col_count[c];
      rows[i] = detail::row_combine(rows[i], pivot_val, pivot_row, coeff);
      if (rows[i].empty()) {
        active[i] = 0;
        --remaining;
      } else {
        for (const auto& [c, z] : rows[i]) ++col_count[c];
      }
    }
  }
  return rank_count;
}

// Rank over F_p (p an odd prime below 2^31). Plain Gaussian elimination.
inline long rank_mod_prime(const SparseMatrix& m, std::uint64_t p) {
  std::vector<std::map<long, std::uint64_t>> rows(m.rows());
  for (const auto& e : m.entries()) {
    mpz_class num = e.value.num() % static_cast<long>(p);
    mpz_class den = e.value.den() % static_cast<long>(p);
    if (den == 0) throw std::domain_error("rank_mod_prime: denominator divisible by p");
    std::uint64_t nv = mpz_class(num + static_cast<long>(p)).get_ui() % p;
    std::uint64_t dv = den.get_ui() % p;
    // modular inverse by Fermat
    std::uint64_t inv = 1, base = dv, exp = p - 2;
    while (exp) {
      if (exp & 1) inv = (unsigned __int128)inv * base % p;
      base = (unsigned __int128)base * base % p;
      exp >>= 1;
    }
    std::uint64_t v = (unsigned __int128)nv * inv % p;
    if (v) rows[e.row][e.col] = v;
  }
  long rank_count = 0;
  std::vector<char> used(rows.size(), 0);
  for (long col = 0; col < m.cols(); ++col) {
    long pivot = -1;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!used[i] && rows[i].count(col)) {
        pivot = static_cast<long>(i);
        break;
      }
    if (pivot < 0) continue;
    used[pivot] = 1;
    ++rank_count;
    std::uint64_t pv = rows[pivot][col];
    std::uint64_t inv = 1, base = pv, exp = p - 2;
    while (exp) {
      if (exp & 1) inv = (unsigned __int128)inv * base % p;
      base = (unsigned __int128)base * base % p;
      exp >>= 1;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || !rows[i].count(col)) continue;
      std::uint64_t f = (unsigned __int128)rows[i][col] * inv % p;
      for (const auto& [c, v] : rows[pivot]) {
        std::uint64_t sub = (unsigned __int128)v * f % p;
        std::uint64_t cur = rows[i].count(c) ? rows[i][c] : 0;
        std::uint64_t nv = (cur + p - sub) % p;
        if (nv)
          rows[i][c] = nv;
        else
          rows[i].erase(c);
      }
    }
  }
  return rank_count;
}

// Primes just above 2^30 for the probabilistic fast path.
inline const std::vector<std::uint64_t>& rank_primes() {
  static const std::vector<std::uint64_t> ps = {
      1073741827ull, 1073741831ull, 1073741833ull, 1073741839ull, 1073741843ull,
      1073741857ull, 1073741891ull, 1073741909ull, 1073741939ull, 1073741953ull,
      2147483647ull, 2147483629ull, 2147483587ull, 2147483579ull, 2147483563ull};
  return ps;
}

// Two-prime probabilistic rank. A disagreement (or a bad prime) falls back
// to the exact elimination, so the result always equals rank().
inline long rank_fast(const SparseMatrix& m, std::uint64_t seed = 12345) {
  std::mt19937_64 rng(seed);
  const auto& ps = rank_primes();
  long r1 = -1, r2 = -2;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::uint64_t p1 = ps[rng() % ps.size()];
    std::uint64_t p2 = ps[rng() % ps.size()];
    if (p1 == p2) continue;
    try {
      r1 = rank_mod_prime(m, p1);
      r2 = rank_mod_prime(m, p2);
    } catch (const std::domain_error&) {
      continue;  // prime divides some denominator, retry
    }
    if (r1 == r2) return r1;
  }
  return rank(m);
}

}  // namespace qop
