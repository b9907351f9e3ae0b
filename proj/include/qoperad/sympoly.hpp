#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qoperad/multi_index.hpp"
#include "qoperad/rational.hpp"

namespace qop {

// Multivariate polynomial over Q in variables v_l for an ordered list of
// labels. Terms map exponent vectors (aligned with the variable list) to
// nonzero coefficients.
class SymPoly {
 public:
  SymPoly() = default;
  explicit SymPoly(std::vector<int> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i + 1 < vars_.size(); ++i)
      if (vars_[i] >= vars_[i + 1])
        throw std::invalid_argument("SymPoly: variables must be strictly increasing");
  }

  static SymPoly constant(std::vector<int> vars, const Rational& c) {
    SymPoly p(std::move(vars));
    p.add_term(std::vector<int>(p.vars_.size(), 0), c);
    return p;
  }

  const std::vector<int>& vars() const { return vars_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int>& exps, const Rational& c) {
    if (exps.size() != vars_.size())
      throw std::invalid_argument("SymPoly: exponent vector length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      terms_.emplace(exps, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SymPoly& operator+=(const SymPoly& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("SymPoly: variable mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  SymPoly& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    if (a.vars_ != b.vars_) throw std::invalid_argument("SymPoly: variable mismatch");
    SymPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        std::vector<int> e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend bool operator==(const SymPoly& a, const SymPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  SymPoly derivative(int label) const {
    long idx = var_index(label);
    SymPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[idx] == 0) continue;
      std::vector<int> e2 = e;
      --e2[idx];
      r.add_term(e2, c * Rational(e[idx]));
    }
    return r;
  }

  SymPoly set_zero(int label) const {
    long idx = var_index(label);
    SymPoly r(vars_);
    for (const auto& [e, c] : terms_)
      if (e[idx] == 0) r.add_term(e, c);
    return r;
  }

  // Re-expresses the polynomial on a variable list extending/renaming the
  // current one; `map` sends old labels to new labels (injective).
  SymPoly on_vars(const std::vector<int>& new_vars,
                  const std::map<int, int>& map) const {
    SymPoly r(new_vars);
    std::vector<long> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      int target = map.count(vars_[i]) ? map.at(vars_[i]) : vars_[i];
      auto it = std::lower_bound(new_vars.begin(), new_vars.end(), target);
      if (it == new_vars.end() || *it != target)
        throw std::invalid_argument("SymPoly::on_vars: missing target variable");
      pos[i] = it - new_vars.begin();
    }
    for (const auto& [e, c] : terms_) {
      std::vector<int> e2(new_vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) e2[pos[i]] = e[i];
      r.add_term(e2, c);
    }
    return r;
  }

  long degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
      long s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_homogeneous(long d) const {
    for (const auto& [e, c] : terms_) {
      long s = 0;
      for (int x : e) s += x;
      if (s != d) return false;
    }
    return true;
  }

  // Rendering in graded-lex monomial order; a sum of all-negative terms is
  // factored as "-(...)".
  std::string str() const {
    if (terms_.empty()) return "0";
    bool all_negative = true;
    for (const auto& [e, c] : terms_)
      if (c.sign() > 0) all_negative = false;
    std::string out;
    bool first = true;
    for (const auto& [e, c] : ordered_terms()) {
      Rational cc = all_negative ? -c : c;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        mono += "v" + std::to_string(vars_[i]);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coeff;
      if (mono.empty())
        coeff = cc.str();
      else if (cc == Rational(1))
        coeff = "";
      else if (cc == Rational(-1))
        coeff = "-";
      else
        coeff = cc.str() + "*";
      std::string term = coeff + mono;
      if (first) {
        out += term;
        first = false;
      } else if (!term.empty() && term[0] == '-') {
        out += "-" + term.substr(1);
      } else {
        out += "+" + term;
      }
    }
    if (all_negative) return "-(" + out + ")";
    return out;
  }

 private:
  std::vector<std::pair<std::vector<int>, Rational>> ordered_terms() const {
    std::vector<std::pair<std::vector<int>, Rational>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      long da = 0, db = 0;
      for (int x : a.first) da += x;
      for (int x : b.first) db += x;
      if (da != db) return da < db;
      return a.first > b.first;  // v1-first within a degree block
    });
    return v;
  }

  long var_index(int label) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), label);
    if (it == vars_.end() || *it != label)
      throw std::invalid_argument("SymPoly: unknown variable v" + std::to_string(label));
    return it - vars_.begin();
  }

  std::vector<int> vars_;
  std::map<std::vector<int>, Rational> terms_;
};

namespace detail {

// All multi-indices i with |i| = n and sum k*i_k = n-3, entries beyond
// position n-3 forced to vanish.
inline std::vector<MultiIndex> psi_exponent_patterns(long n) {
  std::vector<MultiIndex> out;
  long maxk = std::max<long>(0, n - 3);
  MultiIndex i(maxk + 1, 0);
  // i_0 is determined by the rest; enumerate i_1..i_maxk with weight n-3.
  std::function<void(long, long, long)> rec = [&](long k, long left_weight, long used) {
    if (k > maxk) {
      if (left_weight == 0 && used <= n) {
        MultiIndex full = i;
        full[0] = n - used;
        out.push_back(full);
      }
      return;
    }
    for (long c = 0; c * k <= left_weight; ++c) {
      i[k] = c;
      rec(k + 1, left_weight - c * k, used + c);
    }
    i[k] = 0;
  };
  if (n >= 3) rec(1, n - 3, 0);
  return out;
}

// Distinct assignments of the multiset lambda (given by pattern i: value k
// with multiplicity i_k) to positions 0..n-1, reported as exponent vectors.
inline void monomial_symmetric_terms(long n, const MultiIndex& i,
                                     std::vector<std::vector<int>>& out) {
  std::vector<int> values;
  for (std::size_t k = 0; k < i.size(); ++k)
    for (long c = 0; c < i[k]; ++c) values.push_back(static_cast<int>(k));
  std::sort(values.begin(), values.end());
  // values has length n; enumerate distinct permutations
  do {
    out.emplace_back(values.begin(), values.end());
  } while (std::next_permutation(values.begin(), values.end()));
}

}  // namespace detail

// The symmetric polynomial
//   p_n = (-1)^(n-3) sum_i <tau^i>/lambda(i)! * m_{lambda(i)}(v)
// over multi-indices with |i| = n and |lambda(i)| = n-3, where m_lambda is
// the monomial symmetric polynomial. (Summing the orbit v^{lambda} over all
// of S_n once per permutation and dividing by i! gives the same thing.)
inline SymPoly p_polynomial(long n, const std::vector<int>& labels) {
  if (n < 3) throw std::invalid_argument("p_polynomial: n >= 3 required");
  if (static_cast<long>(labels.size()) != n)
    throw std::invalid_argument("p_polynomial: need exactly n labels");
  std::vector<int> vars = labels;
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
    throw std::invalid_argument("p_polynomial: labels must be distinct");
  SymPoly p(vars);
  Rational sign = (n - 3) % 2 == 0 ? Rational(1) : Rational(-1);
  for (const auto& i : detail::psi_exponent_patterns(n)) {
    Rational coeff = sign * tau_bracket_or_zero(i) / lambda_factorial(i);
    if (coeff.is_zero()) continue;
    std::vector<std::vector<int>> monos;
    detail::monomial_symmetric_terms(n, i, monos);
    for (const auto& e : monos) p.add_term(e, coeff);
  }
  return p;
}

inline SymPoly p_polynomial(const std::set<int>& labels) {
  std::vector<int> v(labels.begin(), labels.end());
  return p_polynomial(static_cast<long>(v.size()), v);
}

// Exact polynomial identity behind the chain-map property:
//   (d_i + d_j) p_A + sum_{A1 cup A2 = A, i in A1, j in A2}
//       p_{A1+alpha} p_{A2+beta} |_{v_alpha = v_beta = 0}  == 0,
// the sum running over ordered pairs of parts of size >= 2 (smaller parts
// contribute nothing since brackets with fewer than three markings vanish).
inline bool check_p_identity(const std::set<int>& A, int i, int j) {
  if (A.size() < 3) throw std::invalid_argument("check_p_identity: |A| >= 3 required");
  if (i == j || !A.count(i) || !A.count(j))
    throw std::invalid_argument("check_p_identity: need distinct i, j in A");
  std::vector<int> vars(A.begin(), A.end());
  SymPoly pA = p_polynomial(static_cast<long>(vars.size()), vars);
  SymPoly lhs = pA.derivative(i);
  lhs += pA.derivative(j);

  // fresh labels from the reserved negative namespace
  const int alpha = -1, beta = -2;
  std::vector<int> rest;
  for (int x : A)
    if (x != i && x != j) rest.push_back(x);
  long r = static_cast<long>(rest.size());
  for (long mask = 0; mask < (1L << r); ++mask) {
    std::set<int> A1 = {i}, A2 = {j};
    for (long t = 0; t < r; ++t)
      (mask & (1L << t) ? A1 : A2).insert(rest[t]);
    if (A1.size() < 2 || A2.size() < 2) continue;
    std::set<int> A1a = A1, A2b = A2;
    A1a.insert(alpha);
    A2b.insert(beta);
    SymPoly p1 = p_polynomial(A1a).set_zero(alpha);
    SymPoly p2 = p_polynomial(A2b).set_zero(beta);
    // re-express both on the full variable list of A (alpha/beta are gone)
    std::vector<int> full = vars;
    full.push_back(beta);
    full.push_back(alpha);
    std::sort(full.begin(), full.end());
    SymPoly prod = p1.on_vars(full, {}) * p2.on_vars(full, {});
    SymPoly onA(vars);
    for (const auto& [e, c] : prod.terms()) {
      std::vector<int> e2;
      for (std::size_t t = 0; t < full.size(); ++t) {
        if (full[t] == alpha || full[t] == beta) {
          if (e[t] != 0) throw std::logic_error("check_p_identity: residual fresh variable");
          continue;
        }
        e2.push_back(e[t]);
      }
      onA.add_term(e2, c);
    }
    lhs += onA;
  }
  return lhs.is_zero();
}

}  // namespace qop
