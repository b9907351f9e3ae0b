#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "qoperad/rational.hpp"

namespace qop {

// Multi-index (i_0, i_1, ..., i_m) of non-negative entries. Trailing zeros
// are permitted and never significant.
using MultiIndex = std::vector<long>;

inline long mi_total(const MultiIndex& i) {
  return std::accumulate(i.begin(), i.end(), 0L);
}

inline Rational mi_factorial(const MultiIndex& i) {
  Rational r(1);
  for (long e : i) r *= factorial(e);
  return r;
}

// lambda(i) = (0 repeated i_0 times, 1 repeated i_1 times, ...).
inline MultiIndex lambda_of(const MultiIndex& i) {
  MultiIndex lam;
  lam.reserve(static_cast<std::size_t>(mi_total(i)));
  for (std::size_t k = 0; k < i.size(); ++k)
    for (long c = 0; c < i[k]; ++c) lam.push_back(static_cast<long>(k));
  return lam;
}

inline long lambda_total(const MultiIndex& i) {
  long s = 0;
  for (std::size_t k = 0; k < i.size(); ++k) s += static_cast<long>(k) * i[k];
  return s;
}

inline Rational lambda_factorial(const MultiIndex& i) {
  Rational r(1);
  for (std::size_t k = 0; k < i.size(); ++k)
    for (long c = 0; c < i[k]; ++c) r *= factorial(static_cast<long>(k));
  return r;
}

inline MultiIndex mi_add(MultiIndex i, std::initializer_list<long> slots) {
  for (long s : slots) {
    if (s >= static_cast<long>(i.size())) i.resize(s + 1, 0);
    ++i[s];
  }
  return i;
}

// <tau^i>_0 with the convention that fewer than three markings gives zero.
inline Rational tau_bracket_or_zero(const MultiIndex& i) {
  long n = mi_total(i);
  if (n < 3) return Rational(0);
  if (lambda_total(i) != n - 3) return Rational(0);
  return factorial(n - 3) / lambda_factorial(i);
}

// <tau^i>_0 = (n-3)!/prod lambda_a!  when |lambda(i)| = n-3, else 0.
// Requires n = |i| >= 3.
inline Rational tau_bracket(const MultiIndex& i) {
  if (mi_total(i) < 3)
    throw std::invalid_argument("tau_bracket: needs at least three markings");
  return tau_bracket_or_zero(i);
}

// Calls fn(i', i'') for every componentwise splitting i' + i'' = i.
template <typename Fn>
void for_each_splitting(const MultiIndex& i, Fn&& fn) {
  MultiIndex a(i.size(), 0);
  for (;;) {
    MultiIndex b(i.size());
    for (std::size_t k = 0; k < i.size(); ++k) b[k] = i[k] - a[k];
    fn(a, b);
    std::size_t k = 0;
    while (k < i.size()) {
      if (a[k] < i[k]) {
        ++a[k];
        break;
      }
      a[k] = 0;
      ++k;
    }
    if (k == i.size()) break;
  }
}

// Asymmetric genus-zero recursion:
//   (1/i!) <tau_{a+1} tau_b tau_c tau^i>
//     = sum_{i'+i''=i} (1/(i'! i''!)) <tau_a tau_0 tau^{i'}> <tau_b tau_c tau_0 tau^{i''}>.
inline bool check_recursion_asym(long a, long b, long c, const MultiIndex& i) {
  Rational lhs = tau_bracket_or_zero(mi_add(i, {a + 1, b, c})) / mi_factorial(i);
  Rational rhs(0);
  for_each_splitting(i, [&](const MultiIndex& i1, const MultiIndex& i2) {
    Rational t1 = tau_bracket_or_zero(mi_add(i1, {a, 0}));
    if (t1.is_zero()) return;
    Rational t2 = tau_bracket_or_zero(mi_add(i2, {b, c, 0}));
    if (t2.is_zero()) return;
    rhs += t1 * t2 / (mi_factorial(i1) * mi_factorial(i2));
  });
  return lhs == rhs;
}

// Symmetric variant, requires j_0 >= 1:
//   (1/j!) (<tau_{a+1} tau_b tau^j> + <tau_a tau_{b+1} tau^j>)
//     = sum_{j'+j''=j} (1/(j'! j''!)) <tau_a tau_0 tau^{j'}> <tau_b tau_0 tau^{j''}>.
inline bool check_recursion_sym(long a, long b, const MultiIndex& j) {
  if (j.empty() || j[0] < 1)
    throw std::invalid_argument("check_recursion_sym: j_0 >= 1 required");
  Rational lhs = (tau_bracket_or_zero(mi_add(j, {a + 1, b})) +
                  tau_bracket_or_zero(mi_add(j, {a, b + 1}))) /
                 mi_factorial(j);
  Rational rhs(0);
  for_each_splitting(j, [&](const MultiIndex& j1, const MultiIndex& j2) {
    Rational t1 = tau_bracket_or_zero(mi_add(j1, {a, 0}));
    if (t1.is_zero()) return;
    Rational t2 = tau_bracket_or_zero(mi_add(j2, {b, 0}));
    if (t2.is_zero()) return;
    rhs += t1 * t2 / (mi_factorial(j1) * mi_factorial(j2));
  });
  return lhs == rhs;
}

}  // namespace qop
