#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "qoperad/qbv.hpp"
#include "qoperad/sympoly.hpp"

namespace qop {

// Cogenerators of the dual of the weight <= 2 basis. Degrees are the
// negatives of the basis degrees.
struct Cogenerator {
  enum class Kind { DeltaStar, CStar, EStar };
  Kind kind;
  std::vector<int> labels;
  int i = 0, j = 0;

  static Cogenerator delta_star(int a, int b) { return {Kind::DeltaStar, {std::min(a, b), std::max(a, b)}, 0, 0}; }
  static Cogenerator c_star(std::vector<int> A) {
    std::sort(A.begin(), A.end());
    if (A.size() < 3) throw std::invalid_argument("c_star: arity >= 3");
    return {Kind::CStar, std::move(A), 0, 0};
  }
  static Cogenerator e_star(std::vector<int> A, int i, int j) {
    std::sort(A.begin(), A.end());
    if (A.size() < 3) throw std::invalid_argument("e_star: arity >= 3");
    return {Kind::EStar, std::move(A), std::min(i, j), std::max(i, j)};
  }
};

inline Monomial sympoly_term_to_monomial(const std::vector<int>& vars,
                                         const std::vector<int>& exps) {
  Monomial m;
  for (std::size_t t = 0; t < vars.size(); ++t)
    if (exps[t] > 0) m.push_back({vars[t], exps[t]});
  return m;
}

inline QElement qelement_of_poly(const BVBasisElem& x, const SymPoly& p) {
  QElement out;
  for (const auto& [e, c] : p.terms())
    out.add(QBasisElem::poly(x, sympoly_term_to_monomial(p.vars(), e)), c);
  return out;
}

// The cogenerator-level map: Delta* -> u, c_A* -> c_A (x) p_A, E* -> 0.
inline QElement f_image(const Cogenerator& x) {
  switch (x.kind) {
    case Cogenerator::Kind::DeltaStar: {
      auto [b, s] = QBasisElem::u(1, x.labels[0], x.labels[1]);
      QElement e;
      e.add(b, Rational(s));
      return e;
    }
    case Cogenerator::Kind::CStar: {
      SymPoly p = p_polynomial(static_cast<long>(x.labels.size()), x.labels);
      return qelement_of_poly(BVBasisElem::c(x.labels), p);
    }
    case Cogenerator::Kind::EStar:
      return QElement();
  }
  return QElement();
}

// Degree-zero cogenerator case of the chain-map equation:
//   d(c_A (x) p_A)
//     + 1/2 sum_{A1 u A2 = A, |A1|,|A2| >= 2}
//         mu_{alpha,beta}(c_{A1+alpha} (x) p_{A1+alpha},
//                         c_{A2+beta}  (x) p_{A2+beta})   == 0,
// the sum over ordered pairs (the 1/2 compensates the doubled count).
inline QElement chain_map_c_defect(const std::set<int>& A) {
  if (A.size() < 3) throw std::invalid_argument("chain_map_c: |A| >= 3 required");
  std::vector<int> vars(A.begin(), A.end());
  QElement total = q_diff(qelement_of_poly(BVBasisElem::c(vars), p_polynomial(A)));

  const int alpha = kFresh1, beta = kFresh2;
  long r = static_cast<long>(vars.size());
  QElement sum;
  for (long mask = 1; mask + 1 < (1L << r); ++mask) {
    std::set<int> A1, A2;
    for (long t = 0; t < r; ++t)
      (mask & (1L << t) ? A1 : A2).insert(vars[t]);
    if (A1.size() < 2 || A2.size() < 2) continue;
    std::set<int> A1a = A1, A2b = A2;
    A1a.insert(alpha);
    A2b.insert(beta);
    QElement left = qelement_of_poly(BVBasisElem::c({A1a.begin(), A1a.end()}), p_polynomial(A1a));
    QElement right = qelement_of_poly(BVBasisElem::c({A2b.begin(), A2b.end()}), p_polynomial(A2b));
    sum += q_compose2(left, alpha, right, beta);
  }
  sum *= Rational(1, 2);
  total += sum;
  return total;
}

inline bool verify_chain_map_c(const std::set<int>& A) {
  return chain_map_c_defect(A).is_zero();
}

// Degree-one cogenerator case. The two contributions are returned
// separately so tests can compare them term by term against the pure
// polynomial identity.
inline QElement chain_map_e_vertex_term(const std::set<int>& A, int i, int j) {
  std::vector<int> vars(A.begin(), A.end());
  SymPoly pA = p_polynomial(static_cast<long>(vars.size()), vars);
  SymPoly dp = pA.derivative(i);
  dp += pA.derivative(j);
  return qelement_of_poly(BVBasisElem::c(vars), dp);
}

inline QElement chain_map_e_partition_term(const std::set<int>& A, int i, int j) {
  std::vector<int> vars(A.begin(), A.end());
  const int alpha = kFresh1, b1 = kFresh2, b2 = kFresh3, gamma = kFresh4;
  std::vector<int> rest;
  for (int x : A)
    if (x != i && x != j) rest.push_back(x);
  long r = static_cast<long>(rest.size());
  QElement sum;
  auto [umid, usgn] = QBasisElem::u(1, b1, b2);
  QElement u1;
  u1.add(umid, Rational(usgn));
  for (long mask = 0; mask < (1L << r); ++mask) {
    std::set<int> A1 = {i}, A2 = {j};
    for (long t = 0; t < r; ++t)
      (mask & (1L << t) ? A1 : A2).insert(rest[t]);
    if (A1.size() < 2 || A2.size() < 2) continue;
    std::set<int> A1a = A1, A2g = A2;
    A1a.insert(alpha);
    A2g.insert(gamma);
    QElement left = qelement_of_poly(BVBasisElem::c({A1a.begin(), A1a.end()}), p_polynomial(A1a));
    QElement right = qelement_of_poly(BVBasisElem::c({A2g.begin(), A2g.end()}), p_polynomial(A2g));
    sum += q_compose3(left, alpha, u1, b1, b2, right, gamma);
  }
  return sum;
}

inline bool verify_chain_map_e(const std::set<int>& A, int i, int j) {
  if (A.size() < 3) throw std::invalid_argument("chain_map_e: |A| >= 3 required");
  if (i == j || !A.count(i) || !A.count(j))
    throw std::invalid_argument("chain_map_e: need distinct i, j in A");
  QElement total = chain_map_e_vertex_term(A, i, j);
  total += chain_map_e_partition_term(A, i, j);
  return total.is_zero();
}

}  // namespace qop
