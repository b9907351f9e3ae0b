#include <catch2/catch_amalgamated.hpp>

#include "qoperad/qbv.hpp"
#include "qoperad/qbv_relations.hpp"

using namespace qop;

namespace {

QElement u_elem(int k, int s1, int s2) {
  auto [b, s] = QBasisElem::u(k, s1, s2);
  QElement e;
  e.add(b, Rational(s));
  return e;
}

QBasisElem cpoly(std::vector<int> A, Monomial m) {
  return QBasisElem::poly(BVBasisElem::c(A), std::move(m));
}

}  // namespace

TEST_CASE("degrees and weights") {
  QBasisElem c3 = cpoly({1, 2, 3}, {});
  CHECK(q_degree(c3) == 0);
  CHECK(q_weight(c3) == 0);

  auto [u1, s1] = QBasisElem::u(1, 1, 2);
  CHECK(s1 == 1);
  CHECK(q_degree(u1) == 1);
  CHECK(q_weight(u1) == 2);

  QBasisElem c4v = cpoly({1, 2, 3, 4}, {{1, 1}});
  CHECK(q_degree(c4v) == 0);
  CHECK(q_weight(c4v) == 0);
  QBasisElem c4 = cpoly({1, 2, 3, 4}, {});
  CHECK(q_degree(c4) == 2);
  CHECK(q_weight(c4) == 2);

  auto [u0, s0] = QBasisElem::u(0, 1, 2);
  CHECK(q_degree(u0) == -1);
  CHECK(q_weight(u0) == 0);
}

TEST_CASE("u orientation normalization") {
  auto [a, sa] = QBasisElem::u(2, 5, 3);  // presented reversed
  CHECK(a.uslots == std::array<int, 2>{3, 5});
  CHECK(sa == -1);  // tau u^2 = -u^2
  auto [b, sb] = QBasisElem::u(1, 5, 3);
  CHECK(sb == 1);  // tau u = +u
  auto [c, sc] = QBasisElem::u(0, 5, 3);
  CHECK(sc == 1);  // unit is fixed
}

TEST_CASE("differential") {
  // d(c_{123} (x) v_1) = (E_12 + E_13) (x) 1
  QElement d = q_diff(cpoly({1, 2, 3}, {{1, 1}}));
  QElement expect;
  expect.add(QBasisElem::poly(BVBasisElem::e({1, 2, 3}, 1, 2), {}), Rational(1));
  expect.add(QBasisElem::poly(BVBasisElem::e({1, 2, 3}, 1, 3), {}), Rational(1));
  CHECK(d == expect);

  CHECK(q_diff(cpoly({1, 2, 3}, {})).is_zero());

  // d^2 = 0 over arities <= 6 happens in the relations sweep; spot check here
  CHECK(q_diff(q_diff(QElement(cpoly({1, 2, 3, 4}, {{1, 2}, {3, 1}})))).is_zero());

  // d has degree +1 and preserves weight
  QBasisElem e = cpoly({1, 2, 3, 4}, {{2, 2}});
  QElement de = q_diff(e);
  for (const auto& [b, c] : de.terms()) {
    CHECK(q_degree(b) == q_degree(e) + 1);
    CHECK(q_weight(b) == q_weight(e));
  }
}

TEST_CASE("relabeling and the tau sign") {
  QElement u2 = u_elem(2, 1, 2);
  QElement swapped = q_relabel(u2, {{1, 2}, {2, 1}});
  QElement minus = u2;
  minus *= Rational(-1);
  CHECK(swapped == minus);

  QElement u1 = u_elem(1, 1, 2);
  CHECK(q_relabel(u1, {{1, 2}, {2, 1}}) == u1);

  QElement p = QElement(cpoly({1, 2, 3}, {{1, 1}}));
  QElement q = q_relabel(p, {{1, 2}, {2, 1}});
  CHECK(q == QElement(cpoly({1, 2, 3}, {{2, 1}})));
}

TEST_CASE("binary composition cases") {
  // mu(u, u) = -u^2
  QElement r = q_compose2(u_elem(1, 1, 2), 2, u_elem(1, 3, 4), 3);
  QElement expect = u_elem(2, 1, 4);
  expect *= Rational(-1);
  CHECK(r == expect);

  // mu_{a,1}(c_{12a} (x) v_a^2, u^2) = 2 c (x) 1, slot renamed through u
  QElement r2 = q_compose2(QElement(cpoly({1, 2, 7}, {{7, 2}})), 7, u_elem(2, 8, 9), 8);
  QElement expect2;
  expect2.add(cpoly({1, 2, 9}, {}), Rational(2));
  CHECK(r2 == expect2);

  // mu_{a,b}(c_3 (x) 1, c_3 (x) 1) = sum E_{kl} (x) 1
  QElement r3 = q_compose2(QElement(cpoly({1, 2, 7}, {})), 7, QElement(cpoly({8, 3, 4}, {})), 8);
  QElement expect3;
  for (int k : {1, 2})
    for (int l : {3, 4})
      expect3.add(QBasisElem::poly(BVBasisElem::e({1, 2, 3, 4}, k, l), {}), Rational(1));
  CHECK(r3 == expect3);

  // vanishing through the evaluation at zero
  QElement r4 = q_compose2(QElement(cpoly({1, 2, 7}, {{7, 1}})), 7,
                           QElement(cpoly({8, 3, 4}, {})), 8);
  CHECK(r4.is_zero());

  // mu_{2,a}(u^n, x (x) p) = (-1)^{n+1} x (x) d^n p
  for (int n : {1, 2, 3}) {
    QElement lhs = q_compose2(u_elem(n, 8, 9), 9, QElement(cpoly({1, 2, 7}, {{7, 3}})), 7);
    QElement rhs;
    rhs.add(cpoly({1, 2, 8}, {{8, 3 - n}}), falling(3, n) * Rational(n % 2 == 0 ? -1 : 1));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("binary composition degree and weight") {
  std::vector<QBasisElem> elems = {cpoly({1, 2, 7}, {}), cpoly({1, 2, 7}, {{1, 1}, {7, 1}}),
                                   QBasisElem::poly(BVBasisElem::e({1, 2, 7}, 1, 7), {}),
                                   QBasisElem::u(3, 1, 7).first};
  std::vector<QBasisElem> others = {cpoly({8, 3, 4}, {}), cpoly({8, 3, 4}, {{3, 2}}),
                                    QBasisElem::poly(BVBasisElem::e({8, 3, 4}, 3, 4), {}),
                                    QBasisElem::u(2, 8, 3).first};
  for (const auto& X : elems)
    for (const auto& Y : others) {
      int a = X.is_u ? X.uslots[1] : 7;
      int b = Y.is_u ? Y.uslots[0] : 8;
      QElement r = q_compose2(X, a, Y, b);
      for (const auto& [t, c] : r.terms()) {
        CHECK(q_degree(t) == q_degree(X) + q_degree(Y) + 1);
        CHECK(q_weight(t) == q_weight(X) + q_weight(Y));
      }
    }
}

TEST_CASE("graded symmetry of the binary composition") {
  std::vector<QBasisElem> elems = {cpoly({1, 2, 7}, {}), cpoly({1, 2, 7}, {{2, 1}}),
                                   QBasisElem::poly(BVBasisElem::e({1, 2, 7}, 2, 7), {}),
                                   QBasisElem::u(1, 1, 7).first, QBasisElem::u(2, 1, 7).first};
  std::vector<QBasisElem> others = {cpoly({8, 3, 4}, {}), cpoly({8, 3, 4}, {{8, 1}}),
                                    QBasisElem::poly(BVBasisElem::e({8, 3, 4}, 3, 8), {}),
                                    QBasisElem::u(1, 8, 3).first, QBasisElem::u(2, 8, 3).first};
  for (const auto& X : elems)
    for (const auto& Y : others) {
      int a = X.is_u ? X.uslots[1] : 7;
      int b = Y.is_u ? Y.uslots[0] : 8;
      QElement lhs = q_compose2(X, a, Y, b);
      QElement rhs = q_compose2(Y, b, X, a);
      if ((q_degree(X) % 2 != 0) && (q_degree(Y) % 2 != 0)) rhs *= Rational(-1);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("ternary composition") {
  // mu(c_A (x) 1, u, c_B (x) 1) = c (x) 1
  QElement r = q_compose3(cpoly({1, 2, 7}, {}), 7, QBasisElem::u(1, 8, 9).first, 8, 9,
                          cpoly({10, 3, 4}, {}), 10);
  CHECK(r == QElement(cpoly({1, 2, 3, 4}, {})));

  // u^0 in the middle gives zero
  CHECK(q_compose3(cpoly({1, 2, 7}, {}), 7, QBasisElem::u(0, 8, 9).first, 8, 9,
                   cpoly({10, 3, 4}, {}), 10)
            .is_zero());

  // E o E truncates to zero
  CHECK(q_compose3(QBasisElem::poly(BVBasisElem::e({1, 2, 7}, 1, 2), {}), 7,
                   QBasisElem::u(3, 8, 9).first, 8, 9,
                   QBasisElem::poly(BVBasisElem::e({10, 3, 4}, 3, 4), {}), 10)
            .is_zero());

  // orientation of the middle pair: swapping (b1, b2) multiplies by the
  // tau-sign of u^n
  for (int n : {1, 2, 3}) {
    QElement direct = q_compose3(cpoly({1, 2, 7}, {{7, (n - 1)}}), 7, QBasisElem::u(n, 8, 9).first,
                                 8, 9, cpoly({10, 3, 4}, {}), 10);
    QElement flipped = q_compose3(cpoly({1, 2, 7}, {{7, (n - 1)}}), 7, QBasisElem::u(n, 8, 9).first,
                                  9, 8, cpoly({10, 3, 4}, {}), 10);
    QElement expect = direct;
    if (n % 2 == 0) expect *= Rational(-1);
    CHECK(flipped == expect);
  }

  // degree +1, weight additive
  QBasisElem X = cpoly({1, 2, 7}, {{7, 1}});
  QBasisElem U = QBasisElem::u(3, 8, 9).first;
  QBasisElem Z = cpoly({10, 3, 4}, {{10, 1}});
  QElement r2 = q_compose3(X, 7, U, 8, 9, Z, 10);
  CHECK_FALSE(r2.is_zero());
  for (const auto& [t, c] : r2.terms()) {
    CHECK(q_degree(t) == q_degree(X) + q_degree(U) + q_degree(Z) + 1);
    CHECK(q_weight(t) == q_weight(X) + q_weight(U) + q_weight(Z));
  }
}

TEST_CASE("equivariance of compositions under relabeling") {
  std::map<int, int> bij = {{1, 21}, {2, 22}, {3, 23}, {4, 24}, {7, 27}, {8, 28}};
  std::vector<QBasisElem> elems = {cpoly({1, 2, 7}, {{1, 1}}),
                                   QBasisElem::poly(BVBasisElem::e({1, 2, 7}, 1, 7), {}),
                                   QBasisElem::u(2, 1, 7).first};
  std::vector<QBasisElem> others = {cpoly({8, 3, 4}, {{4, 2}}),
                                    QBasisElem::poly(BVBasisElem::e({8, 3, 4}, 3, 4), {}),
                                    QBasisElem::u(3, 8, 3).first};
  for (const auto& X : elems)
    for (const auto& Y : others) {
      int a = X.is_u ? X.uslots[1] : 7;
      int b = Y.is_u ? Y.uslots[0] : 8;
      QElement composed = q_compose2(X, a, Y, b);
      CHECK(q_relabel(composed, bij) ==
            q_compose2(q_relabel(QElement(X), bij), bij.at(a), q_relabel(QElement(Y), bij),
                       bij.at(b)));
    }
  // d commutes with relabeling
  QElement e(cpoly({1, 2, 7}, {{1, 1}, {7, 2}}));
  CHECK(q_relabel(q_diff(e), bij) == q_diff(q_relabel(e, bij)));
}

TEST_CASE("homotopy relations on a small range") {
  HomotopyReport rep = verify_homotopy_relations(6, 2, 3, 2);
  for (const auto& f : rep.failures) UNSCOPED_INFO(f);
  CHECK(rep.ok());
  CHECK(rep.checked[1] > 0);
  CHECK(rep.checked[2] > 0);
  CHECK(rep.checked[3] > 0);
  CHECK(rep.checked[4] > 0);
  CHECK(rep.checked[5] > 0);
}
