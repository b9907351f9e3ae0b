#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qoperad/bv.hpp"

using namespace qop;

namespace {

std::vector<BVBasisElem> basis_on(const std::vector<int>& A) {
  std::vector<BVBasisElem> out;
  if (A.size() == 2)
    out.push_back(BVBasisElem::one(A[0], A[1]));
  else
    out.push_back(BVBasisElem::c(A));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) out.push_back(BVBasisElem::e(A, A[i], A[j]));
  return out;
}

}  // namespace

TEST_CASE("composition rules") {
  // c o c = c on the merged set
  BVElement r1 = bv_compose(BVBasisElem::c({1, 2, 7}), 7, BVBasisElem::c({8, 3, 4}), 8);
  CHECK(r1 == BVElement(BVBasisElem::c({1, 2, 3, 4})));

  // Delta o_{2,b} c_{b,3,4} = E_13 + E_14
  BVElement r2 = bv_compose(BVBasisElem::delta(1, 2), 2, BVBasisElem::c({8, 3, 4}), 8);
  BVElement expect2;
  expect2.add(BVBasisElem::e({1, 3, 4}, 1, 3), Rational(1));
  expect2.add(BVBasisElem::e({1, 3, 4}, 1, 4), Rational(1));
  CHECK(r2 == expect2);

  // E at a slot off its indices keeps its indices
  BVElement r3 = bv_compose(BVBasisElem::e({1, 2, 7}, 1, 2), 7, BVBasisElem::c({8, 4, 5}), 8);
  CHECK(r3 == BVElement(BVBasisElem::e({1, 2, 4, 5}, 1, 2)));

  // E o E = 0 in the weight <= 2 quotient
  CHECK(bv_compose(BVBasisElem::e({1, 2, 3}, 1, 2), 3, BVBasisElem::delta(9, 8), 9).is_zero());

  // mirrored case: c o E through the c-slot
  BVElement r4 = bv_compose(BVBasisElem::c({1, 2, 7}), 7, BVBasisElem::e({8, 4, 5}, 8, 4), 8);
  BVElement expect4;
  expect4.add(BVBasisElem::e({1, 2, 4, 5}, 4, 1), Rational(1));
  expect4.add(BVBasisElem::e({1, 2, 4, 5}, 4, 2), Rational(1));
  CHECK(r4 == expect4);
}

TEST_CASE("the slot-replacement rule is forced by associativity") {
  // Delta o (c o c) = (Delta o c) o c, bracketed through the unknown slot
  BVBasisElem delta = BVBasisElem::delta(10, 11);
  BVBasisElem c1 = BVBasisElem::c({12, 3, 7});
  BVBasisElem c2 = BVBasisElem::c({8, 4, 5});
  BVElement inner = bv_compose(c1, 7, c2, 8);                       // c{12,3,4,5}
  BVElement lhs = bv_compose(BVElement(delta), 11, inner, 12);      // Delta o (c o c)
  BVElement outer = bv_compose(BVElement(delta), 11, BVElement(c1), 12);
  BVElement rhs = bv_compose(outer, 7, BVElement(c2), 8);           // (Delta o c) o c
  CHECK(lhs == rhs);
  CHECK_FALSE(lhs.is_zero());
}

TEST_CASE("unit composes as relabeling") {
  std::vector<BVBasisElem> elems = basis_on({1, 2, 3});
  for (const auto& x : elems) {
    BVElement r = bv_compose(x, 3, BVBasisElem::one(8, 9), 8);
    BVElement expect(bv_relabel(x, {{3, 9}}));
    CHECK(r == expect);
  }
  // unit on the other side
  BVElement r = bv_compose(BVBasisElem::one(8, 9), 9, BVBasisElem::c({1, 2, 3}), 2);
  CHECK(r == BVElement(BVBasisElem::c({1, 8, 3})));
}

TEST_CASE("relabeling") {
  CHECK(bv_relabel(BVBasisElem::e({1, 2, 3}, 1, 2), {{1, 2}, {2, 1}}) ==
        BVBasisElem::e({1, 2, 3}, 1, 2));
  CHECK(bv_relabel(BVBasisElem::c({1, 2, 3}), {{1, 2}, {2, 3}, {3, 1}}) ==
        BVBasisElem::c({1, 2, 3}));
  CHECK_THROWS_AS(bv_relabel(BVBasisElem::c({1, 2, 3}), std::map<int, int>{{1, 2}}),
                  std::invalid_argument);
}

TEST_CASE("weight and degree") {
  CHECK(bv_weight(BVBasisElem::delta(1, 2)) == 2);
  CHECK(bv_degree(BVBasisElem::delta(1, 2)) == -1);
  CHECK(bv_weight(BVBasisElem::c({1, 2, 3})) == 0);
  CHECK(bv_degree(BVBasisElem::c({1, 2, 3})) == 0);
  CHECK(bv_weight(BVBasisElem::e({1, 2, 3}, 1, 3)) == 2);
  CHECK(bv_degree(BVBasisElem::e({1, 2, 3}, 1, 3)) == -1);
}

TEST_CASE("associativity sweep over small arities") {
  // ((x o y) o z) = (x o (y o z)) whenever both sides are defined
  std::vector<int> A = {1, 2, 70};   // glue 70 -- 80
  std::vector<int> B = {80, 3, 71};  // glue 71 -- 81
  std::vector<int> C = {81, 4, 5};
  for (const auto& x : basis_on(A))
    for (const auto& y : basis_on(B))
      for (const auto& z : basis_on(C)) {
        BVElement xy = bv_compose(x, 70, y, 80);
        BVElement lhs = bv_compose(xy, 71, BVElement(z), 81);
        BVElement yz = bv_compose(y, 71, z, 81);
        BVElement rhs = bv_compose(BVElement(x), 70, yz, 80);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("equivariance of composition") {
  std::mt19937_64 rng(99);
  std::vector<int> A = {1, 2, 70}, B = {80, 3, 4};
  std::vector<int> targets = {11, 12, 13, 14};  // images of 1,2,3,4
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(targets.begin(), targets.end(), rng);
    std::map<int, int> bij = {{1, targets[0]}, {2, targets[1]}, {3, targets[2]}, {4, targets[3]}};
    for (const auto& x : basis_on(A))
      for (const auto& y : basis_on(B)) {
        BVElement composed = bv_compose(x, 70, y, 80);
        BVElement lhs = bv_relabel(composed, bij);
        BVElement rhs = bv_compose(bv_relabel(BVElement(x), bij), 70,
                                   bv_relabel(BVElement(y), bij), 80);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("weight additivity") {
  std::vector<int> A = {1, 2, 70}, B = {80, 3, 4};
  for (const auto& x : basis_on(A))
    for (const auto& y : basis_on(B)) {
      BVElement r = bv_compose(x, 70, y, 80);
      for (const auto& [b, c] : r.terms()) CHECK(bv_weight(b) == bv_weight(x) + bv_weight(y));
    }
}

TEST_CASE("rendering") {
  CHECK(BVBasisElem::c({1, 2, 3}).str() == "c{1,2,3}");
  CHECK(BVBasisElem::e({1, 2, 3}, 3, 1).str() == "E{1,2,3;1,3}");
  CHECK(BVBasisElem::delta(1, 2).str() == "Delta{1,2}");
  CHECK(BVBasisElem::one(1, 2).str() == "1{1,2}");
}
