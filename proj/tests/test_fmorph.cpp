#include <catch2/catch_amalgamated.hpp>

#include "qoperad/fmorph.hpp"

using namespace qop;

TEST_CASE("images of the cogenerators") {
  QElement fu = f_image(Cogenerator::delta_star(1, 2));
  QElement u;
  u.add(QBasisElem::u(1, 1, 2).first, Rational(1));
  CHECK(fu == u);

  // c_3* goes to c_3 (x) 1 since p_3 = 1
  QElement fc3 = f_image(Cogenerator::c_star({1, 2, 3}));
  CHECK(fc3 == QElement(QBasisElem::poly(BVBasisElem::c({1, 2, 3}), {})));

  CHECK(f_image(Cogenerator::e_star({1, 2, 3}, 1, 2)).is_zero());

  // weight/degree bookkeeping of the images
  QElement fc5 = f_image(Cogenerator::c_star({1, 2, 3, 4, 5}));
  for (const auto& [b, c] : fc5.terms()) {
    CHECK(q_weight(b) == 0);
    CHECK(q_degree(b) == 0);
  }
  for (const auto& [b, c] : fu.terms()) {
    CHECK(q_weight(b) == 2);
    CHECK(q_degree(b) == 1);
  }
}

TEST_CASE("chain map, degree-zero cogenerators") {
  CHECK(verify_chain_map_c({1, 2, 3}));
  CHECK(verify_chain_map_c({1, 2, 3, 4}));
  CHECK(verify_chain_map_c({1, 2, 3, 4, 5}));
}

TEST_CASE("chain map, degree-one cogenerators") {
  CHECK(verify_chain_map_e({1, 2, 3}, 1, 2));
  CHECK(verify_chain_map_e({1, 2, 3, 4}, 2, 4));
  CHECK(verify_chain_map_e({1, 2, 3, 4, 5}, 2, 5));
}

TEST_CASE("the two code paths agree term by term") {
  // The operadic partition term must equal minus the vertex term, and both
  // must match the plain polynomial identity evaluated in psi.
  for (std::set<int> A : {std::set<int>{1, 2, 3, 4}, std::set<int>{1, 2, 3, 4, 5}}) {
    std::vector<int> v(A.begin(), A.end());
    for (std::size_t s = 0; s < v.size(); ++s)
      for (std::size_t t = 0; t < v.size(); ++t) {
        if (s == t) continue;
        int i = v[s], j = v[t];
        QElement vertex = chain_map_e_vertex_term(A, i, j);
        QElement partition = chain_map_e_partition_term(A, i, j);
        QElement sum = vertex + partition;
        CHECK(sum.is_zero());
        CHECK(check_p_identity(A, i, j));
        // the partition term expands over c_A with the product polynomial;
        // compare it against the psi-side derivative polynomial directly
        QElement neg_vertex = vertex;
        neg_vertex *= Rational(-1);
        CHECK(partition == neg_vertex);
      }
  }
}
