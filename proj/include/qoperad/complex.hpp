#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qoperad/sparse_matrix.hpp"

namespace qop {

// A finite cochain complex with bases listed per (true, possibly negative)
// cohomological degree. The differential of degree d maps the basis of
// degree d to the basis of degree d+1; matrix columns index the source.
struct GradedComplex {
  struct Label {
    int g = 0;
    int n = 0;
    int weight = 0;
    std::string side;  // "feyn_bv" | "afeyn_qbv" | free-form
  };

  Label label;
  std::map<int, std::vector<std::string>> bases;
  std::map<int, SparseMatrix> differentials;

  long dim(int degree) const {
    auto it = bases.find(degree);
    return it == bases.end() ? 0 : static_cast<long>(it->second.size());
  }

  // Shape consistency between differentials and bases.
  void validate() const {
    for (const auto& [d, m] : differentials) {
      if (m.cols() != dim(d) || m.rows() != dim(d + 1))
        throw std::invalid_argument("GradedComplex: differential shape mismatch at degree " +
                                    std::to_string(d));
    }
  }
};

inline bool verify_d_squared(const GradedComplex& c) {
  c.validate();
  for (const auto& [d, m] : c.differentials) {
    auto next = c.differentials.find(d + 1);
    if (next == c.differentials.end()) continue;
    if (!(next->second * m).is_zero()) return false;
  }
  return true;
}

// Nonzero cohomology dimensions by degree:
//   dim H^d = dim_d - rank d^(d) - rank d^(d-1).
// With exact=false ranks go through the two-prime fast path.
inline std::map<int, long> cohomology_dims(const GradedComplex& c, bool exact = true,
                                           std::uint64_t seed = 12345) {
  c.validate();
  std::map<int, long> ranks;
  for (const auto& [d, m] : c.differentials)
    ranks[d] = exact ? rank(m) : rank_fast(m, seed + static_cast<std::uint64_t>(d + 1000));
  std::map<int, long> h;
  for (const auto& [d, basis] : c.bases) {
    long out = ranks.count(d) ? ranks[d] : 0;
    long in = ranks.count(d - 1) ? ranks[d - 1] : 0;
    long dim_h = static_cast<long>(basis.size()) - out - in;
    if (dim_h < 0)
      throw std::logic_error("cohomology_dims: negative dimension (broken complex)");
    if (dim_h > 0) h[d] = dim_h;
  }
  return h;
}

inline long euler_characteristic(const GradedComplex& c) {
  long chi = 0;
  for (const auto& [d, basis] : c.bases)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(basis.size());
  return chi;
}

inline long euler_of_dims(const std::map<int, long>& dims) {
  long chi = 0;
  for (const auto& [d, v] : dims) chi += (d % 2 == 0 ? 1 : -1) * v;
  return chi;
}

}  // namespace qop
