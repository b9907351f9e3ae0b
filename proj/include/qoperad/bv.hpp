#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qoperad/rational.hpp"

namespace qop {

// Basis of the weight <= 2 part of the BV cyclic operad on a finite label
// set:
//   kind C: the commutative generator (weight 0, degree 0); on a 2-element
//           set this is the operad unit.
//   kind E: the symbols E_{ij} = E_{ji}, i != j in the label set (weight 2,
//           degree -1); on a 2-element set this is the BV operator Delta.
// Labels are ints, kept sorted; E indices normalized to i < j.
struct BVBasisElem {
  enum class Kind { C, E };

  Kind kind = Kind::C;
  std::vector<int> labels;  // sorted, distinct, size >= 2
  int i = 0, j = 0;         // E only

  static BVBasisElem c(std::vector<int> A) {
    BVBasisElem x;
    x.kind = Kind::C;
    x.labels = normalize_labels(std::move(A), 3);
    return x;
  }
  static BVBasisElem one(int a, int b) {
    BVBasisElem x;
    x.kind = Kind::C;
    x.labels = normalize_labels({a, b}, 2);
    return x;
  }
  static BVBasisElem e(std::vector<int> A, int i, int j) {
    BVBasisElem x;
    x.kind = Kind::E;
    x.labels = normalize_labels(std::move(A), 2);
    if (i == j) throw std::invalid_argument("BV: E needs distinct indices");
    x.i = std::min(i, j);
    x.j = std::max(i, j);
    if (!x.has_label(x.i) || !x.has_label(x.j))
      throw std::invalid_argument("BV: E indices must belong to the label set");
    return x;
  }
  static BVBasisElem delta(int a, int b) { return e({a, b}, a, b); }

  bool has_label(int l) const {
    return std::binary_search(labels.begin(), labels.end(), l);
  }
  long arity() const { return static_cast<long>(labels.size()); }
  bool is_unit() const { return kind == Kind::C && arity() == 2; }

  auto key() const { return std::tie(kind, labels, i, j); }
  friend bool operator<(const BVBasisElem& a, const BVBasisElem& b) { return a.key() < b.key(); }
  friend bool operator==(const BVBasisElem& a, const BVBasisElem& b) { return a.key() == b.key(); }

  std::string str() const {
    auto set_str = [&]() {
      std::string s;
      for (std::size_t t = 0; t < labels.size(); ++t)
        s += (t ? "," : "") + std::to_string(labels[t]);
      return s;
    };
    if (kind == Kind::C) return (arity() == 2 ? "1{" : "c{") + set_str() + "}";
    if (arity() == 2) return "Delta{" + set_str() + "}";
    return "E{" + set_str() + ";" + std::to_string(i) + "," + std::to_string(j) + "}";
  }

 private:
  static std::vector<int> normalize_labels(std::vector<int> A, std::size_t min_size) {
    std::sort(A.begin(), A.end());
    if (A.size() < min_size || std::adjacent_find(A.begin(), A.end()) != A.end())
      throw std::invalid_argument("BV: bad label set");
    return A;
  }
};

inline int bv_weight(const BVBasisElem& x) { return x.kind == BVBasisElem::Kind::E ? 2 : 0; }
inline int bv_degree(const BVBasisElem& x) { return x.kind == BVBasisElem::Kind::E ? -1 : 0; }

// Formal linear combination of basis elements sharing one label set.
class BVElement {
 public:
  BVElement() = default;
  BVElement(const BVBasisElem& x, const Rational& c = Rational(1)) { add(x, c); }

  const std::map<BVBasisElem, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const BVBasisElem& x, const Rational& c) {
    if (c.is_zero()) return;
    if (!terms_.empty() && terms_.begin()->first.labels != x.labels)
      throw std::invalid_argument("BVElement: mixed label sets");
    auto it = terms_.find(x);
    if (it == terms_.end())
      terms_.emplace(x, c);
    else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  BVElement& operator+=(const BVElement& o) {
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
  }
  BVElement& operator*=(const Rational& c) {
    if (c.is_zero()) terms_.clear();
    for (auto& [x, v] : terms_) v *= c;
    return *this;
  }
  friend bool operator==(const BVElement& a, const BVElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<BVBasisElem, Rational> terms_;
};

// Renames labels along a bijection (given on the full label set).
inline BVBasisElem bv_relabel(const BVBasisElem& x, const std::map<int, int>& bij) {
  std::vector<int> A;
  std::set<int> image;
  for (int l : x.labels) {
    auto it = bij.find(l);
    int t = it == bij.end() ? l : it->second;
    if (!image.insert(t).second)
      throw std::invalid_argument("bv_relabel: map is not injective on labels");
    A.push_back(t);
  }
  if (x.kind == BVBasisElem::Kind::C)
    return x.arity() == 2 ? BVBasisElem::one(A[0], A[1]) : BVBasisElem::c(A);
  auto look = [&](int l) {
    auto it = bij.find(l);
    return it == bij.end() ? l : it->second;
  };
  return BVBasisElem::e(A, look(x.i), look(x.j));
}

inline BVElement bv_relabel(const BVElement& x, const std::map<int, int>& bij) {
  BVElement out;
  for (const auto& [b, c] : x.terms()) out.add(bv_relabel(b, bij), c);
  return out;
}

// Cyclic operadic composition at slot a of x and slot b of y, in the
// weight <= 2 quotient (anything of weight 4 is zero, which also disposes
// of every sign the odd-odd case would otherwise need):
//   C o C = C on the merged set,
//   E(..,i,j) o_{j,b} C = sum_k E(..,i,k) over new labels k,
//   E at a slot off its indices keeps its indices,
//   E o E = 0.
inline BVElement bv_compose(const BVBasisElem& x, int a, const BVBasisElem& y, int b) {
  if (!x.has_label(a)) throw std::invalid_argument("bv_compose: slot not in first label set");
  if (!y.has_label(b)) throw std::invalid_argument("bv_compose: slot not in second label set");
  std::vector<int> merged;
  for (int l : x.labels)
    if (l != a) merged.push_back(l);
  std::vector<int> incoming;
  for (int l : y.labels)
    if (l != b) incoming.push_back(l);
  for (int l : incoming) merged.push_back(l);
  {
    std::vector<int> chk = merged;
    std::sort(chk.begin(), chk.end());
    if (std::adjacent_find(chk.begin(), chk.end()) != chk.end())
      throw std::invalid_argument("bv_compose: label sets not disjoint");
  }

  const bool x_is_e = x.kind == BVBasisElem::Kind::E;
  const bool y_is_e = y.kind == BVBasisElem::Kind::E;
  BVElement out;
  if (x_is_e && y_is_e) return out;  // weight 4, truncated

  if (!x_is_e && !y_is_e) {
    out.add(merged.size() == 2 ? BVBasisElem::one(merged[0], merged[1])
                               : BVBasisElem::c(merged),
            Rational(1));
    return out;
  }

  // exactly one factor of kind E; the composite is E-type on `merged`
  const BVBasisElem& ex = x_is_e ? x : y;
  int slot = x_is_e ? a : b;
  // labels of the c-factor after removing its glued slot
  std::vector<int> joined;
  if (x_is_e) {
    joined = incoming;
  } else {
    for (int l : x.labels)
      if (l != a) joined.push_back(l);
  }

  if (slot == ex.i || slot == ex.j) {
    int keep = slot == ex.i ? ex.j : ex.i;
    for (int k : joined) out.add(BVBasisElem::e(merged, keep, k), Rational(1));
  } else {
    out.add(BVBasisElem::e(merged, ex.i, ex.j), Rational(1));
  }
  return out;
}

inline BVElement bv_compose(const BVElement& x, int a, const BVElement& y, int b) {
  BVElement out;
  for (const auto& [bx, cx] : x.terms())
    for (const auto& [by, cy] : y.terms()) {
      BVElement part = bv_compose(bx, a, by, b);
      part *= cx * cy;
      out += part;
    }
  return out;
}

// The internal differential of the (homology) operad is zero; kept as a
// hook so weight/degree bookkeeping stays generic downstream.
inline BVElement bv_diff(const BVBasisElem&) { return BVElement(); }

}  // namespace qop
