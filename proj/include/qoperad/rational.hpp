#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qop {

// Exact rational scalar. Always stored reduced with positive denominator
// (gmp keeps mpq_class canonical as long as construction goes through
// canonicalize(), which the constructors below guarantee).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(const mpz_class& n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "a/b" or "a".
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  // Renders "a" for integers and "a/b" otherwise.
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  mpq_class v_;
};

inline Rational factorial(long n) {
  // Small cache; everything at desk scale stays below 64.
  static const int kCache = 65;
  static mpz_class table[kCache];
  static bool init = false;
  if (!init) {
    table[0] = 1;
    for (int i = 1; i < kCache; ++i) table[i] = table[i - 1] * i;
    init = true;
  }
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  if (n < kCache) return Rational(table[n]);
  mpz_class r = table[kCache - 1];
  for (long i = kCache; i <= n; ++i) r *= i;
  return Rational(r);
}

// n (n-1) ... (n-k+1); zero when k > n.
inline Rational falling(long n, long k) {
  mpz_class r = 1;
  for (long i = 0; i < k; ++i) r *= (n - i);
  return Rational(r);
}

}  // namespace qop
