#pragma once

#include "qiso/gauss.hpp"

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace qiso {

// Dense polynomial in the internal variable v, coefficients in Q(i).
// The deformation parameter is q = v^2; the square root is carried so that the
// odd-rank orthogonal R-matrices (whose entries involve q^{1/2}) stay exact.
// Invariant: no trailing zero coefficients; an empty vector is the zero polynomial.
struct Poly {
  std::vector<GaussRational> c;

  Poly() = default;
  explicit Poly(GaussRational a) {
    if (!a.is_zero()) c.push_back(std::move(a));
  }

  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  int ord() const;                                            // lowest nonzero power; -1 for zero
  bool is_zero() const { return c.empty(); }
  bool is_monomial() const { return !c.empty() && ord() == deg(); }
  const GaussRational& lead() const { return c.back(); }
  void trim();

  static Poly monomial(GaussRational a, int k);
  static Poly one() { return Poly(GaussRational(1)); }

  GaussRational at(int k) const {
    return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : GaussRational();
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const GaussRational& s);

// Quotient of a by b over the field Q(i); remainder out-param optional.
Poly poly_divmod(const Poly& a, const Poly& b, Poly* rem);
// Exact division; throws std::domain_error if the remainder is nonzero.
Poly poly_exact_div(const Poly& a, const Poly& b);
// Monic gcd via Euclid with monomial fast paths; gcd(0,0) = 0.
Poly poly_gcd(Poly a, Poly b);

// Threshold below which a numeric denominator counts as a pole.
inline constexpr double kPoleEps = 1e-12;

// Canonical rational function in v over Q(i), q = v^2.
// Invariants: gcd(num, den) = 1, den is monic and nonzero, zero is 0/1.
// Equality of canonical forms is therefore syntactic equality.
class QScalar {
 public:
  QScalar() : den_(Poly::one()) {}
  QScalar(int k) : num_(Poly(GaussRational(k))), den_(Poly::one()) {}
  explicit QScalar(GaussRational a) : num_(Poly(std::move(a))), den_(Poly::one()) {}
  QScalar(Poly n, Poly d);  // canonicalizes; throws std::domain_error if d = 0

  static QScalar v_pow(int k);              // v^k for any integer k
  static QScalar q_pow(int k) { return v_pow(2 * k); }
  static QScalar q() { return q_pow(1); }
  static QScalar i() { return QScalar(GaussRational::i()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.deg() == 0 && den_.deg() == 0 && num_.c[0] == GaussRational(1); }
  bool is_constant() const { return num_.deg() <= 0 && den_.deg() == 0; }
  // Requires is_constant(); the value as an element of Q(i).
  GaussRational constant_value() const;

  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);  // throws std::domain_error on zero divisor

  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
  friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }

  friend bool operator==(const QScalar& a, const QScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const QScalar& a, const QScalar& b) { return !(a == b); }

  QScalar pow(int k) const;

  // The *-involution for |q| = 1: v -> 1/v with coefficients conjugated.
  QScalar star() const;

  // Numeric evaluation at a complex value of q (principal branch of v = sqrt(q)).
  // Throws std::domain_error when the denominator falls below kPoleEps.
  std::complex<double> eval_at(std::complex<double> q_value) const;

  // Exact value at q = 1 (v = 1); throws std::domain_error on a pole.
  GaussRational eval_at_one() const;

  // Coefficients of (q-1)^0 .. (q-1)^order of the expansion at q = 1.
  // Throws std::domain_error on a pole at q = 1.
  std::vector<GaussRational> taylor_at_one(int order) const;

  // "n0 n1 ... / d0 d1 ..." with ascending v-powers; zero polynomial prints "0".
  std::string str() const;
  static QScalar parse(std::string_view s);

 private:
  Poly num_, den_;
  void canonicalize();
};

}  // namespace qiso
