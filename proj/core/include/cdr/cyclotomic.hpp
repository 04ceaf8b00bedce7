#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cdr/rational.hpp"

namespace cdr {

/// Exact element of the cyclotomic field Q(zeta_R), zeta_R = exp(2 pi i / R).
///
/// Stored as the remainder of a polynomial in zeta modulo the R-th cyclotomic
/// polynomial, so the coefficient vector (length phi(R)) is a canonical form and
/// equality is coefficientwise. Values of different orders are combined in
/// Q(zeta_lcm). Rationals are the order-1 case.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_{Rational(0)} {}
  Cyclotomic(const Rational& r) : order_(1), coeffs_{r} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int r) : Cyclotomic(Rational(r)) {}            // NOLINT(google-explicit-constructor)

  /// Builds sum_k coeffs[k] zeta_order^k (any length; reduced on construction).
  Cyclotomic(long order, const std::vector<Rational>& coeffs);

  /// exp(2 pi i * exponent); the denominator of `exponent` fixes the order.
  static Cyclotomic root_of_unity(const Rational& exponent);
  /// zeta_order^k.
  static Cyclotomic zeta(long order, long k);

  long order() const { return order_; }
  /// Canonical coefficients of 1, zeta, ..., zeta^{phi(order)-1}.
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws DomainError unless is_rational().
  Rational to_rational() const;

  /// The same element expressed in Q(zeta_order) where order is a multiple of order().
  Cyclotomic lifted(long order) const;

  Cyclotomic inverse() const;

  std::string str() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend Cyclotomic operator-(const Cyclotomic& a);

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  long order_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(long n);

/// Euler's totient.
long euler_phi(long n);

}  // namespace cdr
