#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "cdr/cyclotomic.hpp"
#include "cdr/errors.hpp"

namespace cdr {

/// Finite Laurent polynomial sum_k c_k t^k in the auxiliary torus variable t.
class LaurentT {
 public:
  LaurentT() = default;
  LaurentT(const Cyclotomic& c) { add_term(0, c); }  // NOLINT(google-explicit-constructor)
  LaurentT(const Rational& c) : LaurentT(Cyclotomic(c)) {}  // NOLINT(google-explicit-constructor)
  LaurentT(int c) : LaurentT(Cyclotomic(c)) {}  // NOLINT(google-explicit-constructor)

  /// c * t^k.
  static LaurentT monomial(const Cyclotomic& c, long k) {
    LaurentT p;
    p.add_term(k, c);
    return p;
  }

  const std::map<long, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  Cyclotomic constant_term() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Cyclotomic() : it->second;
  }
  long min_degree() const { return terms_.begin()->first; }
  long max_degree() const { return terms_.rbegin()->first; }
  const Cyclotomic& leading() const { return terms_.rbegin()->second; }

  /// Value at t = 1.
  Cyclotomic at_one() const {
    Cyclotomic s;
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  void add_term(long k, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentT& operator+=(const LaurentT& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  LaurentT& operator-=(const LaurentT& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  LaurentT& operator*=(const LaurentT& o) { return *this = *this * o; }

  friend LaurentT operator+(LaurentT a, const LaurentT& b) { return a += b; }
  friend LaurentT operator-(LaurentT a, const LaurentT& b) { return a -= b; }
  friend LaurentT operator-(const LaurentT& a) { return LaurentT() - a; }
  friend LaurentT operator*(const LaurentT& a, const LaurentT& b) {
    LaurentT out;
    for (const auto& [i, x] : a.terms_) {
      for (const auto& [j, y] : b.terms_) out.add_term(i + j, x * y);
    }
    return out;
  }
  friend bool operator==(const LaurentT& a, const LaurentT& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (k != 0) os << "*t^" << k;
    }
    return os.str();
  }

 private:
  std::map<long, Cyclotomic> terms_;
};

inline bool is_zero(const LaurentT& p) { return p.is_zero(); }

/// Quotient of Laurent polynomials in t with cyclotomic coefficients.
class RationalFunctionT {
 public:
  RationalFunctionT() : num_(), den_(1) {}
  RationalFunctionT(const LaurentT& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunctionT(const Cyclotomic& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunctionT(int c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunctionT(LaurentT num, LaurentT den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    normalize();
  }

  const LaurentT& numerator() const { return num_; }
  const LaurentT& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  /// The exact Laurent polynomial this function equals, if the division has no remainder.
  std::optional<LaurentT> as_laurent() const;
  /// True when the reduced function does not depend on t.
  bool is_constant() const;
  /// The constant value; throws DomainError unless is_constant().
  Cyclotomic constant() const;

  RationalFunctionT inverse() const {
    if (num_.is_zero()) throw DomainError("inverse of zero rational function");
    return RationalFunctionT(den_, num_);
  }

  RationalFunctionT& operator+=(const RationalFunctionT& o);
  RationalFunctionT& operator-=(const RationalFunctionT& o) { return *this += -o; }
  RationalFunctionT& operator*=(const RationalFunctionT& o);
  RationalFunctionT& operator/=(const RationalFunctionT& o) { return *this *= o.inverse(); }

  friend RationalFunctionT operator+(RationalFunctionT a, const RationalFunctionT& b) { return a += b; }
  friend RationalFunctionT operator-(RationalFunctionT a, const RationalFunctionT& b) { return a -= b; }
  friend RationalFunctionT operator*(RationalFunctionT a, const RationalFunctionT& b) { return a *= b; }
  friend RationalFunctionT operator/(RationalFunctionT a, const RationalFunctionT& b) { return a /= b; }
  friend RationalFunctionT operator-(const RationalFunctionT& a) {
    RationalFunctionT out = a;
    out.num_ = -out.num_;
    return out;
  }
  /// Cross-multiplied comparison; independent of representation.
  friend bool operator==(const RationalFunctionT& a, const RationalFunctionT& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

 private:
  void normalize();

  LaurentT num_;
  LaurentT den_;
};

inline bool is_zero(const RationalFunctionT& f) { return f.is_zero(); }

/// Exact division of Laurent polynomials: quotient and remainder with deg(remainder) < deg(divisor)
/// after shifting both to ordinary polynomials.
std::pair<LaurentT, LaurentT> divide(const LaurentT& a, const LaurentT& b);

}  // namespace cdr
