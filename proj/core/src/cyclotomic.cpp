#include "cdr/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Remainder of p modulo a monic integer polynomial.
Poly reduce_mod(Poly p, const std::vector<long>& modulus) {
  const std::size_t deg = modulus.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i].is_zero()) continue;
    const Rational c = p[i];
    for (std::size_t j = 0; j <= deg; ++j) {
      if (modulus[j] != 0) p[i - deg + j] -= c * Rational(modulus[j]);
    }
  }
  p.resize(deg, Rational(0));
  return p;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

/// Quotient and remainder over Q, b nonzero.
std::pair<Poly, Poly> divmod(Poly a, Poly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw DomainError("polynomial division by zero");
  if (a.size() < b.size()) return {Poly{}, a};
  Poly q(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  const std::size_t shift = b.size() - 1;
  for (std::size_t i = a.size(); i-- > shift;) {
    if (a[i].is_zero()) continue;
    const Rational c = a[i] / lead;
    q[i - shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - shift + j] -= c * b[j];
  }
  trim(a);
  return {q, a};
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace

long euler_phi(long n) {
  if (n <= 0) throw DomainError("euler_phi of nonpositive argument");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

std::mutex phi_mutex;
std::map<long, std::vector<long>> phi_cache;

// Caller holds phi_mutex.
const std::vector<long>& phi_locked(long n) {
  if (auto it = phi_cache.find(n); it != phi_cache.end()) return it->second;
  // x^n - 1 divided by every Phi_d with d | n, d < n.
  std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<long> divisor = phi_locked(d);
    const std::size_t dd = divisor.size() - 1;
    std::vector<long> q(p.size() - dd, 0);
    for (std::size_t i = p.size(); i-- > dd;) {
      const long c = p[i];
      q[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) p[i - dd + j] -= c * divisor[j];
    }
    p = q;
  }
  return phi_cache.emplace(n, std::move(p)).first->second;
}

const std::vector<long>& phi_poly(long n) { return cyclotomic_polynomial(n); }

}  // namespace

const std::vector<long>& cyclotomic_polynomial(long n) {
  if (n <= 0) throw DomainError("cyclotomic polynomial of nonpositive order");
  std::lock_guard<std::mutex> lock(phi_mutex);
  return phi_locked(n);
}

Cyclotomic::Cyclotomic(long order, const std::vector<Rational>& coeffs) : order_(order) {
  if (order <= 0) throw DomainError("cyclotomic order must be positive");
  // Fold powers modulo order first: zeta^order = 1.
  Poly folded(static_cast<std::size_t>(order), Rational(0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) folded[k % static_cast<std::size_t>(order)] += coeffs[k];
  coeffs_ = reduce_mod(std::move(folded), phi_poly(order));
}

Cyclotomic Cyclotomic::zeta(long order, long k) {
  if (order <= 0) throw DomainError("cyclotomic order must be positive");
  long e = k % order;
  if (e < 0) e += order;
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
  c[static_cast<std::size_t>(e)] = Rational(1);
  return Cyclotomic(order, c);
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& exponent) {
  return zeta(exponent.den_long(), exponent.num_long());
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return false;
  }
  return true;
}

Rational Cyclotomic::to_rational() const {
  if (!is_rational()) throw DomainError("cyclotomic number " + str() + " is not rational");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Cyclotomic Cyclotomic::lifted(long order) const {
  if (order == order_) return *this;
  if (order % order_ != 0) throw DomainError("cannot lift cyclotomic number to a non-multiple order");
  const long step = order / order_;
  std::vector<Rational> c(static_cast<std::size_t>(order), Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k * static_cast<std::size_t>(step)] = coeffs_[k];
  return Cyclotomic(order, c);
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero cyclotomic number");
  if (is_rational()) return Cyclotomic(Rational(1) / coeffs_[0]);
  // Extended Euclid: s * a + t * Phi = 1.
  const auto& phi = phi_poly(order_);
  Poly m;
  for (long c : phi) m.emplace_back(c);
  Poly a = coeffs_;
  trim(a);
  Poly r0 = m, r1 = a;
  Poly s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since Phi is irreducible.
  const Rational c = r0.at(0);
  for (auto& x : s0) x /= c;
  return Cyclotomic(order_, s0);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  const long l = lcm_long(order_, o.order_);
  Cyclotomic a = lifted(l);
  const Cyclotomic b = o.lifted(l);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (order_ == 1 && o.order_ == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  const long l = lcm_long(order_, o.order_);
  const Cyclotomic a = lifted(l);
  const Cyclotomic b = o.lifted(l);
  Cyclotomic out;
  out.order_ = l;
  out.coeffs_ = reduce_mod(mul(a.coeffs_, b.coeffs_), phi_poly(l));
  return *this = std::move(out);
}

Cyclotomic operator-(const Cyclotomic& a) {
  Cyclotomic out = a;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  const long l = lcm_long(a.order_, b.order_);
  return a.lifted(l).coeffs_ == b.lifted(l).coeffs_;
}

std::string Cyclotomic::str() const {
  if (is_rational()) return to_rational().str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[k].str() << ")";
    if (k > 0) os << "*z" << order_ << "^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

}  // namespace cdr
