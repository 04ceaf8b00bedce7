#include "cdr/laurent.hpp"

namespace cdr {

namespace {

LaurentT shifted(const LaurentT& p, long by) {
  LaurentT out;
  for (const auto& [k, c] : p.terms()) out.add_term(k + by, c);
  return out;
}

}  // namespace

std::pair<LaurentT, LaurentT> divide(const LaurentT& a, const LaurentT& b) {
  if (b.is_zero()) throw DomainError("Laurent division by zero");
  if (a.is_zero()) return {LaurentT(), LaurentT()};
  const long ma = a.min_degree();
  const long mb = b.min_degree();
  LaurentT rem = shifted(a, -ma);
  const LaurentT divisor = shifted(b, -mb);
  const long db = divisor.max_degree();
  const Cyclotomic lead_inv = divisor.leading().inverse();
  LaurentT quot;
  while (!rem.is_zero() && rem.max_degree() >= db) {
    const long k = rem.max_degree() - db;
    const Cyclotomic c = rem.leading() * lead_inv;
    quot.add_term(k, c);
    rem -= shifted(divisor, k) * LaurentT(c);
  }
  return {shifted(quot, ma - mb), shifted(rem, ma)};
}

void RationalFunctionT::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentT(1);
    return;
  }
  auto [q, r] = divide(num_, den_);
  if (r.is_zero()) {
    num_ = std::move(q);
    den_ = LaurentT(1);
    return;
  }
  // Denominator becomes an ordinary monic polynomial with nonzero constant term.
  const long m = den_.min_degree();
  const Cyclotomic inv = den_.leading().inverse();
  den_ = shifted(den_, -m) * LaurentT(inv);
  num_ = shifted(num_, -m) * LaurentT(inv);
}

std::optional<LaurentT> RationalFunctionT::as_laurent() const {
  auto [q, r] = divide(num_, den_);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

bool RationalFunctionT::is_constant() const {
  const auto p = as_laurent();
  return p && p->is_constant();
}

Cyclotomic RationalFunctionT::constant() const {
  const auto p = as_laurent();
  if (!p || !p->is_constant()) throw DomainError("rational function " + str() + " depends on t");
  return p->constant_term();
}

RationalFunctionT& RationalFunctionT::operator+=(const RationalFunctionT& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFunctionT& RationalFunctionT::operator*=(const RationalFunctionT& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

}  // namespace cdr
