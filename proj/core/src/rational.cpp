#include "cdr/rational.hpp"

#include <cctype>
#include <numeric>
#include <ostream>

#include "cdr/errors.hpp"

namespace cdr {

namespace {

bool is_signed_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

long checked_long(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw DomainError(std::string(what) + " does not fit in a machine integer");
  return z.get_si();
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(mpz_class(num), mpz_class(den));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_signed_integer(num) || !is_signed_integer(den) || den.find_first_not_of("+-0") == std::string::npos) {
    throw InputError("not a rational number: \"" + std::string(text) + "\"");
  }
  mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num), mpz_class(den[0] == '+' ? den.substr(1) : den));
  q.canonicalize();
  return Rational(std::move(q));
}

long Rational::num_long() const { return checked_long(value_.get_num(), "numerator"); }
long Rational::den_long() const { return checked_long(value_.get_den(), "denominator"); }

long Rational::to_long() const {
  if (!is_integer()) throw DomainError("rational " + str() + " is not an integer");
  return num_long();
}

long Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return checked_long(q, "floor");
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

}  // namespace cdr
