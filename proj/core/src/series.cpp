#include "cdr/series.hpp"

#include <json.hpp>
#include <sstream>

namespace cdr {

std::vector<Rational> ladder(const Rational& offset, const Rational& q_max) {
  std::vector<Rational> out;
  for (Rational e = offset; e <= q_max; e += Rational(1)) out.push_back(e);
  return out;
}

std::vector<ProductFactor<Rational>> untwisted_fiber_factors(long n, const Rational& q_max) {
  using F = ProductFactor<Rational>;
  std::vector<F> out;
  for (const Rational& e : ladder(Rational(0), q_max)) {
    out.push_back(F{F::Kind::Exterior, e, Rational(1), Rational(1), n});
    const Rational k = e + Rational(1);
    if (k > q_max) continue;
    out.push_back(F{F::Kind::Exterior, k, Rational(-1), Rational(1), n});
    out.push_back(F{F::Kind::Symmetric, k, Rational(0), Rational(1), 2 * n});
  }
  return out;
}

namespace {

std::string exponent_text(const char* var, const Rational& e) {
  if (e.is_zero()) return "";
  if (e == Rational(1)) return var;
  if (e.is_integer() && e.sign() > 0) return std::string(var) + "^" + e.str();
  return std::string(var) + "^(" + e.str() + ")";
}

template <class C>
std::string text_impl(const QYSeries<C>& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    std::string mono = exponent_text("q", e.q);
    const std::string ym = exponent_text("y", e.y);
    if (!ym.empty()) mono = mono.empty() ? ym : mono + "*" + ym;

    std::string coeff;
    bool negative = false;
    if constexpr (std::is_same_v<C, Rational>) {
      negative = c.sign() < 0;
      coeff = (negative ? -c : c).str();
    } else {
      if (c.is_rational()) {
        const Rational r = c.to_rational();
        negative = r.sign() < 0;
        coeff = (negative ? -r : r).str();
      } else {
        coeff = "[" + c.str() + "]";
      }
    }
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else {
      term = coeff == "1" ? mono : coeff + "*" + mono;
    }
    if (first) {
      os << (negative ? "-" : "") << term;
    } else {
      os << (negative ? " - " : " + ") << term;
    }
    first = false;
  }
  return os.str();
}

nlohmann::ordered_json coeff_json(const Rational& c) { return c.str(); }

nlohmann::ordered_json coeff_json(const Cyclotomic& c) {
  if (c.is_rational()) return c.to_rational().str();
  nlohmann::ordered_json v = nlohmann::ordered_json::array();
  for (const auto& x : c.coefficients()) v.push_back(x.str());
  return nlohmann::ordered_json{{"order", c.order()}, {"vector", v}};
}

template <class C>
std::string json_impl(const QYSeries<C>& s) {
  nlohmann::ordered_json j;
  j["qden"] = s.qden();
  j["qmax"] = s.q_max().str();
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : s.terms()) {
    terms.push_back(nlohmann::ordered_json{{"q", e.q.str()}, {"y", e.y.str()}, {"coeff", coeff_json(c)}});
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

}  // namespace

std::string series_text(const QYSeries<Rational>& s) { return text_impl(s); }
std::string series_text(const QYSeries<Cyclotomic>& s) { return text_impl(s); }
std::string series_json(const QYSeries<Rational>& s) { return json_impl(s); }
std::string series_json(const QYSeries<Cyclotomic>& s) { return json_impl(s); }

QYSeries<Rational> to_rational_series(const QYSeries<Cyclotomic>& s) {
  return s.map_coefficients([](const Cyclotomic& c) { return c.to_rational(); });
}

}  // namespace cdr
