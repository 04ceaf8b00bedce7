#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdr/cyclotomic.hpp"
#include "cdr/errors.hpp"
#include "cdr/laurent.hpp"
#include "cdr/rational.hpp"

namespace cdr {

/// Exponent pair (q, y) of a series term; ordered by q first, then y.
struct QYExponent {
  Rational q;
  Rational y;
  friend bool operator==(const QYExponent&, const QYExponent&) = default;
  friend auto operator<=>(const QYExponent&, const QYExponent&) = default;
};

/// Truncated formal series in q and y with rational exponents.
///
/// Every stored term has q <= q_max; terms above the bound are dropped on
/// insertion, never stored. All q exponents have a denominator dividing qden(),
/// which grows (lcm) as terms are added. Products of series with negative q
/// support require a declared floor, from which the exact output bound is derived.
template <class C>
class QYSeries {
 public:
  using Terms = std::map<QYExponent, C>;

  explicit QYSeries(Rational q_max = Rational(0)) : q_max_(std::move(q_max)) {}

  static QYSeries one(const Rational& q_max) { return monomial(C(1), Rational(0), Rational(0), q_max); }
  static QYSeries monomial(const C& c, const Rational& q, const Rational& y, const Rational& q_max) {
    QYSeries s(q_max);
    s.add_term(q, y, c);
    return s;
  }

  const Rational& q_max() const { return q_max_; }
  long qden() const { return qden_; }
  const std::optional<Rational>& q_floor() const { return q_floor_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Declares a lower bound on q exponents (needed to multiply series with negative q support).
  void declare_floor(const Rational& floor) { q_floor_ = floor; }

  /// Smallest stored q exponent (0 for the zero series).
  Rational min_q() const { return terms_.empty() ? Rational(0) : terms_.begin()->first.q; }

  C coefficient(const Rational& q, const Rational& y) const {
    auto it = terms_.find(QYExponent{q, y});
    return it == terms_.end() ? C() : it->second;
  }

  /// y-polynomial at a fixed power of q.
  std::map<Rational, C> q_slice(const Rational& q) const {
    std::map<Rational, C> out;
    for (auto it = terms_.lower_bound(QYExponent{q, min_y()}); it != terms_.end() && it->first.q == q; ++it) {
      out.emplace(it->first.y, it->second);
    }
    return out;
  }

  void add_term(const Rational& q, const Rational& y, const C& c) {
    if (q > q_max_ || is_zero_coeff(c)) return;
    if (q_floor_ && q < *q_floor_) throw DomainError("term q^" + q.str() + " below declared floor");
    qden_ = lcm_long(qden_, q.den_long());
    auto [it, inserted] = terms_.emplace(QYExponent{q, y}, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_coeff(it->second)) terms_.erase(it);
    }
  }

  /// Restricts to q <= bound (bound may only shrink).
  QYSeries truncated(const Rational& bound) const {
    QYSeries out(std::min(bound, q_max_));
    out.q_floor_ = q_floor_;
    for (const auto& [e, c] : terms_) out.add_term(e.q, e.y, c);
    return out;
  }

  /// Multiplies by c * q^dq * y^dy.
  QYSeries shifted(const C& c, const Rational& dq, const Rational& dy) const {
    QYSeries out(q_max_ + dq);
    if (q_floor_) out.q_floor_ = *q_floor_ + dq;
    for (const auto& [e, v] : terms_) out.add_term(e.q + dq, e.y + dy, v * c);
    return out;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    QYSeries<D> out(q_max_);
    if (q_floor_) out.declare_floor(*q_floor_);
    for (const auto& [e, c] : terms_) out.add_term(e.q, e.y, f(c));
    return out;
  }

  QYSeries& operator+=(const QYSeries& o) {
    QYSeries out(std::min(q_max_, o.q_max_));
    out.q_floor_ = merge_floor(q_floor_, o.q_floor_);
    for (const auto& [e, c] : terms_) out.add_term(e.q, e.y, c);
    for (const auto& [e, c] : o.terms_) out.add_term(e.q, e.y, c);
    out.qden_ = lcm_long(out.qden_, lcm_long(qden_, o.qden_));
    return *this = std::move(out);
  }
  QYSeries& operator-=(const QYSeries& o) { return *this += o.shifted(C(-1), Rational(0), Rational(0)); }

  friend QYSeries operator+(QYSeries a, const QYSeries& b) { return a += b; }
  friend QYSeries operator-(QYSeries a, const QYSeries& b) { return a -= b; }

  /// Truncated product. Exact for every output term with q <= the returned q_max.
  friend QYSeries operator*(const QYSeries& a, const QYSeries& b) {
    const Rational fa = a.effective_floor();
    const Rational fb = b.effective_floor();
    const Rational zero(0);
    const Rational bound =
        std::min(a.q_max_ + std::min(fb, zero), b.q_max_ + std::min(fa, zero));
    QYSeries out(bound);
    if (a.q_floor_ || b.q_floor_) out.q_floor_ = fa + fb;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        const Rational q = ea.q + eb.q;
        if (q > bound) continue;
        out.add_term(q, ea.y + eb.y, ca * cb);
      }
    }
    out.qden_ = lcm_long(out.qden_, lcm_long(a.qden_, b.qden_));
    return out;
  }
  QYSeries& operator*=(const QYSeries& o) { return *this = *this * o; }

  /// Coefficientwise equality of the stored terms (bounds are not compared).
  friend bool operator==(const QYSeries& a, const QYSeries& b) { return a.terms_ == b.terms_; }

 private:
  static bool is_zero_coeff(const C& c) { return ::cdr::is_zero(c); }

  static std::optional<Rational> merge_floor(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (a && b) return std::min(*a, *b);
    return a ? a : b;
  }

  Rational min_y() const {
    Rational m(0);
    for (const auto& [e, c] : terms_) m = std::min(m, e.y);
    return m;
  }

  // Floor used for truncation bookkeeping; undeclared negative support is an error.
  Rational effective_floor() const {
    if (q_floor_) return *q_floor_;
    if (!terms_.empty() && min_q() < Rational(0)) {
      throw DomainError("multiplying a series with negative q-exponents requires a declared floor");
    }
    return Rational(0);
  }

  Rational q_max_;
  long qden_ = 1;
  std::optional<Rational> q_floor_;
  Terms terms_;
};

/// One factor of an exterior / symmetric product expansion.
template <class C>
struct ProductFactor {
  enum class Kind { Exterior, Symmetric };
  Kind kind = Kind::Exterior;
  Rational q_exp;
  Rational y_exp;
  C scale = C(1);
  long rank = 1;
};

namespace detail {

inline Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(mpq_class(b));
}

template <class C>
C power(const C& base, long e) {
  C out(1);
  for (long i = 0; i < e; ++i) out = out * base;
  return out;
}

}  // namespace detail

/// Expands one factor: (1 + s q^a y^b)^r or (1 - s q^a y^b)^(-r), truncated at q_max.
template <class C>
QYSeries<C> expand_factor(const ProductFactor<C>& f, const Rational& q_max) {
  using Kind = typename ProductFactor<C>::Kind;
  if (f.rank < 1) throw DomainError("product factor rank must be positive");
  QYSeries<C> out(q_max);
  if (f.kind == Kind::Exterior) {
    if (f.q_exp < Rational(0)) throw DomainError("exterior factor with negative q-degree");
    for (long j = 0; j <= f.rank; ++j) {
      const Rational q = f.q_exp * Rational(j);
      if (q > q_max) break;
      out.add_term(q, f.y_exp * Rational(j), C(detail::binomial(f.rank, j)) * detail::power(f.scale, j));
    }
  } else {
    if (f.q_exp <= Rational(0)) {
      throw DivergenceError("symmetric factor needs positive q-degree, got q^" + f.q_exp.str());
    }
    for (long j = 0;; ++j) {
      const Rational q = f.q_exp * Rational(j);
      if (q > q_max) break;
      out.add_term(q, f.y_exp * Rational(j), C(detail::binomial(f.rank + j - 1, j)) * detail::power(f.scale, j));
    }
  }
  return out;
}

/// prod over exterior factors of (1 + s q^a y^b)^r times prod over symmetric factors of
/// (1 - s q^a y^b)^(-r), truncated at q_max.
template <class C>
QYSeries<C> product_expand(const std::vector<ProductFactor<C>>& factors, const Rational& q_max) {
  QYSeries<C> out = QYSeries<C>::one(q_max);
  for (const auto& f : factors) {
    if (f.q_exp > q_max && f.kind == ProductFactor<C>::Kind::Exterior) continue;
    out *= expand_factor(f, q_max);
  }
  return out;
}

/// Exponents k - 1 + offset (k >= 1) that do not exceed q_max.
std::vector<Rational> ladder(const Rational& offset, const Rational& q_max);

/// Untwisted fiber product prod_{k>=1} (1+y q^{k-1})^N (1+y^{-1} q^k)^N (1-q^k)^{-2N}.
std::vector<ProductFactor<Rational>> untwisted_fiber_factors(long n, const Rational& q_max);

// Rendering ---------------------------------------------------------------

/// Canonical text: terms sorted by (q, y), "0" for the empty series.
std::string series_text(const QYSeries<Rational>& s);
std::string series_text(const QYSeries<Cyclotomic>& s);

/// Canonical JSON: {"qden": m, "terms": [{"q": "a/b", "y": "c/d", "coeff": ...}]}.
std::string series_json(const QYSeries<Rational>& s);
std::string series_json(const QYSeries<Cyclotomic>& s);

/// Converts a series whose coefficients are all rational.
QYSeries<Rational> to_rational_series(const QYSeries<Cyclotomic>& s);

}  // namespace cdr
