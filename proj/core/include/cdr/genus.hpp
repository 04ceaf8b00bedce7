#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdr/laurent.hpp"
#include "cdr/orbifold.hpp"
#include "cdr/series.hpp"

namespace cdr {

/// The eigenvalue u = exp(2 pi i zeta) t^w of (h x torus) on a line.
LaurentT line_eigenvalue(const LineDatum& l);

/// Trace of (h x torus) on the fiber of the graded bundle V_{g,alpha} at a fixed point,
/// from the product over lines; no y^iota factor.
QYSeries<LaurentT> sector_bundle_character(const std::vector<LineDatum>& lines, const Rational& q_max);

/// The same fiber trace, summed over the twisted Fock basis of the point
/// (a, psi carry u; b, phi carry u^{-1}); y is the J_0 eigenvalue, so y^iota is included.
QYSeries<LaurentT> fock_trace_character(const std::vector<LineDatum>& lines, const Rational& q_max);

/// prod over tangent lines of (1 - u^{-1}).
LaurentT tangent_denominator(const std::vector<LineDatum>& lines);

struct LefschetzResult {
  QYSeries<LaurentT> equivariant;  ///< the summed localization terms, a Laurent polynomial in t per coefficient
  QYSeries<Cyclotomic> value;      ///< evaluated at t = 1
  bool t_independent = true;
  std::optional<std::string> first_t_dependent;  ///< "(q, y): coefficient"
};

/// sum over fixed points of char_p / prod_tangent (1 - u^{-1}) with the given numerators.
/// Throws LocalizationError when a coefficient keeps a pole in t (inconsistent data),
/// and, if strict, when a coefficient depends on t.
LefschetzResult localize(const std::vector<std::pair<QYSeries<LaurentT>, LaurentT>>& terms, const Rational& q_max,
                         bool strict = false);

/// Holomorphic Lefschetz number L(h, V_{g,alpha}) from the fixed points of (h x torus).
LefschetzResult lefschetz_localized(const std::vector<FixedPoint>& points, const Rational& q_max, bool strict = false);

struct GenusOptions {
  bool strict = false;  ///< require t-independence of every localization sum
  int jobs = 1;
};

struct GenusDiagnostics {
  std::vector<std::string> t_dependent;   ///< "class/component/h: (q, y) coefficient"
  std::vector<std::string> non_integral;  ///< averaged coefficients that are not integers
  bool t_independent() const { return t_dependent.empty(); }
  bool integral() const { return non_integral.empty(); }
};

/// sum_alpha y^{iota(g, alpha)} (1/|C(g)|) sum_{h in C(g)} L(h, V_{g,alpha}).
QYSeries<Cyclotomic> sector_contribution(const OrbifoldInput& input, std::size_t class_index, const Rational& q_max,
                                         const GenusOptions& options = {}, GenusDiagnostics* diag = nullptr);

/// y^{-N/2} sum over classes of sector_contribution.
QYSeries<Rational> ell_orb(const OrbifoldInput& input, const Rational& q_max, const GenusOptions& options = {},
                           GenusDiagnostics* diag = nullptr);

/// The same genus as a sum over components of supertraces on C(g)-invariants: fiber traces from
/// the twisted Fock basis, averaged per component with an integrality check.
QYSeries<Rational> ell_orb_via_traces(const OrbifoldInput& input, const Rational& q_max,
                                      const GenusOptions& options = {}, GenusDiagnostics* diag = nullptr);

/// First (q, y) term where the series differ, rendered as text.
std::optional<std::string> first_series_difference(const QYSeries<Rational>& a, const QYSeries<Rational>& b);

}  // namespace cdr
