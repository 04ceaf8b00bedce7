#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdr/cyclotomic.hpp"
#include "cdr/fock.hpp"
#include "cdr/group.hpp"

namespace cdr {

/// One line of the tangent splitting at a fixed point.
struct LineDatum {
  Rational lambda;     ///< g-eigenvalue exponent in [0, 1)
  Rational zeta;       ///< h-eigenvalue exponent: the line is scaled by exp(2 pi i zeta)
  long w = 0;          ///< auxiliary torus weight
  bool tangent = false;
};

struct FixedPoint {
  std::string name;
  std::vector<LineDatum> lines;
};

/// One connected component X_alpha^g of the fixed locus of a class representative.
struct SectorComponent {
  std::string name;
  int rep = 0;
  TwistData twist;
  /// Traces of h in C(g) on H^k, keyed by element id (character form).
  std::map<int, std::vector<Cyclotomic>> characters;
  /// Directly supplied dim H^k(X_alpha^g)^{C(g)}.
  std::optional<std::vector<long>> invariant_dims;
  /// Fixed points of (h x torus) on the component, keyed by h.
  std::map<int, std::vector<FixedPoint>> localization;
};

struct SectorClass {
  int rep = 0;
  std::vector<SectorComponent> components;
};

struct OrbifoldInput {
  int dim = 0;
  GroupData group = GroupData::from_table({{0}});
  std::vector<SectorClass> classes;  ///< one per conjugacy class, in class order
  std::vector<std::string> warnings;

  /// lcm of the orders of all elements and all root-of-unity exponents in the data.
  long cyclotomic_order() const;
};

/// Checks classes cover the conjugacy classes once each, exponents and traces are
/// consistent, and the identity class is X itself. Throws InputError.
void validate(OrbifoldInput& input);

/// sum m_i / m_g.
Rational fermionic_shift(const SectorComponent& c);

/// dim H^k(X_alpha^g)^{C(g)} by averaging traces over C(g); must be a nonnegative integer.
std::vector<long> invariant_dims(const SectorComponent& c, const GroupData& group);

/// Polynomial in t with rational exponents.
using TPolynomial = std::map<Rational, Rational>;
std::string polynomial_text(const TPolynomial& p);

/// sum_[g] sum_alpha sum_k dim H^k(X_alpha^g)^{C(g)} t^{k + 2 iota(g, alpha)}.
TPolynomial cr_poincare(const OrbifoldInput& input);

/// The same component seen from the representative h g h^{-1}.
SectorComponent conjugate_sector(const SectorComponent& c, int h, const GroupData& group);

/// Replaces the representative of one class by h rep h^{-1}, conjugating its data.
OrbifoldInput conjugate_class(const OrbifoldInput& input, std::size_t class_index, int h);

}  // namespace cdr
