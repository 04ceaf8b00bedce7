#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdr/rational.hpp"
#include "cdr/series.hpp"

namespace cdr {

/// Eigenvalue data of a diagonalized finite-order automorphism g on N coordinate
/// directions: g scales direction i by exp(2 pi i m_i / m_g).
struct TwistData {
  int n = 1;                   ///< number of coordinate directions
  int order = 1;               ///< m_g
  std::vector<int> exponents;  ///< m_1 ... m_N in [0, m_g)

  static TwistData identity(int n) { return TwistData{n, 1, std::vector<int>(static_cast<std::size_t>(n), 0)}; }

  /// Throws InputError when the data is inconsistent.
  void validate() const;

  /// Fermionic shift sum_i m_i / m_g.
  Rational shift() const;

  /// Number of directions fixed by g.
  int fixed_directions() const;

  /// "m1,...,mN/mg".
  std::string str() const;
  /// Parses "m1,...,mN/mg" (or "m1,...,mN" for the identity order 1).
  static TwistData parse(const std::string& text);

  friend bool operator==(const TwistData&, const TwistData&) = default;
};

/// Generator families of the Heisenberg (a, b) and Clifford (psi, phi) algebras.
enum class Family : std::uint8_t { A = 0, B = 1, Psi = 2, Phi = 3 };

inline bool is_fermionic(Family f) { return f == Family::Psi || f == Family::Phi; }
const char* family_name(Family f);

/// A mode x^i_n. The level n is stored as ticks = n * m_g for the module's m_g.
struct Mode {
  Family family = Family::A;
  int direction = 0;  ///< zero-based
  int ticks = 0;

  friend bool operator==(const Mode&, const Mode&) = default;
  friend auto operator<=>(const Mode& a, const Mode& b) {
    if (a.direction != b.direction) return a.direction <=> b.direction;
    if (a.family != b.family) return a.family <=> b.family;
    return a.ticks <=> b.ticks;
  }
};

/// Normally ordered monomial of creation modes applied to the vacuum.
///
/// Bosons form a sorted multiset; fermions a strictly increasing list in the
/// canonical (direction, family, level) order, read left to right as
/// f_1 f_2 ... f_k |0>.
struct Monomial {
  std::vector<Mode> bosons;
  std::vector<Mode> fermions;

  bool is_vacuum() const { return bosons.empty() && fermions.empty(); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Exact linear combination of monomials.
using StateVector = std::map<Monomial, Rational>;

void accumulate(StateVector& v, const Monomial& m, const Rational& c);
void accumulate(StateVector& v, const StateVector& w, const Rational& scale = Rational(1));

/// (weight, charge) block label. Weight is in ticks of 1/m_g; charge is the
/// integer part #phi - #psi (the module adds the shift).
struct BlockKey {
  int weight_ticks = 0;
  int charge = 0;
  friend bool operator==(const BlockKey&, const BlockKey&) = default;
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

/// Deterministically ordered basis of a truncated Fock module.
struct Basis {
  int max_weight_ticks = 0;
  std::optional<int> b0_cap;  ///< present when b_0 factors are included
  std::vector<Monomial> states;
  std::map<Monomial, int> index;
  std::map<BlockKey, std::vector<int>> blocks;

  std::optional<int> find(const Monomial& m) const {
    auto it = index.find(m);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Twisted Heisenberg (x) Clifford Fock module.
///
/// Levels: a^i, psi^i live on m_i/m_g + Z; b^i, phi^i on -m_i/m_g + Z.
/// a, psi annihilate for n >= 0; b, phi annihilate for n > 0; everything else creates.
class FockModule {
 public:
  explicit FockModule(TwistData twist);

  const TwistData& twist() const { return twist_; }
  int order() const { return twist_.order; }
  int n() const { return twist_.n; }
  Rational shift() const { return twist_.shift(); }

  Rational level(const Mode& m) const { return Rational(m.ticks, twist_.order); }
  Rational weight(int ticks) const { return Rational(ticks, twist_.order); }

  /// Builds a mode from a rational level; throws DomainError off the lattice.
  Mode mode(Family family, int direction, const Rational& level) const;
  bool on_lattice(Family family, int direction, int ticks) const;
  static bool is_annihilator(Family family, int ticks) {
    return (family == Family::A || family == Family::Psi) ? ticks >= 0 : ticks > 0;
  }
  static bool is_annihilator(const Mode& m) { return is_annihilator(m.family, m.ticks); }

  /// Applies one mode. Throws DomainError if the level is off the lattice.
  StateVector apply_mode(const Mode& mode, const Monomial& state) const;
  StateVector apply_mode(const Mode& mode, const StateVector& v) const;

  int weight_ticks(const Monomial& m) const;
  Rational state_weight(const Monomial& m) const { return weight(weight_ticks(m)); }
  /// #phi - #psi without the shift.
  static int charge_offset(const Monomial& m);
  /// #phi - #psi + shift.
  Rational state_charge(const Monomial& m) const { return Rational(charge_offset(m)) + shift(); }
  static int b0_degree(const Monomial& m);
  BlockKey block_of(const Monomial& m) const { return {weight_ticks(m), charge_offset(m)}; }

  /// Complete basis up to the weight bound. Without b0_cap the b_0 factors are
  /// excluded (fiber sector); with it, states carry at most b0_cap of them.
  std::shared_ptr<const Basis> basis_up_to(const Rational& w_max, std::optional<int> b0_cap = std::nullopt) const;

  /// sum over the fiber basis of q^weight y^charge. include_b0 is unsupported.
  QYSeries<Rational> character(const Rational& q_max, bool include_b0 = false) const;

  /// The same character from the product formula (independent route).
  QYSeries<Rational> product_character(const Rational& q_max) const;

  std::string describe(const Mode& m) const;
  std::string describe(const Monomial& m) const;

 private:
  TwistData twist_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const Basis>> cache_;
};

}  // namespace cdr
