#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdr/fock.hpp"

namespace cdr {

/// One factor of a normally ordered monomial field: d-th z-derivative of x^i(z).
struct FieldFactor {
  Family family = Family::A;
  int direction = 0;
  int derivative = 0;
};

struct FieldTerm {
  Rational coeff{1};
  std::vector<FieldFactor> factors;  ///< at most four
};

/// Normally ordered polynomial field with a declared conformal weight h (so that
/// F(z) = sum_n F_n z^{-n-h}), a fermionic charge and an optional scalar
/// anomaly term c z^{-1}.
struct FieldExpr {
  std::string name;
  std::vector<FieldTerm> terms;
  Rational weight{0};
  int charge = 0;
  Rational anomaly{0};

  /// Throws DomainError when a term is empty, has more than four factors, or
  /// mixes parities.
  void validate() const;
  bool odd() const;
};

/// Conformal weight of the generating field x(z): 1 for a and psi, 0 for b and phi.
int field_weight(Family f);

/// The N = 2 fields L, J, Q, G (untwisted, or twisted by the module's twist:
/// same normally ordered expressions with J carrying the anomaly shift / z).
struct StandardFields {
  FieldExpr L, J, Q, G;
};
StandardFields standard_fields(int n);
StandardFields twisted_standard_fields(const TwistData& twist);

/// Linear operator on the (untruncated) Fock space, given on monomials and memoized.
///
/// Tracks the weight shift (in ticks), the charge shift and the parity. Copies
/// share the memo table, which is not synchronized: confine an operator and its
/// copies to one thread.
class LinearOperator {
 public:
  using Kernel = std::function<StateVector(const Monomial&)>;

  LinearOperator(std::string name, Kernel kernel, int weight_shift_ticks, int charge_shift, bool odd);

  const std::string& name() const { return name_; }
  /// Weight of the image minus weight of the source, in ticks.
  int weight_shift_ticks() const { return weight_shift_; }
  int charge_shift() const { return charge_shift_; }
  bool odd() const { return odd_; }

  const StateVector& apply(const Monomial& m) const;
  StateVector apply(const StateVector& v) const;

  LinearOperator scaled(const Rational& c) const;

  /// AB - (-1)^{p(A)p(B)} BA.
  friend LinearOperator bracket(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator compose(const LinearOperator& a, const LinearOperator& b);
  /// Sum of operators with identical gradings.
  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);

  static LinearOperator identity(const Rational& c = Rational(1));
  static LinearOperator zero(int weight_shift_ticks, int charge_shift, bool odd);

 private:
  std::string name_;
  Kernel kernel_;
  int weight_shift_;
  int charge_shift_;
  bool odd_;
  std::shared_ptr<std::map<Monomial, StateVector>> memo_;
};

/// Applies the n-th mode of F (n given in ticks of the module's 1/m_g).
/// Zero unless n lies in the equivariance class of F on this module.
StateVector apply_field_mode(const FockModule& module, const FieldExpr& field, int n_ticks, const Monomial& state);

/// The n-th mode of F as a memoized operator.
LinearOperator field_mode(const FockModule& module, const FieldExpr& field, const Rational& n);

/// A single generator mode x^i_n as an operator.
LinearOperator mode_operator(const FockModule& module, Family family, int direction, const Rational& level);

/// Restriction of a LinearOperator to a truncated basis, as an exact sparse matrix.
///
/// Column j is valid when the image of basis state j lies inside the basis; columns
/// whose image would leave the truncation are recorded as invalid and raise
/// TruncationError when read.
class OperatorMatrix {
 public:
  using Column = std::vector<std::pair<int, Rational>>;

  OperatorMatrix(const LinearOperator& op, std::shared_ptr<const Basis> basis);

  const Basis& basis() const { return *basis_; }
  std::shared_ptr<const Basis> basis_ptr() const { return basis_; }
  const std::string& name() const { return name_; }
  bool odd() const { return odd_; }
  int weight_shift_ticks() const { return weight_shift_; }
  int charge_shift() const { return charge_shift_; }

  bool valid(int col) const;
  const Column& column(int col) const;
  std::vector<int> valid_columns() const;

  /// Dense block rows(target block) x cols(source block) extracted from valid columns.
  std::vector<std::vector<Rational>> block(const BlockKey& source) const;

  /// Exact application to a sparse vector over the basis.
  std::map<int, Rational> apply(const std::map<int, Rational>& v) const;

  /// Builds from explicit columns (nullopt = outside the truncation).
  OperatorMatrix(std::string name, std::shared_ptr<const Basis> basis, std::vector<std::optional<Column>> columns,
                 int weight_shift_ticks, int charge_shift, bool odd);

  const std::vector<std::optional<Column>>& columns() const { return columns_; }

 private:
  std::string name_;
  std::shared_ptr<const Basis> basis_;
  std::vector<std::optional<Column>> columns_;
  int weight_shift_ = 0;
  int charge_shift_ = 0;
  bool odd_ = false;
};

/// n-th mode of F materialized on the basis up to w_max (fiber sector, or with a b_0 cap).
/// Throws TruncationError when no source state can have its image inside the truncation.
OperatorMatrix field_mode_operator(const FieldExpr& field, const Rational& n, const FockModule& module,
                                   const Rational& w_max, std::optional<int> b0_cap = std::nullopt);

/// AB - (-1)^{p(A)p(B)} BA, valid exactly on columns where both compositions are represented.
OperatorMatrix operator_bracket(const OperatorMatrix& a, const OperatorMatrix& b);

/// First column (among `columns`) where the matrices differ, if any.
std::optional<int> first_difference(const OperatorMatrix& a, const OperatorMatrix& b, const std::vector<int>& columns);

// Vector fields -------------------------------------------------------------

/// Monomial vector field t_1^{i_1} ... t_N^{i_N} d/dt_j.
struct MonomialVectorField {
  std::vector<int> exponents;
  int direction = 0;  ///< j, zero-based

  int degree() const;
  std::string str() const;
  friend bool operator==(const MonomialVectorField&, const MonomialVectorField&) = default;
  friend auto operator<=>(const MonomialVectorField&, const MonomialVectorField&) = default;
};

/// Finite linear combination of monomial vector fields.
using VectorField = std::map<MonomialVectorField, Rational>;

/// Lie bracket [v, w] of monomial vector fields.
VectorField lie_bracket(const MonomialVectorField& v, const MonomialVectorField& w);

/// Whether the monomial satisfies sum_l m_l i_l = m_j (mod m_g).
bool is_admissible(const MonomialVectorField& v, const TwistData& twist);

/// The weight-1 field f(b) a^j + sum_k (d_k f)(b) phi^k psi^j for v = f d/dt_j.
FieldExpr vector_field_current(const MonomialVectorField& v);

/// Zero mode of the current of v (linear extension for combinations).
/// Throws DomainError when v violates the equivariance condition or has degree > 3 / N > 3.
LinearOperator vector_field_action(const MonomialVectorField& v, const FockModule& module);
LinearOperator vector_field_action(const VectorField& v, const FockModule& module);

/// Materialized zero mode on the basis with b_0 factors capped at degree(v) + floor(w_max).
OperatorMatrix vector_field_operator(const MonomialVectorField& v, const FockModule& module, const Rational& w_max);

/// All admissible monomial vector fields of degree <= max_degree for the module's twist.
std::vector<MonomialVectorField> admissible_vector_fields(const TwistData& twist, int max_degree);

}  // namespace cdr
