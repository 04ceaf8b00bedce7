#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdr/brst.hpp"
#include "cdr/fields.hpp"

namespace cdr {

struct CheckRow {
  CheckRow() = default;
  explicit CheckRow(std::string r) : relation(std::move(r)) {}
  CheckRow(std::string r, std::size_t i, std::size_t v, bool good, std::optional<std::string> f = std::nullopt)
      : relation(std::move(r)), instances(i), vectors(v), ok(good), failure(std::move(f)) {}

  std::string relation;
  std::size_t instances = 0;  ///< operator identities compared
  std::size_t vectors = 0;    ///< basis vectors they were compared on
  bool ok = true;
  std::optional<std::string> failure;
};

struct SuiteReport {
  std::vector<CheckRow> rows;
  bool ok() const;
  std::string str() const;
};

/// Compares two operators on every given state (exact, untruncated application).
/// Returns the first state where they differ.
std::optional<std::string> compare_on(const FockModule& module, const LinearOperator& a, const LinearOperator& b,
                                      const std::vector<Monomial>& states);

/// Heisenberg and Clifford (anti)commutators of all generator modes with |level| <= w_max,
/// on every basis vector up to w_max.
SuiteReport relations_suite(const FockModule& module, const Rational& w_max);

/// The bracket table of L, J, Q, G for integer modes |m|, |n| <= max_mode on every basis vector up to w_max.
SuiteReport n2_bracket_suite(const FockModule& module, const Rational& w_max, int max_mode = 2);

/// [nu(v), nu(w)] = nu([v, w]) for admissible monomial vector fields of degree <= max_degree,
/// on the basis up to w_max with at most max_degree b_0 factors.
SuiteReport vector_field_suite(const FockModule& module, const Rational& w_max, int max_degree = 2);

/// L_0 and J_0 act diagonally with eigenvalues weight in (1/m_g)Z>=0 and charge in iota + Z;
/// the vacuum has charge iota.
SuiteReport spectrum_suite(const FockModule& module, const Rational& w_max);

/// Basis enumeration against the product formula.
SuiteReport character_suite(const FockModule& module, const Rational& q_max);

/// d^2 = 0, the homotopy identity, and cohomology concentrated at weight 0 with the exterior-algebra dimensions.
SuiteReport brst_suite(const FockModule& module, const Rational& w_max);

}  // namespace cdr
