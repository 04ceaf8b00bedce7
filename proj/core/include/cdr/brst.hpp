#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdr/fields.hpp"

namespace cdr {

/// The BRST differential d = -Q_0 (twisted: -Q^g_0) on the basis up to w_max.
///
/// Without a zero-mode degree the basis is the fiber sector (no b_0 factors).
/// With one, the basis carries b_0 factors up to that degree; d preserves
/// #b_0 + #phi_0 so each degree is a finite subcomplex.
OperatorMatrix brst_operator(const FockModule& module, const Rational& w_max,
                             std::optional<int> zero_mode_degree = std::nullopt);

/// #b_0 + #phi_0.
int zero_mode_degree(const Monomial& m);

/// Rank of a dense matrix over Q (fraction-free row reduction, first-pivot order).
std::size_t exact_rank(std::vector<std::vector<Rational>> m);

struct DSquaredReport {
  bool holds = true;
  std::size_t columns_checked = 0;
  std::optional<std::string> failure;
};

/// d^2 = 0 on every basis vector.
DSquaredReport d_squared_check(const FockModule& module, const Rational& w_max,
                               std::optional<int> zero_mode_degree = std::nullopt);

struct HomotopyReport {
  bool holds = true;
  int sign = 0;  ///< {G_0, d} = sign * L_0; 0 if L_0 vanished everywhere
  std::size_t blocks_checked = 0;
  std::optional<std::string> failure;  ///< first offending block
};

/// Checks {G_0, d} = +-L_0 blockwise with a single global sign.
HomotopyReport homotopy_identity_check(const FockModule& module, const Rational& w_max,
                                       std::optional<int> zero_mode_degree = std::nullopt);

struct CohomologyEntry {
  std::size_t dim = 0;
  std::size_t kernel = 0;
  std::size_t image_in = 0;
  std::size_t cohomology() const { return kernel - image_in; }
};

struct CohomologyTable {
  int order = 1;
  Rational shift;
  int max_weight_ticks = 0;
  std::optional<int> zero_mode_degree;
  std::map<BlockKey, CohomologyEntry> blocks;

  Rational weight(const BlockKey& k) const { return Rational(k.weight_ticks, order); }
  Rational charge(const BlockKey& k) const { return Rational(k.charge) + shift; }

  /// Blocks with nonzero cohomology.
  std::map<BlockKey, std::size_t> nonzero() const;
  std::size_t total() const;
  std::string str() const;
};

/// Blockwise exact cohomology of d.
CohomologyTable cohomology_table(const FockModule& module, const Rational& w_max,
                                 std::optional<int> zero_mode_degree = std::nullopt);

}  // namespace cdr
