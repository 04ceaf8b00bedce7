#include "cdr/brst.hpp"

#include <algorithm>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

namespace {

std::shared_ptr<const Basis> brst_basis(const FockModule& module, const Rational& w_max, std::optional<int> zdeg) {
  if (zdeg && *zdeg < 0) throw DomainError("negative zero-mode degree");
  return module.basis_up_to(w_max, zdeg);
}

bool in_sector(const Monomial& m, std::optional<int> zdeg) { return !zdeg || zero_mode_degree(m) == *zdeg; }

// Restricts the block structure to the chosen zero-mode degree.
std::map<BlockKey, std::vector<int>> sector_blocks(const Basis& basis, std::optional<int> zdeg) {
  std::map<BlockKey, std::vector<int>> out;
  for (const auto& [key, ids] : basis.blocks) {
    for (int id : ids) {
      if (in_sector(basis.states[static_cast<std::size_t>(id)], zdeg)) out[key].push_back(id);
    }
  }
  return out;
}

std::vector<std::vector<Rational>> dense(const OperatorMatrix& op, const std::vector<int>& rows,
                                         const std::vector<int>& cols) {
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < rows.size(); ++i) pos.emplace(rows[i], i);
  std::vector<std::vector<Rational>> out(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [r, c] : op.column(cols[j])) {
      auto it = pos.find(r);
      if (it == pos.end()) throw InvariantFailure("operator " + op.name() + " leaves its target block");
      out[it->second][j] = c;
    }
  }
  return out;
}

std::string block_label(const FockModule& module, const BlockKey& k) {
  return "(weight " + module.weight(k.weight_ticks).str() + ", charge " +
         (Rational(k.charge) + module.shift()).str() + ")";
}

}  // namespace

int zero_mode_degree(const Monomial& m) {
  int d = FockModule::b0_degree(m);
  for (const auto& f : m.fermions) {
    if (f.family == Family::Phi && f.ticks == 0) ++d;
  }
  return d;
}

OperatorMatrix brst_operator(const FockModule& module, const Rational& w_max, std::optional<int> zdeg) {
  const auto fields = twisted_standard_fields(module.twist());
  const auto basis = brst_basis(module, w_max, zdeg);
  OperatorMatrix d(field_mode(module, fields.Q, Rational(0)).scaled(Rational(-1)), basis);
  for (int j = 0; j < static_cast<int>(basis->states.size()); ++j) {
    if (!d.valid(j)) {
      throw TruncationError("BRST operator leaves the truncation at " + module.describe(basis->states[static_cast<std::size_t>(j)]));
    }
  }
  return d;
}

std::size_t exact_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    const Rational inv = Rational(1) / m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const Rational f = m[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

DSquaredReport d_squared_check(const FockModule& module, const Rational& w_max, std::optional<int> zdeg) {
  const OperatorMatrix d = brst_operator(module, w_max, zdeg);
  DSquaredReport report;
  const Basis& basis = d.basis();
  for (int j = 0; j < static_cast<int>(basis.states.size()); ++j) {
    if (!in_sector(basis.states[static_cast<std::size_t>(j)], zdeg)) continue;
    const auto dd = d.apply(d.apply(std::map<int, Rational>{{j, Rational(1)}}));
    ++report.columns_checked;
    if (!dd.empty() && report.holds) {
      report.holds = false;
      report.failure = "d^2 != 0 on " + module.describe(basis.states[static_cast<std::size_t>(j)]);
    }
  }
  return report;
}

HomotopyReport homotopy_identity_check(const FockModule& module, const Rational& w_max, std::optional<int> zdeg) {
  const auto fields = twisted_standard_fields(module.twist());
  const OperatorMatrix d = brst_operator(module, w_max, zdeg);
  const auto basis = d.basis_ptr();
  const OperatorMatrix g0(field_mode(module, fields.G, Rational(0)), basis);
  const OperatorMatrix l0(field_mode(module, fields.L, Rational(0)), basis);
  const OperatorMatrix lhs = operator_bracket(g0, d);

  HomotopyReport report;
  for (const auto& [key, ids] : sector_blocks(*basis, zdeg)) {
    ++report.blocks_checked;
    for (int j : ids) {
      const auto& a = lhs.column(j);
      const auto& b = l0.column(j);
      int sign_here = 0;
      if (!b.empty()) {
        OperatorMatrix::Column neg;
        for (const auto& [r, c] : b) neg.emplace_back(r, -c);
        sign_here = a == b ? 1 : (a == neg ? -1 : 2);
      } else {
        sign_here = a.empty() ? 0 : 2;
      }
      if (sign_here == 0) continue;
      if (sign_here != 2 && (report.sign == 0 || report.sign == sign_here)) {
        report.sign = sign_here;
        continue;
      }
      report.holds = false;
      report.failure = "block " + block_label(module, key) + ", state " +
                       module.describe(basis->states[static_cast<std::size_t>(j)]);
      return report;
    }
  }
  return report;
}

std::map<BlockKey, std::size_t> CohomologyTable::nonzero() const {
  std::map<BlockKey, std::size_t> out;
  for (const auto& [k, e] : blocks) {
    if (e.cohomology() != 0) out.emplace(k, e.cohomology());
  }
  return out;
}

std::size_t CohomologyTable::total() const {
  std::size_t t = 0;
  for (const auto& [k, e] : blocks) t += e.cohomology();
  return t;
}

std::string CohomologyTable::str() const {
  std::ostringstream os;
  os << "weight  charge  dim  ker  im  H\n";
  for (const auto& [k, e] : blocks) {
    os << weight(k).str() << "  " << charge(k).str() << "  " << e.dim << "  " << e.kernel << "  " << e.image_in
       << "  " << e.cohomology() << "\n";
  }
  return os.str();
}

CohomologyTable cohomology_table(const FockModule& module, const Rational& w_max, std::optional<int> zdeg) {
  const OperatorMatrix d = brst_operator(module, w_max, zdeg);
  const auto blocks = sector_blocks(d.basis(), zdeg);

  CohomologyTable table;
  table.order = module.order();
  table.shift = module.shift();
  table.max_weight_ticks = d.basis().max_weight_ticks;
  table.zero_mode_degree = zdeg;

  static const std::vector<int> none;
  auto ids_of = [&blocks](const BlockKey& k) -> const std::vector<int>& {
    auto it = blocks.find(k);
    return it == blocks.end() ? none : it->second;
  };
  std::map<BlockKey, std::size_t> rank_out;
  for (const auto& [key, ids] : blocks) {
    const BlockKey next{key.weight_ticks, key.charge + 1};
    rank_out[key] = exact_rank(dense(d, ids_of(next), ids));
  }
  for (const auto& [key, ids] : blocks) {
    CohomologyEntry e;
    e.dim = ids.size();
    e.kernel = e.dim - rank_out[key];
    const BlockKey prev{key.weight_ticks, key.charge - 1};
    auto it = rank_out.find(prev);
    e.image_in = it == rank_out.end() ? 0 : it->second;
    if (e.image_in > e.kernel) throw InvariantFailure("image exceeds kernel in block " + block_label(module, key));
    table.blocks.emplace(key, e);
  }
  return table;
}

}  // namespace cdr
