#include "cdr/suite.hpp"

#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

bool SuiteReport::ok() const {
  for (const auto& r : rows) {
    if (!r.ok) return false;
  }
  return true;
}

std::string SuiteReport::str() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << (r.ok ? "ok    " : "FAIL  ") << r.relation << "  [" << r.instances << " identities, " << r.vectors
       << " vectors]";
    if (r.failure) os << "  " << *r.failure;
    os << "\n";
  }
  return os.str();
}

std::optional<std::string> compare_on(const FockModule& module, const LinearOperator& a, const LinearOperator& b,
                                      const std::vector<Monomial>& states) {
  for (const auto& s : states) {
    if (a.apply(s) != b.apply(s)) return a.name() + " != " + b.name() + " on " + module.describe(s);
  }
  return std::nullopt;
}

namespace {

void record(CheckRow& row, std::optional<std::string> failure, std::size_t vectors) {
  ++row.instances;
  row.vectors += vectors;
  if (failure && row.ok) {
    row.ok = false;
    row.failure = std::move(failure);
  }
}

std::vector<Rational> lattice_levels(const FockModule& module, Family f, int direction, const Rational& bound) {
  std::vector<Rational> out;
  const int b = static_cast<int>((bound * Rational(module.order())).floor());
  for (int t = -b; t <= b; ++t) {
    if (module.on_lattice(f, direction, t)) out.push_back(module.level(Mode{f, direction, t}));
  }
  return out;
}

bool is_partner(Family x, Family y) {
  return (x == Family::A && y == Family::B) || (x == Family::B && y == Family::A) ||
         (x == Family::Psi && y == Family::Phi) || (x == Family::Phi && y == Family::Psi);
}

}  // namespace

SuiteReport relations_suite(const FockModule& module, const Rational& w_max) {
  const auto& states = module.basis_up_to(w_max)->states;
  const Family fams[] = {Family::A, Family::B, Family::Psi, Family::Phi};
  CheckRow bos{"[a_r, b_s] = delta_{r+s,0}, [a,a] = [b,b] = 0"};
  CheckRow fer{"{psi_r, phi_s} = delta_{r+s,0}, {psi,psi} = {phi,phi} = 0"};
  CheckRow mix{"[boson, fermion] = 0"};
  for (Family x : fams) {
    for (Family y : fams) {
      if (y < x) continue;
      CheckRow& row = is_fermionic(x) != is_fermionic(y) ? mix : (is_fermionic(x) ? fer : bos);
      for (int i = 0; i < module.n(); ++i) {
        for (int j = 0; j < module.n(); ++j) {
          for (const Rational& r : lattice_levels(module, x, i, w_max)) {
            for (const Rational& s : lattice_levels(module, y, j, w_max)) {
              const auto lhs = bracket(mode_operator(module, x, i, r), mode_operator(module, y, j, s));
              // x <= y in family order, so a partner pair is (a, b) or (psi, phi).
              const bool paired = i == j && is_partner(x, y) && (r + s).is_zero();
              const auto rhs = LinearOperator::identity(Rational(paired ? 1 : 0));
              record(row, compare_on(module, lhs, rhs, states), states.size());
            }
          }
        }
      }
    }
  }
  return SuiteReport{{bos, fer, mix}};
}

SuiteReport n2_bracket_suite(const FockModule& module, const Rational& w_max, int max_mode) {
  const auto& states = module.basis_up_to(w_max)->states;
  const auto F = twisted_standard_fields(module.twist());
  const Rational N(module.n());
  // Shared so that memo tables are reused across the whole table.
  std::map<std::pair<std::string, int>, LinearOperator> cache;
  auto mode = [&](const FieldExpr& f, int n) {
    auto it = cache.find({f.name, n});
    if (it == cache.end()) it = cache.emplace(std::make_pair(f.name, n), field_mode(module, f, Rational(n))).first;
    return it->second;
  };
  auto id = [](const Rational& c) { return LinearOperator::identity(c); };

  struct Rule {
    std::string text;
    const FieldExpr* a;
    const FieldExpr* b;
    std::function<std::optional<LinearOperator>(int, int)> rhs;  // nullopt = zero
  };
  auto delta = [](int m, int n) { return m + n == 0; };
  std::vector<Rule> rules = {
      {"[L_m, L_n] = (m-n) L_{m+n}", &F.L, &F.L,
       [&](int m, int n) { return std::optional(mode(F.L, m + n).scaled(Rational(m - n))); }},
      {"[L_m, J_n] = -n J_{m+n} - (N/2) m(m+1) delta", &F.L, &F.J,
       [&](int m, int n) {
         auto r = mode(F.J, m + n).scaled(Rational(-n));
         if (delta(m, n)) r = r + id(-N * Rational(m * (m + 1), 2));
         return std::optional(r);
       }},
      {"[L_m, Q_n] = -n Q_{m+n}", &F.L, &F.Q,
       [&](int m, int n) { return std::optional(mode(F.Q, m + n).scaled(Rational(-n))); }},
      {"[L_m, G_n] = (m-n) G_{m+n}", &F.L, &F.G,
       [&](int m, int n) { return std::optional(mode(F.G, m + n).scaled(Rational(m - n))); }},
      {"[J_m, J_n] = N m delta", &F.J, &F.J,
       [&](int m, int n) {
         return delta(m, n) ? std::optional(id(N * Rational(m))) : std::nullopt;
       }},
      {"[J_m, Q_n] = Q_{m+n}", &F.J, &F.Q, [&](int m, int n) { return std::optional(mode(F.Q, m + n)); }},
      {"[J_m, G_n] = -G_{m+n}", &F.J, &F.G,
       [&](int m, int n) { return std::optional(mode(F.G, m + n).scaled(Rational(-1))); }},
      {"{Q_m, Q_n} = 0", &F.Q, &F.Q, [](int, int) { return std::optional<LinearOperator>(); }},
      {"{G_m, G_n} = 0", &F.G, &F.G, [](int, int) { return std::optional<LinearOperator>(); }},
      {"{Q_m, G_n} = L_{m+n} + m J_{m+n} + (N/2) m(m-1) delta", &F.Q, &F.G,
       [&](int m, int n) {
         auto r = mode(F.L, m + n) + mode(F.J, m + n).scaled(Rational(m));
         if (delta(m, n)) r = r + id(N * Rational(m * (m - 1), 2));
         return std::optional(r);
       }},
  };

  SuiteReport report;
  for (const auto& rule : rules) {
    CheckRow row{rule.text};
    for (int m = -max_mode; m <= max_mode; ++m) {
      for (int n = -max_mode; n <= max_mode; ++n) {
        const auto lhs = bracket(mode(*rule.a, m), mode(*rule.b, n));
        auto rhs = rule.rhs(m, n);
        const LinearOperator r =
            rhs ? *rhs : LinearOperator::zero(lhs.weight_shift_ticks(), lhs.charge_shift(), lhs.odd());
        auto failure = compare_on(module, lhs, r, states);
        if (failure) *failure = "m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + *failure;
        record(row, failure, states.size());
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

SuiteReport vector_field_suite(const FockModule& module, const Rational& w_max, int max_degree) {
  const auto& states = module.basis_up_to(w_max, max_degree)->states;
  const auto fields = admissible_vector_fields(module.twist(), max_degree);
  CheckRow row{"[nu(v), nu(w)] = nu([v, w])"};
  std::map<MonomialVectorField, LinearOperator> cache;
  auto action = [&](const MonomialVectorField& v) {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, vector_field_action(v, module)).first;
    return it->second;
  };
  for (const auto& v : fields) {
    for (const auto& w : fields) {
      const auto lhs = bracket(action(v), action(w));
      LinearOperator rhs = LinearOperator::zero(0, 0, false);
      for (const auto& [u, c] : lie_bracket(v, w)) rhs = rhs + action(u).scaled(c);
      auto failure = compare_on(module, lhs, rhs, states);
      if (failure) *failure = "v=" + v.str() + " w=" + w.str() + ": " + *failure;
      record(row, failure, states.size());
    }
  }
  return SuiteReport{{row}};
}

SuiteReport spectrum_suite(const FockModule& module, const Rational& w_max) {
  const auto& states = module.basis_up_to(w_max)->states;
  const auto F = twisted_standard_fields(module.twist());
  const auto L0 = field_mode(module, F.L, Rational(0));
  const auto J0 = field_mode(module, F.J, Rational(0));
  CheckRow weight{"L_0 diagonal with eigenvalue in (1/m_g) Z>=0"};
  CheckRow charge{"J_0 diagonal with eigenvalue in iota + Z"};
  CheckRow vac{"J_0 |0> = iota |0>"};
  for (const auto& s : states) {
    const Rational w = module.state_weight(s);
    const Rational c = module.state_charge(s);
    std::optional<std::string> fw, fc;
    if (L0.apply(s) != (w.is_zero() ? StateVector{} : StateVector{{s, w}}) || w < Rational(0) ||
        !(w * Rational(module.order())).is_integer()) {
      fw = "L_0 on " + module.describe(s);
    }
    if (J0.apply(s) != (c.is_zero() ? StateVector{} : StateVector{{s, c}}) || !(c - module.shift()).is_integer()) {
      fc = "J_0 on " + module.describe(s);
    }
    record(weight, fw, 1);
    record(charge, fc, 1);
  }
  const Monomial vacuum;
  const Rational iota = module.shift();
  record(vac,
         J0.apply(vacuum) == (iota.is_zero() ? StateVector{} : StateVector{{vacuum, iota}})
             ? std::nullopt
             : std::optional<std::string>("vacuum charge"),
         1);
  return SuiteReport{{weight, charge, vac}};
}

SuiteReport character_suite(const FockModule& module, const Rational& q_max) {
  CheckRow row{"basis character = product formula"};
  const auto a = module.character(q_max);
  const auto b = module.product_character(q_max);
  record(row, a == b ? std::nullopt : std::optional<std::string>("series differ"), module.basis_up_to(q_max)->states.size());
  return SuiteReport{{row}};
}

SuiteReport brst_suite(const FockModule& module, const Rational& w_max) {
  SuiteReport report;
  const auto d2 = d_squared_check(module, w_max);
  report.rows.push_back(CheckRow{"d^2 = 0", 1, d2.columns_checked, d2.holds, d2.failure});
  const auto h = homotopy_identity_check(module, w_max);
  CheckRow hr{"{G_0, d} = " + std::string(h.sign < 0 ? "-" : "+") + "L_0", 1, h.blocks_checked, h.holds, h.failure};
  report.rows.push_back(hr);

  const auto table = cohomology_table(module, w_max);
  const int zeros = module.twist().fixed_directions();
  std::map<BlockKey, std::size_t> expected;
  long binom = 1;
  for (int k = 0; k <= zeros; ++k) {
    expected.emplace(BlockKey{0, k}, static_cast<std::size_t>(binom));
    binom = binom * (zeros - k) / (k + 1);
  }
  CheckRow cr{"H(d) = exterior algebra on phi_0 (weight 0)", 1, table.blocks.size(), table.nonzero() == expected};
  if (!cr.ok) cr.failure = "cohomology " + table.str();
  report.rows.push_back(cr);
  return report;
}

}  // namespace cdr
