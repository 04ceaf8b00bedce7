#include "cdr/fields.hpp"

#include <algorithm>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

int field_weight(Family f) { return (f == Family::A || f == Family::Psi) ? 1 : 0; }

void FieldExpr::validate() const {
  std::optional<bool> parity;
  for (const auto& t : terms) {
    if (t.factors.empty() || t.factors.size() > 4) {
      throw DomainError("field " + name + ": each term needs between one and four factors");
    }
    const bool odd_term =
        std::count_if(t.factors.begin(), t.factors.end(), [](const FieldFactor& f) { return is_fermionic(f.family); }) % 2 == 1;
    if (parity && *parity != odd_term) throw DomainError("field " + name + ": terms of mixed parity");
    parity = odd_term;
  }
}

bool FieldExpr::odd() const {
  if (terms.empty()) return false;
  const auto& f = terms.front().factors;
  return std::count_if(f.begin(), f.end(), [](const FieldFactor& x) { return is_fermionic(x.family); }) % 2 == 1;
}

StandardFields standard_fields(int n) { return twisted_standard_fields(TwistData::identity(n)); }

StandardFields twisted_standard_fields(const TwistData& twist) {
  twist.validate();
  StandardFields s;
  s.L = FieldExpr{"L", {}, Rational(2), 0, Rational(0)};
  s.J = FieldExpr{"J", {}, Rational(1), 0, twist.shift()};
  s.Q = FieldExpr{"Q", {}, Rational(1), 1, Rational(0)};
  s.G = FieldExpr{"G", {}, Rational(2), -1, Rational(0)};
  for (int i = 0; i < twist.n; ++i) {
    s.L.terms.push_back({Rational(1), {{Family::B, i, 1}, {Family::A, i, 0}}});
    s.L.terms.push_back({Rational(1), {{Family::Phi, i, 1}, {Family::Psi, i, 0}}});
    s.J.terms.push_back({Rational(1), {{Family::Phi, i, 0}, {Family::Psi, i, 0}}});
    s.Q.terms.push_back({Rational(1), {{Family::A, i, 0}, {Family::Phi, i, 0}}});
    s.G.terms.push_back({Rational(1), {{Family::Psi, i, 0}, {Family::B, i, 1}}});
  }
  return s;
}

// Mode application -----------------------------------------------------------

namespace {

// Largest creation level (in ticks) of a family on its lattice.
int max_creation_ticks(const FockModule& module, Family f, int direction) {
  const int order = module.order();
  const int m = module.twist().exponents[static_cast<std::size_t>(direction)];
  if (f == Family::A || f == Family::Psi) return m == 0 ? -order : m - order;
  return -m;
}

// Coefficient of x_r in the d-th z-derivative of x(z) = sum_r x_r z^{-r-h}.
Rational derivative_coefficient(const FockModule& module, Family f, int ticks, int d) {
  const Rational r = module.level(Mode{f, 0, ticks});
  Rational out(1);
  for (int j = 0; j < d; ++j) out *= -r - Rational(field_weight(f) + j);
  return out;
}

Family partner_family(Family f) {
  switch (f) {
    case Family::A: return Family::B;
    case Family::B: return Family::A;
    case Family::Psi: return Family::Phi;
    case Family::Phi: return Family::Psi;
  }
  return f;
}

struct TermApplier {
  const FockModule& module;
  const FieldTerm& term;
  int target_ticks;
  StateVector& out;

  std::vector<int> creators;     // factor indices, original order
  std::vector<int> annihilators;  // factor indices, original order
  std::vector<int> levels;        // per factor

  // Applies annihilators right to left; `state` is the current monomial.
  void annihilate(int idx, const Monomial& state, const Rational& coeff, int sum) {
    if (idx < 0) {
      create_all(0, target_ticks - sum, state, coeff);
      return;
    }
    const auto& f = term.factors[static_cast<std::size_t>(annihilators[static_cast<std::size_t>(idx)])];
    const Family pf = partner_family(f.family);
    const auto& pool = is_fermionic(pf) ? state.fermions : state.bosons;
    std::vector<int> candidates;
    for (const auto& m : pool) {
      if (m.family == pf && m.direction == f.direction) candidates.push_back(-m.ticks);
    }
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (int ticks : candidates) {
      if (!FockModule::is_annihilator(f.family, ticks)) continue;
      const Rational dc = derivative_coefficient(module, f.family, ticks, f.derivative);
      if (dc.is_zero()) continue;
      const StateVector img = module.apply_mode(Mode{f.family, f.direction, ticks}, state);
      for (const auto& [m, c] : img) annihilate(idx - 1, m, coeff * dc * c, sum + ticks);
    }
  }

  // Creation levels are chosen left to right; the product is applied right to left.
  void create_all(std::size_t pos, int remaining, const Monomial& state, const Rational& coeff) {
    const int order = module.order();
    if (pos == creators.size()) {
      if (remaining != 0) return;
      StateVector cur{{state, coeff}};
      for (std::size_t i = creators.size(); i-- > 0;) {
        const auto& f = term.factors[static_cast<std::size_t>(creators[i])];
        StateVector next;
        for (const auto& [m, c] : cur) {
          accumulate(next, module.apply_mode(Mode{f.family, f.direction, levels[static_cast<std::size_t>(creators[i])]}, m), c);
        }
        cur = std::move(next);
        if (cur.empty()) return;
      }
      accumulate(out, cur);
      return;
    }
    const auto& f = term.factors[static_cast<std::size_t>(creators[pos])];
    int rest_max = 0;
    for (std::size_t j = pos + 1; j < creators.size(); ++j) {
      const auto& g = term.factors[static_cast<std::size_t>(creators[j])];
      rest_max += max_creation_ticks(module, g.family, g.direction);
    }
    const int top = max_creation_ticks(module, f.family, f.direction);
    for (int t = top; t >= remaining - rest_max; t -= order) {
      const Rational dc = derivative_coefficient(module, f.family, t, f.derivative);
      if (dc.is_zero()) continue;
      levels[static_cast<std::size_t>(creators[pos])] = t;
      create_all(pos + 1, remaining - t, state, coeff * dc);
    }
  }
};

}  // namespace

StateVector apply_field_mode(const FockModule& module, const FieldExpr& field, int n_ticks, const Monomial& state) {
  StateVector out;
  for (const auto& term : field.terms) {
    for (const auto& f : term.factors) {
      if (f.direction < 0 || f.direction >= module.n()) {
        throw DomainError("field " + field.name + " refers to direction " + std::to_string(f.direction + 1) +
                          " outside the module");
      }
    }
    TermApplier applier{module, term, n_ticks, out, {}, {}, {}};
    const int k = static_cast<int>(term.factors.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
      applier.creators.clear();
      applier.annihilators.clear();
      int swaps = 0;
      for (int i = 0; i < k; ++i) {
        const bool fermion = is_fermionic(term.factors[static_cast<std::size_t>(i)].family);
        if (mask & (1 << i)) {
          applier.annihilators.push_back(i);
        } else {
          applier.creators.push_back(i);
          if (fermion) {
            for (int a : applier.annihilators) {
              if (is_fermionic(term.factors[static_cast<std::size_t>(a)].family)) ++swaps;
            }
          }
        }
      }
      applier.levels.assign(static_cast<std::size_t>(k), 0);
      applier.annihilate(static_cast<int>(applier.annihilators.size()) - 1, state,
                         term.coeff * Rational(swaps % 2 == 0 ? 1 : -1), 0);
    }
  }
  // Scalar anomaly c z^{-1} contributes to the mode n = 1 - h.
  if (!field.anomaly.is_zero() && Rational(n_ticks, module.order()) == Rational(1) - field.weight) {
    accumulate(out, state, field.anomaly);
  }
  return out;
}

// LinearOperator --------------------------------------------------------------

LinearOperator::LinearOperator(std::string name, Kernel kernel, int weight_shift_ticks, int charge_shift, bool odd)
    : name_(std::move(name)),
      kernel_(std::move(kernel)),
      weight_shift_(weight_shift_ticks),
      charge_shift_(charge_shift),
      odd_(odd),
      memo_(std::make_shared<std::map<Monomial, StateVector>>()) {}

const StateVector& LinearOperator::apply(const Monomial& m) const {
  auto it = memo_->find(m);
  if (it != memo_->end()) return it->second;
  return memo_->emplace(m, kernel_(m)).first->second;
}

StateVector LinearOperator::apply(const StateVector& v) const {
  StateVector out;
  for (const auto& [m, c] : v) accumulate(out, apply(m), c);
  return out;
}

LinearOperator LinearOperator::scaled(const Rational& c) const {
  const LinearOperator self = *this;
  return LinearOperator(
      "(" + c.str() + ")" + name_,
      [self, c](const Monomial& m) {
        StateVector out;
        accumulate(out, self.apply(m), c);
        return out;
      },
      weight_shift_, charge_shift_, odd_);
}

LinearOperator bracket(const LinearOperator& a, const LinearOperator& b) {
  const Rational s((a.odd_ && b.odd_) ? -1 : 1);
  return LinearOperator(
      "[" + a.name_ + "," + b.name_ + "]",
      [a, b, s](const Monomial& m) {
        StateVector out = a.apply(b.apply(m));
        accumulate(out, b.apply(a.apply(m)), -s);
        return out;
      },
      a.weight_shift_ + b.weight_shift_, a.charge_shift_ + b.charge_shift_, a.odd_ != b.odd_);
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
  return LinearOperator(
      a.name_ + "*" + b.name_, [a, b](const Monomial& m) { return a.apply(b.apply(m)); },
      a.weight_shift_ + b.weight_shift_, a.charge_shift_ + b.charge_shift_, a.odd_ != b.odd_);
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  if (a.weight_shift_ != b.weight_shift_ || a.charge_shift_ != b.charge_shift_ || a.odd_ != b.odd_) {
    throw DomainError("sum of operators with different gradings: " + a.name_ + ", " + b.name_);
  }
  return LinearOperator(
      a.name_ + "+" + b.name_,
      [a, b](const Monomial& m) {
        StateVector out = a.apply(m);
        accumulate(out, b.apply(m));
        return out;
      },
      a.weight_shift_, a.charge_shift_, a.odd_);
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) { return a + b.scaled(Rational(-1)); }

LinearOperator LinearOperator::identity(const Rational& c) {
  return LinearOperator(
      c == Rational(1) ? "Id" : c.str() + "Id", [c](const Monomial& m) { return c.is_zero() ? StateVector{} : StateVector{{m, c}}; }, 0, 0, false);
}

LinearOperator LinearOperator::zero(int weight_shift_ticks, int charge_shift, bool odd) {
  return LinearOperator("0", [](const Monomial&) { return StateVector{}; }, weight_shift_ticks, charge_shift, odd);
}

LinearOperator field_mode(const FockModule& module, const FieldExpr& field, const Rational& n) {
  field.validate();
  const Rational t = n * Rational(module.order());
  const std::string name = field.name + "_" + n.str();
  if (!t.is_integer()) {
    // No splitting of a non-lattice level exists: the mode vanishes identically.
    return LinearOperator(name, [](const Monomial&) { return StateVector{}; }, 0, field.charge, field.odd());
  }
  const int ticks = static_cast<int>(t.to_long());
  const FieldExpr f = field;
  const FockModule mod = module;
  return LinearOperator(
      name, [mod, f, ticks](const Monomial& m) { return apply_field_mode(mod, f, ticks, m); }, -ticks, field.charge,
      field.odd());
}

LinearOperator mode_operator(const FockModule& module, Family family, int direction, const Rational& level) {
  const Mode m = module.mode(family, direction, level);
  const FockModule mod = module;
  const int charge = family == Family::Phi ? 1 : (family == Family::Psi ? -1 : 0);
  return LinearOperator(
      module.describe(m), [mod, m](const Monomial& s) { return mod.apply_mode(m, s); }, -m.ticks, charge,
      is_fermionic(family));
}

// OperatorMatrix ---------------------------------------------------------------

OperatorMatrix::OperatorMatrix(const LinearOperator& op, std::shared_ptr<const Basis> basis)
    : name_(op.name()),
      basis_(std::move(basis)),
      weight_shift_(op.weight_shift_ticks()),
      charge_shift_(op.charge_shift()),
      odd_(op.odd()) {
  columns_.resize(basis_->states.size());
  for (const auto& [key, ids] : basis_->blocks) {
    const int target = key.weight_ticks + weight_shift_;
    if (target > basis_->max_weight_ticks || target < 0) continue;
    for (int j : ids) {
      const StateVector& img = op.apply(basis_->states[static_cast<std::size_t>(j)]);
      Column col;
      bool inside = true;
      for (const auto& [m, c] : img) {
        const auto row = basis_->find(m);
        if (!row) {
          inside = false;
          break;
        }
        col.emplace_back(*row, c);
      }
      if (!inside) continue;
      std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      columns_[static_cast<std::size_t>(j)] = std::move(col);
    }
  }
}

OperatorMatrix::OperatorMatrix(std::string name, std::shared_ptr<const Basis> basis,
                               std::vector<std::optional<Column>> columns, int weight_shift_ticks, int charge_shift,
                               bool odd)
    : name_(std::move(name)),
      basis_(std::move(basis)),
      columns_(std::move(columns)),
      weight_shift_(weight_shift_ticks),
      charge_shift_(charge_shift),
      odd_(odd) {}

bool OperatorMatrix::valid(int col) const { return columns_.at(static_cast<std::size_t>(col)).has_value(); }

const OperatorMatrix::Column& OperatorMatrix::column(int col) const {
  const auto& c = columns_.at(static_cast<std::size_t>(col));
  if (!c) {
    throw TruncationError("operator " + name_ + ": image of basis state " + std::to_string(col) +
                          " leaves the truncation (max weight ticks " + std::to_string(basis_->max_weight_ticks) + ")");
  }
  return *c;
}

std::vector<int> OperatorMatrix::valid_columns() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j]) out.push_back(static_cast<int>(j));
  }
  return out;
}

std::vector<std::vector<Rational>> OperatorMatrix::block(const BlockKey& source) const {
  const BlockKey target{source.weight_ticks + weight_shift_, source.charge + charge_shift_};
  static const std::vector<int> empty;
  auto s = basis_->blocks.find(source);
  auto t = basis_->blocks.find(target);
  const auto& cols = s == basis_->blocks.end() ? empty : s->second;
  const auto& rows = t == basis_->blocks.end() ? empty : t->second;
  std::map<int, std::size_t> row_pos;
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos.emplace(rows[i], i);
  std::vector<std::vector<Rational>> out(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [r, c] : column(cols[j])) {
      auto it = row_pos.find(r);
      if (it == row_pos.end()) throw InvariantFailure("operator " + name_ + " does not respect the block grading");
      out[it->second][j] = c;
    }
  }
  return out;
}

std::map<int, Rational> OperatorMatrix::apply(const std::map<int, Rational>& v) const {
  std::map<int, Rational> out;
  for (const auto& [j, x] : v) {
    for (const auto& [i, c] : column(j)) {
      auto [it, inserted] = out.emplace(i, c * x);
      if (!inserted) {
        it->second += c * x;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

OperatorMatrix field_mode_operator(const FieldExpr& field, const Rational& n, const FockModule& module,
                                   const Rational& w_max, std::optional<int> b0_cap) {
  if (n < Rational(0) && -n > w_max) {
    throw TruncationError("mode " + field.name + "_" + n.str() + " raises weight beyond the truncation " + w_max.str());
  }
  return OperatorMatrix(field_mode(module, field, n), module.basis_up_to(w_max, b0_cap));
}

namespace {

std::optional<std::map<int, Rational>> compose_column(const OperatorMatrix& a, const OperatorMatrix& b, int j) {
  if (!b.valid(j)) return std::nullopt;
  std::map<int, Rational> out;
  for (const auto& [i, x] : b.column(j)) {
    if (!a.valid(i)) return std::nullopt;
    for (const auto& [r, c] : a.column(i)) {
      auto [it, inserted] = out.emplace(r, c * x);
      if (!inserted) {
        it->second += c * x;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace

OperatorMatrix operator_bracket(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.basis_ptr() != b.basis_ptr()) throw DomainError("operator_bracket: operators live on different bases");
  const Rational s((a.odd() && b.odd()) ? -1 : 1);
  std::vector<std::optional<OperatorMatrix::Column>> cols(a.columns().size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto ab = compose_column(a, b, static_cast<int>(j));
    if (!ab) continue;
    auto ba = compose_column(b, a, static_cast<int>(j));
    if (!ba) continue;
    for (const auto& [r, c] : *ba) {
      auto [it, inserted] = ab->emplace(r, -s * c);
      if (!inserted) {
        it->second -= s * c;
        if (it->second.is_zero()) ab->erase(it);
      }
    }
    cols[j] = OperatorMatrix::Column(ab->begin(), ab->end());
  }
  return OperatorMatrix("[" + a.name() + "," + b.name() + "]", a.basis_ptr(), std::move(cols),
                        a.weight_shift_ticks() + b.weight_shift_ticks(), a.charge_shift() + b.charge_shift(),
                        a.odd() != b.odd());
}

std::optional<int> first_difference(const OperatorMatrix& a, const OperatorMatrix& b, const std::vector<int>& columns) {
  for (int j : columns) {
    if (a.column(j) != b.column(j)) return j;
  }
  return std::nullopt;
}

// Vector fields -------------------------------------------------------------------

int MonomialVectorField::degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

std::string MonomialVectorField::str() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t l = 0; l < exponents.size(); ++l) {
    if (exponents[l] == 0) continue;
    if (any) os << "*";
    os << "t" << l + 1;
    if (exponents[l] > 1) os << "^" << exponents[l];
    any = true;
  }
  if (!any) os << "1";
  os << "*d/dt" << direction + 1;
  return os.str();
}

VectorField lie_bracket(const MonomialVectorField& v, const MonomialVectorField& w) {
  if (v.exponents.size() != w.exponents.size()) throw DomainError("lie_bracket: dimension mismatch");
  VectorField out;
  auto add = [&out](MonomialVectorField f, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.emplace(f, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  const auto i = static_cast<std::size_t>(v.direction);
  const auto j = static_cast<std::size_t>(w.direction);
  // f d_i(g) d_j
  if (w.exponents[i] > 0) {
    MonomialVectorField r{w.exponents, w.direction};
    for (std::size_t l = 0; l < r.exponents.size(); ++l) r.exponents[l] += v.exponents[l];
    r.exponents[i] -= 1;
    add(r, Rational(w.exponents[i]));
  }
  // - g d_j(f) d_i
  if (v.exponents[j] > 0) {
    MonomialVectorField r{v.exponents, v.direction};
    for (std::size_t l = 0; l < r.exponents.size(); ++l) r.exponents[l] += w.exponents[l];
    r.exponents[j] -= 1;
    add(r, Rational(-v.exponents[j]));
  }
  return out;
}

bool is_admissible(const MonomialVectorField& v, const TwistData& twist) {
  long s = 0;
  for (std::size_t l = 0; l < v.exponents.size(); ++l) {
    s += static_cast<long>(twist.exponents[l]) * v.exponents[l];
  }
  const long diff = s - twist.exponents[static_cast<std::size_t>(v.direction)];
  return ((diff % twist.order) + twist.order) % twist.order == 0;
}

FieldExpr vector_field_current(const MonomialVectorField& v) {
  FieldExpr f{"A[" + v.str() + "]", {}, Rational(1), 0, Rational(0)};
  FieldTerm main;
  for (std::size_t l = 0; l < v.exponents.size(); ++l) {
    for (int e = 0; e < v.exponents[l]; ++e) main.factors.push_back({Family::B, static_cast<int>(l), 0});
  }
  main.factors.push_back({Family::A, v.direction, 0});
  f.terms.push_back(std::move(main));
  for (std::size_t k = 0; k < v.exponents.size(); ++k) {
    if (v.exponents[k] == 0) continue;
    FieldTerm t;
    t.coeff = Rational(v.exponents[k]);
    for (std::size_t l = 0; l < v.exponents.size(); ++l) {
      const int e = v.exponents[l] - (l == k ? 1 : 0);
      for (int r = 0; r < e; ++r) t.factors.push_back({Family::B, static_cast<int>(l), 0});
    }
    t.factors.push_back({Family::Phi, static_cast<int>(k), 0});
    t.factors.push_back({Family::Psi, v.direction, 0});
    f.terms.push_back(std::move(t));
  }
  return f;
}

LinearOperator vector_field_action(const MonomialVectorField& v, const FockModule& module) {
  if (module.n() > 3) throw DomainError("vector fields are supported for N <= 3");
  if (static_cast<int>(v.exponents.size()) != module.n() || v.direction < 0 || v.direction >= module.n()) {
    throw DomainError("vector field " + v.str() + " does not match the module dimension");
  }
  for (int e : v.exponents) {
    if (e < 0) throw DomainError("vector field with negative exponent");
  }
  if (v.degree() > 3) throw DomainError("vector field " + v.str() + " exceeds degree 3");
  if (!is_admissible(v, module.twist())) {
    throw DomainError("vector field " + v.str() + " is not invariant under twist " + module.twist().str());
  }
  return field_mode(module, vector_field_current(v), Rational(0));
}

LinearOperator vector_field_action(const VectorField& v, const FockModule& module) {
  LinearOperator out = LinearOperator::zero(0, 0, false);
  for (const auto& [f, c] : v) out = out + vector_field_action(f, module).scaled(c);
  return out;
}

OperatorMatrix vector_field_operator(const MonomialVectorField& v, const FockModule& module, const Rational& w_max) {
  const int cap = v.degree() + static_cast<int>(w_max.floor());
  return OperatorMatrix(vector_field_action(v, module), module.basis_up_to(w_max, cap));
}

std::vector<MonomialVectorField> admissible_vector_fields(const TwistData& twist, int max_degree) {
  std::vector<MonomialVectorField> out;
  std::vector<int> e(static_cast<std::size_t>(twist.n), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t l, int left) {
    if (l == e.size()) {
      for (int j = 0; j < twist.n; ++j) {
        MonomialVectorField v{e, j};
        if (is_admissible(v, twist)) out.push_back(v);
      }
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[l] = k;
      rec(l + 1, left - k);
    }
    e[l] = 0;
  };
  rec(0, max_degree);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  return out;
}

}  // namespace cdr
