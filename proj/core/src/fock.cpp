#include "cdr/fock.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

// TwistData ----------------------------------------------------------------

void TwistData::validate() const {
  if (n < 0) throw InputError("twist: negative number of directions");
  if (order < 1) throw InputError("twist: order m_g must be positive");
  if (static_cast<int>(exponents.size()) != n) {
    throw InputError("twist: expected " + std::to_string(n) + " exponents, got " + std::to_string(exponents.size()));
  }
  for (int m : exponents) {
    if (m < 0 || m >= order) {
      throw InputError("twist: exponent " + std::to_string(m) + " outside [0, " + std::to_string(order) + ")");
    }
  }
}

Rational TwistData::shift() const {
  long total = 0;
  for (int m : exponents) total += m;
  return Rational(total, order);
}

int TwistData::fixed_directions() const {
  return static_cast<int>(std::count(exponents.begin(), exponents.end(), 0));
}

std::string TwistData::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
  os << "/" << order;
  return os.str();
}

TwistData TwistData::parse(const std::string& text) {
  TwistData t;
  const auto slash = text.find('/');
  const std::string list = text.substr(0, slash);
  try {
    t.order = slash == std::string::npos ? 1 : std::stoi(text.substr(slash + 1));
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) t.exponents.push_back(std::stoi(item));
  } catch (const std::exception&) {
    throw InputError("twist: cannot parse \"" + text + "\" (expected m1,...,mN/mg)");
  }
  t.n = static_cast<int>(t.exponents.size());
  t.validate();
  return t;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::A: return "a";
    case Family::B: return "b";
    case Family::Psi: return "psi";
    case Family::Phi: return "phi";
  }
  return "?";
}

// State vectors ------------------------------------------------------------

void accumulate(StateVector& v, const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

void accumulate(StateVector& v, const StateVector& w, const Rational& scale) {
  if (scale.is_zero()) return;
  for (const auto& [m, c] : w) accumulate(v, m, c * scale);
}

// FockModule ---------------------------------------------------------------

namespace {
std::mutex basis_mutex;
}

FockModule::FockModule(TwistData twist) : twist_(std::move(twist)) { twist_.validate(); }

bool FockModule::on_lattice(Family family, int direction, int ticks) const {
  if (direction < 0 || direction >= twist_.n) return false;
  const int m = twist_.exponents[static_cast<std::size_t>(direction)];
  const int target = (family == Family::A || family == Family::Psi) ? m : -m;
  const int r = ((ticks - target) % twist_.order + twist_.order) % twist_.order;
  return r == 0;
}

Mode FockModule::mode(Family family, int direction, const Rational& level) const {
  const Rational t = level * Rational(twist_.order);
  if (!t.is_integer() || !on_lattice(family, direction, static_cast<int>(t.to_long()))) {
    throw DomainError(std::string("mode ") + family_name(family) + "^" + std::to_string(direction + 1) + "_" +
                      level.str() + " is off the level lattice of twist " + twist_.str());
  }
  return Mode{family, direction, static_cast<int>(t.to_long())};
}

StateVector FockModule::apply_mode(const Mode& mode, const Monomial& state) const {
  if (!on_lattice(mode.family, mode.direction, mode.ticks)) {
    throw DomainError("mode " + describe(mode) + " is off the level lattice of twist " + twist_.str());
  }
  StateVector out;
  if (!is_annihilator(mode)) {
    Monomial m = state;
    if (!is_fermionic(mode.family)) {
      m.bosons.insert(std::upper_bound(m.bosons.begin(), m.bosons.end(), mode), mode);
      out.emplace(std::move(m), Rational(1));
    } else {
      auto pos = std::lower_bound(m.fermions.begin(), m.fermions.end(), mode);
      if (pos != m.fermions.end() && *pos == mode) return out;
      const auto p = pos - m.fermions.begin();
      m.fermions.insert(pos, mode);
      out.emplace(std::move(m), Rational(p % 2 == 0 ? 1 : -1));
    }
    return out;
  }

  Mode partner{mode.family, mode.direction, -mode.ticks};
  switch (mode.family) {
    case Family::A: partner.family = Family::B; break;
    case Family::B: partner.family = Family::A; break;
    case Family::Psi: partner.family = Family::Phi; break;
    case Family::Phi: partner.family = Family::Psi; break;
  }
  Monomial m = state;
  if (!is_fermionic(mode.family)) {
    auto [lo, hi] = std::equal_range(m.bosons.begin(), m.bosons.end(), partner);
    const long count = hi - lo;
    if (count == 0) return out;
    m.bosons.erase(lo);
    // [a_r, b_{-r}] = 1 and [b_s, a_{-s}] = -1.
    out.emplace(std::move(m), Rational(mode.family == Family::A ? count : -count));
  } else {
    auto pos = std::lower_bound(m.fermions.begin(), m.fermions.end(), partner);
    if (pos == m.fermions.end() || !(*pos == partner)) return out;
    const auto p = pos - m.fermions.begin();
    m.fermions.erase(pos);
    out.emplace(std::move(m), Rational(p % 2 == 0 ? 1 : -1));
  }
  return out;
}

StateVector FockModule::apply_mode(const Mode& mode, const StateVector& v) const {
  StateVector out;
  for (const auto& [m, c] : v) accumulate(out, apply_mode(mode, m), c);
  return out;
}

int FockModule::weight_ticks(const Monomial& m) const {
  int w = 0;
  for (const auto& x : m.bosons) w -= x.ticks;
  for (const auto& x : m.fermions) w -= x.ticks;
  return w;
}

int FockModule::charge_offset(const Monomial& m) {
  int c = 0;
  for (const auto& x : m.fermions) c += x.family == Family::Phi ? 1 : -1;
  return c;
}

int FockModule::b0_degree(const Monomial& m) {
  return static_cast<int>(std::count_if(m.bosons.begin(), m.bosons.end(),
                                        [](const Mode& x) { return x.family == Family::B && x.ticks == 0; }));
}

std::shared_ptr<const Basis> FockModule::basis_up_to(const Rational& w_max, std::optional<int> b0_cap) const {
  if (w_max < Rational(0)) throw DomainError("basis_up_to: negative weight bound");
  if (b0_cap && *b0_cap < 0) throw DomainError("basis_up_to: negative b_0 cap");
  const int max_ticks = static_cast<int>((w_max * Rational(twist_.order)).floor());
  const std::pair<int, int> key{max_ticks, b0_cap ? *b0_cap : -1};
  {
    std::lock_guard<std::mutex> lock(basis_mutex);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  // Creation slots up to the bound, in canonical order.
  std::vector<Mode> slots;
  const int order = twist_.order;
  for (int i = 0; i < twist_.n; ++i) {
    const int m = twist_.exponents[static_cast<std::size_t>(i)];
    for (Family f : {Family::A, Family::B, Family::Psi, Family::Phi}) {
      const bool upper = f == Family::A || f == Family::Psi;
      // Smallest creation weight: (m_g - m) mod m_g for a/psi (never 0), m for b/phi.
      int w0 = upper ? (order - m) % order : m;
      if (upper && w0 == 0) w0 = order;
      for (int w = w0; w <= max_ticks; w += order) {
        if (f == Family::B && w == 0 && !b0_cap) continue;
        slots.push_back(Mode{f, i, -w});
      }
    }
  }
  std::sort(slots.begin(), slots.end());

  auto basis = std::make_shared<Basis>();
  basis->max_weight_ticks = max_ticks;
  basis->b0_cap = b0_cap;
  Monomial current;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t idx, int budget, int b0_left) {
    if (idx == slots.size()) {
      basis->states.push_back(current);
      return;
    }
    const Mode& s = slots[idx];
    const int w = -s.ticks;
    rec(idx + 1, budget, b0_left);
    if (is_fermionic(s.family)) {
      if (w <= budget) {
        current.fermions.push_back(s);
        rec(idx + 1, budget - w, b0_left);
        current.fermions.pop_back();
      }
      return;
    }
    const bool zero = w == 0;
    int used = 0;
    while (zero ? used < b0_left : (used + 1) * w <= budget) {
      ++used;
      current.bosons.push_back(s);
      rec(idx + 1, budget - used * w, zero ? b0_left - used : b0_left);
    }
    for (int k = 0; k < used; ++k) current.bosons.pop_back();
  };
  rec(0, max_ticks, b0_cap ? *b0_cap : 0);

  std::sort(basis->states.begin(), basis->states.end(), [this](const Monomial& x, const Monomial& y) {
    const BlockKey bx = block_of(x), by = block_of(y);
    if (bx != by) return bx < by;
    return x < y;
  });
  for (std::size_t i = 0; i < basis->states.size(); ++i) {
    const int id = static_cast<int>(i);
    basis->index.emplace(basis->states[i], id);
    basis->blocks[block_of(basis->states[i])].push_back(id);
  }

  std::lock_guard<std::mutex> lock(basis_mutex);
  return cache_.emplace(key, std::move(basis)).first->second;
}

QYSeries<Rational> FockModule::character(const Rational& q_max, bool include_b0) const {
  if (include_b0) {
    throw DomainError("character with b_0 factors is unsupported: weight-0 multiplicities are infinite");
  }
  const auto basis = basis_up_to(q_max);
  QYSeries<Rational> out(q_max);
  for (const auto& [key, ids] : basis->blocks) {
    out.add_term(weight(key.weight_ticks), Rational(key.charge) + shift(), Rational(static_cast<long>(ids.size())));
  }
  return out;
}

QYSeries<Rational> FockModule::product_character(const Rational& q_max) const {
  using F = ProductFactor<Rational>;
  std::vector<F> factors;
  for (int m : twist_.exponents) {
    const Rational lambda(m, twist_.order);
    if (m == 0) {
      for (const Rational& e : ladder(Rational(0), q_max)) {
        factors.push_back(F{F::Kind::Exterior, e, Rational(1), Rational(1), 1});
        const Rational k = e + Rational(1);
        if (k > q_max) continue;
        factors.push_back(F{F::Kind::Exterior, k, Rational(-1), Rational(1), 1});
        factors.push_back(F{F::Kind::Symmetric, k, Rational(0), Rational(1), 2});
      }
    } else {
      for (const Rational& e : ladder(lambda, q_max)) {
        factors.push_back(F{F::Kind::Exterior, e, Rational(1), Rational(1), 1});
        factors.push_back(F{F::Kind::Symmetric, e, Rational(0), Rational(1), 1});
      }
      for (const Rational& e : ladder(Rational(1) - lambda, q_max)) {
        factors.push_back(F{F::Kind::Exterior, e, Rational(-1), Rational(1), 1});
        factors.push_back(F{F::Kind::Symmetric, e, Rational(0), Rational(1), 1});
      }
    }
  }
  return product_expand(factors, q_max).shifted(Rational(1), Rational(0), shift());
}

std::string FockModule::describe(const Mode& m) const {
  return std::string(family_name(m.family)) + "^" + std::to_string(m.direction + 1) + "_" + level(m).str();
}

std::string FockModule::describe(const Monomial& m) const {
  if (m.is_vacuum()) return "|0>";
  std::string s;
  for (const auto& x : m.bosons) s += describe(x) + " ";
  for (const auto& x : m.fermions) s += describe(x) + " ";
  return s + "|0>";
}

}  // namespace cdr
