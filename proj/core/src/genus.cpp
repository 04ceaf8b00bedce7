#include "cdr/genus.hpp"

#include <future>
#include <functional>
#include <numeric>

#include "cdr/errors.hpp"
#include "cdr/fock.hpp"

namespace cdr {

LaurentT line_eigenvalue(const LineDatum& l) { return LaurentT::monomial(Cyclotomic::root_of_unity(l.zeta), l.w); }

namespace {

LaurentT inverse_eigenvalue(const LineDatum& l) {
  return LaurentT::monomial(Cyclotomic::root_of_unity(-l.zeta), -l.w);
}

std::string term_label(const QYExponent& e) { return "(q^" + e.q.str() + ", y^" + e.y.str() + ")"; }

// Runs fn(0..n-1) on up to `jobs` threads; results in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t step = static_cast<std::size_t>(jobs);
  std::vector<std::future<void>> workers;
  for (std::size_t w = 0; w < step; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += step) out[i] = fn(i);
    }));
  }
  for (auto& f : workers) f.get();
  return out;
}

}  // namespace

QYSeries<LaurentT> sector_bundle_character(const std::vector<LineDatum>& lines, const Rational& q_max) {
  if (q_max < Rational(0)) throw DomainError("sector_bundle_character: negative q_max");
  using F = ProductFactor<LaurentT>;
  std::vector<F> factors;
  for (const auto& l : lines) {
    if (l.lambda < Rational(0) || l.lambda >= Rational(1)) throw DomainError("line with lambda outside [0,1)");
    const LaurentT u = line_eigenvalue(l);
    const LaurentT ui = inverse_eigenvalue(l);
    const Rational lo = l.lambda;                       // k - 1 + lambda
    const Rational hi = Rational(1) - l.lambda;         // k - lambda
    for (const Rational& e : ladder(lo, q_max)) {
      factors.push_back(F{F::Kind::Exterior, e, Rational(1), ui, 1});
      // the q^0 symmetric factor of a tangent line is the localization denominator
      if (!e.is_zero()) factors.push_back(F{F::Kind::Symmetric, e, Rational(0), ui, 1});
    }
    for (const Rational& e : ladder(hi, q_max)) {
      factors.push_back(F{F::Kind::Exterior, e, Rational(-1), u, 1});
      factors.push_back(F{F::Kind::Symmetric, e, Rational(0), u, 1});
    }
  }
  return product_expand(factors, q_max);
}

QYSeries<LaurentT> fock_trace_character(const std::vector<LineDatum>& lines, const Rational& q_max) {
  if (q_max < Rational(0)) throw DomainError("fock_trace_character: negative q_max");
  long order = 1;
  for (const auto& l : lines) order = std::lcm(order, l.lambda.den_long());
  TwistData tw{static_cast<int>(lines.size()), static_cast<int>(order), {}};
  for (const auto& l : lines) tw.exponents.push_back(static_cast<int>((l.lambda * Rational(order)).to_long()));
  const FockModule module(tw);
  const auto basis = module.basis_up_to(q_max);

  std::vector<LaurentT> up, down;
  for (const auto& l : lines) {
    up.push_back(line_eigenvalue(l));
    down.push_back(inverse_eigenvalue(l));
  }
  QYSeries<LaurentT> out(q_max);
  for (const auto& s : basis->states) {
    LaurentT x(1);
    for (const auto* list : {&s.bosons, &s.fermions}) {
      for (const auto& m : *list) {
        const auto d = static_cast<std::size_t>(m.direction);
        x *= (m.family == Family::A || m.family == Family::Psi) ? up[d] : down[d];
      }
    }
    out.add_term(module.state_weight(s), module.state_charge(s), x);
  }
  return out;
}

LaurentT tangent_denominator(const std::vector<LineDatum>& lines) {
  LaurentT d(1);
  for (const auto& l : lines) {
    if (l.tangent) d *= LaurentT(1) - inverse_eigenvalue(l);
  }
  return d;
}

LefschetzResult localize(const std::vector<std::pair<QYSeries<LaurentT>, LaurentT>>& terms, const Rational& q_max,
                         bool strict) {
  std::map<QYExponent, RationalFunctionT> acc;
  for (const auto& [num, den] : terms) {
    if (den.is_zero()) throw LocalizationError("fixed point is not isolated: tangent denominator vanishes");
    for (const auto& [e, c] : num.terms()) {
      auto [it, inserted] = acc.emplace(e, RationalFunctionT(c, den));
      if (!inserted) it->second += RationalFunctionT(c, den);
    }
  }
  LefschetzResult r;
  r.equivariant = QYSeries<LaurentT>(q_max);
  r.value = QYSeries<Cyclotomic>(q_max);
  for (const auto& [e, f] : acc) {
    const auto p = f.as_laurent();
    if (!p) {
      throw LocalizationError("localization sum keeps a pole in t at " + term_label(e) + ": " + f.str());
    }
    if (!p->is_constant() && r.t_independent) {
      r.t_independent = false;
      r.first_t_dependent = term_label(e) + ": " + p->str();
      if (strict) throw LocalizationError("localization sum depends on t at " + *r.first_t_dependent);
    }
    r.equivariant.add_term(e.q, e.y, *p);
    r.value.add_term(e.q, e.y, p->at_one());
  }
  return r;
}

LefschetzResult lefschetz_localized(const std::vector<FixedPoint>& points, const Rational& q_max, bool strict) {
  std::vector<std::pair<QYSeries<LaurentT>, LaurentT>> terms;
  for (const auto& p : points) {
    terms.emplace_back(sector_bundle_character(p.lines, q_max), tangent_denominator(p.lines));
  }
  return localize(terms, q_max, strict);
}

namespace {

struct Task {
  std::size_t cls;
  std::size_t comp;
  int h;
};

std::vector<Task> tasks_for(const OrbifoldInput& input, std::size_t class_index) {
  std::vector<Task> out;
  const auto& cls = input.classes.at(class_index);
  const auto cent = input.group.centralizer(cls.rep);
  for (std::size_t a = 0; a < cls.components.size(); ++a) {
    const auto& c = cls.components[a];
    for (int h : cent) {
      if (!c.localization.count(h)) {
        throw InputError("classes[rep=" + std::to_string(cls.rep) + "].components[" + c.name +
                         "].localization: missing data for element " + std::to_string(h));
      }
      out.push_back(Task{class_index, a, h});
    }
  }
  return out;
}

std::string task_label(const OrbifoldInput& input, const Task& t) {
  const auto& c = input.classes[t.cls].components[t.comp];
  return "class " + std::to_string(input.classes[t.cls].rep) + "/" + c.name + "/h=" + std::to_string(t.h);
}

void check_integral(const QYSeries<Cyclotomic>& s, const std::string& label, GenusDiagnostics* diag) {
  if (!diag) return;
  for (const auto& [e, c] : s.terms()) {
    if (!c.is_rational() || !c.to_rational().is_integer()) {
      diag->non_integral.push_back(label + " " + term_label(e) + ": " + c.str());
    }
  }
}

QYSeries<Rational> rational_or_fail(const QYSeries<Cyclotomic>& s, const char* what) {
  for (const auto& [e, c] : s.terms()) {
    if (!c.is_rational()) throw InvariantFailure(std::string(what) + ": coefficient " + term_label(e) + " is not rational");
  }
  return to_rational_series(s);
}

}  // namespace

QYSeries<Cyclotomic> sector_contribution(const OrbifoldInput& input, std::size_t class_index, const Rational& q_max,
                                         const GenusOptions& options, GenusDiagnostics* diag) {
  const auto tasks = tasks_for(input, class_index);
  const auto results = parallel_map<LefschetzResult>(tasks.size(), options.jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    return lefschetz_localized(input.classes[t.cls].components[t.comp].localization.at(t.h), q_max, options.strict);
  });
  const auto& cls = input.classes[class_index];
  const Cyclotomic weight(Rational(1, static_cast<long>(input.group.centralizer(cls.rep).size())));
  QYSeries<Cyclotomic> out(q_max);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& r = results[i];
    if (diag && !r.t_independent) diag->t_dependent.push_back(task_label(input, tasks[i]) + " " + *r.first_t_dependent);
    const Rational iota = fermionic_shift(cls.components[tasks[i].comp]);
    out += r.value.shifted(weight, Rational(0), iota);
  }
  return out;
}

QYSeries<Rational> ell_orb(const OrbifoldInput& input, const Rational& q_max, const GenusOptions& options,
                           GenusDiagnostics* diag) {
  QYSeries<Cyclotomic> total(q_max);
  for (std::size_t k = 0; k < input.classes.size(); ++k) {
    const auto part = sector_contribution(input, k, q_max, options, diag);
    check_integral(part, "class " + std::to_string(input.classes[k].rep), diag);
    total += part;
  }
  const Rational half(input.dim, 2);
  return rational_or_fail(total.shifted(Cyclotomic(1), Rational(0), -half), "ell_orb");
}

QYSeries<Rational> ell_orb_via_traces(const OrbifoldInput& input, const Rational& q_max, const GenusOptions& options,
                                      GenusDiagnostics* diag) {
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < input.classes.size(); ++k) {
    const auto t = tasks_for(input, k);
    tasks.insert(tasks.end(), t.begin(), t.end());
  }
  const auto results = parallel_map<LefschetzResult>(tasks.size(), options.jobs, [&](std::size_t i) {
    const auto& pts = input.classes[tasks[i].cls].components[tasks[i].comp].localization.at(tasks[i].h);
    std::vector<std::pair<QYSeries<LaurentT>, LaurentT>> terms;
    for (const auto& p : pts) terms.emplace_back(fock_trace_character(p.lines, q_max), tangent_denominator(p.lines));
    return localize(terms, q_max, options.strict);
  });

  // Supertrace on the invariant part of each component: average over C(g) first.
  std::map<std::pair<std::size_t, std::size_t>, QYSeries<Cyclotomic>> per_component;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto key = std::make_pair(tasks[i].cls, tasks[i].comp);
    auto it = per_component.try_emplace(key, QYSeries<Cyclotomic>(q_max)).first;
    it->second += results[i].value;
  }
  QYSeries<Cyclotomic> total(q_max);
  for (const auto& [key, sum] : per_component) {
    const auto& cls = input.classes[key.first];
    const long c = static_cast<long>(input.group.centralizer(cls.rep).size());
    const auto avg = sum.shifted(Cyclotomic(Rational(1, c)), Rational(0), Rational(0));
    check_integral(avg, "component " + cls.components[key.second].name, diag);
    total += avg;
  }
  const Rational half(input.dim, 2);
  return rational_or_fail(total.shifted(Cyclotomic(1), Rational(0), -half), "ell_orb_via_traces");
}

std::optional<std::string> first_series_difference(const QYSeries<Rational>& a, const QYSeries<Rational>& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
      return term_label(ia->first) + ": " + ia->second.str() + " vs 0";
    }
    if (ia == a.terms().end() || ib->first < ia->first) return term_label(ib->first) + ": 0 vs " + ib->second.str();
    if (ia->second != ib->second) return term_label(ia->first) + ": " + ia->second.str() + " vs " + ib->second.str();
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

}  // namespace cdr
