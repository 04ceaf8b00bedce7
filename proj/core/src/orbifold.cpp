#include "cdr/orbifold.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

long OrbifoldInput::cyclotomic_order() const {
  long r = 1;
  for (int g = 0; g < group.order(); ++g) r = std::lcm(r, static_cast<long>(group.element_order(g)));
  for (const auto& cls : classes) {
    for (const auto& c : cls.components) {
      for (const auto& [h, pts] : c.localization) {
        for (const auto& p : pts) {
          for (const auto& l : p.lines) r = std::lcm(r, std::lcm(l.zeta.den_long(), l.lambda.den_long()));
        }
      }
      for (const auto& [h, tr] : c.characters) {
        for (const auto& x : tr) r = std::lcm(r, x.order());
      }
    }
  }
  return r;
}

namespace {

std::string where(const SectorClass& cls, const SectorComponent& c) {
  return "classes[rep=" + std::to_string(cls.rep) + "].components[" + c.name + "]";
}

}  // namespace

void validate(OrbifoldInput& input) {
  const GroupData& G = input.group;
  if (input.dim < 0) throw InputError("dim: must be nonnegative");
  std::vector<int> seen(G.conjugacy_classes().size(), 0);
  for (const auto& cls : input.classes) {
    if (!G.contains(cls.rep)) throw InputError("classes: representative " + std::to_string(cls.rep) + " is not an element");
    if (seen[static_cast<std::size_t>(G.class_of(cls.rep))]++) {
      throw InputError("classes: conjugacy class of element " + std::to_string(cls.rep) + " listed twice");
    }
    const int mg = G.element_order(cls.rep);
    if (cls.components.empty()) {
      input.warnings.push_back("class of element " + std::to_string(cls.rep) + " has no components; it contributes 0");
    }
    const auto cent = G.centralizer(cls.rep);
    for (const auto& c : cls.components) {
      const std::string at = where(cls, c);
      if (c.rep != cls.rep) throw InputError(at + ": component representative differs from its class");
      if (c.twist.n != input.dim) throw InputError(at + ".exponents: expected " + std::to_string(input.dim) + " entries");
      if (c.twist.order != mg) {
        throw InputError(at + ".mg: " + std::to_string(c.twist.order) + " is not the order " + std::to_string(mg) +
                         " of the representative");
      }
      try {
        c.twist.validate();
      } catch (const InputError& e) {
        throw InputError(at + ".exponents: " + e.what());
      }
      if (cls.rep == G.identity() && c.twist.fixed_directions() != input.dim) {
        throw InputError(at + ": the identity sector must have all-zero exponents");
      }
      if (!c.invariant_dims) {
        if (c.characters.empty()) throw InputError(at + ".cohomology: no characters or invariant_dims");
        std::size_t degrees = c.characters.begin()->second.size();
        for (const auto& [h, tr] : c.characters) {
          if (!std::binary_search(cent.begin(), cent.end(), h)) {
            throw InputError(at + ".cohomology.characters." + std::to_string(h) + ": element not in the centralizer");
          }
          if (tr.size() != degrees) throw InputError(at + ".cohomology.characters: degree lists differ in length");
        }
        for (int h : cent) {
          if (!c.characters.count(h)) {
            throw InputError(at + ".cohomology.characters: missing trace data for element " + std::to_string(h));
          }
        }
        for (std::size_t k = 0; k < degrees; ++k) {
          const Cyclotomic& d = c.characters.at(G.identity())[k];
          if (!d.is_rational() || !d.to_rational().is_integer() || d.to_rational().sign() < 0) {
            throw InputError(at + ".cohomology.characters: trace of the identity on H^" + std::to_string(k) +
                             " is not a dimension");
          }
        }
      } else {
        for (long d : *c.invariant_dims) {
          if (d < 0) throw InputError(at + ".cohomology.invariant_dims: negative dimension");
        }
      }
      for (const auto& [h, pts] : c.localization) {
        if (!std::binary_search(cent.begin(), cent.end(), h)) {
          throw InputError(at + ".localization." + std::to_string(h) + ": element not in the centralizer");
        }
        for (const auto& p : pts) {
          const std::string pat = at + ".localization." + std::to_string(h) + "[" + p.name + "]";
          if (static_cast<int>(p.lines.size()) != input.dim) {
            throw InputError(pat + ": expected " + std::to_string(input.dim) + " lines");
          }
          std::vector<Rational> lam, expected;
          for (const auto& l : p.lines) {
            if (l.lambda < Rational(0) || l.lambda >= Rational(1)) throw InputError(pat + ": lambda outside [0,1)");
            if (l.tangent && !l.lambda.is_zero()) throw InputError(pat + ": tangent line with nonzero lambda");
            if (l.tangent && l.zeta.is_integer() && l.w == 0) {
              throw InputError(pat + ": tangent line fixed by h and the torus; point is not isolated");
            }
            lam.push_back(l.lambda);
          }
          for (int m : c.twist.exponents) expected.push_back(Rational(m, c.twist.order));
          std::sort(lam.begin(), lam.end());
          std::sort(expected.begin(), expected.end());
          if (lam != expected) throw InputError(pat + ": lambdas do not match the component exponents");
        }
      }
    }
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw InputError("classes: conjugacy class of element " + std::to_string(G.conjugacy_classes()[k].rep) +
                       " is missing");
    }
  }
  const auto& id_cls = *std::find_if(input.classes.begin(), input.classes.end(),
                                     [&G](const SectorClass& c) { return c.rep == G.identity(); });
  if (id_cls.components.size() != 1) throw InputError("classes: the identity class needs exactly one component");
  // Class order follows the group's class list.
  std::sort(input.classes.begin(), input.classes.end(),
            [&G](const SectorClass& a, const SectorClass& b) { return G.class_of(a.rep) < G.class_of(b.rep); });
}

Rational fermionic_shift(const SectorComponent& c) { return c.twist.shift(); }

std::vector<long> invariant_dims(const SectorComponent& c, const GroupData& group) {
  if (c.invariant_dims) return *c.invariant_dims;
  const auto cent = group.centralizer(c.rep);
  const std::size_t degrees = c.characters.empty() ? 0 : c.characters.begin()->second.size();
  std::vector<long> out;
  for (std::size_t k = 0; k < degrees; ++k) {
    Cyclotomic sum;
    for (int h : cent) {
      auto it = c.characters.find(h);
      if (it == c.characters.end()) throw InputError(c.name + ": missing trace data for element " + std::to_string(h));
      sum += it->second.at(k);
    }
    const Cyclotomic avg = sum * Cyclotomic(Rational(1, static_cast<long>(cent.size())));
    if (!avg.is_rational() || !avg.to_rational().is_integer() || avg.to_rational().sign() < 0) {
      throw InputError(c.name + ": averaged trace on H^" + std::to_string(k) + " is " + avg.str() +
                       ", not a dimension (malformed character data)");
    }
    out.push_back(avg.to_rational().to_long());
  }
  return out;
}

std::string polynomial_text(const TPolynomial& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p) {
    if (c.is_zero()) continue;
    const bool neg = c.sign() < 0;
    const Rational a = neg ? -c : c;
    std::string mono;
    if (!e.is_zero()) mono = e == Rational(1) ? "t" : (e.is_integer() ? "t^" + e.str() : "t^(" + e.str() + ")");
    std::string term = mono.empty() ? a.str() : (a == Rational(1) ? mono : a.str() + "*" + mono);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + ")) << term;
    first = false;
  }
  return first ? "0" : os.str();
}

TPolynomial cr_poincare(const OrbifoldInput& input) {
  TPolynomial p;
  for (const auto& cls : input.classes) {
    for (const auto& c : cls.components) {
      const auto dims = invariant_dims(c, input.group);
      const Rational s = Rational(2) * fermionic_shift(c);
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (dims[k] == 0) continue;
        p[Rational(static_cast<long>(k)) + s] += Rational(dims[k]);
      }
    }
  }
  return p;
}

SectorComponent conjugate_sector(const SectorComponent& c, int h, const GroupData& group) {
  if (!group.contains(h)) throw DomainError("conjugate_sector: " + std::to_string(h) + " is not an element");
  SectorComponent out = c;
  out.rep = group.conjugate(h, c.rep);
  out.characters.clear();
  for (const auto& [k, tr] : c.characters) out.characters.emplace(group.conjugate(h, k), tr);
  out.localization.clear();
  for (const auto& [k, pts] : c.localization) out.localization.emplace(group.conjugate(h, k), pts);
  return out;
}

OrbifoldInput conjugate_class(const OrbifoldInput& input, std::size_t class_index, int h) {
  OrbifoldInput out = input;
  auto& cls = out.classes.at(class_index);
  cls.rep = input.group.conjugate(h, cls.rep);
  for (auto& c : cls.components) c = conjugate_sector(c, h, input.group);
  return out;
}

}  // namespace cdr
