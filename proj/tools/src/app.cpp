#include "cdr/cli/app.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <random>

#include "cdr/brst.hpp"
#include "cdr/cli/input.hpp"
#include "cdr/errors.hpp"
#include "cdr/genus.hpp"
#include "cdr/suite.hpp"

namespace cdr::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Ctx {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
  bool json() const { return cfg.format == "json"; }
};

TwistData module_twist(const RunConfig& cfg) {
  if (cfg.n < 0) throw InputError("--n must be nonnegative");
  if (!cfg.twist) return TwistData::identity(cfg.n);
  // A bare "m/mg" with --n > 1 is not expanded; the list must be complete.
  TwistData t = TwistData::parse(*cfg.twist);
  if (t.n != cfg.n) {
    throw InputError("--twist lists " + std::to_string(t.n) + " exponents but --n is " + std::to_string(cfg.n));
  }
  return t;
}

Rational bound(const std::optional<std::string>& text, const char* flag, const char* fallback) {
  const Rational r = Rational::parse(text ? *text : fallback);
  if (r < Rational(0)) throw InputError(std::string(flag) + " must be nonnegative");
  return r;
}

ojson rows_json(const SuiteReport& r) {
  ojson rows = ojson::array();
  for (const auto& row : r.rows) {
    ojson j{{"relation", row.relation}, {"instances", row.instances}, {"vectors", row.vectors}, {"ok", row.ok}};
    if (row.failure) j["failure"] = *row.failure;
    rows.push_back(std::move(j));
  }
  return rows;
}

ojson series_obj(const QYSeries<Rational>& s) { return ojson::parse(series_json(s)); }

int ope_check(const Ctx& c) {
  const FockModule module(module_twist(c.cfg));
  const Rational w = bound(c.cfg.max_weight, "--max-weight", "2");
  SuiteReport report = relations_suite(module, w);
  for (auto& row : n2_bracket_suite(module, w).rows) report.rows.push_back(std::move(row));
  if (c.json()) {
    c.out << ojson{{"twist", module.twist().str()}, {"max_weight", w.str()}, {"checks", rows_json(report)},
                   {"verified", report.ok()}}.dump(2)
          << "\n";
  } else {
    c.out << "module: twist " << module.twist().str() << ", weights <= " << w.str() << "\n" << report.str();
    c.out << (report.ok() ? "all brackets verified" : "bracket failures found") << "\n";
  }
  return report.ok() ? kOk : kInvariantFailure;
}

int character(const Ctx& c) {
  const FockModule module(module_twist(c.cfg));
  const Rational q = bound(c.cfg.q_max, "--qmax", "2");
  const auto a = module.character(q);
  const auto b = module.product_character(q);
  const bool same = a == b;
  if (c.json()) {
    c.out << ojson{{"twist", module.twist().str()}, {"character", series_obj(a)}, {"product", series_obj(b)},
                   {"matches", same}}.dump(2)
          << "\n";
  } else {
    c.out << "character: " << series_text(a) << "\n";
    c.out << "matches product formula: " << (same ? "yes" : "no") << "\n";
    if (!same) c.out << "product:   " << series_text(b) << "\n";
  }
  return same ? kOk : kInvariantFailure;
}

int brst(const Ctx& c) {
  const FockModule module(module_twist(c.cfg));
  const Rational w = bound(c.cfg.max_weight, "--max-weight", "3/2");
  const auto report = brst_suite(module, w);
  const auto table = cohomology_table(module, w);
  if (c.json()) {
    ojson blocks = ojson::array();
    for (const auto& [k, e] : table.blocks) {
      blocks.push_back(ojson{{"weight", table.weight(k).str()}, {"charge", table.charge(k).str()}, {"dim", e.dim},
                             {"kernel", e.kernel}, {"image", e.image_in}, {"cohomology", e.cohomology()}});
    }
    c.out << ojson{{"twist", module.twist().str()}, {"max_weight", w.str()}, {"checks", rows_json(report)},
                   {"cohomology", blocks}, {"verified", report.ok()}}.dump(2)
          << "\n";
  } else {
    c.out << "module: twist " << module.twist().str() << ", weights <= " << w.str() << "\n" << report.str();
    c.out << table.str();
  }
  return report.ok() ? kOk : kInvariantFailure;
}

OrbifoldInput load(const Ctx& c) {
  if (!c.cfg.input) throw InputError("--input is required");
  OrbifoldInput in = parse_orbifold_input(*c.cfg.input);
  for (const auto& w : in.warnings) c.err << "warning: " << w << "\n";
  return in;
}

int cr(const Ctx& c) {
  const OrbifoldInput in = load(c);
  const auto p = cr_poincare(in);
  if (c.json()) {
    ojson terms = ojson::array();
    for (const auto& [e, k] : p) terms.push_back(ojson{{"degree", e.str()}, {"dim", k.str()}});
    ojson sectors = ojson::array();
    for (const auto& cls : in.classes) {
      for (const auto& comp : cls.components) {
        ojson dims = ojson::array();
        for (long d : invariant_dims(comp, in.group)) dims.push_back(d);
        sectors.push_back(ojson{{"rep", cls.rep}, {"component", comp.name}, {"iota", fermionic_shift(comp).str()},
                                {"invariant_dims", dims}});
      }
    }
    c.out << ojson{{"sectors", sectors}, {"poincare", terms}, {"text", polynomial_text(p)}}.dump(2) << "\n";
  } else {
    for (const auto& cls : in.classes) {
      for (const auto& comp : cls.components) {
        c.out << "sector " << in.group.label(cls.rep) << " / " << comp.name << ": iota = " << fermionic_shift(comp).str()
              << ", invariant dims =";
        for (long d : invariant_dims(comp, in.group)) c.out << " " << d;
        c.out << "\n";
      }
    }
    c.out << "P(t) = " << polynomial_text(p) << "\n";
  }
  return kOk;
}

int genus(const Ctx& c) {
  const OrbifoldInput in = load(c);
  const Rational q = bound(c.cfg.q_max, "--qmax", "1");
  GenusOptions opt{c.cfg.strict, c.cfg.jobs};
  GenusDiagnostics d1, d2;
  const auto a = ell_orb(in, q, opt, &d1);
  const auto b = ell_orb_via_traces(in, q, opt, &d2);
  const auto diff = first_series_difference(a, b);
  const bool integral = d1.integral() && d2.integral();
  if (c.json()) {
    ojson j{{"qmax", q.str()}, {"ell_orb", series_obj(a)}, {"ell_orb_via_traces", series_obj(b)},
            {"paths_agree", !diff.has_value()}, {"integral", integral},
            {"torus_independent", d1.t_independent()}};
    if (diff) j["first_difference"] = *diff;
    j["t_dependent"] = d1.t_dependent;
    j["non_integral"] = d1.non_integral;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << "ell_orb:            " << series_text(a) << "\n";
    c.out << "ell_orb_via_traces: " << series_text(b) << "\n";
    c.out << "paths agree: " << (diff ? "no, first difference at " + *diff : "yes") << "\n";
    c.out << "integral averages: " << (integral ? "yes" : "no") << "\n";
    c.out << "torus-independent localization: "
          << (d1.t_independent() ? "yes" : "no (" + std::to_string(d1.t_dependent.size()) +
                                               " sums depend on t; values taken at t = 1)")
          << "\n";
    for (const auto& s : d1.t_dependent) c.out << "  t-dependent: " << s << "\n";
  }
  return (!diff && integral) ? kOk : kInvariantFailure;
}

int selftest(const Ctx& c) {
  struct Item {
    std::string name;
    SuiteReport report;
  };
  std::vector<Item> items;
  auto add = [&](const std::string& name, SuiteReport r) { items.push_back({name, std::move(r)}); };

  for (const char* t : {"0/1", "1/2", "1/3", "0,0/1", "0,1/2"}) {
    const FockModule m(TwistData::parse(t));
    const bool small = m.n() == 1;
    add(std::string("relations ") + t, relations_suite(m, Rational(small ? 2 : 1)));
    add(std::string("n2 ") + t, n2_bracket_suite(m, Rational(1), small ? 2 : 1));
    add(std::string("spectrum ") + t, spectrum_suite(m, Rational(2)));
    add(std::string("character ") + t, character_suite(m, Rational(2)));
    add(std::string("brst ") + t, brst_suite(m, Rational(3, 2)));
    add(std::string("vector fields ") + t, vector_field_suite(m, Rational(1), small ? 2 : 1));
  }
  // Seeded sample of further twists.
  std::mt19937_64 rng(c.cfg.seed);
  for (int k = 0; k < 4; ++k) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const int order = 1 + static_cast<int>(rng() % 4);
    TwistData t{n, order, {}};
    for (int i = 0; i < n; ++i) t.exponents.push_back(static_cast<int>(rng() % static_cast<unsigned>(order)));
    const FockModule m(t);
    add("character " + t.str(), character_suite(m, Rational(3, 2)));
    add("brst " + t.str(), brst_suite(m, Rational(1)));
  }

  int status = kOk;
  if (c.cfg.input) {
    const OrbifoldInput in = load(c);
    GenusDiagnostics d;
    const Rational q = bound(c.cfg.q_max, "--qmax", "1");
    const auto a = ell_orb(in, q, {c.cfg.strict, c.cfg.jobs}, &d);
    const auto b = ell_orb_via_traces(in, q, {c.cfg.strict, c.cfg.jobs}, &d);
    const auto diff = first_series_difference(a, b);
    add("genus", SuiteReport{{CheckRow("ell_orb = ell_orb_via_traces", 1, a.size(), !diff, diff),
                              CheckRow("integral averages", 1, a.size(), d.integral(),
                                       d.integral() ? std::nullopt : std::optional(d.non_integral.front()))}});
  }

  ojson all = ojson::array();
  for (const auto& it : items) {
    if (!it.report.ok()) status = kInvariantFailure;
    if (c.json()) {
      all.push_back(ojson{{"suite", it.name}, {"ok", it.report.ok()}, {"checks", rows_json(it.report)}});
    } else {
      c.out << "[" << (it.report.ok() ? "ok" : "FAIL") << "] " << it.name << "\n";
      if (!it.report.ok()) c.out << it.report.str();
    }
  }
  if (c.json()) {
    c.out << ojson{{"seed", c.cfg.seed}, {"suites", all}, {"ok", status == kOk}}.dump(2) << "\n";
  } else {
    c.out << (status == kOk ? "selftest passed" : "selftest FAILED") << "\n";
  }
  return status;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Ctx c{config, out, err};
  try {
    if (config.format != "text" && config.format != "json") throw InputError("--format must be text or json");
    if (config.jobs < 1) throw InputError("--jobs must be positive");
    if (config.subcommand == "ope-check") return ope_check(c);
    if (config.subcommand == "character") return character(c);
    if (config.subcommand == "brst") return brst(c);
    if (config.subcommand == "cr") return cr(c);
    if (config.subcommand == "genus") return genus(c);
    if (config.subcommand == "selftest") return selftest(c);
    throw InputError("unknown subcommand \"" + config.subcommand + "\"");
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const TruncationError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kInvariantFailure;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for the chiral de Rham complex and orbifold elliptic genera", "cdr"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string twist, weight, qmax, input;

  auto module_opts = [&](CLI::App* s) {
    s->add_option("--n", cfg.n, "number of coordinate directions")->check(CLI::NonNegativeNumber);
    s->add_option("--twist", twist, "eigenvalue exponents m1,...,mN/mg");
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--seed", cfg.seed, "seed for sampled checks");
    s->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* ope = app.add_subcommand("ope-check", "verify the mode relations and the N=2 bracket table");
  module_opts(ope);
  ope->add_option("--max-weight", weight, "weight bound a/b");
  auto* ch = app.add_subcommand("character", "Fock character against the product formula");
  module_opts(ch);
  ch->add_option("--qmax", qmax, "q bound a/b");
  auto* br = app.add_subcommand("brst", "d^2, homotopy identity and cohomology table");
  module_opts(br);
  br->add_option("--max-weight", weight, "weight bound a/b");
  auto* crs = app.add_subcommand("cr", "Chen-Ruan Poincare polynomial");
  crs->add_option("--input", input, "orbifold JSON")->required();
  auto* gen = app.add_subcommand("genus", "orbifold elliptic genus by two routes");
  gen->add_option("--input", input, "orbifold JSON")->required();
  gen->add_option("--qmax", qmax, "q bound a/b");
  gen->add_flag("--strict-torus", cfg.strict, "fail when a localization sum depends on t");
  auto* st = app.add_subcommand("selftest", "run the invariant suite");
  st->add_option("--input", input, "optional orbifold JSON");
  st->add_option("--qmax", qmax, "q bound for the genus check");
  for (auto* s : {ope, ch, br, crs, gen, st}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (!twist.empty()) {
    cfg.twist = twist;
    if (!app.get_subcommands().front()->get_option("--n")->count()) {
      cfg.n = static_cast<int>(std::count(twist.begin(), twist.end(), ',')) + 1;
    }
  }
  if (!weight.empty()) cfg.max_weight = weight;
  if (!qmax.empty()) cfg.q_max = qmax;
  if (!input.empty()) cfg.input = input;
  return run(cfg, out, err);
}

}  // namespace cdr::cli
