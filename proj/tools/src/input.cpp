#include "cdr/cli/input.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

Rational as_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(path, "expected a rational \"a/b\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

// A trace: an integer, "a/b", or {"roots": ["c/d", ...]} (sum of exp(2 pi i c/d)).
Cyclotomic as_trace(const json& v, const std::string& path) {
  if (v.is_object()) {
    const auto& roots = field(v, "roots", path);
    if (!roots.is_array()) fail(path + ".roots", "expected an array");
    Cyclotomic s;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      s += Cyclotomic::root_of_unity(as_rational(roots[i], path + ".roots[" + std::to_string(i) + "]"));
    }
    return s;
  }
  return Cyclotomic(as_rational(v, path));
}

int element_key(const std::string& key, const GroupData& g, const std::string& path) {
  int id = -1;
  try {
    std::size_t used = 0;
    id = std::stoi(key, &used);
    if (used != key.size()) id = -1;
  } catch (const std::exception&) {
    id = -1;
  }
  if (!g.contains(id)) fail(path, "\"" + key + "\" is not an element id");
  return id;
}

std::vector<int> int_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(static_cast<int>(as_int(v[i], path + "[" + std::to_string(i) + "]")));
  return out;
}

GroupData parse_group(const json& g, const std::string& path) {
  if (!g.is_object()) fail(path, "expected an object");
  std::vector<std::string> labels;
  if (g.contains("labels")) {
    if (!g["labels"].is_array()) fail(path + ".labels", "expected an array of strings");
    for (const auto& l : g["labels"]) {
      if (!l.is_string()) fail(path + ".labels", "expected an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  try {
    if (g.contains("table")) {
      const auto& t = g["table"];
      if (!t.is_array()) fail(path + ".table", "expected an array of rows");
      std::vector<std::vector<int>> table;
      for (std::size_t i = 0; i < t.size(); ++i) table.push_back(int_list(t[i], path + ".table[" + std::to_string(i) + "]"));
      if (g.contains("order") && as_int(g["order"], path + ".order") != static_cast<long>(table.size())) {
        fail(path + ".order", "does not match the table size");
      }
      return GroupData::from_table(std::move(table), std::move(labels));
    }
    if (g.contains("permutations")) {
      const auto& p = g["permutations"];
      if (!p.is_array()) fail(path + ".permutations", "expected an array of permutations");
      std::vector<std::vector<int>> perms;
      for (std::size_t i = 0; i < p.size(); ++i) perms.push_back(int_list(p[i], path + ".permutations[" + std::to_string(i) + "]"));
      GroupData out = GroupData::from_permutations(perms);
      if (g.contains("order") && as_int(g["order"], path + ".order") != out.order()) {
        fail(path + ".order", "does not match the generated group of order " + std::to_string(out.order()));
      }
      return out;
    }
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind("$", 0) == 0) throw;
    fail(path, what);
  }
  fail(path, "expected \"table\" or \"permutations\"");
}

LineDatum parse_line(const json& v, const std::string& path) {
  LineDatum l;
  l.lambda = as_rational(field(v, "lambda", path), path + ".lambda");
  l.zeta = as_rational(field(v, "zeta", path), path + ".zeta");
  l.w = as_int(field(v, "w", path), path + ".w");
  const auto& t = field(v, "tangent", path);
  if (!t.is_boolean()) fail(path + ".tangent", "expected true or false");
  l.tangent = t.get<bool>();
  return l;
}

SectorComponent parse_component(const json& v, int rep, int dim, const GroupData& g, const std::string& path) {
  SectorComponent c;
  c.rep = rep;
  const auto& name = field(v, "name", path);
  if (!name.is_string()) fail(path + ".name", "expected a string");
  c.name = name.get<std::string>();
  c.twist.n = dim;
  c.twist.order = static_cast<int>(as_int(field(v, "mg", path), path + ".mg"));
  c.twist.exponents = int_list(field(v, "exponents", path), path + ".exponents");

  const std::string cpath = path + ".cohomology";
  const auto& coh = field(v, "cohomology", path);
  if (!coh.is_object()) fail(cpath, "expected an object");
  if (coh.contains("characters")) {
    const auto& ch = coh["characters"];
    if (!ch.is_object()) fail(cpath + ".characters", "expected an object keyed by element id");
    for (const auto& [key, traces] : ch.items()) {
      const std::string tpath = cpath + ".characters." + key;
      const int h = element_key(key, g, tpath);
      if (!traces.is_array()) fail(tpath, "expected an array of traces");
      std::vector<Cyclotomic> list;
      for (std::size_t k = 0; k < traces.size(); ++k) list.push_back(as_trace(traces[k], tpath + "[" + std::to_string(k) + "]"));
      c.characters.emplace(h, std::move(list));
    }
  } else if (coh.contains("invariant_dims")) {
    std::vector<long> dims;
    for (int d : int_list(coh["invariant_dims"], cpath + ".invariant_dims")) dims.push_back(d);
    c.invariant_dims = std::move(dims);
  } else {
    fail(cpath, "expected \"characters\" or \"invariant_dims\"");
  }

  if (v.contains("localization")) {
    const std::string lpath = path + ".localization";
    const auto& loc = v["localization"];
    if (!loc.is_object()) fail(lpath, "expected an object keyed by element id");
    for (const auto& [key, points] : loc.items()) {
      const std::string hpath = lpath + "." + key;
      const int h = element_key(key, g, hpath);
      if (!points.is_array()) fail(hpath, "expected an array of fixed points");
      std::vector<FixedPoint> pts;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string ppath = hpath + "[" + std::to_string(i) + "]";
        FixedPoint p;
        const auto& pn = field(points[i], "point", ppath);
        if (!pn.is_string()) fail(ppath + ".point", "expected a string");
        p.name = pn.get<std::string>();
        const auto& lines = field(points[i], "lines", ppath);
        if (!lines.is_array()) fail(ppath + ".lines", "expected an array");
        for (std::size_t k = 0; k < lines.size(); ++k) p.lines.push_back(parse_line(lines[k], ppath + ".lines[" + std::to_string(k) + "]"));
        pts.push_back(std::move(p));
      }
      c.localization.emplace(h, std::move(pts));
    }
  }
  return c;
}

}  // namespace

OrbifoldInput parse_orbifold_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": malformed JSON: " + e.what());
  }
  OrbifoldInput in;
  in.dim = static_cast<int>(as_int(field(doc, "dim", "$"), "$.dim"));
  if (in.dim < 0) fail("$.dim", "must be nonnegative");
  in.group = parse_group(field(doc, "group", "$"), "$.group");

  const auto& classes = field(doc, "classes", "$");
  if (!classes.is_array()) fail("$.classes", "expected an array");
  bool any_localization = false;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string path = "$.classes[" + std::to_string(i) + "]";
    SectorClass cls;
    cls.rep = static_cast<int>(as_int(field(classes[i], "rep", path), path + ".rep"));
    if (!in.group.contains(cls.rep)) fail(path + ".rep", std::to_string(cls.rep) + " is not an element id");
    const auto& comps = field(classes[i], "components", path);
    if (!comps.is_array()) fail(path + ".components", "expected an array");
    for (std::size_t k = 0; k < comps.size(); ++k) {
      cls.components.push_back(
          parse_component(comps[k], cls.rep, in.dim, in.group, path + ".components[" + std::to_string(k) + "]"));
      any_localization = any_localization || !cls.components.back().localization.empty();
    }
    in.classes.push_back(std::move(cls));
  }
  validate(in);

  // Localization is optional, but when present it must cover every (component, h).
  if (any_localization) {
    for (std::size_t i = 0; i < in.classes.size(); ++i) {
      for (const auto& c : in.classes[i].components) {
        for (int h : in.group.centralizer(c.rep)) {
          if (!c.localization.count(h)) {
            throw InputError("classes[rep=" + std::to_string(c.rep) + "].components[" + c.name +
                             "].localization: missing data for element " + std::to_string(h));
          }
        }
      }
    }
  }
  return in;
}

OrbifoldInput parse_orbifold_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_orbifold_json(ss.str(), path);
}

}  // namespace cdr::cli
