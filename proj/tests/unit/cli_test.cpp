#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "cdr/cli/app.hpp"
#include "cdr/cli/input.hpp"
#include "cdr/errors.hpp"

using namespace cdr;
using cli::RunConfig;

namespace {

std::string data(const std::string& name) { return std::string(CDR_DATA_DIR) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = cli::run(cfg, out, err);
  return {code, out.str(), err.str()};
}

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "cdr");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string error_path(const std::string& json) {
  try {
    cli::parse_orbifold_json(json);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Cli, OpeCheckAndCharacter) {
  RunConfig c;
  c.subcommand = "ope-check";
  c.twist = "1/2";
  c.max_weight = "1";
  const auto r = run(c);
  EXPECT_EQ(r.code, cli::kOk) << r.out << r.err;
  EXPECT_NE(r.out.find("all brackets verified"), std::string::npos);

  c.subcommand = "character";
  c.q_max = "1";
  const auto ch = run(c);
  EXPECT_EQ(ch.code, cli::kOk);
  EXPECT_NE(ch.out.find("matches product formula: yes"), std::string::npos);
}

TEST(Cli, BrstJson) {
  const auto r = run_args({"brst", "--twist", "0/1", "--max-weight", "1", "--format", "json"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.front(), '{');
}

TEST(Cli, GenusAndCr) {
  RunConfig c;
  c.subcommand = "genus";
  c.input = data("p1_z2.json");
  const auto g = run(c);
  EXPECT_EQ(g.code, cli::kOk) << g.err;
  EXPECT_NE(g.out.find("paths agree: yes"), std::string::npos);
  c.strict = true;
  EXPECT_EQ(run(c).code, cli::kInvariantFailure);

  c = RunConfig{};
  c.subcommand = "cr";
  c.input = data("p1_z2.json");
  const auto cr = run(c);
  EXPECT_NE(cr.out.find("P(t) = 1 + 2*t + t^2"), std::string::npos);
}

TEST(Cli, InputErrors) {
  RunConfig c;
  c.subcommand = "cr";
  c.input = data("no_such_file.json");
  EXPECT_EQ(run(c).code, cli::kInputError);

  c.subcommand = "ope-check";
  c.twist = "1/0";
  EXPECT_EQ(run(c).code, cli::kInputError);
  c.twist = "1/2";
  c.max_weight = "x";
  EXPECT_EQ(run(c).code, cli::kInputError);
  EXPECT_EQ(run_args({"brst", "--twist", "1/2", "--n", "2"}).code, cli::kInputError);
  EXPECT_NE(run_args({"bogus"}).code, cli::kOk);
}

TEST(Cli, JsonErrorPaths) {
  EXPECT_NE(error_path("{").find("JSON"), std::string::npos);
  const std::string base = R"({"dim": 1, "group": {"table": [[0]]}, "classes": [{"rep": 0, "components": [
      {"name": "X", "mg": MG, "exponents": [0], "cohomology": {"characters": {"0": [1, 0, 1]}}}]}]})";
  auto with = [&](const std::string& mg) {
    std::string s = base;
    s.replace(s.find("MG"), 2, mg);
    return s;
  };
  EXPECT_EQ(error_path(with("1")), "");
  EXPECT_NE(error_path(with("\"a\"")).find("$.classes[0].components[0].mg"), std::string::npos);
  EXPECT_NE(error_path(R"({"dim": 1, "group": {"table": [[0, 1], [0, 1]]}, "classes": []})").find("group"),
            std::string::npos);
}

TEST(Cli, EmptyComponentsWarn) {
  const auto in = cli::parse_orbifold_json(
      R"({"dim": 0, "group": {"table": [[0, 1], [1, 0]]}, "classes": [
          {"rep": 0, "components": [{"name": "pt", "mg": 1, "exponents": [],
             "cohomology": {"characters": {"0": [1], "1": [1]}}}]},
          {"rep": 1, "components": []}]})");
  EXPECT_EQ(in.warnings.size(), 1u);
}

TEST(Cli, SelftestIsDeterministic) {
  RunConfig c;
  c.subcommand = "selftest";
  c.seed = 7;
  c.max_weight = "1";
  const auto a = run(c);
  const auto b = run(c);
  EXPECT_EQ(a.code, cli::kOk) << a.out;
  EXPECT_EQ(a.out, b.out);
}
