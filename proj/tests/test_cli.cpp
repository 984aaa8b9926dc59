#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "twistlab/run.hpp"

using namespace twistlab;
namespace fs = std::filesystem;

namespace {

struct Output {
  int code = -1;
  std::string out;
};

Output cli(const std::string& args) {
  const std::string cmd = std::string(TWISTLAB_CLI) + " " + args + " 2>/dev/null";
  Output r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunConfig from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "twistlab_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST(Config, KeysAndComments) {
  const RunConfig c = from_text(
      "# a comment\n"
      "algebra = so5\n"
      "chain = BJEJ   # trailing\n"
      "suite = hopf, rmatrix\n"
      "param = h\n"
      "samples = (2,3); (1/2,5/3)\n"
      "sites = 2\n"
      "timing = false\n");
  EXPECT_EQ(c.algebra, "so5");
  EXPECT_EQ(c.chain, "BJEJ");
  EXPECT_EQ(c.suites, (std::vector<std::string>{"hopf", "rmatrix"}));
  EXPECT_TRUE(c.h_mode);
  ASSERT_EQ(c.samples.size(), 2u);
  EXPECT_EQ(c.samples[1].second, ratio(5, 3));
  EXPECT_EQ(c.sites, 2u);
  EXPECT_FALSE(c.timing);
}

TEST(Config, ErrorsNameTheLine) {
  try {
    from_text("algebra = so5\n\nsites = -2\n");
    FAIL() << "expected a ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("test.cfg:3"), std::string::npos);
  }
  EXPECT_THROW(from_text("colour = red\n"), ParseError);
  EXPECT_THROW(from_text("chain\n"), ParseError);
  EXPECT_THROW(from_text("chain =\n"), ParseError);
  EXPECT_THROW(from_text("samples = (1,2,3)\n"), ParseError);
  EXPECT_THROW(from_text("samples = (1,x)\n"), ParseError);
  EXPECT_THROW(from_text("param = q\n"), ParseError);
  EXPECT_THROW(from_text("factor = twirl | a\n"), ParseError);
}

TEST(Config, Validation) {
  RunConfig c;
  c.chain = "so5:BJEJ";
  const RunConfig v = validate_config(c);
  EXPECT_EQ(v.algebra, "so5");
  EXPECT_EQ(v.suites.back(), "yangian");

  c = RunConfig{};
  c.algebra = "sl4";
  c.chain = "BJE_EJ";
  EXPECT_EQ(validate_config(c).chain, "sl4:BJE'EJ");
  EXPECT_EQ(validate_config(c).suites.size(), 4u);

  c.suites = {"yangian"};
  EXPECT_THROW(validate_config(c), ParseError);
  c.suites = {"nope"};
  EXPECT_THROW(validate_config(c), ParseError);

  c = RunConfig{};
  EXPECT_THROW(validate_config(c), ParseError);
  c.chain = "so5:EJ";
  c.algebra = "sl4";
  EXPECT_THROW(validate_config(c), ParseError);
  c = RunConfig{};
  c.algebra = "so5";
  c.chain = "E'EJ";
  EXPECT_THROW(validate_config(c), ParseError);
  c.chain = "custom";
  EXPECT_THROW(validate_config(c), ParseError);
  c.algebra = "g2";
  c.chain = "none";
  EXPECT_THROW(validate_config(c), ParseError);
}

TEST(Config, SuiteOrderIsCanonical) {
  RunConfig c;
  c.chain = "so5:EJ";
  c.suites = {"rmatrix", "hopf", "rmatrix"};
  EXPECT_EQ(validate_config(c).suites, (std::vector<std::string>{"hopf", "rmatrix"}));
}

TEST(Config, CustomChainMatchesPreset) {
  RunConfig c = from_text(
      "algebra = so5\n"
      "chain = custom\n"
      "factor = extension | -E_2 | E_1 | E_{1+2}\n"
      "factor = jordanian | H_{1+2} | E_{1+2}\n");
  c = validate_config(c);
  const AlgebraRep rep = build_so5();
  EXPECT_EQ(evaluate_twist(build_chain(c, rep), rep).twist, evaluate_twist(preset_chain("so5:EJ"), rep).twist);
}

TEST(Run, HopfSuiteSo5BJEJ) {
  RunConfig c;
  c.chain = "so5:BJEJ";
  c.suites = {"hopf"};
  const Report r = run(validate_config(c));
  EXPECT_EQ(r.exit_code(), kExitPass);
  EXPECT_EQ(r.unexpected(), 0u);
  std::size_t expected_fail = 0;
  for (const auto& e : r.entries) {
    if (e.check.expectation == Expectation::kFail) {
      ++expected_fail;
      EXPECT_EQ(e.check.status, Status::kFail) << e.check.name;
    } else {
      EXPECT_EQ(e.check.status, Status::kPass) << e.check.name;
    }
  }
  EXPECT_GE(expected_fail, 1u);
}

TEST(Run, CoproductSuiteHasSixPasses) {
  RunConfig c;
  c.chain = "so5:EJ";
  c.suites = {"coproducts"};
  c.data_dir = TWISTLAB_DATA_DIR;
  const Report r = run(validate_config(c));
  ASSERT_EQ(r.entries.size(), 6u);
  for (const auto& e : r.entries) EXPECT_EQ(e.check.status, Status::kPass) << e.check.name;
}

TEST(Run, JsonSummary) {
  RunConfig c;
  c.chain = "sl4:E'EJ";
  c.suites = {"rmatrix"};
  c.timing = false;
  const auto j = to_json(run(validate_config(c)));
  EXPECT_EQ(j["tool"], "twistlab");
  EXPECT_EQ(j["config"]["chain"], "sl4:E'EJ");
  EXPECT_FALSE(j.contains("timing"));
  EXPECT_EQ(j["summary"]["exit_code"], 0);
  for (const auto& check : j["checks"]) EXPECT_EQ(check["suite"], "rmatrix");
}

TEST(Dump, RoundTrip) {
  FieldMatrix m(2, 3);
  m(0, 1) = FieldElem(ratio(-3, 2), ratio(1, 7), Rational(0), Rational(5));
  m(1, 2) = FieldElem::i_sqrt2();
  std::ostringstream out;
  write_dump(out, m, "sample");
  std::istringstream in(out.str());
  EXPECT_EQ(read_dump(in), m);
  std::istringstream bad("dims 1 1\n3 0 1\n");
  EXPECT_THROW(read_dump(bad), ParseError);
}

TEST(Dump, Targets) {
  RunConfig c;
  c.algebra = "so5";
  c.chain = "none";
  c = validate_config(c);
  EXPECT_EQ(dump_matrix(c, "rmatrix"), FieldMatrix::identity(25));
  EXPECT_EQ(dump_matrix(c, "density"), build_P(5) - build_K(5) * FieldElem(ratio(2, 3)));
  EXPECT_THROW(dump_matrix(c, "coproduct", "E_9"), LookupError);
  EXPECT_THROW(dump_matrix(c, "coproduct"), LookupError);
  EXPECT_THROW(dump_matrix(c, "spectrum"), LookupError);
  c.algebra = "sl4";
  EXPECT_THROW(dump_matrix(c, "density"), LookupError);
}

TEST(Binary, CoproductDumpOfDeformedCarrier) {
  const Output o = cli("dump coproduct E_BO --algebra so5 --chain BJEJ");
  ASSERT_EQ(o.code, 0);
  std::istringstream in(o.out);
  const FieldMatrix got = read_dump(in);
  const AlgebraRep rep = build_so5();
  const FieldMatrix e = evaluate(deformed_generator(rep, carrier_config("so5")), rep.rho());
  const FieldMatrix id = FieldMatrix::identity(5);
  EXPECT_EQ(got, kron(e, id + e) + kron(id, e));
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(cli("run --algebra so5 --chain BJEJ --suite hopf").code, 0);
  EXPECT_EQ(cli("run --algebra sl4 --chain BJE_EJ --suite hopf").code, 0);
  EXPECT_EQ(cli("run --algebra so5 --chain nope").code, 2);
  EXPECT_EQ(cli("run --algebra so5").code, 2);
  EXPECT_EQ(cli("run --bogus-flag").code, 2);
  EXPECT_EQ(cli("dump coproduct E_9 --algebra so5 --chain EJ").code, 2);
  EXPECT_EQ(cli("run --algebra so5 --chain EJ --suite yangian --sites 4").code, 3);
  EXPECT_EQ(cli("run --config /nonexistent/twistlab.cfg").code, 2);
  EXPECT_EQ(cli("list").code, 0);
}

TEST(Binary, FailingCheckGivesExitOne) {
  // a custom chain that is not a twist
  const fs::path cfg = scratch("bad_chain.cfg");
  write_file(cfg, "algebra = so5\nchain = custom\nfactor = extension | E_2 | E_1 | E_{1+2}\nsuite = hopf\n");
  EXPECT_EQ(cli("run --config " + cfg.string()).code, 1);
}

TEST(Binary, ConfigFileAndOverride) {
  const fs::path cfg = scratch("override.cfg");
  const fs::path report = scratch("override.json");
  write_file(cfg, "algebra = so5\nchain = EJ\nsuite = rmatrix\ntiming = false\n");
  ASSERT_EQ(cli("run --config " + cfg.string() + " --suite hopf --report " + report.string()).code, 0);
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["config"]["suites"], nlohmann::json::array({"hopf"}));
}

TEST(Binary, RepeatedRunsAreByteIdentical) {
  const std::string args = "run --algebra so5 --chain BJEJ --suite hopf --suite rmatrix --no-timing";
  const Output a = cli(args);
  const Output b = cli(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
}

TEST(Binary, TimingIsTheOnlyVaryingField) {
  const std::string args = "run --algebra sl4 --chain \"E'EJ\" --suite rmatrix --suite hopf --jobs 2";
  auto a = nlohmann::json::parse(cli(args).out);
  auto b = nlohmann::json::parse(cli(args).out);
  ASSERT_TRUE(a.contains("timing"));
  a.erase("timing");
  b.erase("timing");
  EXPECT_EQ(a, b);
}
