#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "rootstack/errors.hpp"
#include "rootstack_cli/cli.hpp"

namespace rootstack::cli {
namespace {

const char* const kLineConic =
    R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":[1]},{"name":"C","coeffs":[2]}],"cap":9})";
const char* const kQuadrics =
    R"({"target":{"factors":[1,1]},"divisors":[{"name":"D1","coeffs":[1,1]},{"name":"D2","coeffs":[1,1]}],"cap":8})";
const char* const kCubic =
    R"({"target":{"factors":[2]},"divisors":[{"name":"E","coeffs":[3]}],"cap":6})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

JobConfig job(const char* text, Command command, Format format = Format::records) {
  JobConfig c = parse_config(text);
  c.command = command;
  c.format = format;
  return c;
}

TEST(ParseConfig, LineConicSchemaInstance) {
  JobConfig c = parse_config(kLineConic);
  ASSERT_TRUE(c.target);
  EXPECT_EQ(c.target->factors(), std::vector<int>{2});
  ASSERT_EQ(c.divisors.size(), 2u);
  EXPECT_EQ(c.divisors[0].name, "L");
  EXPECT_EQ(c.divisors[1].cls, std::vector<int>{2});
  EXPECT_EQ(c.cap, 9);
  EXPECT_FALSE(c.roots);
  EXPECT_FALSE(c.m);
}

TEST(ParseConfig, RootsAndM) {
  JobConfig c = parse_config(
      R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":[1]},{"name":"C","coeffs":[2]}],"roots":[3,5],"cap":3,"m":2})");
  ASSERT_TRUE(c.roots);
  EXPECT_EQ(c.roots->values(), (std::vector<int>{3, 5}));
  EXPECT_EQ(c.m, 2);
}

TEST(ParseConfig, RejectsNonCoprimeRoots) {
  std::string e = error_of(
      R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":[1]},{"name":"C","coeffs":[2]}],"roots":[2,4],"cap":3})");
  EXPECT_NE(e.find("roots must be pairwise coprime"), std::string::npos) << e;
  EXPECT_NE(e.find("'roots'"), std::string::npos) << e;
}

TEST(ParseConfig, RejectsNonNefDivisor) {
  std::string e = error_of(R"({"target":{"factors":[2]},"divisors":[{"name":"B","coeffs":[-1]}],"cap":3})");
  EXPECT_NE(e.find("not nef on this target"), std::string::npos) << e;
}

TEST(ParseConfig, RejectsCapOutOfRange) {
  std::string e = error_of(R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":[1]}],"cap":65})");
  EXPECT_NE(e.find("'cap'"), std::string::npos) << e;
  EXPECT_NE(error_of(R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":[1]}],"cap":-1})"), "");
}

TEST(ParseConfig, MalformedDocumentNamesLine) {
  std::string e = error_of("{\n  \"target\": {\"factors\": [2]},\n  \"cap\": ,\n}");
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
}

TEST(ParseConfig, FieldDiagnostics) {
  EXPECT_NE(error_of(R"({"divisors":[],"cap":1})").find("'target'"), std::string::npos);
  EXPECT_NE(error_of(R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":[1,1]}],"cap":1})")
                .find("divisors[0].coeffs"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":[1]}],"cap":1,"bogus":1})")
                .find("'bogus'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"target":{"factors":[2]},"divisors":[{"name":"L","coeffs":["a"]}],"cap":1})")
                .find("divisors[0].coeffs[0]"),
            std::string::npos);
}

TEST(ParseRootList, Groups) {
  auto r = parse_root_list("3,5;5,7");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1].values(), (std::vector<int>{5, 7}));
  EXPECT_THROW(parse_root_list("3,x"), ConfigError);
  EXPECT_THROW(parse_root_list("2,4"), ConfigError);
}

TEST(Run, ComparePeriodsOnP2) {
  Report r = run(job(kLineConic, Command::compare_periods));
  ASSERT_EQ(r.status, kPass) << r.diagnostic;
  int matches = 0;
  for (const auto& rec : parse_records(r.output)) {
    if (rec.fields.front() == "compare") {
      EXPECT_EQ(rec.value, 1);
      ++matches;
    }
  }
  EXPECT_EQ(matches, 10);  // degrees 0..9
  Report t = run(job(kLineConic, Command::compare_periods, Format::table));
  EXPECT_NE(t.output.find("10 of 10 coefficients match"), std::string::npos) << t.output;
  EXPECT_NE(t.output.find("1680"), std::string::npos);
}

TEST(Run, CheckIdentityListsSigns) {
  JobConfig c = job(kLineConic, Command::check_identity);
  Report r = run(c);
  ASSERT_EQ(r.status, kPass) << r.diagnostic;
  std::map<std::string, Rational> signs;
  for (const auto& rec : parse_records(r.output)) {
    if (rec.fields.size() == 4 && rec.fields[0] == "identity" && rec.fields[3] == "sign") {
      signs[rec.fields[1] + "@" + rec.fields[2]] = rec.value;
    }
  }
  // (d_L, d_C) = (d, 2d): sign (-1)^{d-1} (-1)^{2d-1} = (-1)^d.
  EXPECT_EQ(signs.at("local-orbifold@1"), -1);
  EXPECT_EQ(signs.at("local-orbifold@2"), 1);
  EXPECT_EQ(signs.at("local-orbifold-extended@3"), -1);
}

TEST(Run, CubicInvariantsHitMirrorMap) {
  Report r = run(job(kCubic, Command::invariants));
  EXPECT_EQ(r.status, kMirrorMap);
  EXPECT_NE(r.diagnostic.find("mirror map nontrivial; Birkhoff factorization unsupported"),
            std::string::npos)
      << r.diagnostic;
}

TEST(Run, InvariantsLineConic) {
  JobConfig c = job(kLineConic, Command::invariants);
  c.cap = 6;
  Report r = run(c);
  ASSERT_EQ(r.status, kPass) << r.diagnostic;
  // <[1]_{1,0}, [1]_{0,2}, [pt]> at beta = 1.
  bool found = false;
  for (const auto& rec : parse_records(r.output)) {
    if (rec.fields == std::vector<std::string>{"invariant", "1", "x1_1*x2_2", "2", "0", "0,0"}) {
      EXPECT_EQ(rec.value, 2);
      found = true;
    }
  }
  EXPECT_TRUE(found) << r.output;
}

TEST(Run, StabilizeUsesRootList) {
  JobConfig c = job(kQuadrics, Command::stabilize);
  c.cap = 4;
  c.root_list = parse_root_list("3,5;5,7");
  Report r = run(c);
  ASSERT_EQ(r.status, kPass) << r.diagnostic;
  EXPECT_FALSE(parse_records(r.output).empty());
  c.root_list.clear();
  EXPECT_EQ(run(c).status, kFail);  // no roots supplied
}

TEST(Run, LaurentPeriodWithoutTarget) {
  JobConfig c;
  c.command = Command::laurent_period;
  c.format = Format::records;
  c.cap = 6;
  c.laurent = "x + y + x^-1*y^-1";
  Report r = run(c);
  ASSERT_EQ(r.status, kPass) << r.diagnostic;
  auto recs = parse_records(r.output);
  ASSERT_EQ(recs.size(), 7u);
  EXPECT_EQ(recs[3].value, 6);
  EXPECT_EQ(recs[6].value, 90);
  c.laurent = "x +* y";
  EXPECT_EQ(run(c).status, kFail);
}

TEST(Run, CommandNeedsTarget) {
  JobConfig c;
  c.command = Command::period;
  EXPECT_EQ(run(c).status, kFail);
}

TEST(Records, RoundTripIsExact) {
  JobConfig c = job(kLineConic, Command::ifunction);
  c.kind = "infinity-h0";
  c.cap = 6;
  Report r = run(c);
  ASSERT_EQ(r.status, kPass) << r.diagnostic;
  auto recs = parse_records(r.output);
  ASSERT_FALSE(recs.empty());
  std::ostringstream re;
  for (const auto& rec : recs) {
    for (const auto& f : rec.fields) re << f << '\t';
    re << rootstack::to_string(rec.value) << '\n';
  }
  EXPECT_EQ(re.str(), r.output);
  for (const auto& rec : recs) EXPECT_NE(rec.fields.size(), 0u);
  EXPECT_EQ(r.output.find('\r'), std::string::npos);
}

TEST(Records, DenominatorAlwaysPrinted) {
  Report r = run(job(kLineConic, Command::period));
  ASSERT_EQ(r.status, kPass) << r.diagnostic;
  std::istringstream in(r.output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    EXPECT_NE(line.substr(line.rfind('\t') + 1).find('/'), std::string::npos) << line;
  }
}

TEST(Records, IdenticalConfigIdenticalBytes) {
  JobConfig c = job(kQuadrics, Command::check_identity);
  c.cap = 6;
  EXPECT_EQ(run(c).output, run(c).output);
}

TEST(Records, ParseErrors) {
  EXPECT_THROW(parse_records("a\tb\tnot-a-number\n"), std::invalid_argument);
  auto recs = parse_records("# note\n\nperiod\tquantum\t3\t1/6\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].value, make_rational(1, 6));
}

class Executable : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("rootstack_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  int exec(const std::string& args) {
    std::string cmd = std::string(ROOTSTACK_CLI_PATH) + " " + args + " > " + (dir_ / "stdout").string() +
                      " 2> " + (dir_ / "stderr").string();
    int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::filesystem::path dir_;
};

TEST_F(Executable, ComparePeriodsExitsZero) {
  std::string cfg = write("p2.json", kLineConic);
  EXPECT_EQ(exec("--config " + cfg + " --command compare-periods"), 0) << read("stderr");
  EXPECT_NE(read("stdout").find("10 of 10 coefficients match"), std::string::npos);
}

TEST_F(Executable, CubicInvariantsExitTwo) {
  std::string cfg = write("cubic.json", kCubic);
  EXPECT_EQ(exec("--config " + cfg + " --command invariants"), 2);
  EXPECT_NE(read("stderr").find("mirror map nontrivial; Birkhoff factorization unsupported"),
            std::string::npos);
}

TEST_F(Executable, ConfigErrorExitsOne) {
  std::string cfg = write("bad.json", R"({"target":{"factors":[2]},"divisors":[{"name":"B","coeffs":[-1]}],"cap":3})");
  EXPECT_EQ(exec("--config " + cfg + " --command period"), 1);
  EXPECT_NE(read("stderr").find("not nef"), std::string::npos);
}

TEST_F(Executable, OutFileAndOverrides) {
  std::string cfg = write("q.json", kQuadrics);
  std::string out = (dir_ / "report.tsv").string();
  EXPECT_EQ(exec("--config " + cfg + " --command stabilize --cap 4 --roots \"3,5;7,11\" --format records --out " + out), 0)
      << read("stderr");
  auto recs = parse_records(read("report.tsv"));
  ASSERT_FALSE(recs.empty());
  for (const auto& r : recs) EXPECT_EQ(r.value, 1);
}

TEST_F(Executable, OutputIndependentOfThreadCount) {
  std::string cfg = write("p2.json", kLineConic);
  for (const char* threads : {"1", "8"}) {
    std::string cmd = "ROOTSTACK_GW_THREADS=" + std::string(threads) + " " + ROOTSTACK_CLI_PATH +
                      " --config " + cfg + " --command ifunction --kind infinity-extended --cap 6 -m 2" +
                      " --format records --out " + (dir_ / ("t" + std::string(threads))).string();
    ASSERT_EQ(std::system(cmd.c_str()), 0) << cmd;
  }
  EXPECT_FALSE(read("t1").empty());
  EXPECT_EQ(read("t1"), read("t8"));
}

TEST_F(Executable, LaurentPeriod) {
  EXPECT_EQ(exec("--command laurent-period --cap 4 --laurent \"x + x^-1\" --format records"), 0)
      << read("stderr");
  auto recs = parse_records(read("stdout"));
  ASSERT_EQ(recs.size(), 5u);
  EXPECT_EQ(recs[2].value, 2);
  EXPECT_EQ(recs[4].value, 6);
}

}  // namespace
}  // namespace rootstack::cli
