#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ordercdf/cli/run.hpp"

using namespace ordercdf;
using namespace ordercdf::cli;

namespace {

const std::string kConfigs = std::string(ORDERCDF_SOURCE_DIR) + "/configs/";

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = main_with_args(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ordercdf_test_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = temp_path(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error_field(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST(Config, ValidThreeAtom) {
  const auto cfg = load_config(kConfigs + "three_atom.json");
  EXPECT_EQ(cfg.spec, AnySpec(instances::three_atom()));
  EXPECT_EQ(cfg.command, "eval-cdf");
  EXPECT_EQ(cfg.params.at("at"), "b");
}

TEST(Config, ShippedConfigsMatchInstances) {
  EXPECT_EQ(load_config(kConfigs + "mixed.json").spec, AnySpec(instances::mixed()));
  EXPECT_EQ(load_config(kConfigs + "gapped.json").spec, AnySpec(instances::gapped()));
  EXPECT_EQ(load_config(kConfigs + "lex.json").spec, AnySpec(instances::lex()));
  EXPECT_EQ(load_config(kConfigs + "open_unit.json").spec, AnySpec(instances::open_uniform()));
}

TEST(Config, RejectionsNameTheField) {
  const std::string space = R"("space": {"kind": "finite", "labels": ["a", "b", "c"]})";
  EXPECT_EQ(config_error_field("{" + space +
                               R"(, "measure": {"atoms": [{"at": "a", "mass": 0.2}, {"at": "b", "mass": 0.3},
                                   {"at": "c", "mass": 0.4}]}})"),
            "measure.total_mass");
  EXPECT_EQ(config_error_field("{" + space + R"(, "measure": {"atoms": [{"at": "a", "mass": 0.5}, {"at": "d", "mass": 0.5}]}})"),
            "measure.atoms[1].at");
  EXPECT_EQ(config_error_field(R"({"space": {"kind": "tree"}, "measure": {}})"), "space.kind");
  EXPECT_EQ(config_error_field(R"({"measure": {}})"), "space");
  EXPECT_EQ(config_error_field("{" + space + R"(, "measure": {"atoms": [{"at": "a", "mass": "1"}]}})"),
            "measure.atoms[0].mass");
  EXPECT_EQ(config_error_field("{not json"), "config");
  EXPECT_THROW(load_config(temp_path("does_not_exist.json")), ConfigError);
}

TEST(Config, RoundTripThroughJson) {
  for (const auto* name : {"three_atom.json", "mixed.json", "gapped.json", "lex.json", "open_unit.json"}) {
    const auto cfg = load_config(kConfigs + name);
    const auto again = parse_config_text(to_json(cfg).dump());
    EXPECT_EQ(again, cfg) << name;
    EXPECT_EQ(spec_hash(again.spec), spec_hash(cfg.spec));
  }
  EXPECT_NE(spec_hash(AnySpec(instances::uniform())), spec_hash(AnySpec(instances::mixed())));
}

TEST(Cli, EvalCdf) {
  const auto r = run_cli({"-c", kConfigs + "three_atom.json", "eval-cdf", "--at", "b"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.5\n");
  EXPECT_EQ(run_cli({"--case", "mixed", "eval-cdf", "--at", "0.5", "--minus"}).out, "0.25\n");
  // the config's own command runs when no subcommand is given
  EXPECT_EQ(run_cli({"-c", kConfigs + "three_atom.json"}).out, "0.5\n");
}

TEST(Cli, QuantileAndMeasure) {
  EXPECT_EQ(run_cli({"--case", "three_atom", "eval-quantile", "--at", "0.51"}).out, "c\n");
  EXPECT_EQ(run_cli({"--case", "mixed", "interval-measure", "--interval", "(0.4,0.6)"}).out, "0.6\n");
  const auto u = run_cli({"-c", kConfigs + "open_unit.json"});
  EXPECT_EQ(u.code, 0);
  EXPECT_EQ(u.out.rfind("undefined: ", 0), 0u) << u.out;
}

TEST(Cli, IntegrateAndReport) {
  EXPECT_EQ(run_cli({"--case", "three_atom", "integrate", "--expr", "indicator:[b,c]"}).out, "0.8\n");
  const auto g = run_cli({"-c", kConfigs + "gapped.json"});
  EXPECT_EQ(g.code, 0);
  const auto j = json::parse(g.out);
  EXPECT_TRUE(j.at("consistent").get<bool>());
  EXPECT_FALSE(j.at("support_and_no_atoms").at("holds").get<bool>());
  EXPECT_NE(j.at("support_and_no_atoms").at("evidence").get<std::string>().find("(0.4,0.6]"), std::string::npos);
}

TEST(Cli, ReportConfigReloads) {
  const auto r = run_cli({"--case", "lex", "report", "--config"});
  ASSERT_EQ(r.code, 0);
  const auto path = write_temp("lex_echo.json", r.out);
  EXPECT_EQ(load_config(path).spec, AnySpec(instances::lex()));
  EXPECT_EQ(run_cli({"-c", path, "report", "--config"}).out, r.out);
}

TEST(Cli, SampleFilesAreByteIdentical) {
  const auto p1 = temp_path("s1.txt"), p2 = temp_path("s2.txt"), p3 = temp_path("s3.txt");
  ASSERT_EQ(run_cli({"--case", "mixed", "sample", "--n", "1000", "--seed", "42", "--out", p1}).code, 0);
  ASSERT_EQ(run_cli({"--case", "mixed", "sample", "--n", "1000", "--seed", "42", "--out", p2}).code, 0);
  ASSERT_EQ(run_cli({"--case", "mixed", "sample", "--n", "1000", "--seed", "43", "--out", p3}).code, 0);
  const auto a = slurp(p1);
  EXPECT_EQ(a, slurp(p2));
  EXPECT_NE(a, slurp(p3));
  const auto header = json::parse(a.substr(0, a.find('\n')));
  EXPECT_EQ(header.at("seed"), 42);
  EXPECT_EQ(header.at("rng"), "mt19937_64");
  EXPECT_EQ(header.at("n"), 1000);
  EXPECT_EQ(header.at("spec_hash"), spec_hash(AnySpec(instances::mixed())));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1001);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"--case", "open_uniform", "sample", "--n", "5"}).code, 4);
  EXPECT_EQ(run_cli({"--case", "uniform", "eval-cdf", "--at", "2"}).code, 3);
  EXPECT_EQ(run_cli({"--case", "uniform", "eval-quantile", "--at", "1.5"}).code, 3);
  EXPECT_EQ(run_cli({"--case", "uniform", "eval-cdf"}).code, 2);
  EXPECT_EQ(run_cli({"--case", "nope", "eval-cdf", "--at", "0"}).code, 2);
  EXPECT_EQ(run_cli({"eval-cdf", "--at", "0"}).code, 2);
  EXPECT_EQ(run_cli({"--case", "uniform", "integrate", "--expr", "tan"}).code, 2);
  EXPECT_EQ(run_cli({"--case", "uniform", "integrate", "--expr", "x", "--subdivisions", "0"}).code, 2);
  EXPECT_EQ(run_cli({"--case", "uniform", "report"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, VerifyAll) {
  const auto r = run_cli({"verify", "--all"});
  EXPECT_EQ(r.code, 0) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = json::parse(line);
    EXPECT_NE(j.at("status"), "fail") << line;
    ++n;
  }
  EXPECT_GT(n, 7 * 20);
}

// The installed binary, end to end.
TEST(Cli, BinaryExitCodes) {
  const std::string bin = ORDERCDF_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status(bin + " verify --all"), 0);
  EXPECT_EQ(status(bin + " --case open_uniform sample --n 3"), 4);
  EXPECT_EQ(status(bin + " -c " + kConfigs + "three_atom.json eval-cdf --at d"), 3);
}
