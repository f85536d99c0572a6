#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "icci/cli.hpp"
#include "icci/json_io.hpp"
#include "icci/sweep.hpp"

using namespace icci;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("icci_test_" + name);
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
  // First outputs for seed 1234567 from the published reference code.
  SplitMix64 rng(1234567);
  CHECK(rng() == 6457827717110365317ULL);
  CHECK(rng() == 3203168211198807973ULL);
  CHECK(rng() == 9817491932198370423ULL);
}

TEST_CASE("substreams are independent of evaluation order") {
  auto a = SplitMix64::substream(42, 17);
  auto b = SplitMix64::substream(42, 17);
  CHECK(a() == b());
  auto c = SplitMix64::substream(42, 18);
  CHECK(SplitMix64::substream(42, 17)() != c());
}

TEST_CASE("sample_channel stays inside the magnitude range") {
  SplitMix64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto g = sample_channel(rng, 1e-3, 1e3);
    for (double m : {g.m11, g.m12, g.m21, g.m22}) {
      CHECK(m >= 1e-3 * (1 - 1e-12));
      CHECK(m <= 1e3 * (1 + 1e-12));
    }
  }
}

TEST_CASE("run_gap_sweep at a two-bit budget passes on seed 42") {
  SweepConfig cfg;
  cfg.samples = 100;
  cfg.seed = 42;
  cfg.bits = 2.0;
  const auto rep = run_gap_sweep(cfg);
  CHECK(rep.pass_count == 100);
  CHECK(rep.fail_count == 0);
  CHECK(rep.pass_count + rep.fail_count == rep.samples);
  CHECK(rep.worst_slack >= -kMembershipTol);
}

TEST_CASE("one-bit sweep failures come from the cover test alone") {
  SweepConfig cfg;
  cfg.samples = 100;
  const auto rep = run_gap_sweep(cfg);
  CHECK(rep.fail_count > 0);
  CHECK(rep.worst_slack > -1.0);
  for (const auto& f : rep.failures) {
    CHECK(f.check.deltas_ok);
    CHECK(f.check.containment.holds);
    CHECK_FALSE(f.check.gap.holds);
  }
}

TEST_CASE("sweep over the zero channel passes") {
  SweepConfig cfg;
  cfg.samples = 1;
  cfg.fixed_channel = ChannelGains<double>{};
  const auto rep = run_gap_sweep(cfg);
  CHECK(rep.pass_count == 1);
}

TEST_CASE("zero-bit budget fails on unit gains with a reported vertex") {
  SweepConfig cfg;
  cfg.samples = 1;
  cfg.bits = 0.0;
  cfg.fixed_channel = ChannelGains<double>{1, 1, 1, 1};
  const auto rep = run_gap_sweep(cfg);
  CHECK(rep.fail_count == 1);
  REQUIRE(rep.failures.size() == 1);
  CHECK_FALSE(rep.failures[0].check.gap.holds);
  CHECK(rep.failures[0].check.gap.worst_vertex.maxCoeff() > 0);
  CHECK(render_text(rep, cfg).find("FAIL sample=0") != std::string::npos);
}

TEST_CASE("sweep config validation") {
  SweepConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(run_gap_sweep(cfg), DomainError);
  cfg.samples = 1;
  cfg.mag_min = 10;
  cfg.mag_max = 1;
  CHECK_THROWS_AS(run_gap_sweep(cfg), DomainError);
}

TEST_CASE("sweep report is identical for any worker count") {
  SweepConfig one;
  one.samples = 64;
  one.threads = 1;
  SweepConfig many = one;
  many.threads = 8;
  CHECK(render_text(run_gap_sweep(one), one) == render_text(run_gap_sweep(many), many));
  CHECK(render_json(run_gap_sweep(one), one) == render_json(run_gap_sweep(many), many));
}

TEST_CASE("channel JSON round trip and errors") {
  const ChannelGains<double> g{10, 3.1623, 0.25, 1e-3};
  CHECK(channel_from_json(Json::parse(to_json(g).dump())) == g);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"m11":1,"m12":1,"m21":1})")), std::invalid_argument);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"m11":1,"m12":1,"m21":1,"m22":-2})")), DomainError);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678, 0.7}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.6) == "0.6");
}

TEST_CASE("cli: no arguments and unknown flags are usage errors") {
  CHECK(run({}).code == kExitUsage);
  const auto r = run({"bounds", "--bogus"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"bounds", "--m11", "-1"}).code == kExitUsage);
}

TEST_CASE("cli: bounds --json") {
  const auto r = run({"bounds", "--m11", "10", "--m12", "3.1623", "--m21", "3.1623", "--m22", "10", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["inner"]["side"] == "inner");
  CHECK(j["outer"]["side"] == "outer");
  CHECK(j["inner"].contains("G2p"));
  CHECK(j["deltas"].contains("dG1p"));
  CHECK(j["delta_inequalities"] == true);
  CHECK(std::abs(j["inner"]["D1"].get<double>() - std::log2(1 + 100 / (1 + 3.1623 * 3.1623 * (1 / (3.1623 * 3.1623))))) < 1e-9);
}

TEST_CASE("cli: bounds reads a channel file; missing file is an I/O error") {
  const auto path = temp_path("channel.json");
  {
    std::ofstream f(path);
    f << R"({"m11": 1, "m12": 1, "m21": 1, "m22": 1})";
  }
  const auto r = run({"bounds", "--channel", path.string(), "--json"});
  CHECK(r.code == kExitOk);
  CHECK(std::abs(Json::parse(r.out)["deltas"]["dG1p"].get<double>() - 1.73696559416620616642) < 1e-9);
  std::filesystem::remove(path);

  CHECK(run({"bounds", "--channel", "/nonexistent/dir/c.json"}).code == kExitIo);
}

TEST_CASE("cli: region emits halfspaces and vertices") {
  const auto r = run({"region", "--side", "inner", "--m11", "1.7320508075688772", "--m22", "1.7320508075688772"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["label"] == "inner");
  CHECK(j["halfspaces"].size() == 13);
  CHECK(j["halfspaces"][0]["c"] == Json::array({1, 1, 0}));
  CHECK(j["vertices"].size() >= 4);

  const auto gd = run({"region", "--side", "gdof", "--a11", "1", "--a12", "0.6", "--a21", "0.6", "--a22", "1"});
  REQUIRE(gd.code == kExitOk);
  CHECK(Json::parse(gd.out)["halfspaces"].size() == 9);
}

TEST_CASE("cli: gap pass and fail") {
  const auto ok = run({"gap", "--m11", "1", "--m12", "1", "--m21", "1", "--m22", "1", "--bits", "2"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(run({"gap", "--m11", "1", "--m12", "1", "--m21", "1", "--m22", "1"}).code == kExitCheckFailed);
  const auto bad = run({"gap", "--m11", "1", "--m12", "1", "--m21", "1", "--m22", "1", "--bits", "0", "--json"});
  CHECK(bad.code == kExitCheckFailed);
  CHECK(Json::parse(bad.out)["pass"] == false);
}

TEST_CASE("cli: gdof-curve writes 301 rows plus header") {
  const auto path = temp_path("curve.csv");
  const auto r = run({"gdof-curve", "--alpha-min", "0", "--alpha-max", "3", "--step", "0.01", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "alpha,d_ic,d_icci,d_uplift,d_icci_lp");
  int rows = 0;
  std::string row60;
  while (std::getline(f, line)) {
    if (rows == 60) row60 = line;
    ++rows;
  }
  CHECK(rows == 301);
  CHECK(row60.rfind("0.6,0.6,0.7,", 0) == 0);
  std::filesystem::remove(path);

  CHECK(run({"gdof-curve", "--out", "/nonexistent/dir/x.csv"}).code == kExitIo);
}

TEST_CASE("cli: verify-mi and example-alpha06") {
  const auto v = run({"verify-mi", "--samples", "50", "--seed", "3", "--json"});
  CHECK(v.code == kExitOk);
  CHECK(Json::parse(v.out)["max_abs_discrepancy"].get<double>() <= 1e-9);

  const auto e = run({"example-alpha06", "--p", "1e10", "--json"});
  REQUIRE(e.code == kExitOk);
  const auto j = Json::parse(e.out);
  CHECK(j["stages"].size() == 4);
  CHECK(j["stages"][1]["label"] == "M0");

  const auto table = run({"example-alpha06", "--p", "1e10"});
  CHECK(table.out.find("M1pr") != std::string::npos);
  CHECK(run({"example-alpha06", "--p", "10"}).code == kExitUsage);
}

TEST_CASE("cli: sweep determinism and failure exit code") {
  const auto a = run({"sweep", "--seed", "42", "--samples", "30", "--bits", "2"});
  const auto b = run({"sweep", "--seed", "42", "--samples", "30", "--bits", "2"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("pass=30 fail=0") != std::string::npos);

  const auto bad = run({"sweep", "--samples", "20"});
  CHECK(bad.code == kExitCheckFailed);
  CHECK(run({"sweep", "--mag-min", "5", "--mag-max", "1"}).code == kExitUsage);
}
