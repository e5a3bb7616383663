#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wardlab/cli.hpp"
#include "wardlab/report.hpp"

using namespace wardlab;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json strip_timestamp(const std::string& body) {
  nlohmann::json j = nlohmann::json::parse(body);
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("verdict serialization carries trace and exact densities") {
  AnalysisConfig cfg;
  cfg.horizon = 10000;
  IndexPredicate evens{[](std::uint64_t k) { return k % 2 == 0; }, "evens"};
  const Verdict v = density_limit_verdict(evens, cfg);
  const nlohmann::json j = to_json(v);
  CHECK(j["status"] == "violated");
  CHECK(j["finalDensity"] == "0.5");
  CHECK(j["horizon"] == 10000);
  REQUIRE(j.contains("trace"));
  CHECK(j["trace"].back()["count"] == 5000);
  REQUIRE(j.contains("witnessIndices"));
}

TEST_CASE("report envelope holds schema fields") {
  Report r;
  r.command = "classify";
  r.results = nlohmann::json::object();
  const nlohmann::json j = r.to_json();
  for (const char* key :
       {"schemaVersion", "command", "config", "results", "timestamp"})
    CHECK(j.contains(key));
  for (const char* key : {"horizon", "epsilonGrid", "passTolerance",
                          "failThreshold", "lambdaGrid", "checkpointCount"})
    CHECK(j["config"].contains(key));
}

TEST_CASE("cli classify: satisfied verdict exits 0 with JSON report") {
  // default horizon: the sqrt margin clears the pass tolerance only late
  const CliResult r = run_cli({"classify", "--seq", "sqrt", "--classes",
                               "statQuasiCauchy"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "classify");
  CHECK(j["results"]["sequence"] == "sqrt");
  CHECK(j["results"]["classes"][0]["class"] == "statQuasiCauchy");
  CHECK(j["results"]["classes"][0]["status"] == "satisfied");
}

TEST_CASE("cli classify: inconclusive verdicts exit 2") {
  const CliResult r = run_cli({"classify", "--seq", "cos-pi-sqrt", "--classes",
                               "statQuasiCauchy"});
  CHECK(r.code == 2);
}

TEST_CASE("cli reports are byte-identical apart from the timestamp") {
  const std::vector<std::string> args{"classify", "--seq", "ones-at-squares",
                                      "--horizon", "5000"};
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  REQUIRE(a.code == b.code);
  CHECK(strip_timestamp(a.out).dump() == strip_timestamp(b.out).dump());
}

TEST_CASE("cli csv output has the fixed header") {
  const CliResult r = run_cli({"classify", "--seq", "identity", "--classes",
                               "statUpHalfQuasiCauchy,statDownHalfQuasiCauchy",
                               "--horizon", "5000", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "class,status,epsilon,finalDensity,horizon");
  std::string row1, row2;
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(row1.rfind("statUpHalfQuasiCauchy,satisfied", 0) == 0);
  CHECK(row2.rfind("statDownHalfQuasiCauchy,violated", 0) == 0);
}

TEST_CASE("cli csv ingestion classifies file-backed sequences") {
  const std::string path = "alt_values_test.csv";
  {
    std::ofstream f(path);
    f << "value\n";
    for (int i = 0; i < 400; ++i) f << (i % 2 == 0 ? "1\n" : "-1\n");
  }
  const CliResult r = run_cli({"classify", "--seq", "@" + path, "--classes",
                               "halfStatQuasiCauchy"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  CHECK(r.err.find("clipped") != std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["classes"][0]["status"] == "violated");
  REQUIRE(j["results"]["classes"][0].contains("witnessIndices"));
  CHECK(j["config"]["horizon"] == 399);
}

TEST_CASE("cli csv ingestion rejects malformed rows") {
  const std::string path = "bad_values_test.csv";
  {
    std::ofstream f(path);
    f << "1\n2\nnot-a-number\n";
  }
  const CliResult r = run_cli({"classify", "--seq", "@" + path});
  std::remove(path.c_str());
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("cli limit: fibonacci ratio ordinary method") {
  const CliResult r = run_cli({"limit", "--seq", "fibonacci-ratio", "--method",
                               "ordinary", "--horizon", "100"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["method"] == "ordinary");
  CHECK(std::fabs(j["results"]["limitEstimate"].get<double>() - 1.6180339887) <
        1e-9);
}

TEST_CASE("cli limit: lacunary methods take a scheme") {
  const CliResult r =
      run_cli({"limit", "--seq", "ones-at-squares", "--method", "ntheta",
               "--ell", "0", "--theta", "fib:24"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["method"] == "ntheta");
  CHECK(j["results"]["status"] == "satisfied");
}

TEST_CASE("cli density subcommand") {
  const CliResult r =
      run_cli({"density", "--pred", "squares", "--horizon", "10000"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["predicate"] == "perfect squares");
  CHECK(j["results"]["density"]["count"] == 1);
  CHECK(j["results"]["density"]["n"] == 100);  // reduced 100/10000
  CHECK(j["results"]["density"]["decimal"] == "0.01");
  CHECK(j["results"]["status"] == "satisfied");
}

TEST_CASE("cli compact matches the probe semantics") {
  const CliResult r = run_cli({"compact", "--set", "[0,inf)"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["statUpwardCompact"] == true);
  CHECK(j["results"]["statDownwardCompact"] == false);

  const CliResult w = run_cli({"compact", "--set", "R", "--witness", "4"});
  REQUIRE(w.code == 0);
  const nlohmann::json jw = nlohmann::json::parse(w.out);
  CHECK(jw["results"]["descendingWitness"] ==
        nlohmann::json::array({0.0, -2.0, -4.0, -6.0}));
  REQUIRE(jw["results"].contains("ascendingWitness"));
}

TEST_CASE("cli ucwitness reports none-found for the identity") {
  const CliResult r = run_cli({"ucwitness", "--fn", "x", "--domain", "R",
                               "--eps0", "1", "--nmax", "10"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["noneFound"] == true);
  CHECK(j["results"]["pairs"].empty());
}

TEST_CASE("cli catalogue lists members with claims") {
  const CliResult r = run_cli({"catalogue"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j["results"].is_array());
  bool found_sqrt = false;
  for (const auto& m : j["results"]) {
    if (m["name"] == "sqrt") found_sqrt = true;
  }
  CHECK(found_sqrt);
}

TEST_CASE("cli lattice over a named corpus") {
  const CliResult r = run_cli({"lattice", "--fn", "x+5", "--corpus",
                               "constant,one-over-n", "--horizon", "4096"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["function"] == "x+5");
  CHECK(j["results"]["allConsistent"] == true);
  REQUIRE(j["results"]["properties"].size() == 8);
  REQUIRE(j["results"]["implications"].size() == 12);
}

TEST_CASE("cli density accepts an index file") {
  const std::string path = "indices_test.txt";
  {
    std::ofstream f(path);
    for (int k = 2; k <= 1000; k += 2) f << k << "\n";
  }
  const CliResult r =
      run_cli({"density", "--pred", "@" + path, "--horizon", "1000"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["density"]["decimal"] == "0.5");
}

TEST_CASE("cli limit accepts a scheme file") {
  const std::string path = "scheme_test.txt";
  {
    std::ofstream f(path);
    f << "0";
    std::uint64_t a = 1, b = 1;
    while (b < 4096) {
      const std::uint64_t next = a + b;
      a = b;
      b = next;
      f << " " << b;
    }
    f << "\n";
  }
  const CliResult r = run_cli({"limit", "--seq", "constant", "--method", "stheta",
                               "--ell", "1", "--theta", "@" + path, "--horizon",
                               "4000"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["results"]["status"] == "satisfied");
}

TEST_CASE("environment variable overrides the default horizon") {
  setenv("WARDLAB_DEFAULT_HORIZON", "2000", 1);
  const CliResult r = run_cli({"classify", "--seq", "constant", "--classes",
                               "convergent"});
  unsetenv("WARDLAB_DEFAULT_HORIZON");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["config"]["horizon"] == 2000);

  setenv("WARDLAB_DEFAULT_HORIZON", "9000", 1);
  const CliResult flag = run_cli({"classify", "--seq", "constant", "--classes",
                                  "convergent", "--horizon", "500"});
  unsetenv("WARDLAB_DEFAULT_HORIZON");
  REQUIRE(flag.code == 0);
  CHECK(nlohmann::json::parse(flag.out)["config"]["horizon"] == 500);
}

TEST_CASE("cli usage errors exit 1") {
  CHECK(run_cli({"classify"}).code == 1);                       // missing --seq
  CHECK(run_cli({"nosuchcommand"}).code == 1);
  CHECK(run_cli({"classify", "--seq", "zzz(("}).code == 1);     // bad expression
  CHECK(run_cli({"classify", "--seq", "sqrt", "--classes", "noClass"}).code == 1);
  CHECK(run_cli({"compact", "--set", "[1;2]"}).code == 1);
  CHECK(run_cli({"density", "--pred", "odds"}).code == 1);
}

TEST_CASE("cli writes report files under --out") {
  const CliResult r = run_cli({"classify", "--seq", "constant", "--classes",
                               "convergent", "--horizon", "1000", "--out",
                               "cli_out_test", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::ifstream f("cli_out_test/report.csv");
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "class,status,epsilon,finalDensity,horizon");
  f.close();
  std::filesystem::remove_all("cli_out_test");
}

TEST_CASE("cli passes catalogue parameters through") {
  const CliResult r = run_cli({"limit", "--seq", "constant", "--param",
                               "value=9", "--method", "ordinary", "--horizon",
                               "1000"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["results"]["limitEstimate"] == 9.0);
  CHECK(run_cli({"classify", "--seq", "constant", "--param", "bogus=1"}).code ==
        1);
}

TEST_CASE("expression sequences work as --seq sources") {
  const CliResult r = run_cli({"classify", "--seq", "1/n", "--classes",
                               "convergent", "--horizon", "5000"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["classes"][0]["status"] == "satisfied");
}
