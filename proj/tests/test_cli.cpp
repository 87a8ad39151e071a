#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "d21/cli.hpp"
#include "d21/error.hpp"
#include "d21/scan.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace d21;

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "d21");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }
}  // namespace

TEST_CASE("check") {
  CHECK(run({"check", "--p", "5", "--alpha", "2"}).code == kExitOk);
  CHECK(run({"check", "--p", "5", "--alpha", "4"}).code == kExitParameter);
  CHECK(run({"check", "--p", "4", "--alpha", "1"}).code == kExitParameter);
  CHECK(run({"check", "--p", "37", "--alpha", "1"}).code == kExitParameter);
  CHECK(run({"check", "--p", "5", "--alpha", "all", "--lambda", "1,2,3", "--chi-f", "1,0,0"}).code == kExitOk);
  const auto dump = run({"check", "--p", "5", "--alpha", "2", "--dump-brackets"});
  CHECK(dump.code == kExitOk);
  CHECK(nlohmann::json::parse(dump.out)[0]["pairs"].size() > 0);
}

TEST_CASE("h1 single points") {
  auto r = run({"h1", "--p", "5", "--alpha", "2", "--lambda", "2,3,3", "--chi-f", "0,0,0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"h1\":{\"even\":6,\"odd\":0}") != std::string::npos);
  CHECK(nlohmann::json::parse(r.out)["offset_alias"] == "(2p+2,2p-2,2p-2)");
  r = run({"h1", "--p", "5", "--alpha", "2", "--lambda", "3,2,2", "--chi-f", "0,0,0"});
  CHECK(r.out.find("{\"even\":0,\"odd\":1}") != std::string::npos);
  r = run({"h1", "--p", "5", "--alpha", "2", "--lambda", "1,1,1", "--chi-f", "1,0,0"});
  CHECK(r.out.find("{\"even\":0,\"odd\":0}") != std::string::npos);
  r = run({"h1", "--p", "5", "--alpha", "2", "--lambda", "2,3,3", "--method", "both"});
  CHECK(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["full"]["even"]["h1"] == 6);
  r = run({"h1", "--p", "5", "--alpha", "2", "--lambda", "12,-2,8", "--format", "csv"});
  CHECK(r.out == "p,alpha,lambda1,lambda2,lambda3,chif1,chif2,chif3,h1_even,h1_odd\n5,2,2,3,3,0,0,0,6,0\n");
}

TEST_CASE("h1 parameter errors") {
  CHECK(run({"h1", "--p", "5", "--alpha", "2"}).code == kExitParameter);
  CHECK(run({"h1", "--p", "5", "--alpha", "2", "--lambda", "1,2"}).code == kExitParameter);
  CHECK(run({"h1", "--p", "5", "--alpha", "x", "--lambda", "1,2,3"}).code == kExitParameter);
  CHECK(run({"h1", "--p", "11", "--alpha", "2", "--lambda", "1,2,3", "--method", "full"}).code == kExitParameter);
  CHECK(run({"h1", "--p", "5", "--alpha", "all", "--lambda", "1,2,3"}).code == kExitParameter);
  CHECK(run({"h1", "--p", "5", "--method", "sideways"}).code == kExitParameter);
  CHECK(run({"frobnicate"}).code == kExitParameter);
}

TEST_CASE("scan output") {
  const auto r = run({"scan", "--p", "5", "--alpha", "2", "--chi-f", "0,0,0"});
  CHECK(r.code == kExitOk);
  CHECK(count_lines(r.out) == 126);
  CHECK(r.out.rfind("p,alpha,lambda1,lambda2,lambda3,chif1,chif2,chif3,h1_even,h1_odd\n", 0) == 0);
  CHECK(r.out.find("5,2,2,3,3,0,0,0,6,0\n") != std::string::npos);
  CHECK(r.err.find("# 4 of 125 rows nonzero") != std::string::npos);
  const auto threaded = run({"scan", "--p", "5", "--alpha", "2", "--jobs", "3"});
  CHECK(threaded.out == r.out);
  const auto chi = run({"scan", "--p", "5", "--alpha", "2", "--chi-f", "1,1,1"});
  CHECK(chi.err.find("# 0 of 125 rows nonzero") != std::string::npos);
  const auto json = run({"scan", "--p", "5", "--alpha", "2", "--lambda", "3,2,2", "--format", "json"});
  CHECK(nlohmann::json::parse(json.out)[0]["h1"]["odd"] == 1);
  CHECK(run({"scan", "--p", "5", "--method", "full"}).code == kExitParameter);
}

TEST_CASE("verify-psi") {
  CHECK(run({"verify-psi", "--which", "2", "--p", "5", "--alpha", "2"}).code == kExitOk);
  CHECK(run({"verify-psi", "--which", "4", "--p", "5", "--alpha", "1"}).code == kExitOk);
  CHECK(run({"verify-psi", "--which", "2", "--p", "5", "--alpha", "2", "--lambda", "0,0,0"}).code ==
        kExitParameter);
  CHECK(run({"verify-psi", "--which", "5", "--p", "5", "--alpha", "2"}).code == kExitParameter);
  const auto r = run({"verify-psi", "--which", "1", "--p", "5", "--alpha", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("completion path") != std::string::npos);
  CHECK(nlohmann::json::parse(r.out)["parameter_count_finding"]["missing_directions"] == 1);
}

TEST_CASE("verma weight decomposition and file output") {
  const auto path = (std::filesystem::temp_directory_path() / "d21_verma_test.json").string();
  CHECK(run({"verma", "--p", "5", "--lambda", "2,3,3", "--output", path}).code == kExitOk);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["lambda"] == nlohmann::json({2, 3, 3}));
  std::size_t total = 0;
  for (const auto& w : j["weights"]) {
    CHECK(w["dim"] == 16);
    total += w["basis"].size();
  }
  CHECK(total == 2000);
  std::filesystem::remove(path);
}

TEST_CASE("scan helpers") {
  CHECK(valid_alphas(5) == std::vector<Residue>{1, 2, 3});
  CHECK(all_lambdas(7).size() == 343);
  CHECK(all_lambdas(5)[1].lambda == std::array<Residue, 3>{0, 0, 1});
  CHECK(offset_alias(7, {{2, 5, 0}}) == "(2p+2,2p-2,2p)");
  CHECK(offset_alias(5, {{3, 2, 2}}) == "(2p+3,2p-3,2p-3)");
  CHECK_FALSE(offset_alias(5, {{0, 0, 0}}).has_value());
  std::vector<int> hits(50, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS(parallel_for(10, 3, [](std::size_t i) {
    if (i == 7) throw ParameterError("boom");
  }));
  const auto pts = scan_points(5, {1, 2}, {{{0, 0, 0}}, {{1, 0, 0}}}, {Character{}});
  REQUIRE(pts.size() == 4);
  CHECK(pts[1].alpha == 1);
  CHECK(pts[2].alpha == 2);
}
