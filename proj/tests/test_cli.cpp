// Copyright 2026 The pmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pmlab/cli.hpp"
#include "pmlab/matching.hpp"

using namespace pmlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args, const CliHooks& hooks = {}) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err, hooks);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pmlab-cli-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Minimal well-formedness check: balanced tags, quoted attributes, no stray '<'.
bool well_formed_xml(const std::string& s) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  bool root = false;
  while ((i = s.find('<', i)) != std::string::npos) {
    const std::size_t j = s.find('>', i);
    if (j == std::string::npos) return false;
    std::string tag = s.substr(i + 1, j - i - 1);
    if (tag.find('<') != std::string::npos) return false;
    i = j + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool selfClosing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (stack.empty()) {
      if (root) return false;
      root = true;
    }
    if (!selfClosing) stack.push_back(name);
  }
  return root && stack.empty();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"simulate", "--sigma2", "1e-4", "--bogus", "1"}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"simulate", "--sigma2", "1e-4", "--estimator", "mle"}).code == kExitUsage);
  CHECK(cli({"simulate", "--sigma2", "1e-3,1e-4"}).code == kExitUsage);
  CHECK(cli({"bounds", "minimax", "--n", "2"}).code == kExitUsage);
  CHECK(cli({"figure-error-rate", "--d", "4"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("unwritable output exits with 3") {
  // The parent of the output path is a regular file, so no directory can be created.
  const fs::path dir = scratch("io");
  std::ofstream(dir / "blocker") << "x";
  const Run r = cli({"simulate", "--n", "10", "--sigma2", "1e-4", "--trials", "2", "--out",
                     (dir / "blocker" / "r.csv").string()});
  CHECK(r.code == kExitIo);
}

TEST_CASE("simulate writes one row per grid point and estimator") {
  const fs::path dir = scratch("simulate");
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string(), c = (dir / "c.csv").string();
  const std::vector<std::string> base = {"simulate", "--n", "40", "--d", "2", "--pos", "gaussian",
                                         "--noise", "gaussian", "--sigma2", "1e-4,1e-3", "--trials", "50",
                                         "--estimator", "lss,greedy-distance", "--seed", "42", "--no-timing"};
  auto with = [&](std::vector<std::string> extra) {
    auto v = base;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  REQUIRE(cli(with({"--out", a, "--parallelism", "1"})).code == kExitOk);
  REQUIRE(cli(with({"--out", b, "--parallelism", "1"})).code == kExitOk);
  REQUIRE(cli(with({"--out", c, "--parallelism", "8"})).code == kExitOk);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text == slurp(c));
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(text.rfind("experiment,position,noise,n,d,sigma2,estimator,trials,", 0) == 0);
}

TEST_CASE("simulate to stdout and JSON mirror") {
  const fs::path dir = scratch("simjson");
  const Run r = cli({"simulate", "--n", "20", "--sigma2", "0", "--trials", "5", "--json",
                     (dir / "r.json").string(), "--no-timing"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(row.find(",0,0,0,1,") != std::string::npos);  // hamming, rate, SE, recovery
  const auto j = nlohmann::json::parse(slurp(dir / "r.json"));
  CHECK(j[0]["mean_error_rate"] == 0.0);
  CHECK(j[0]["wall_clock_s"].is_null());
}

TEST_CASE("bounds print a JSON report") {
  Run r = cli({"bounds", "log-regime", "--a", "1", "--sigma2", "1"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.6534264097200273).epsilon(1e-14));

  r = cli({"bounds", "snr", "--sigma-x", "1,1", "--sigma-z", "1,4", "--n", "2.718281828459045"});
  REQUIRE(r.code == kExitOk);
  j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("0.8") != std::string::npos);

  r = cli({"bounds", "minimax", "--n", "3", "--d", "1", "--sigma", "1", "--gamma", "1", "--beta",
           "0.6931471805599453"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(3.0 / 4096.0));
}

TEST_CASE("figure-error-rate writes CSV and SVG") {
  const fs::path dir = scratch("figure");
  const Run r = cli({"figure-error-rate", "--d", "3", "--n", "20", "--trials", "3", "--out-dir",
                     dir.string(), "--no-timing"});
  REQUIRE(r.code == kExitOk);
  const std::string csv = slurp(dir / "figure-error-rate-d3.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 9);
  const std::string svg = slurp(dir / "figure-error-rate-d3.svg");
  CHECK(well_formed_xml(svg));
  CHECK(svg.find("Gaussian prediction") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);  // self-contained
}

TEST_CASE("rgg-sweep and figure-rgg") {
  const fs::path dir = scratch("rgg");
  Run r = cli({"rgg-sweep", "--n", "11", "--d", "2", "--r", "1e9", "--trials", "2", "--no-timing"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("max_matching") != std::string::npos);
  CHECK(cli({"rgg-sweep", "--n", "11"}).code == kExitUsage);
  r = cli({"figure-rgg", "--n", "30", "--trials", "2", "--out-dir", dir.string(), "--no-timing"});
  REQUIRE(r.code == kExitOk);
  CHECK(well_formed_xml(slurp(dir / "figure-rgg-d2.svg")));
}

TEST_CASE("recovery") {
  const Run r = cli({"recovery", "--d", "4", "--sigma-x", "1", "--sigma-z", "0", "--n", "30", "--trials", "4",
                     "--no-timing"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("lssc") != std::string::npos);
}

TEST_CASE("verify") {
  SUBCASE("fresh build passes") {
    const Run r = cli({"verify", "--quick"});
    CHECK(r.code == kExitOk);
    for (const char* s : {"lap-vs-brute", "matching-vs-brute", "gaug-mistake-bound", "tau-consistency"})
      CHECK(r.out.find(s) != std::string::npos);
  }
  SUBCASE("a corrupted matcher fails") {
    CliHooks hooks;
    hooks.matcher = [](const Graph& g) {
      Matching m = max_matching(g);
      if (!m.edges.empty()) m.edges.pop_back();
      return m;
    };
    CHECK(cli({"verify", "--quick"}, hooks).code == kExitVerifyFailed);
  }
}
