/* Copyright 2026-present the secmsr authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SECMSR_CLI_PATH
#error "SECMSR_CLI_PATH must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

/// Runs the CLI with stdout captured and stderr folded in.
RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path cap =
      fs::temp_directory_path() / ("secmsr_cli_out_" +
                                   std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(SECMSR_CLI_PATH) + " " + args + " > " +
                          cap.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(cap);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  fs::remove(cap);
  return r;
}

fs::path sandbox() {
  const fs::path dir = fs::temp_directory_path() / "secmsr_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json secure_file_doc() {
  json hex = json::array();
  for (int i = 1; i <= 8; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", i);
    hex.push_back(buf);
  }
  return json{{"file", hex}, {"seed", 42}};
}

}  // namespace

TEST_CASE("params prints the derived sheet and honors exit codes") {
  auto r = run("params");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("alpha         16") != std::string::npos);
  CHECK(r.output.find("m_random      24") != std::string::npos);

  r = run("params --format json --n 5 --k 3 --d 4 --l 2");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("alpha") == 32);
  CHECK(j.at("m_secure") == 8);
  CHECK(j.at("m_random") == 88);

  r = run("params --d 2");
  CHECK(r.exit_code == 1);  // violates d >= k+1

  r = run("params --l 2");
  CHECK(r.exit_code == 1);  // violates l < k
}

TEST_CASE("encode, retrieve, and the subset flag round trip") {
  const auto dir = sandbox();
  const auto secure = dir / "secure.json";
  const auto cw = dir / "cw.json";
  write_file(secure, secure_file_doc().dump());

  auto r = run("encode " + secure.string() + " --out " + cw.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("parity_check ok") != std::string::npos);

  r = run("retrieve " + cw.string() + " --subset 3,4 --format json");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.output);
  CHECK(out.at("file").size() == 8);
  CHECK(out.at("file").at(0) == "00000001");
  CHECK(out.at("file").at(7) == "00000008");

  // Default subset (1..k) gives the same answer.
  r = run("retrieve " + cw.string() + " --format json");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.output) == out);

  // Too few nodes is a validation error.
  r = run("retrieve " + cw.string() + " --subset 2");
  CHECK(r.exit_code == 1);

  // Parameter flags disagreeing with the file are rejected.
  r = run("retrieve " + cw.string() + " --n 5");
  CHECK(r.exit_code == 1);

  // Missing file is an I/O error.
  r = run("retrieve " + (dir / "nope.json").string());
  CHECK(r.exit_code == 3);

  // Malformed JSON is an I/O error.
  const auto broken = dir / "broken.json";
  write_file(broken, "{not json");
  r = run("retrieve " + broken.string());
  CHECK(r.exit_code == 3);
}

TEST_CASE("encode output is byte-deterministic") {
  const auto dir = sandbox();
  const auto secure = dir / "secure.json";
  write_file(secure, secure_file_doc().dump());
  const auto a = dir / "cw_a.json";
  const auto b = dir / "cw_b.json";
  REQUIRE(run("encode " + secure.string() + " --out " + a.string()).exit_code ==
          0);
  REQUIRE(run("encode " + secure.string() + " --out " + b.string()).exit_code ==
          0);
  CHECK(read_file(a) == read_file(b));
}

TEST_CASE("simulate runs a scenario file and reports per stage") {
  const auto dir = sandbox();
  const auto scenario = dir / "scenario.json";
  const json sc{{"params", {{"n", 4}, {"k", 2}, {"d", 3}, {"l", 1}}},
               {"E", {4}},
               {"seed", 7},
               {"stages",
                {{{"fail", 4}, {"helpers", {1, 2, 3}}},
                 {{"fail", 1}, {"policy", "random"}},
                 {{"fail", 4}, {"policy", "round_robin"}}}}};
  write_file(scenario, sc.dump());

  auto r = run("simulate --scenario " + scenario.string() + " --format json");
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(r.output);
  CHECK(rep.at("per_stage").size() == 3);
  CHECK(rep.at("per_stage").at(0).at("repair_ok") == true);
  CHECK(rep.at("ledger_summary").at("values_match") == true);
  CHECK(rep.at("secrecy_certificate").at("secret") == true);
  CHECK(rep.at("seed") == 7);

  // A bad stage is reported with its index.
  json bad = sc;
  bad["stages"].push_back(json{{"fail", 2}, {"helpers", {1, 2, 3}}});
  const auto bad_path = dir / "bad_scenario.json";
  write_file(bad_path, bad.dump());
  r = run("simulate --scenario " + bad_path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("stage 4") != std::string::npos);
}

TEST_CASE("analyze certifies every subset and exposes the grid") {
  auto r = run("analyze --format json");
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(r.output);
  CHECK(rep.at("all_ok") == true);
  CHECK(rep.at("reports").size() == 4);
  for (const auto& entry : rep.at("reports")) {
    CHECK(entry.at("rank_P") == 8);
    CHECK(entry.at("formula") == 8);
    CHECK(entry.at("secrecy").at("secret") == true);
  }
  CHECK(rep.contains("wall_time_ms"));

  r = run("analyze --subset 4 --grid");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("1000000010000000") != std::string::npos);

  r = run("analyze --subset 1,2");  // larger than l
  CHECK(r.exit_code == 1);
}

TEST_CASE("verify passes clean and fails under fault injection") {
  auto r = run("verify");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("overall             PASS") != std::string::npos);

  r = run("verify --inject-fault lambda-dup");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("exact_repair        FAIL") != std::string::npos);
  CHECK(r.output.find("mds_collect         PASS") != std::string::npos);

  r = run("verify --inject-fault bogus");
  CHECK(r.exit_code == 1);
}

TEST_CASE("verify output is byte-identical across runs") {
  const auto a = run("verify --format json");
  const auto b = run("verify --format json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  const auto c = run("verify");
  const auto d = run("verify");
  CHECK(c.output == d.output);
}

TEST_CASE("custom modulus flows through params and verify") {
  // x^32 + x^7 + x^3 + x^2 + 1 is irreducible over GF(2).
  auto r = run("params --modulus 10000008d");
  CHECK(r.exit_code == 0);
  r = run("params --modulus 100000000");  // x^32, reducible
  CHECK(r.exit_code == 1);
  r = run("verify --modulus 10000008d");
  CHECK(r.exit_code == 0);
}
