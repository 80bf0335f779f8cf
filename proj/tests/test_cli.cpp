#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* p = std::getenv("GPK_BIN");
  REQUIRE(p != nullptr);
  return p;
}

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Checks doc carries every "required" property named by the schema node,
// recursing through the predict-schema's known structure.
void check_required(const json& schema_node, const json& doc) {
  if (schema_node.contains("required"))
    for (const auto& key : schema_node["required"])
      CHECK(doc.contains(key.get<std::string>()));
}

}  // namespace

TEST_CASE("stirling command") {
  auto r = run("stirling --n 3 --k 3 --alpha 0.5");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.output)["value"].get<double>() == doctest::Approx(1.0));

  r = run("stirling --n 3 --k 2 --alpha 0.5");
  CHECK(json::parse(r.output)["value"].get<double>() == doctest::Approx(1.5));

  r = run("stirling --n 5 --k 2 --alpha 0");
  CHECK(json::parse(r.output)["value"].get<double>() == doctest::Approx(50.0));

  r = run("stirling --n 3 --k 1 --alpha 0.5 --gamma -1.5");
  CHECK(json::parse(r.output)["value"].get<double>() == doctest::Approx(14.25));

  CHECK(run("stirling --n 3 --k 5 --alpha 0.5 --gamma 1").exit_code == 3);
  CHECK(run("stirling --n 3 --alpha 0.5").exit_code == 2);  // missing --k
}

TEST_CASE("predict command") {
  auto r = run("predict --model py --alpha 0.5 --theta 0.5 --sizes 1,1 --m 1");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["expected_s"].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
  for (const char* pmf : {"joint_kstar_s", "pmf_s", "pmf_kstar"})
    CHECK(doc[pmf]["sum"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

  // schema conformance (required keys at every level)
  const char* schema_env = std::getenv("GPK_SCHEMA");
  REQUIRE(schema_env != nullptr);
  std::ifstream schema_file(schema_env);
  REQUIRE(schema_file.good());
  json schema = json::parse(schema_file);
  check_required(schema, doc);
  check_required(schema["properties"]["model"], doc["model"]);
  check_required(schema["properties"]["state"], doc["state"]);
  for (const char* pmf : {"joint_kstar_s", "pmf_s", "pmf_kstar"})
    check_required(schema["definitions"]["pmf"], doc[pmf]);
  for (const auto& cond : doc["pmf_s_given_kstar"]) {
    check_required(schema["properties"]["pmf_s_given_kstar"]["items"], cond);
    check_required(schema["definitions"]["pmf"], cond["pmf"]);
  }
}

TEST_CASE("predict handles m = 0 and bad input") {
  auto r = run("predict --model dp --theta 1 --sizes 2,1 --m 0");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["pmf_s"]["support"] == json::array({0}));
  CHECK(doc["pmf_s"]["probs"][0].get<double>() == 1.0);
  CHECK(doc["expected_s"].get<double>() == 0.0);

  CHECK(run("predict --model py --alpha 1.5 --theta 1 --sizes 1 --m 1").exit_code == 3);
  CHECK(run("predict --model table --m 1").exit_code == 3);  // no --table
  CHECK(run("predict --model nosuch --m 1").exit_code == 2);
}

TEST_CASE("predict output round-trips at full precision") {
  auto r1 = run("predict --model py --alpha 0.25 --theta 1.0 --sizes 3,2,1 --m 4");
  REQUIRE(r1.exit_code == 0);
  json doc = json::parse(r1.output);
  // re-serializing the parsed doubles and re-parsing changes nothing: the
  // emitted digits identify each double exactly
  json reparsed = json::parse(doc.dump());
  CHECK(reparsed == doc);
  double total = 0.0;
  for (const auto& p : doc["pmf_s"]["probs"]) total += p.get<double>();
  CHECK(total == doctest::Approx(doc["pmf_s"]["sum"].get<double>()).epsilon(1e-15));
}

TEST_CASE("sample command") {
  auto empty = run("sample --model py --alpha 0.5 --theta 0.5 --sizes 2,1 "
                   "--m 3 --seed 42 --reps 0");
  CHECK(empty.exit_code == 0);
  CHECK(empty.output == "rep,sizes,k_star,s\n");

  auto a = run("sample --model py --alpha 0.5 --theta 0.5 --sizes 2,1 "
               "--m 3 --seed 42 --reps 50");
  auto b = run("sample --model py --alpha 0.5 --theta 0.5 --sizes 2,1 "
               "--m 3 --seed 42 --reps 50");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  auto c = run("sample --model py --alpha 0.5 --theta 0.5 --sizes 2,1 "
               "--m 3 --seed 43 --reps 50");
  CHECK(a.output != c.output);

  // --n-total is the complement of --m
  auto d = run("sample --model py --alpha 0.5 --theta 0.5 --sizes 2,1 "
               "--n-total 6 --seed 42 --reps 50");
  CHECK(d.output == a.output);

  CHECK(run("sample --model py --alpha 0.5 --theta 0.5 --m 3 --reps 1").exit_code == 2);
}

TEST_CASE("verify command") {
  CHECK(run("verify --suite normalization --n 6").exit_code == 0);
  CHECK(run("verify --suite avoidance").exit_code == 0);
  CHECK(run("verify --suite nosuch").exit_code == 2);

  // perturbed table fails before any suite runs
  std::string path = "gpk_cli_bad_table.json";
  {
    std::ofstream out(path);
    out << "{\"alpha\": 0.5, \"n_max\": 3, \"V\": "
           "[[\"1\"], [\"0.666666666666667\", \"0.666666666666667\"], "
           "[\"0.3\", \"0.5333333333333\", \"0.4\"]]}";
  }
  auto r = run("verify --suite normalization --model table --table " + path);
  CHECK(r.exit_code == 3);
  std::remove(path.c_str());
}
