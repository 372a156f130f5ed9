#include "oracles.hpp"
#include "pcbias/cli/commands.hpp"
#include "pcbias/cli/cross_check.hpp"
#include "pcbias/cli/json_io.hpp"
#include "pcbias/text_format.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace pcbias;
using namespace pcbias::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kSpec = R"({"periods": [7, 3, 5], "blocks": [[1]]})";
const std::string kGenerator = R"({
  "combiner": {"anf": "x1 + x2*x3"},
  "devices": [
    {"type": "lfsr", "length": 3, "taps": 3, "state": 1},
    {"type": "lfsr", "length": 2, "taps": "0x3", "state": 1},
    {"type": "explicit", "bits": "10011"}
  ]})";

}  // namespace

TEST_CASE("function sources parse identically") {
  const auto tt = invoke({"analyze", "--tt", "8", "--n", "2"});
  const auto anf = invoke({"analyze", "--anf", "x1*x2"});
  REQUIRE(tt.code == kExitOk);
  REQUIRE(anf.code == kExitOk);
  CHECK(tt.out == anf.out);
  const json doc = tt.doc();
  CHECK(doc["bias"]["value"] == "1/2");
  CHECK(doc["resiliency_order"] == -1);
  CHECK(doc["function"]["anf"] == "x1*x2");

  CHECK(invoke({"analyze", "--anf", "x1 + x2", "--n", "2"}).doc()["function"]["tt"] == "6");
  CHECK(invoke({"analyze", "--anf", "1", "--n", "1"}).doc()["function"]["tt"] == "3");
}

TEST_CASE("bias report") {
  const auto r = invoke({"bias", "--anf", "x1 + x2*x3", "--spec", kSpec});
  REQUIRE(r.code == kExitOk);
  const json doc = r.doc();
  CHECK(doc["exact"]["value"] == "1/4");
  CHECK(doc["exact"]["numerator"] == "1");
  CHECK(doc["exact"]["log2_denominator"] == 2);
  CHECK(doc["lower_bound"]["value"] == "1/4");
  CHECK(doc["closed_form"]["value"]["value"] == "1/4");
  CHECK(doc["method"] == "restriction");
  CHECK(doc["independence"]["verdict"] == "PASS");
  CHECK(doc["attack_cost"]["time"] == "32");

  for (const std::string m : {"walsh", "restriction", "oracle"}) {
    const json d = invoke({"bias", "--anf", "x1 + x2*x3", "--spec", kSpec, "--method", m}).doc();
    CHECK(d["exact"]["value"] == "1/4");
    CHECK(d["method"] == m);
  }
}

TEST_CASE("bound report") {
  const auto r = invoke({"bound", "--anf", "x1*x2*x3 + x4", "--spec", R"({"periods": [3,5,7,11], "blocks": [[1],[2]]})"});
  REQUIRE(r.code == kExitOk);
  const json doc = r.doc();
  CHECK(doc["plateaued_bound"].is_null());
  CHECK(doc["lower_bound"].is_object());

  const auto g = invoke({"bound", "--anf", "x1*x2 + x3", "--spec", R"({"periods": [3,5,7], "blocks": [[1,2],[3]]})",
                         "--approx", "x1*x2 + x3"});
  REQUIRE(g.code == kExitOk);
  CHECK(g.doc()["separable_bound"]["value"] == "1");
}

TEST_CASE("oracle report") {
  const auto r = invoke({"oracle", "--anf", "x1 + x2*x3", "--spec", kSpec});
  REQUIRE(r.code == kExitOk);
  CHECK(r.doc()["exact"]["value"] == "1/4");
  CHECK(r.doc()["method"] == "oracle");
}

TEST_CASE("simulate is deterministic") {
  const std::vector<std::string> args{"simulate", "--generator", kGenerator, "--spec", R"({"blocks": [[1]]})",
                                      "--trials", "20000", "--seed", "7"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const json doc = a.doc();
  CHECK(doc["estimate"]["trials"] == 20000);
  CHECK(doc["estimate"]["seed"] == 7);
  CHECK(doc["exact"]["value"] == "1/4");
  CHECK(doc["flags"].empty());
}

TEST_CASE("simulate flags independence failures") {
  const auto r = invoke({"simulate", "--generator", kGenerator, "--spec", R"({"blocks": [[1]], "multipliers": [3]})",
                         "--trials", "20000", "--seed", "1"});
  REQUIRE(r.code == kExitOk);
  const json doc = r.doc();
  CHECK(doc["independence"]["verdict"] == "FAIL");
  CHECK_FALSE(doc["flags"].empty());
  CHECK(doc["formula"]["value"] == "1/4");
  CHECK(doc["true_bias"]["value"] == "1/2");
}

TEST_CASE("cross-check verdicts") {
  const auto ok = invoke({"cross-check", "--anf", "x1 + x2*x3", "--spec", kSpec});
  REQUIRE(ok.code == kExitOk);
  CHECK(ok.doc()["verdict"] == "CONSISTENT");
  const json checks = ok.doc()["checks"];
  bool closed_form_checked = false;
  for (const auto& c : checks) closed_form_checked |= c["name"] == "closed form == exact";
  CHECK(closed_form_checked);

  const auto skip = invoke({"cross-check", "--anf", "x1 + x2*x3", "--spec", R"({"periods": [14,3,7], "blocks": [[1]]})"});
  REQUIRE(skip.code == kExitOk);
  CHECK(skip.doc()["verdict"] == "SKIPPED");
  CHECK_FALSE(skip.doc()["reason"].get<std::string>().empty());

  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const testing::Instance inst = testing::random_instance(rng);
    const auto result = cross_check(inst.f, inst.spec());
    CHECK(result.verdict == Verdict::consistent);
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"analyze", "--tt", "zz", "--n", "2"}).code == kExitParse);
  CHECK(invoke({"analyze", "--tt", "88", "--n", "2"}).code == kExitParse);
  CHECK(invoke({"analyze", "--anf", "x1 +"}).code == kExitParse);
  CHECK(invoke({"bias", "--anf", "x1", "--spec", "{not json"}).code == kExitParse);
  CHECK(invoke({"frobnicate"}).code == kExitParse);
  CHECK(invoke({"bias", "--anf", "x1 + x2*x3", "--spec", kSpec, "--method", "guess"}).code == kExitParse);

  const auto fail = invoke({"bias", "--anf", "x1 + x2*x3", "--spec", R"({"periods": [14,3,7], "blocks": [[1]]})"});
  CHECK(fail.code == kExitValidation);
  CHECK_FALSE(fail.err.empty());
  CHECK(invoke({"bias", "--anf", "x1", "--spec", R"({"periods": [3,5], "blocks": [[1]]})"}).code == kExitValidation);
  CHECK(invoke({"bias", "--anf", "x1", "--spec", R"({"periods": [3], "blocks": [[2]]})"}).code == kExitValidation);
  CHECK(invoke({"bias", "--anf", "x1", "--spec", "/nonexistent/spec.json"}).code != kExitOk);
}

TEST_CASE("spec files and --out") {
  const auto dir = std::filesystem::temp_directory_path() / "pcbias_cli_test";
  std::filesystem::create_directories(dir);
  const auto spec_path = dir / "spec.json";
  std::ofstream(spec_path) << kSpec;
  const auto out_path = dir / "report.json";
  std::filesystem::remove(out_path);

  const auto r = invoke({"bias", "--anf", "x1 + x2*x3", "--spec", spec_path.string(), "--out", out_path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  const json doc = json::parse(in);
  CHECK(doc["exact"]["value"] == "1/4");

  const auto pretty = invoke({"bias", "--anf", "x1 + x2*x3", "--spec", spec_path.string(), "--pretty"});
  REQUIRE(pretty.code == kExitOk);
  CHECK(pretty.out.find("1/4") != std::string::npos);
  CHECK_FALSE(json::accept(pretty.out));
  std::filesystem::remove_all(dir);
}

TEST_CASE("json round trips") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const BooleanFunction f = testing::random_function(1 + trial % 8, rng);
    CHECK(function_from_json(function_to_json(f)) == f);
    json anf_only{{"anf", to_anf(f)}, {"n", f.variables()}};
    CHECK(function_from_json(anf_only) == f);
  }
  const ParityCheckSpec spec({3, 5, 7, 11}, {{3}, {0, 2}}, {2, 1});
  const ParityCheckSpec back = spec_from_json(spec_to_json(spec));
  CHECK(back.blocks() == spec.blocks());
  CHECK(std::vector(back.offsets().begin(), back.offsets().end()) ==
        std::vector(spec.offsets().begin(), spec.offsets().end()));
  CHECK(spec_to_json(spec)["blocks"] == json::parse("[[4], [1, 3]]"));
}
