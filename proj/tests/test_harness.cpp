// Copyright 2026 The scenecheck Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenecheck/errors.hpp"
#include "scenecheck/harness.hpp"
#include "test_support.hpp"

using namespace scenecheck;
using scenecheck::testing::fixture_path;
using scenecheck::testing::TempDir;

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig fixture_config(const std::string& out_dir) {
  RunConfig cfg;
  cfg.scene_path = fixture_path("scenes_small.json");
  cfg.qa_path = fixture_path("qa_small.jsonl");
  cfg.response_path = fixture_path("responses_small.jsonl");
  cfg.model_id = "grounded-ish";  // the fixture file carries two models
  cfg.output_dir = out_dir;
  return cfg;
}

const std::vector<std::string> kExpectedOutputs = {
    "object_evals.jsonl", "summary.json",          "summary.csv",
    "object_stats.csv",   "scatter_freq_hr.csv",   "correlations.json",
    "cooccurrence.csv",   "topk.csv",              "probes_random.jsonl",
    "probes_opposite.jsonl", "qa_opposite.jsonl",  "probe_skips.json",
    "hr_random.json",     "hr_random.csv",         "hr_opposite.json",
    "hr_opposite.csv",    "run_metadata.json",
};

}  // namespace

TEST_CASE("RunConfig::from_json_text: defaults and overrides") {
  const RunConfig defaults = RunConfig::from_json_text("{}");
  CHECK(defaults.scene_path.empty());
  CHECK(defaults.lexicon_path.empty());
  CHECK(defaults.model_id.empty());
  CHECK(defaults.threshold == 0.66);
  CHECK(defaults.seed == 0);
  CHECK(defaults.rouge_variant == "rouge_l_f1");
  CHECK(defaults.aggregation == "micro+macro");
  CHECK(defaults.emit_timestamp);

  const RunConfig cfg = RunConfig::from_json_text(R"({
    "scene_path": "s.json",
    "qa_path": "q.jsonl",
    "response_path": "r.jsonl",
    "lexicon_path": "lex.json",
    "model_id": "m",
    "threshold": 0.5,
    "seed": 42,
    "output_dir": "out",
    "emit_timestamp": false
  })");
  CHECK(cfg.scene_path == "s.json");
  CHECK(cfg.qa_path == "q.jsonl");
  CHECK(cfg.response_path == "r.jsonl");
  CHECK(cfg.lexicon_path == "lex.json");
  CHECK(cfg.model_id == "m");
  CHECK(cfg.threshold == 0.5);
  CHECK(cfg.seed == 42);
  CHECK(cfg.output_dir == "out");
  CHECK_FALSE(cfg.emit_timestamp);
}

TEST_CASE("RunConfig::from_json_text: malformed input is InvalidConfig") {
  for (const char* bad : {"not json", "[1,2]", "42",
                          R"({"threshold": "high"})",
                          R"({"seed": "zero"})"}) {
    CAPTURE(bad);
    try {
      RunConfig::from_json_text(bad);
      FAIL_CHECK("expected InvalidConfig for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidConfig);
    }
  }
}

TEST_CASE("RunConfig::from_json_file: round-trip and missing file") {
  TempDir tmp;
  const std::string path = tmp.str("config.json");
  {
    std::ofstream out(path);
    out << R"({"scene_path": "a", "threshold": 0.7})";
  }
  const RunConfig cfg = RunConfig::from_json_file(path);
  CHECK(cfg.scene_path == "a");
  CHECK(cfg.threshold == 0.7);

  try {
    RunConfig::from_json_file(tmp.str("absent.json"));
    FAIL("expected InvalidConfig");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidConfig);
  }
}

TEST_CASE("RunConfig::validate: required fields and threshold range") {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp.str("out"));
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("missing input path") {
    cfg.qa_path.clear();
    CHECK_THROWS_AS(cfg.validate(), Error);
  }
  SUBCASE("missing output dir") {
    cfg.output_dir.clear();
    CHECK_THROWS_AS(cfg.validate(), Error);
  }
  SUBCASE("threshold above one") {
    cfg.threshold = 1.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }
  SUBCASE("threshold below zero") {
    cfg.threshold = -0.1;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }
  SUBCASE("threshold NaN") {
    cfg.threshold = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(cfg.validate(), Error);
  }
}

TEST_CASE("exit_code_for: IoError is internal, the rest are input errors") {
  CHECK(exit_code_for(ErrorKind::IoError) == 1);
  for (ErrorKind kind :
       {ErrorKind::MalformedFile, ErrorKind::IntegrityError,
        ErrorKind::DanglingSceneRef, ErrorKind::DuplicateResponse,
        ErrorKind::EmptyCorpus, ErrorKind::EmptyGroup,
        ErrorKind::DegenerateInput, ErrorKind::TooFewScenes,
        ErrorKind::NoAntonym, ErrorKind::NoScoredPairs,
        ErrorKind::InvalidConfig}) {
    CHECK(exit_code_for(kind) == 2);
  }
}

TEST_CASE("error_json: single-line envelope") {
  const std::string text =
      error_json(ErrorKind::MalformedFile, "bad line 7");
  CHECK(text.back() == '\n');
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc.at("error").at("kind") == "MalformedFile");
  CHECK(doc.at("error").at("message") == "bad line 7");
}

TEST_CASE("run_pipeline: writes the full report set") {
  TempDir tmp;
  const std::string out_dir = tmp.str("run");
  const RunConfig cfg = fixture_config(out_dir);
  const RunResult result = run_pipeline(cfg);

  CHECK(result.exit_code == 0);
  REQUIRE(result.outputs.size() == kExpectedOutputs.size());
  for (std::size_t i = 0; i < kExpectedOutputs.size(); ++i) {
    const fs::path expected = fs::path(out_dir) / kExpectedOutputs[i];
    CHECK(result.outputs[i] == expected.string());
    CHECK(fs::exists(expected));
    CHECK(fs::file_size(expected) > 0);
  }

  // Spot-check the metadata document.
  const auto meta = nlohmann::json::parse(slurp(tmp.str("run/run_metadata.json")));
  CHECK(meta.at("version") == kVersion);
  CHECK(meta.at("config").at("model_id") == "grounded-ish");
  CHECK(meta.at("config").at("lexicon") == "bundled-default");
  CHECK(meta.at("counts").at("scenes") == 3);
  CHECK(meta.at("counts").at("qa") == 12);
  CHECK(meta.at("counts").at("responses") == 24);     // both models
  CHECK(meta.at("counts").at("evaluated_records") == 12);
  CHECK(meta.at("join").at("matched") == 12);
  CHECK(meta.contains("timestamp_utc"));
  for (const char* key : {"scenes", "qa", "responses", "lexicon"}) {
    const std::string hash = meta.at("input_hashes").at(key);
    CHECK(hash.size() == 16);  // fnv-1a, fixed-width hex
    CHECK(hash.find_first_not_of("0123456789abcdef") == std::string::npos);
  }

  // The summary must agree between JSON and CSV renderings.
  const auto summary = nlohmann::json::parse(slurp(tmp.str("run/summary.json")));
  CHECK(summary.at("model_id") == "grounded-ish");
  CHECK(summary.at("n_records") == 12);
  const std::string csv = slurp(tmp.str("run/summary.csv"));
  CHECK(csv.rfind("aggregation,n_records,precision_pct,recall_pct,f1_pct\r\n",
                  0) == 0);
  CHECK(csv.find("micro,12,") != std::string::npos);
  CHECK(csv.find("macro,12,") != std::string::npos);
}

TEST_CASE("run_pipeline: byte-identical reruns without the timestamp") {
  TempDir tmp;
  RunConfig cfg_a = fixture_config(tmp.str("a"));
  cfg_a.emit_timestamp = false;
  RunConfig cfg_b = fixture_config(tmp.str("b"));
  cfg_b.emit_timestamp = false;

  run_pipeline(cfg_a);
  run_pipeline(cfg_b);

  for (const auto& name : kExpectedOutputs) {
    CAPTURE(name);
    CHECK(slurp(tmp.str("a/" + name)) == slurp(tmp.str("b/" + name)));
  }
  const auto meta = nlohmann::json::parse(slurp(tmp.str("a/run_metadata.json")));
  CHECK_FALSE(meta.contains("timestamp_utc"));
}

TEST_CASE("run_pipeline: configuration problems throw before any output") {
  TempDir tmp;

  SUBCASE("empty config") {
    RunConfig cfg;
    cfg.output_dir = tmp.str("out");
    CHECK_THROWS_AS(run_pipeline(cfg), Error);
  }
  SUBCASE("two models and no explicit id") {
    RunConfig cfg = fixture_config(tmp.str("out"));
    cfg.model_id.clear();
    try {
      run_pipeline(cfg);
      FAIL("expected InvalidConfig");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidConfig);
    }
  }
  SUBCASE("missing scene file") {
    RunConfig cfg = fixture_config(tmp.str("out"));
    cfg.scene_path = tmp.str("nope.json");
    CHECK_THROWS_AS(run_pipeline(cfg), Error);
  }
}

TEST_CASE("merge_reports: combines the JSON reports of a finished run") {
  TempDir tmp;
  const std::string out_dir = tmp.str("run");
  run_pipeline(fixture_config(out_dir));

  const auto merged = nlohmann::json::parse(merge_reports(out_dir));
  for (const char* key : {"summary", "correlations", "probe_skips",
                          "hr_random", "hr_opposite", "run_metadata"}) {
    CAPTURE(key);
    CHECK(merged.contains(key));
  }
  CHECK(merged.at("summary") ==
        nlohmann::json::parse(slurp(tmp.str("run/summary.json"))));
  CHECK(merged.at("run_metadata") ==
        nlohmann::json::parse(slurp(tmp.str("run/run_metadata.json"))));
}

TEST_CASE("merge_reports: tolerates absent files, rejects corrupt ones") {
  TempDir tmp;
  const std::string empty_dir = tmp.str("empty");
  fs::create_directories(empty_dir);
  CHECK(merge_reports(empty_dir) == "{}\n");

  const std::string bad_dir = tmp.str("bad");
  fs::create_directories(bad_dir);
  { std::ofstream(bad_dir + "/summary.json") << "{boom"; }
  try {
    merge_reports(bad_dir);
    FAIL("expected MalformedFile");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedFile);
  }
}

#ifdef SCENECHECK_CLI_PATH
namespace {

int run_cli(const std::string& args, const std::string& stderr_file) {
  const std::string cmd =
      std::string(SCENECHECK_CLI_PATH) + " " + args + " 2>" + stderr_file;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli: validate succeeds on the fixtures") {
  TempDir tmp;
  const int code = run_cli("validate --scenes " + fixture_path("scenes_small.json") +
                               " --qa " + fixture_path("qa_small.jsonl"),
                           tmp.str("err.txt"));
  CHECK(code == 0);
}

TEST_CASE("cli: input errors exit 2 with a JSON envelope on stderr") {
  TempDir tmp;
  const std::string err_file = tmp.str("err.txt");
  const int code = run_cli("validate --scenes " + tmp.str("missing.json") +
                               " --qa " + fixture_path("qa_small.jsonl"),
                           err_file);
  CHECK(code == 2);
  const auto doc = nlohmann::json::parse(slurp(err_file));
  CHECK(doc.contains("error"));
  CHECK(doc.at("error").contains("kind"));
  CHECK(doc.at("error").contains("message"));
}

TEST_CASE("cli: bad flags exit 2") {
  TempDir tmp;
  CHECK(run_cli("validate --no-such-flag", tmp.str("err.txt")) == 2);
  CHECK(run_cli("frobnicate", tmp.str("err2.txt")) == 2);
}
#endif  // SCENECHECK_CLI_PATH
