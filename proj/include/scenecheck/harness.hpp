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

#ifndef SCENECHECK_HARNESS_HPP
#define SCENECHECK_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "scenecheck/errors.hpp"

namespace scenecheck {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string scene_path;
  std::string qa_path;
  std::string response_path;
  std::string lexicon_path;  // empty -> bundled default
  std::string model_id;      // empty -> sole model in the response file
  double threshold = 0.66;
  std::uint64_t seed = 0;
  std::string output_dir;
  // Declared so downstream readers know which variant produced the numbers.
  std::string rouge_variant = "rouge_l_f1";
  std::string aggregation = "micro+macro";
  // Echoed into run metadata; omitted from it when empty (e.g. tests that
  // need byte-identical reruns).
  bool emit_timestamp = true;

  static RunConfig from_json_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);
  void validate() const;  // throws InvalidConfig
};

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> outputs;  // paths written, in emission order
};

// Full pipeline: ingest, per-record grounding, bias stats, probe generation,
// HR scoring, metadata. Throws Error on ingestion/config failures; callers
// map ErrorKind to an exit code via exit_code_for.
RunResult run_pipeline(const RunConfig& config);

// 2 for input/config problems, 1 for internal failures.
int exit_code_for(ErrorKind kind);

// {"error": {"kind": ..., "message": ...}} with a trailing newline.
std::string error_json(ErrorKind kind, const std::string& message);

// Merges the JSON reports under dir (summary, correlations, hr_*, skips,
// metadata) into one document.
std::string merge_reports(const std::string& dir);

}  // namespace scenecheck

#endif  // SCENECHECK_HARNESS_HPP
