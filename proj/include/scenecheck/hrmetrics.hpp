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

#ifndef SCENECHECK_HRMETRICS_HPP
#define SCENECHECK_HRMETRICS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "scenecheck/corpus.hpp"
#include "scenecheck/probes.hpp"

namespace scenecheck {

struct PairOutcome {
  std::string probe_id;
  std::string source_question_id;
  QuestionType question_type = QuestionType::Other;
  double score = 0.0;  // rouge of answer_a (candidate) vs answer_b (reference)
  bool hallucinated = false;
  bool grammatical = true;
};

struct TypeStats {
  std::size_t n = 0;
  std::size_t n_hallucinated = 0;
  double rate = 0.0;
};

struct HRReport {
  ProbeMode mode = ProbeMode::RandomScene;
  std::string model_id;
  std::size_t n = 0;
  std::size_t n_hallucinated = 0;
  double rate = 0.0;
  std::map<QuestionType, TypeStats> per_type;  // empty groups omitted
  double threshold = 0.66;
  std::string metric_name = "rouge_l_f1";
  std::size_t skipped_missing_response = 0;
  std::vector<PairOutcome> details;
};

// A pair is hallucinated iff rouge_l(tokenize(a), tokenize(b)) > threshold,
// strictly, with context_a's answer as candidate. Pairs missing either
// response are excluded and counted. `qa` supplies source question types for
// the per-type breakdown (unknown sources fall into Other). An empty
// model_id auto-selects the single model present in `responses`.
// Throws NoScoredPairs when every pair is excluded, InvalidConfig when the
// model is ambiguous.
HRReport score_probe_pairs(const std::vector<ProbePair>& pairs,
                           const std::vector<ResponseRecord>& responses,
                           const std::string& model_id, double threshold,
                           const std::vector<QARecord>& qa = {});

// Explicit id passes through; empty id resolves to the single model present
// in `responses` or throws InvalidConfig.
std::string resolve_model_id(const std::vector<ResponseRecord>& responses,
                             const std::string& requested);

struct TypeAccuracy {
  std::size_t n = 0;
  double mean_rouge = 0.0;
  double mean_meteor = 0.0;
};

// Mean text similarity of each model answer to the ground-truth answer,
// grouped by question type (original contexts only).
std::map<QuestionType, TypeAccuracy> accuracy_by_type(
    const std::vector<QARecord>& qa,
    const std::vector<ResponseRecord>& responses, const std::string& model_id);

// Row group: the four spatial types under "Relation", the three attribute
// types under "Property", the rest standing alone.
const char* question_group_name(QuestionType type);

std::string hr_report_to_json(const HRReport& report);

// One row per taxonomy type plus a closing "all" row; accuracy columns blank
// for types with no graded answers, HR columns blank for types with no
// scored pairs. Percentages with 2 decimals.
std::string hr_table_csv(const HRReport& report,
                         const std::map<QuestionType, TypeAccuracy>& accuracy);

}  // namespace scenecheck

#endif  // SCENECHECK_HRMETRICS_HPP
