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

#ifndef SCENECHECK_PROBES_HPP
#define SCENECHECK_PROBES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scenecheck/corpus.hpp"

namespace scenecheck {

enum class ProbeMode { RandomScene, OppositeQuestion };

const char* probe_mode_name(ProbeMode mode);
std::optional<ProbeMode> probe_mode_from(const std::string& name);

struct ProbeContext {
  std::string question_id;
  std::string scene_id;

  bool operator==(const ProbeContext&) const = default;
};

// Two evaluation contexts whose answers get compared by the HR indicator.
// RandomScene: same question, different scene. OppositeQuestion: same scene,
// question with one relation phrase swapped for its antonym.
struct ProbePair {
  std::string probe_id;
  ProbeMode mode = ProbeMode::RandomScene;
  ProbeContext context_a;
  ProbeContext context_b;
  std::string source_question_id;
  // False when the inverted phrasing is known-awkward (e.g. "far the door");
  // such pairs are still emitted and scored.
  bool grammatical = true;
};

// Ordered first-match keyword rules over the 11-type taxonomy.
QuestionType classify_question(const std::string& question);

// One pair per QA record; scene_b drawn uniformly from the other scenes by a
// seeded generator. Same seed + same input => identical output.
// Throws TooFewScenes when fewer than 2 scenes are loaded.
std::vector<ProbePair> generate_random_pairs(const std::vector<QARecord>& qa,
                                             const SceneCorpus& scenes,
                                             std::uint64_t seed);

// Antonym lookup; throws NoAntonym when the relation is not invertible.
std::string invert_relation(const std::string& relation, const Lexicon& lexicon);

struct OppositeGenReport {
  std::size_t emitted = 0;
  std::size_t skipped_no_phrase = 0;
  std::size_t skipped_multi_phrase = 0;
  std::size_t skipped_non_spatial = 0;
};

struct OppositeGenResult {
  std::vector<QARecord> questions;  // generated "-opp" questions
  std::vector<ProbePair> pairs;
  OppositeGenReport report;
};

// For each spatial-type record whose question contains exactly one invertible
// relation phrase (longest match), emits the phrase-swapped question under
// question_id + "-opp" plus an OppositeQuestion pair. Zero or >= 2 phrases,
// or a non-spatial type, skip the record (counted, never fatal).
OppositeGenResult generate_opposite_questions(const std::vector<QARecord>& qa,
                                              const Lexicon& lexicon);

std::string probe_pairs_to_jsonl(const std::vector<ProbePair>& pairs);
std::vector<ProbePair> load_probe_pairs(const std::string& path);

}  // namespace scenecheck

#endif  // SCENECHECK_PROBES_HPP
