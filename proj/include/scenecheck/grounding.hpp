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

#ifndef SCENECHECK_GROUNDING_HPP
#define SCENECHECK_GROUNDING_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "scenecheck/corpus.hpp"

namespace scenecheck {

struct MentionSet {
  std::set<std::string> labels;  // canonical per lexicon
};

// Token span [begin, end) of one recognized object mention.
struct MentionSpan {
  std::string label;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct AttributeAssertion {
  std::string object_label;
  AttrKind kind = AttrKind::Color;
  std::string value;

  bool operator==(const AttributeAssertion&) const = default;
};

struct RelationAssertion {
  std::string subject_label;
  std::string relation;
  std::string object_label;

  bool operator==(const RelationAssertion&) const = default;
};

// Precision/recall/F1 of predicted object set A vs. scene truth B.
// Empty sides score 0 on the affected metric and raise the matching flag.
struct ObjectEvalResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::set<std::string> intersection;
  std::set<std::string> predicted_only;
  std::set<std::string> truth_only;
  bool empty_prediction = false;
  bool empty_truth = false;
};

// Greedy longest-match scan of the tokenized text against object synonym
// phrases; matched surfaces map to canonical labels.
std::vector<MentionSpan> extract_mention_spans(
    const std::vector<std::string>& tokens, const Lexicon& lexicon);
MentionSet extract_object_mentions(const std::string& text,
                                   const Lexicon& lexicon);

MentionSet scene_object_set(const SceneGraph& scene);

ObjectEvalResult object_eval(const MentionSet& predicted,
                             const MentionSet& truth);

// Harmonic mean 2PR/(P+R); 0 when P+R = 0.
double harmonic_f1(double precision, double recall);

// An attribute term binds to the nearest object mention within a window of
// up to 3 tokens strictly between term and mention; ties prefer the
// preceding mention. Output ordered by term position, exact duplicates
// dropped.
std::vector<AttributeAssertion> extract_attribute_assertions(
    const std::string& text, const Lexicon& lexicon);

// A relation phrase (antonym-lexicon key) binds a subject mention on its
// left and an object mention on its right when each gap is at most 3 tokens
// and every gap token is a stopword.
std::vector<RelationAssertion> extract_relation_assertions(
    const std::string& text, const Lexicon& lexicon);

struct AttrMismatch {
  std::string object_label;
  AttrKind kind = AttrKind::Color;
  std::string predicted;
  std::vector<std::string> true_values;  // annotated values that contradict
};

// Mismatch: the scene has the object but every annotated value of that kind
// differs. No annotated value of the kind -> unverifiable. No such object
// -> object-level hallucination.
struct AttrCheckResult {
  std::vector<AttrMismatch> mismatches;
  std::vector<AttributeAssertion> unverifiable;
  std::vector<AttributeAssertion> absent_object;
  std::size_t checked = 0;  // assertions with verifiable ground truth
  std::size_t matched = 0;
};

AttrCheckResult attribute_hallucinations(
    const std::vector<AttributeAssertion>& pred, const SceneGraph& scene);

struct RelationMismatch {
  RelationAssertion pred;
  std::vector<std::string> true_relations;  // annotated for the same pair
};

struct RelationCheckResult {
  std::vector<RelationMismatch> mismatches;
  std::vector<RelationAssertion> unverifiable;
  std::vector<RelationAssertion> absent_object;
  std::size_t checked = 0;
  std::size_t matched = 0;
};

RelationCheckResult relation_hallucinations(
    const std::vector<RelationAssertion>& pred, const SceneGraph& scene);

// Full grounding pass for one model answer against its scene.
struct RecordEval {
  std::string question_id;
  std::string scene_id;
  std::string model_id;
  ObjectEvalResult objects;
  AttrCheckResult attrs;
  RelationCheckResult relations;
};

RecordEval evaluate_response(const ResponseRecord& response,
                             const SceneGraph& scene, const Lexicon& lexicon);

std::string record_evals_to_jsonl(const std::vector<RecordEval>& evals);

}  // namespace scenecheck

#endif  // SCENECHECK_GROUNDING_HPP
