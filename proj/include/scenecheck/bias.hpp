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

#ifndef SCENECHECK_BIAS_HPP
#define SCENECHECK_BIAS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scenecheck/corpus.hpp"
#include "scenecheck/grounding.hpp"

namespace scenecheck {

struct ObjectStats {
  std::string label;
  std::size_t present_scenes = 0;
  std::size_t absent_scenes = 0;
  std::size_t hallucinated_in_absent = 0;
  double frequency = 0.0;
  // hallucinated_in_absent / absent_scenes; empty when never absent.
  std::optional<double> hallucination_rate;
};

struct CooccurrenceStat {
  std::string a_label;
  std::string b_label;
  std::size_t count_a = 0;
  std::size_t count_ab = 0;
  std::optional<double> p_b_given_a;  // empty when a never occurs
};

struct TopKStat {
  std::string object_label;
  AttrKind kind = AttrKind::Color;
  std::size_t k = 0;
  std::size_t n_queries = 0;
  std::size_t distinct_values = 0;
  double ratio = 0.0;
};

struct Correlations {
  double pearson = 0.0;
  double spearman = 0.0;
};

// Per-label presence counts over all scenes. Throws EmptyCorpus.
std::map<std::string, ObjectStats> object_frequency(const SceneCorpus& scenes);

// HR over *evaluated* scenes (scenes with at least one record in evals):
// absent_scenes counts evaluated scenes lacking the label;
// hallucinated_in_absent counts those where some record predicted it.
std::map<std::string, ObjectStats> object_hallucination_rate(
    const std::vector<RecordEval>& evals, const SceneCorpus& scenes);


std::vector<CooccurrenceStat> cooccurrence_conditional(
    const SceneCorpus& scenes,
    const std::vector<std::pair<std::string, std::string>>& pairs);

// Cross product of the top_n most frequent labels (ties broken by label).
std::vector<std::pair<std::string, std::string>> default_cooccurrence_pairs(
    const SceneCorpus& scenes, std::size_t top_n = 20);

// First attribute_vocab term of `kind` found in the tokenized answer
// (longest match wins at each position); no term -> "other".
std::string reduce_attribute_answer(const std::string& answer, AttrKind kind,
                                    const Lexicon& lexicon);

// Ratio of the k largest value-bucket counts to N. Throws EmptyGroup on
// empty counts.
TopKStat topk_from_counts(const std::string& object_label, AttrKind kind,
                          const std::map<std::string, std::size_t>& value_counts,
                          std::size_t k);

// Groups attribute-type QA records by (first object mentioned in the
// question, kind from question_type), reduces ground-truth answers, and
// scores each group. Records with no recognizable object are skipped.
std::vector<TopKStat> topk_groups(const std::vector<QARecord>& qa,
                                  const Lexicon& lexicon, std::size_t k);

// Pearson r and Spearman rho (average ranks on ties). Throws
// DegenerateInput when sizes differ, n < 3, or either series is constant.
Correlations rank_correlation(const std::vector<double>& x,
                              const std::vector<double>& y);

// CSV emitters (RFC 4180, CRLF line ends, header row first).
// object_stats_csv keeps the two denominators separate: presence columns
// come from the corpus-wide `freq` map, HR columns from the
// evaluated-subset `hr` map.
std::string object_stats_csv(const std::map<std::string, ObjectStats>& freq,
                             const std::map<std::string, ObjectStats>& hr);
std::string cooccurrence_csv(const std::vector<CooccurrenceStat>& stats);
std::string topk_csv(const std::vector<TopKStat>& stats);

// Corpus-wide frequency beside evaluated-subset HR, one row per label known
// to either map (dataset property vs. model property, as plotted).
std::string scatter_freq_hr_csv(const std::map<std::string, ObjectStats>& freq,
                                const std::map<std::string, ObjectStats>& hr);

}  // namespace scenecheck

#endif  // SCENECHECK_BIAS_HPP
