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

#include "scenecheck/hrmetrics.hpp"

#include <cstdio>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "scenecheck/errors.hpp"
#include "scenecheck/textmetrics.hpp"

namespace scenecheck {

using nlohmann::json;

std::string resolve_model_id(const std::vector<ResponseRecord>& responses,
                             const std::string& requested) {
  if (!requested.empty()) return requested;
  std::set<std::string> models;
  for (const auto& r : responses) models.insert(r.model_id);
  if (models.size() != 1) {
    throw Error(ErrorKind::InvalidConfig,
                "response file has " + std::to_string(models.size()) +
                    " model ids; pass an explicit model id");
  }
  return *models.begin();
}

namespace {

using AnswerKey = std::pair<std::string, std::string>;  // (question_id, scene_id)

std::map<AnswerKey, std::string> answer_index(
    const std::vector<ResponseRecord>& responses, const std::string& model_id) {
  std::map<AnswerKey, std::string> index;
  for (const auto& r : responses) {
    if (r.model_id == model_id) index[{r.question_id, r.scene_id}] = r.answer;
  }
  return index;
}

std::string fmt_pct(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ratio);
  return buf;
}

}  // namespace

const char* question_group_name(QuestionType type) {
  switch (type) {
    case QuestionType::Direction:
    case QuestionType::Containment:
    case QuestionType::Contact:
    case QuestionType::Distance:
      return "Relation";
    case QuestionType::Color:
    case QuestionType::Shape:
    case QuestionType::Size:
      return "Property";
    default:
      return question_type_name(type);
  }
}

HRReport score_probe_pairs(const std::vector<ProbePair>& pairs,
                           const std::vector<ResponseRecord>& responses,
                           const std::string& model_id, double threshold,
                           const std::vector<QARecord>& qa) {
  HRReport report;
  report.threshold = threshold;
  report.model_id = resolve_model_id(responses, model_id);
  if (!pairs.empty()) report.mode = pairs.front().mode;

  const auto answers = answer_index(responses, report.model_id);
  std::unordered_map<std::string, QuestionType> types;
  types.reserve(qa.size());
  for (const auto& q : qa) types.emplace(q.question_id, q.question_type);

  for (const auto& pair : pairs) {
    auto a = answers.find({pair.context_a.question_id, pair.context_a.scene_id});
    auto b = answers.find({pair.context_b.question_id, pair.context_b.scene_id});
    if (a == answers.end() || b == answers.end()) {
      ++report.skipped_missing_response;
      continue;
    }
    PairOutcome outcome;
    outcome.probe_id = pair.probe_id;
    outcome.source_question_id = pair.source_question_id;
    outcome.grammatical = pair.grammatical;
    if (auto it = types.find(pair.source_question_id); it != types.end()) {
      outcome.question_type = it->second;
    }
    outcome.score = rouge_l(tokenize(a->second), tokenize(b->second));
    outcome.hallucinated = exceeds_threshold(outcome.score, threshold);

    ++report.n;
    auto& ts = report.per_type[outcome.question_type];
    ++ts.n;
    if (outcome.hallucinated) {
      ++report.n_hallucinated;
      ++ts.n_hallucinated;
    }
    report.details.push_back(std::move(outcome));
  }

  if (report.n == 0) {
    throw Error(ErrorKind::NoScoredPairs,
                "score_probe_pairs: no pair had responses for both contexts");
  }
  report.rate = static_cast<double>(report.n_hallucinated) /
                static_cast<double>(report.n);
  for (auto& [type, ts] : report.per_type) {
    (void)type;
    ts.rate = static_cast<double>(ts.n_hallucinated) / static_cast<double>(ts.n);
  }
  return report;
}

std::map<QuestionType, TypeAccuracy> accuracy_by_type(
    const std::vector<QARecord>& qa,
    const std::vector<ResponseRecord>& responses, const std::string& model_id) {
  const auto answers = answer_index(responses, resolve_model_id(responses, model_id));
  std::map<QuestionType, TypeAccuracy> acc;
  for (const auto& q : qa) {
    auto it = answers.find({q.question_id, q.scene_id});
    if (it == answers.end()) continue;
    auto cand = tokenize(it->second);
    auto ref = tokenize(q.answer);
    auto& a = acc[q.question_type];
    ++a.n;
    a.mean_rouge += rouge_l(cand, ref);
    a.mean_meteor += meteor_lite(cand, ref);
  }
  for (auto& [type, a] : acc) {
    (void)type;
    a.mean_rouge /= static_cast<double>(a.n);
    a.mean_meteor /= static_cast<double>(a.n);
  }
  return acc;
}

std::string hr_report_to_json(const HRReport& report) {
  json per_type = json::object();
  for (const auto& [type, ts] : report.per_type) {
    per_type[question_type_name(type)] = {{"n", ts.n},
                                          {"n_hallucinated", ts.n_hallucinated},
                                          {"rate", ts.rate}};
  }
  json details = json::array();
  for (const auto& d : report.details) {
    details.push_back({{"probe_id", d.probe_id},
                       {"source_question_id", d.source_question_id},
                       {"question_type", question_type_name(d.question_type)},
                       {"score", d.score},
                       {"hallucinated", d.hallucinated},
                       {"grammatical", d.grammatical}});
  }
  json doc{{"mode", probe_mode_name(report.mode)},
           {"model_id", report.model_id},
           {"metric_name", report.metric_name},
           {"threshold", report.threshold},
           {"n", report.n},
           {"n_hallucinated", report.n_hallucinated},
           {"rate", report.rate},
           {"hr_percent", 100.0 * report.rate},
           {"per_type", per_type},
           {"coverage",
            {{"scored", report.n},
             {"skipped_missing_response", report.skipped_missing_response}}},
           {"pairs", details}};
  return doc.dump(2) + "\n";
}

std::string hr_table_csv(const HRReport& report,
                         const std::map<QuestionType, TypeAccuracy>& accuracy) {
  std::string out =
      "group,question_type,n_graded,accuracy_rouge_pct,accuracy_meteor_pct,"
      "n_pairs,hr_pct\r\n";
  for (QuestionType type : kAllQuestionTypes) {
    out += question_group_name(type);
    out += ',';
    out += question_type_name(type);
    if (auto it = accuracy.find(type); it != accuracy.end()) {
      out += ',' + std::to_string(it->second.n);
      out += ',' + fmt_pct(it->second.mean_rouge);
      out += ',' + fmt_pct(it->second.mean_meteor);
    } else {
      out += ",0,,";
    }
    if (auto it = report.per_type.find(type); it != report.per_type.end()) {
      out += ',' + std::to_string(it->second.n);
      out += ',' + fmt_pct(it->second.rate);
    } else {
      out += ",0,";
    }
    out += "\r\n";
  }
  std::size_t graded = 0;
  double rouge_sum = 0.0, meteor_sum = 0.0;
  for (const auto& [type, a] : accuracy) {
    (void)type;
    graded += a.n;
    rouge_sum += a.mean_rouge * static_cast<double>(a.n);
    meteor_sum += a.mean_meteor * static_cast<double>(a.n);
  }
  out += "all,all," + std::to_string(graded);
  if (graded > 0) {
    out += ',' + fmt_pct(rouge_sum / static_cast<double>(graded));
    out += ',' + fmt_pct(meteor_sum / static_cast<double>(graded));
  } else {
    out += ",,";
  }
  out += ',' + std::to_string(report.n);
  out += ',';
  if (report.n > 0) out += fmt_pct(report.rate);
  out += "\r\n";
  return out;
}

}  // namespace scenecheck
