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

#include "scenecheck/harness.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "scenecheck/bias.hpp"
#include "scenecheck/corpus.hpp"
#include "scenecheck/grounding.hpp"
#include "scenecheck/hrmetrics.hpp"
#include "scenecheck/probes.hpp"
#include "scenecheck/util.hpp"

namespace scenecheck {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  return from_json_text(text);
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::InvalidConfig, "config: top level must be an object");
  }
  RunConfig cfg;
  try {
    cfg.scene_path = doc.value("scene_path", cfg.scene_path);
    cfg.qa_path = doc.value("qa_path", cfg.qa_path);
    cfg.response_path = doc.value("response_path", cfg.response_path);
    cfg.lexicon_path = doc.value("lexicon_path", cfg.lexicon_path);
    cfg.model_id = doc.value("model_id", cfg.model_id);
    cfg.threshold = doc.value("threshold", cfg.threshold);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
    cfg.rouge_variant = doc.value("rouge_variant", cfg.rouge_variant);
    cfg.aggregation = doc.value("aggregation", cfg.aggregation);
    cfg.emit_timestamp = doc.value("emit_timestamp", cfg.emit_timestamp);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("config: ") + e.what());
  }
  return cfg;
}

void RunConfig::validate() const {
  if (scene_path.empty() || qa_path.empty() || response_path.empty()) {
    throw Error(ErrorKind::InvalidConfig,
                "config: scene_path, qa_path and response_path are required");
  }
  if (output_dir.empty()) {
    throw Error(ErrorKind::InvalidConfig, "config: output_dir is required");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "config: threshold must be in [0,1]");
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError:
      return 1;  // environment/write failure, not caller input
    default:
      return 2;
  }
}

std::string error_json(ErrorKind kind, const std::string& message) {
  json doc{{"error", {{"kind", error_kind_name(kind)}, {"message", message}}}};
  return doc.dump() + "\n";
}

namespace {

std::string hash_hex(std::string_view bytes) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Aggregate {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Aggregate micro_aggregate(const std::vector<RecordEval>& evals) {
  std::size_t inter = 0, pred = 0, truth = 0;
  for (const auto& e : evals) {
    inter += e.objects.intersection.size();
    pred += e.objects.intersection.size() + e.objects.predicted_only.size();
    truth += e.objects.intersection.size() + e.objects.truth_only.size();
  }
  Aggregate a;
  a.precision = pred ? static_cast<double>(inter) / static_cast<double>(pred) : 0.0;
  a.recall = truth ? static_cast<double>(inter) / static_cast<double>(truth) : 0.0;
  a.f1 = (pred + truth) ? 2.0 * static_cast<double>(inter) /
                              static_cast<double>(pred + truth)
                        : 0.0;
  return a;
}

Aggregate macro_aggregate(const std::vector<RecordEval>& evals) {
  Aggregate a;
  if (evals.empty()) return a;
  for (const auto& e : evals) {
    a.precision += e.objects.precision;
    a.recall += e.objects.recall;
    a.f1 += e.objects.f1;
  }
  const double n = static_cast<double>(evals.size());
  a.precision /= n;
  a.recall /= n;
  a.f1 /= n;
  return a;
}

std::string fmt_pct(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ratio);
  return buf;
}

class OutputWriter {
 public:
  explicit OutputWriter(const std::string& dir) : dir_(dir) {}

  void write(const std::string& name, std::string_view contents) {
    fs::path path = fs::path(dir_) / name;
    write_file(path.string(), contents);
    written_.push_back(path.string());
  }

  std::vector<std::string> paths() const { return written_; }

 private:
  std::string dir_;
  std::vector<std::string> written_;
};

}  // namespace

RunResult run_pipeline(const RunConfig& config) {
  config.validate();
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoError,
                "cannot create output dir " + config.output_dir + ": " + ec.message());
  }

  const Lexicon lexicon = config.lexicon_path.empty()
                              ? Lexicon::bundled_default()
                              : Lexicon::from_json_file(config.lexicon_path);
  const SceneCorpus scenes = load_scene_graphs(config.scene_path, lexicon);
  const auto qa = load_qa_dataset(config.qa_path, scenes);
  const auto responses = load_responses(config.response_path);
  const std::string model = resolve_model_id(responses, config.model_id);

  std::vector<ResponseRecord> model_responses;
  for (const auto& r : responses) {
    if (r.model_id == model) model_responses.push_back(r);
  }
  const JoinReport join = validate_join(qa, model_responses);

  OutputWriter out(config.output_dir);

  // -- Per-record grounding over original (joined) contexts ----------------
  std::set<std::pair<std::string, std::string>> qa_keys;
  for (const auto& q : qa) qa_keys.emplace(q.question_id, q.scene_id);
  std::vector<RecordEval> evals;
  for (const auto& r : model_responses) {
    if (!qa_keys.count({r.question_id, r.scene_id})) continue;
    const SceneGraph* scene = scenes.find(r.scene_id);
    if (!scene) continue;
    evals.push_back(evaluate_response(r, *scene, lexicon));
  }
  out.write("object_evals.jsonl", record_evals_to_jsonl(evals));

  const Aggregate micro = micro_aggregate(evals);
  const Aggregate macro = macro_aggregate(evals);
  json summary{{"model_id", model},
               {"n_records", evals.size()},
               {"micro",
                {{"precision", micro.precision},
                 {"recall", micro.recall},
                 {"f1", micro.f1}}},
               {"macro",
                {{"precision", macro.precision},
                 {"recall", macro.recall},
                 {"f1", macro.f1}}},
               {"join",
                {{"matched", join.matched},
                 {"unmatched_qa", join.unmatched_qa},
                 {"unmatched_responses", join.unmatched_resp}}}};
  out.write("summary.json", summary.dump(2) + "\n");
  std::string summary_csv =
      "aggregation,n_records,precision_pct,recall_pct,f1_pct\r\n";
  summary_csv += "micro," + std::to_string(evals.size()) + ',' +
                 fmt_pct(micro.precision) + ',' + fmt_pct(micro.recall) + ',' +
                 fmt_pct(micro.f1) + "\r\n";
  summary_csv += "macro," + std::to_string(evals.size()) + ',' +
                 fmt_pct(macro.precision) + ',' + fmt_pct(macro.recall) + ',' +
                 fmt_pct(macro.f1) + "\r\n";
  out.write("summary.csv", summary_csv);

  // -- Dataset bias ---------------------------------------------------------
  const auto freq = object_frequency(scenes);
  std::map<std::string, ObjectStats> hr;
  if (!evals.empty()) hr = object_hallucination_rate(evals, scenes);
  out.write("object_stats.csv", object_stats_csv(freq, hr));
  out.write("scatter_freq_hr.csv", scatter_freq_hr_csv(freq, hr));

  json correlations{{"n", 0},
                    {"pearson", nullptr},
                    {"spearman", nullptr}};
  {
    std::vector<double> x, y;
    for (const auto& [label, s] : hr) {
      if (!s.hallucination_rate) continue;
      auto it = freq.find(label);
      if (it == freq.end()) continue;
      x.push_back(it->second.frequency);
      y.push_back(*s.hallucination_rate);
    }
    correlations["n"] = x.size();
    try {
      Correlations c = rank_correlation(x, y);
      correlations["pearson"] = c.pearson;
      correlations["spearman"] = c.spearman;
    } catch (const Error& e) {
      correlations["note"] = e.what();
    }
  }
  out.write("correlations.json", correlations.dump(2) + "\n");

  out.write("cooccurrence.csv",
            cooccurrence_csv(cooccurrence_conditional(
                scenes, default_cooccurrence_pairs(scenes))));
  out.write("topk.csv", topk_csv(topk_groups(qa, lexicon, 3)));

  // -- Probes ---------------------------------------------------------------
  std::optional<std::vector<ProbePair>> random_pairs;
  std::string random_note;
  try {
    random_pairs = generate_random_pairs(qa, scenes, config.seed);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooFewScenes) throw;
    random_note = e.what();
  }
  out.write("probes_random.jsonl",
            random_pairs ? probe_pairs_to_jsonl(*random_pairs) : std::string());
  const OppositeGenResult opposite = generate_opposite_questions(qa, lexicon);
  out.write("probes_opposite.jsonl", probe_pairs_to_jsonl(opposite.pairs));
  out.write("qa_opposite.jsonl", qa_to_jsonl(opposite.questions));
  json skips{{"random",
              {{"pairs", random_pairs ? random_pairs->size() : 0},
               {"note", random_note}}},
             {"opposite",
              {{"emitted", opposite.report.emitted},
               {"skipped_no_phrase", opposite.report.skipped_no_phrase},
               {"skipped_multi_phrase", opposite.report.skipped_multi_phrase},
               {"skipped_non_spatial", opposite.report.skipped_non_spatial}}}};
  out.write("probe_skips.json", skips.dump(2) + "\n");

  // -- HR scoring -----------------------------------------------------------
  const auto accuracy = accuracy_by_type(qa, model_responses, model);
  auto score_or_stub = [&](const std::vector<ProbePair>& pairs, ProbeMode mode,
                           const std::string& base) {
    try {
      HRReport report = score_probe_pairs(pairs, model_responses, model,
                                          config.threshold, qa);
      out.write(base + ".json", hr_report_to_json(report));
      out.write(base + ".csv", hr_table_csv(report, accuracy));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoScoredPairs) throw;
      json stub{{"mode", probe_mode_name(mode)},
                {"model_id", model},
                {"n", 0},
                {"threshold", config.threshold},
                {"note", e.what()}};
      out.write(base + ".json", stub.dump(2) + "\n");
      HRReport empty;
      empty.mode = mode;
      empty.model_id = model;
      empty.threshold = config.threshold;
      out.write(base + ".csv", hr_table_csv(empty, accuracy));
    }
  };
  score_or_stub(random_pairs ? *random_pairs : std::vector<ProbePair>(),
                ProbeMode::RandomScene, "hr_random");
  score_or_stub(opposite.pairs, ProbeMode::OppositeQuestion, "hr_opposite");

  // -- Metadata --------------------------------------------------------------
  json metadata{
      {"version", kVersion},
      {"config",
       {{"scene_path", config.scene_path},
        {"qa_path", config.qa_path},
        {"response_path", config.response_path},
        {"lexicon", config.lexicon_path.empty() ? "bundled-default"
                                                : config.lexicon_path},
        {"model_id", model},
        {"threshold", config.threshold},
        {"seed", config.seed},
        {"rouge_variant", config.rouge_variant},
        {"aggregation", config.aggregation}}},
      {"input_hashes",
       {{"scenes", hash_hex(read_file(config.scene_path))},
        {"qa", hash_hex(read_file(config.qa_path))},
        {"responses", hash_hex(read_file(config.response_path))},
        {"lexicon",
         hash_hex(config.lexicon_path.empty()
                      ? std::string(default_lexicon_json())
                      : read_file(config.lexicon_path))}}},
      {"counts",
       {{"scenes", scenes.size()},
        {"qa", qa.size()},
        {"responses", responses.size()},
        {"evaluated_records", evals.size()}}},
      {"join",
       {{"matched", join.matched},
        {"unmatched_qa", join.unmatched_qa},
        {"unmatched_responses", join.unmatched_resp}}},
      {"normalization",
       "tokenize: ascii lowercase, whitespace split, edge punctuation "
       "stripped per token; HR metric applies it to both answers"}};
  if (config.emit_timestamp) metadata["timestamp_utc"] = utc_timestamp();
  out.write("run_metadata.json", metadata.dump(2) + "\n");

  RunResult result;
  result.outputs = out.paths();
  return result;
}

std::string merge_reports(const std::string& dir) {
  json merged = json::object();
  const std::pair<const char*, const char*> parts[] = {
      {"summary", "summary.json"},
      {"correlations", "correlations.json"},
      {"probe_skips", "probe_skips.json"},
      {"hr_random", "hr_random.json"},
      {"hr_opposite", "hr_opposite.json"},
      {"run_metadata", "run_metadata.json"},
  };
  for (const auto& [key, name] : parts) {
    fs::path path = fs::path(dir) / name;
    if (!fs::exists(path)) continue;
    try {
      merged[key] = json::parse(read_file(path.string()));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedFile,
                  path.string() + ": " + e.what());
    }
  }
  return merged.dump(2) + "\n";
}

}  // namespace scenecheck
