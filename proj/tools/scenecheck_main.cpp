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

#include <filesystem>
#include <iostream>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scenecheck/bias.hpp"
#include "scenecheck/corpus.hpp"
#include "scenecheck/errors.hpp"
#include "scenecheck/grounding.hpp"
#include "scenecheck/harness.hpp"
#include "scenecheck/hrmetrics.hpp"
#include "scenecheck/mocks.hpp"
#include "scenecheck/probes.hpp"
#include "scenecheck/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scenecheck;

namespace {

Lexicon load_lexicon(const std::string& path) {
  return path.empty() ? Lexicon::bundled_default() : Lexicon::from_json_file(path);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoError, "cannot create " + dir + ": " + ec.message());
  }
}

void write_output(const std::string& dir, const std::string& name,
                  std::string_view contents) {
  write_file((fs::path(dir) / name).string(), contents);
}

struct Options {
  std::string scenes, qa, responses, lexicon, model, out, config;
  std::string mode, policy, probes_qa;
  std::vector<std::string> probe_files;
  double threshold = 0.66;
  double noise_unused = 0.0;
  std::uint64_t seed = 0;
  std::size_t topk = 3;
  std::size_t pairs_top_n = 20;
};

std::vector<RecordEval> run_record_evals(const SceneCorpus& scenes,
                                         const std::vector<QARecord>& qa,
                                         const std::vector<ResponseRecord>& responses,
                                         const Lexicon& lexicon) {
  std::set<std::pair<std::string, std::string>> qa_keys;
  for (const auto& q : qa) qa_keys.emplace(q.question_id, q.scene_id);
  std::vector<RecordEval> evals;
  for (const auto& r : responses) {
    if (!qa_keys.count({r.question_id, r.scene_id})) continue;
    const SceneGraph* scene = scenes.find(r.scene_id);
    if (!scene) continue;
    evals.push_back(evaluate_response(r, *scene, lexicon));
  }
  return evals;
}

void cmd_validate(const Options& opt) {
  const Lexicon lexicon = load_lexicon(opt.lexicon);
  const SceneCorpus scenes = load_scene_graphs(opt.scenes, lexicon);
  const auto qa = load_qa_dataset(opt.qa, scenes);
  json doc{{"scenes", scenes.size()}, {"qa", qa.size()}};
  if (!opt.responses.empty()) {
    const auto responses = load_responses(opt.responses);
    const JoinReport join = validate_join(qa, responses);
    doc["responses"] = responses.size();
    doc["join"] = {{"matched", join.matched},
                   {"unmatched_qa", join.unmatched_qa},
                   {"unmatched_responses", join.unmatched_resp}};
  }
  std::cout << doc.dump(2) << "\n";
}

void cmd_eval_objects(const Options& opt) {
  const Lexicon lexicon = load_lexicon(opt.lexicon);
  const SceneCorpus scenes = load_scene_graphs(opt.scenes, lexicon);
  const auto qa = load_qa_dataset(opt.qa, scenes);
  auto responses = load_responses(opt.responses);
  const std::string model = resolve_model_id(responses, opt.model);
  std::erase_if(responses, [&](const ResponseRecord& r) { return r.model_id != model; });

  const auto evals = run_record_evals(scenes, qa, responses, lexicon);
  ensure_dir(opt.out);
  write_output(opt.out, "object_evals.jsonl", record_evals_to_jsonl(evals));

  std::size_t inter = 0, pred = 0, truth = 0;
  double sp = 0, sr = 0, sf = 0;
  for (const auto& e : evals) {
    inter += e.objects.intersection.size();
    pred += e.objects.intersection.size() + e.objects.predicted_only.size();
    truth += e.objects.intersection.size() + e.objects.truth_only.size();
    sp += e.objects.precision;
    sr += e.objects.recall;
    sf += e.objects.f1;
  }
  const double n = evals.empty() ? 1.0 : static_cast<double>(evals.size());
  json summary{
      {"model_id", model},
      {"n_records", evals.size()},
      {"micro",
       {{"precision", pred ? double(inter) / double(pred) : 0.0},
        {"recall", truth ? double(inter) / double(truth) : 0.0},
        {"f1", (pred + truth) ? 2.0 * double(inter) / double(pred + truth) : 0.0}}},
      {"macro", {{"precision", sp / n}, {"recall", sr / n}, {"f1", sf / n}}}};
  write_output(opt.out, "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
}

void cmd_bias(const Options& opt) {
  const Lexicon lexicon = load_lexicon(opt.lexicon);
  const SceneCorpus scenes = load_scene_graphs(opt.scenes, lexicon);
  const auto qa = load_qa_dataset(opt.qa, scenes);
  ensure_dir(opt.out);

  const auto freq = object_frequency(scenes);
  std::map<std::string, ObjectStats> hr;
  if (!opt.responses.empty()) {
    auto responses = load_responses(opt.responses);
    const std::string model = resolve_model_id(responses, opt.model);
    std::erase_if(responses,
                  [&](const ResponseRecord& r) { return r.model_id != model; });
    hr = object_hallucination_rate(run_record_evals(scenes, qa, responses, lexicon),
                                   scenes);
  }
  write_output(opt.out, "object_stats.csv", object_stats_csv(freq, hr));
  write_output(opt.out, "scatter_freq_hr.csv", scatter_freq_hr_csv(freq, hr));
  write_output(opt.out, "cooccurrence.csv",
               cooccurrence_csv(cooccurrence_conditional(
                   scenes, default_cooccurrence_pairs(scenes, opt.pairs_top_n))));
  write_output(opt.out, "topk.csv", topk_csv(topk_groups(qa, lexicon, opt.topk)));

  json correlations{{"n", 0}, {"pearson", nullptr}, {"spearman", nullptr}};
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
  write_output(opt.out, "correlations.json", correlations.dump(2) + "\n");
  std::cout << correlations.dump(2) << "\n";
}

void cmd_gen_probes(const Options& opt) {
  auto mode = probe_mode_from(opt.mode);
  if (!mode) {
    throw Error(ErrorKind::InvalidConfig,
                "--mode must be random or opposite, got \"" + opt.mode + "\"");
  }
  const Lexicon lexicon = load_lexicon(opt.lexicon);
  const SceneCorpus scenes = load_scene_graphs(opt.scenes, lexicon);
  const auto qa = load_qa_dataset(opt.qa, scenes);
  ensure_dir(opt.out);

  if (*mode == ProbeMode::RandomScene) {
    const auto pairs = generate_random_pairs(qa, scenes, opt.seed);
    write_output(opt.out, "probes_random.jsonl", probe_pairs_to_jsonl(pairs));
    std::cout << json{{"mode", "random_scene"}, {"pairs", pairs.size()}}.dump()
              << "\n";
  } else {
    const OppositeGenResult gen = generate_opposite_questions(qa, lexicon);
    write_output(opt.out, "probes_opposite.jsonl", probe_pairs_to_jsonl(gen.pairs));
    write_output(opt.out, "qa_opposite.jsonl", qa_to_jsonl(gen.questions));
    json skips{{"emitted", gen.report.emitted},
               {"skipped_no_phrase", gen.report.skipped_no_phrase},
               {"skipped_multi_phrase", gen.report.skipped_multi_phrase},
               {"skipped_non_spatial", gen.report.skipped_non_spatial}};
    write_output(opt.out, "probe_skips.json", skips.dump(2) + "\n");
    std::cout << skips.dump() << "\n";
  }
}

void cmd_score_hr(const Options& opt) {
  auto mode = probe_mode_from(opt.mode);
  if (!mode) {
    throw Error(ErrorKind::InvalidConfig,
                "--mode must be random or opposite, got \"" + opt.mode + "\"");
  }
  if (opt.probe_files.empty()) {
    throw Error(ErrorKind::InvalidConfig, "--probes is required");
  }
  std::vector<ProbePair> pairs;
  for (const auto& file : opt.probe_files) {
    auto chunk = load_probe_pairs(file);
    pairs.insert(pairs.end(), std::make_move_iterator(chunk.begin()),
                 std::make_move_iterator(chunk.end()));
  }
  const auto responses = load_responses(opt.responses);

  std::vector<QARecord> qa;
  std::map<QuestionType, TypeAccuracy> accuracy;
  if (!opt.qa.empty()) {
    if (opt.scenes.empty()) {
      throw Error(ErrorKind::InvalidConfig, "--qa needs --scenes for validation");
    }
    const Lexicon lexicon = load_lexicon(opt.lexicon);
    const SceneCorpus scenes = load_scene_graphs(opt.scenes, lexicon);
    qa = load_qa_dataset(opt.qa, scenes);
    accuracy = accuracy_by_type(qa, responses, opt.model);
  }

  const HRReport report =
      score_probe_pairs(pairs, responses, opt.model, opt.threshold, qa);
  const std::string base =
      *mode == ProbeMode::RandomScene ? "hr_random" : "hr_opposite";
  ensure_dir(opt.out);
  write_output(opt.out, base + ".json", hr_report_to_json(report));
  write_output(opt.out, base + ".csv", hr_table_csv(report, accuracy));
  json brief{{"mode", probe_mode_name(report.mode)},
             {"n", report.n},
             {"n_hallucinated", report.n_hallucinated},
             {"rate", report.rate},
             {"hr_percent", 100.0 * report.rate},
             {"skipped_missing_response", report.skipped_missing_response}};
  std::cout << brief.dump(2) << "\n";
}

void cmd_mock(const Options& opt) {
  const MockPolicy policy = MockPolicy::parse(opt.policy);
  const Lexicon lexicon = load_lexicon(opt.lexicon);
  const SceneCorpus scenes = load_scene_graphs(opt.scenes, lexicon);
  const auto qa = load_qa_dataset(opt.qa, scenes);

  std::vector<QARecord> generated;
  if (!opt.probes_qa.empty()) {
    generated = load_qa_dataset(opt.probes_qa, scenes);
  }

  std::vector<QARecord> contexts = qa;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& q : contexts) seen.emplace(q.question_id, q.scene_id);
  for (const auto& file : opt.probe_files) {
    const auto pairs = load_probe_pairs(file);
    for (auto& rec : expand_probe_contexts(pairs, qa, generated)) {
      if (seen.emplace(rec.question_id, rec.scene_id).second) {
        contexts.push_back(std::move(rec));
      }
    }
  }

  const std::string model = opt.model.empty() ? "mock-" + policy.name() : opt.model;
  const auto responses =
      mock_respond(policy, contexts, scenes, lexicon, opt.seed, model);
  if (opt.out.empty()) {
    std::cout << responses_to_jsonl(responses);
  } else {
    write_file(opt.out, responses_to_jsonl(responses));
    std::cout << json{{"responses", responses.size()}, {"model_id", model},
                      {"path", opt.out}}
                     .dump()
              << "\n";
  }
}

void cmd_report(const Options& opt) {
  const std::string merged = merge_reports(opt.scenes.empty() ? opt.out : opt.scenes);
  std::cout << merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenecheck: grounding-based hallucination evaluation for "
               "3D scene-language model transcripts"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* cmd, bool need_scenes, bool need_qa) {
    auto* s = cmd->add_option("--scenes", opt.scenes, "scene graph JSON file");
    if (need_scenes) s->required();
    auto* q = cmd->add_option("--qa", opt.qa, "QA dataset JSONL file");
    if (need_qa) q->required();
    cmd->add_option("--lexicon", opt.lexicon,
                    "lexicon JSON (default: bundled lexicon)");
  };

  auto* validate = app.add_subcommand("validate", "check corpus integrity");
  add_common(validate, true, true);
  validate->add_option("--responses", opt.responses, "responses JSONL file");

  auto* eval = app.add_subcommand("eval-objects",
                                  "object/attribute/relation grounding metrics");
  add_common(eval, true, true);
  eval->add_option("--responses", opt.responses, "responses JSONL")->required();
  eval->add_option("--model", opt.model, "model id (default: sole model)");
  eval->add_option("--out", opt.out, "output directory")->required();

  auto* bias = app.add_subcommand("bias", "dataset bias statistics");
  add_common(bias, true, true);
  bias->add_option("--responses", opt.responses,
                   "responses JSONL (enables hallucination-rate columns)");
  bias->add_option("--model", opt.model, "model id");
  bias->add_option("--out", opt.out, "output directory")->required();
  bias->add_option("--topk", opt.topk, "k for the top-k ratio (default 3)");
  bias->add_option("--pairs-top-n", opt.pairs_top_n,
                   "co-occurrence pair pool size (default 20)");

  auto* gen = app.add_subcommand("gen-probes", "generate probe pairs");
  add_common(gen, true, true);
  gen->add_option("--mode", opt.mode, "random | opposite")->required();
  gen->add_option("--seed", opt.seed, "RNG seed (random mode)");
  gen->add_option("--out", opt.out, "output directory")->required();

  auto* score = app.add_subcommand("score-hr", "score probe pairs into HR");
  score->add_option("--mode", opt.mode, "random | opposite")->required();
  score->add_option("--probes", opt.probe_files, "probe JSONL file")->required();
  score->add_option("--responses", opt.responses, "responses JSONL")->required();
  score->add_option("--qa", opt.qa, "QA JSONL for per-type breakdown/accuracy");
  score->add_option("--scenes", opt.scenes, "scene JSON (required with --qa)");
  score->add_option("--lexicon", opt.lexicon, "lexicon JSON");
  score->add_option("--model", opt.model, "model id");
  score->add_option("--threshold", opt.threshold, "HR threshold (default 0.66)");
  score->add_option("--out", opt.out, "output directory")->required();

  auto* mock = app.add_subcommand("mock", "reference mock responder");
  add_common(mock, true, true);
  mock->add_option("--policy", opt.policy,
                   "echo | context-blind | grounded | noisy:<p>")
      ->required();
  mock->add_option("--probes", opt.probe_files,
                   "probe JSONL file(s); contexts get answered too");
  mock->add_option("--qa-opposite", opt.probes_qa,
                   "generated opposite-question JSONL");
  mock->add_option("--seed", opt.seed, "RNG seed");
  mock->add_option("--model-id", opt.model, "model id for emitted records");
  mock->add_option("--out", opt.out, "output JSONL path (default stdout)");

  auto* report = app.add_subcommand("report", "merge run reports to one JSON");
  report->add_option("--dir", opt.scenes, "directory of run outputs")->required();

  auto* run = app.add_subcommand("run", "full pipeline from a config file");
  run->add_option("--config", opt.config, "run config JSON");
  run->add_option("--scenes", opt.scenes, "override scene_path");
  run->add_option("--qa", opt.qa, "override qa_path");
  run->add_option("--responses", opt.responses, "override response_path");
  run->add_option("--lexicon", opt.lexicon, "override lexicon_path");
  run->add_option("--model", opt.model, "override model_id");
  auto* thr = run->add_option("--threshold", opt.threshold, "override threshold");
  auto* seed_opt = run->add_option("--seed", opt.seed, "override seed");
  run->add_option("--out", opt.out, "override output_dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate)) {
      cmd_validate(opt);
    } else if (app.got_subcommand(eval)) {
      cmd_eval_objects(opt);
    } else if (app.got_subcommand(bias)) {
      cmd_bias(opt);
    } else if (app.got_subcommand(gen)) {
      cmd_gen_probes(opt);
    } else if (app.got_subcommand(score)) {
      cmd_score_hr(opt);
    } else if (app.got_subcommand(mock)) {
      cmd_mock(opt);
    } else if (app.got_subcommand(report)) {
      cmd_report(opt);
    } else if (app.got_subcommand(run)) {
      RunConfig cfg;
      if (!opt.config.empty()) cfg = RunConfig::from_json_file(opt.config);
      if (!opt.scenes.empty()) cfg.scene_path = opt.scenes;
      if (!opt.qa.empty()) cfg.qa_path = opt.qa;
      if (!opt.responses.empty()) cfg.response_path = opt.responses;
      if (!opt.lexicon.empty()) cfg.lexicon_path = opt.lexicon;
      if (!opt.model.empty()) cfg.model_id = opt.model;
      if (thr->count() > 0) cfg.threshold = opt.threshold;
      if (seed_opt->count() > 0) cfg.seed = opt.seed;
      if (!opt.out.empty()) cfg.output_dir = opt.out;
      RunResult result = run_pipeline(cfg);
      json doc{{"outputs", result.outputs}};
      std::cout << doc.dump(2) << "\n";
      return result.exit_code;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << error_json(e.kind(), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "Internal"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }
}
