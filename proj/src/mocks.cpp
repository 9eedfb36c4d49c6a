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

#include "scenecheck/mocks.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <map>
#include <random>
#include <set>

#include "scenecheck/errors.hpp"
#include "scenecheck/grounding.hpp"
#include "scenecheck/textmetrics.hpp"
#include "scenecheck/util.hpp"

namespace scenecheck {

MockPolicy MockPolicy::parse(const std::string& text) {
  MockPolicy policy;
  if (text == "echo") {
    policy.kind = MockKind::Echo;
  } else if (text == "context-blind") {
    policy.kind = MockKind::ContextBlind;
  } else if (text == "grounded") {
    policy.kind = MockKind::Grounded;
  } else if (text.rfind("noisy:", 0) == 0) {
    policy.kind = MockKind::Noisy;
    try {
      policy.noise_p = std::stod(text.substr(6));
    } catch (...) {
      throw Error(ErrorKind::InvalidConfig, "bad noise probability in \"" + text + "\"");
    }
    if (!(policy.noise_p >= 0.0 && policy.noise_p <= 1.0)) {
      throw Error(ErrorKind::InvalidConfig, "noise probability must be in [0,1]");
    }
  } else {
    throw Error(ErrorKind::InvalidConfig,
                "unknown mock policy \"" + text +
                    "\" (expected echo, context-blind, grounded, noisy:<p>)");
  }
  return policy;
}

std::string MockPolicy::name() const {
  switch (kind) {
    case MockKind::Echo: return "echo";
    case MockKind::ContextBlind: return "context-blind";
    case MockKind::Grounded: return "grounded";
    case MockKind::Noisy: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "noisy:%g", noise_p);
      return buf;
    }
  }
  return "?";
}

namespace {

const char* kBlindTemplates[] = {
    "it is a chair",          "it is on the table",
    "there are two",          "it is brown",
    "it is near the window",  "it is in the corner",
    "it is small",            "it is next to the door",
};

// First object in the question that exists in this scene: prefer lexicon
// mentions, then fall back to raw question tokens against scene labels (so
// synthetic label vocabularies outside the lexicon still resolve).
std::string find_scene_mention(const std::string& question,
                               const SceneGraph& scene, const Lexicon& lexicon) {
  std::set<std::string> labels;
  for (const auto& obj : scene.objects) labels.insert(obj.label);

  const auto tokens = tokenize(question).tokens;
  for (const auto& span : extract_mention_spans(tokens, lexicon)) {
    if (labels.count(span.label)) return span.label;
  }
  for (const auto& tok : tokens) {
    if (labels.count(tok)) return tok;
    std::string canon = lexicon.canonicalize_label(tok);
    if (labels.count(canon)) return canon;
  }
  return {};
}

std::string grounded_answer(const QARecord& qa, const SceneGraph& scene,
                            const Lexicon& lexicon) {
  const std::string label = find_scene_mention(qa.question, scene, lexicon);
  switch (qa.question_type) {
    case QuestionType::Direction:
    case QuestionType::Containment:
    case QuestionType::Contact:
    case QuestionType::Distance: {
      if (label.empty()) return "nothing";
      for (const auto& t : scene.relations) {
        if (t.subject_label == label) return t.object_label;
      }
      for (const auto& t : scene.relations) {
        if (t.object_label == label) return t.subject_label;
      }
      return "nothing";
    }
    case QuestionType::Color:
    case QuestionType::Shape:
    case QuestionType::Size: {
      AttrKind kind = qa.question_type == QuestionType::Color ? AttrKind::Color
                      : qa.question_type == QuestionType::Shape
                          ? AttrKind::Shape
                          : AttrKind::Size;
      if (!label.empty()) {
        for (const auto& obj : scene.objects) {
          if (obj.label != label) continue;
          auto it = obj.attributes.find(kind);
          if (it != obj.attributes.end()) return it->second;
        }
      }
      return "unknown";
    }
    case QuestionType::Quantity: {
      std::size_t count = 0;
      for (const auto& obj : scene.objects) {
        if (obj.label == label) ++count;
      }
      return std::to_string(count);
    }
    default: {
      // Describe the scene: its distinct labels, sorted.
      std::set<std::string> labels;
      for (const auto& obj : scene.objects) labels.insert(obj.label);
      std::string out;
      for (const auto& l : labels) {
        if (!out.empty()) out.push_back(' ');
        out += l;
      }
      return out.empty() ? "nothing" : out;
    }
  }
}

}  // namespace

std::vector<ResponseRecord> mock_respond(const MockPolicy& policy,
                                         const std::vector<QARecord>& qa,
                                         const SceneCorpus& scenes,
                                         const Lexicon& lexicon,
                                         std::uint64_t seed,
                                         const std::string& model_id) {
  std::vector<std::string> label_pool;
  if (policy.kind == MockKind::Noisy) {
    std::set<std::string> labels;
    for (const auto& scene : scenes.scenes) {
      for (const auto& obj : scene.objects) labels.insert(obj.label);
    }
    label_pool.assign(labels.begin(), labels.end());
  }

  std::vector<ResponseRecord> out;
  out.reserve(qa.size());
  for (const auto& q : qa) {
    ResponseRecord r;
    r.question_id = q.question_id;
    r.scene_id = q.scene_id;
    r.model_id = model_id;
    switch (policy.kind) {
      case MockKind::Echo:
        r.answer = "yes";
        break;
      case MockKind::ContextBlind:
        r.answer = kBlindTemplates[fnv1a64(q.question) %
                                   std::size(kBlindTemplates)];
        break;
      case MockKind::Grounded:
      case MockKind::Noisy: {
        const SceneGraph* scene = scenes.find(q.scene_id);
        if (!scene) {
          throw Error(ErrorKind::DanglingSceneRef,
                      "mock_respond: unknown scene \"" + q.scene_id + "\"");
        }
        r.answer = grounded_answer(q, *scene, lexicon);
        if (policy.kind == MockKind::Noisy && !label_pool.empty()) {
          // Per-record stream keyed by (seed, question, scene): stable under
          // reordering and probe expansion.
          std::mt19937_64 rng(mix_seed(
              seed, fnv1a64(q.question_id + "\x1f" + q.scene_id)));
          if (uniform01(rng) < policy.noise_p) {
            r.answer = label_pool[bounded_uniform(rng, label_pool.size())];
          }
        }
        break;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QARecord> expand_probe_contexts(
    const std::vector<ProbePair>& pairs, const std::vector<QARecord>& qa,
    const std::vector<QARecord>& generated) {
  std::map<std::string, const QARecord*> by_qid;
  for (const auto& q : qa) by_qid.emplace(q.question_id, &q);
  for (const auto& q : generated) by_qid.emplace(q.question_id, &q);

  std::vector<QARecord> out;
  std::set<std::pair<std::string, std::string>> seen;
  auto add = [&](const ProbeContext& ctx) {
    if (!seen.insert({ctx.question_id, ctx.scene_id}).second) return;
    auto it = by_qid.find(ctx.question_id);
    if (it == by_qid.end()) return;
    QARecord rec = *it->second;
    rec.scene_id = ctx.scene_id;  // random-scene contexts move the question
    out.push_back(std::move(rec));
  };
  for (const auto& pair : pairs) {
    add(pair.context_a);
    add(pair.context_b);
  }
  return out;
}

}  // namespace scenecheck
