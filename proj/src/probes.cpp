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

#include "scenecheck/probes.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <random>
#include <regex>
#include <set>

#include <nlohmann/json.hpp>

#include "scenecheck/errors.hpp"
#include "scenecheck/textmetrics.hpp"
#include "scenecheck/util.hpp"

namespace scenecheck {

using nlohmann::json;

const char* probe_mode_name(ProbeMode mode) {
  switch (mode) {
    case ProbeMode::RandomScene: return "random_scene";
    case ProbeMode::OppositeQuestion: return "opposite_question";
  }
  return "?";
}

std::optional<ProbeMode> probe_mode_from(const std::string& name) {
  if (name == "random_scene" || name == "random") return ProbeMode::RandomScene;
  if (name == "opposite_question" || name == "opposite") {
    return ProbeMode::OppositeQuestion;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Question classifier

namespace {

bool has_token(const std::vector<std::string>& tokens,
               std::initializer_list<const char*> words) {
  for (const auto& t : tokens) {
    for (const char* w : words) {
      if (t == w) return true;
    }
  }
  return false;
}

bool has_phrase(const std::vector<std::string>& tokens, const char* phrase) {
  auto words = split_ws(phrase);
  if (words.empty() || words.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + words.size() <= tokens.size(); ++i) {
    bool all = true;
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (tokens[i + j] != words[j]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

constexpr const char* kColorTerms[] = {
    "black", "white",  "red",    "green", "blue", "brown",  "gray",   "grey",
    "yellow", "orange", "purple", "pink",  "beige", "tan",   "silver", "gold"};

bool mentions_color_term(const std::vector<std::string>& tokens) {
  for (const auto& t : tokens) {
    for (const char* c : kColorTerms) {
      if (t == c) return true;
    }
  }
  return false;
}

}  // namespace

QuestionType classify_question(const std::string& question) {
  const auto tokens = tokenize(question).tokens;

  if (has_token(tokens, {"left", "right", "behind", "front", "above", "below",
                         "beside"}) ||
      has_phrase(tokens, "next to")) {
    return QuestionType::Direction;
  }
  if (has_token(tokens, {"inside", "contain", "within"}) ||
      has_phrase(tokens, "in the")) {
    return QuestionType::Containment;
  }
  if (has_token(tokens, {"touching", "against", "attached", "hanging"}) ||
      has_phrase(tokens, "on top of") || has_phrase(tokens, "standing on")) {
    return QuestionType::Contact;
  }
  if (has_token(tokens, {"near", "far", "close", "closest", "farthest"})) {
    return QuestionType::Distance;
  }
  if (has_token(tokens, {"color", "colour"}) ||
      (mentions_color_term(tokens) && has_token(tokens, {"what"}))) {
    return QuestionType::Color;
  }
  if (has_token(tokens, {"shape", "round", "square", "rectangular"})) {
    return QuestionType::Shape;
  }
  if (has_token(tokens, {"size", "big", "small", "large", "tall", "wide"})) {
    return QuestionType::Size;
  }
  if (has_token(tokens, {"bigger", "smaller", "more", "less", "than"})) {
    return QuestionType::Comparison;
  }
  if (has_phrase(tokens, "how many") || has_phrase(tokens, "number of") ||
      has_token(tokens, {"count"})) {
    return QuestionType::Quantity;
  }
  if (has_phrase(tokens, "used for") || has_token(tokens, {"purpose", "function"}) ||
      (has_phrase(tokens, "what is") && !tokens.empty() && tokens.back() == "for")) {
    return QuestionType::Usage;
  }
  return QuestionType::Other;
}

// ---------------------------------------------------------------------------
// Random-scene pairs

namespace {

std::string seq_id(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%06zu", prefix, n);
  return buf;
}

}  // namespace

std::vector<ProbePair> generate_random_pairs(const std::vector<QARecord>& qa,
                                             const SceneCorpus& scenes,
                                             std::uint64_t seed) {
  if (scenes.size() < 2) {
    throw Error(ErrorKind::TooFewScenes,
                "generate_random_pairs: need at least 2 scenes, have " +
                    std::to_string(scenes.size()));
  }
  std::mt19937_64 rng(seed);
  std::vector<ProbePair> pairs;
  pairs.reserve(qa.size());
  for (std::size_t i = 0; i < qa.size(); ++i) {
    const auto& q = qa[i];
    auto it = scenes.index.find(q.scene_id);
    if (it == scenes.index.end()) {
      throw Error(ErrorKind::DanglingSceneRef,
                  "generate_random_pairs: unknown scene \"" + q.scene_id + "\"");
    }
    const std::size_t idx_a = it->second;
    // Skip-index draw: uniform over the other scenes.
    std::uint64_t r = bounded_uniform(rng, scenes.size() - 1);
    if (r >= idx_a) ++r;
    ProbePair pair;
    pair.probe_id = seq_id("rnd", i);
    pair.mode = ProbeMode::RandomScene;
    pair.context_a = {q.question_id, q.scene_id};
    pair.context_b = {q.question_id, scenes.scenes[r].scene_id};
    pair.source_question_id = q.question_id;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Opposite questions

std::string invert_relation(const std::string& relation, const Lexicon& lexicon) {
  auto opp = lexicon.antonym_of(relation);
  if (!opp) {
    throw Error(ErrorKind::NoAntonym,
                "invert_relation: no antonym for \"" + relation + "\"");
  }
  return *opp;
}

namespace {

bool is_spatial(QuestionType type) {
  return type == QuestionType::Direction || type == QuestionType::Containment ||
         type == QuestionType::Contact || type == QuestionType::Distance;
}

std::string escape_phrase_for_regex(const std::string& phrase) {
  std::string out;
  for (char c : phrase) {
    if (c == ' ') {
      out += "\\s+";
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(c);
    } else {
      out.push_back('\\');
      out.push_back(c);
    }
  }
  return out;
}

std::regex build_relation_regex(const Lexicon& lexicon) {
  std::vector<std::string> keys;
  keys.reserve(lexicon.relation_antonyms().size());
  for (const auto& [rel, opp] : lexicon.relation_antonyms()) {
    (void)opp;
    keys.push_back(rel);
  }
  // Longer phrases first so the alternation prefers "on the right" to "on".
  std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
    std::size_t ta = split_ws(a).size(), tb = split_ws(b).size();
    if (ta != tb) return ta > tb;
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  std::string pattern = "\\b(?:";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0) pattern.push_back('|');
    pattern += escape_phrase_for_regex(keys[i]);
  }
  pattern += ")\\b";
  return std::regex(pattern, std::regex::icase);
}

// First word after `pos`, lowercased with edge punctuation stripped.
std::string next_word_after(const std::string& text, std::size_t pos) {
  auto toks = tokenize(text.substr(std::min(pos, text.size()))).tokens;
  return toks.empty() ? std::string() : toks.front();
}

bool inversion_grammatical(const std::string& antonym,
                           const std::string& new_question,
                           std::size_t phrase_pos) {
  std::string next = next_word_after(new_question, phrase_pos + antonym.size());
  if (antonym == "far" && next != "from") return false;   // "far the door"
  if (antonym == "near" && next == "from") return false;  // "near from"
  return true;
}

}  // namespace

OppositeGenResult generate_opposite_questions(const std::vector<QARecord>& qa,
                                              const Lexicon& lexicon) {
  OppositeGenResult result;
  const std::regex re = build_relation_regex(lexicon);

  for (const auto& q : qa) {
    if (!is_spatial(q.question_type)) {
      ++result.report.skipped_non_spatial;
      continue;
    }
    std::vector<std::pair<std::size_t, std::string>> hits;  // (pos, matched)
    for (auto it = std::sregex_iterator(q.question.begin(), q.question.end(), re);
         it != std::sregex_iterator(); ++it) {
      hits.emplace_back(static_cast<std::size_t>(it->position(0)), it->str(0));
    }
    if (hits.empty()) {
      ++result.report.skipped_no_phrase;
      continue;
    }
    if (hits.size() >= 2) {
      ++result.report.skipped_multi_phrase;
      continue;
    }

    const auto& [pos, matched] = hits.front();
    const std::string canonical = Lexicon::canonicalize_relation(matched);
    const std::string antonym = invert_relation(canonical, lexicon);
    std::string flipped = q.question;
    flipped.replace(pos, matched.size(), antonym);

    QARecord opp = q;
    opp.question_id = q.question_id + "-opp";
    opp.question = flipped;

    ProbePair pair;
    pair.probe_id = seq_id("opp", result.report.emitted);
    pair.mode = ProbeMode::OppositeQuestion;
    pair.context_a = {q.question_id, q.scene_id};
    pair.context_b = {opp.question_id, q.scene_id};
    pair.source_question_id = q.question_id;
    pair.grammatical = inversion_grammatical(antonym, flipped, pos);

    result.questions.push_back(std::move(opp));
    result.pairs.push_back(std::move(pair));
    ++result.report.emitted;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

std::string probe_pairs_to_jsonl(const std::vector<ProbePair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    json rec{{"probe_id", p.probe_id},
             {"mode", probe_mode_name(p.mode)},
             {"context_a",
              {{"question_id", p.context_a.question_id},
               {"scene_id", p.context_a.scene_id}}},
             {"context_b",
              {{"question_id", p.context_b.question_id},
               {"scene_id", p.context_b.scene_id}}},
             {"source_question_id", p.source_question_id},
             {"grammatical", p.grammatical}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::vector<ProbePair> load_probe_pairs(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedFile, e.what());
  }
  std::vector<ProbePair> pairs;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedFile,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    auto context = [&](const char* key) -> ProbeContext {
      auto it = rec.find(key);
      if (it == rec.end() || !it->is_object()) {
        throw Error(ErrorKind::MalformedFile,
                    path + ":" + std::to_string(lineno) + ": missing " + key);
      }
      ProbeContext ctx;
      ctx.question_id = it->value("question_id", std::string());
      ctx.scene_id = it->value("scene_id", std::string());
      if (ctx.question_id.empty() || ctx.scene_id.empty()) {
        throw Error(ErrorKind::MalformedFile,
                    path + ":" + std::to_string(lineno) + ": incomplete " + key);
      }
      return ctx;
    };
    ProbePair p;
    p.probe_id = rec.value("probe_id", std::string());
    auto mode = probe_mode_from(rec.value("mode", std::string()));
    if (p.probe_id.empty() || !mode) {
      throw Error(ErrorKind::MalformedFile,
                  path + ":" + std::to_string(lineno) + ": bad probe_id or mode");
    }
    p.mode = *mode;
    p.context_a = context("context_a");
    p.context_b = context("context_b");
    p.source_question_id = rec.value("source_question_id", p.context_a.question_id);
    p.grammatical = rec.value("grammatical", true);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace scenecheck
