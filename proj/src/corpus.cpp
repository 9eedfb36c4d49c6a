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

#include "scenecheck/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "scenecheck/errors.hpp"
#include "scenecheck/probes.hpp"
#include "scenecheck/util.hpp"

namespace scenecheck {

using nlohmann::json;

const char* attr_kind_name(AttrKind kind) {
  switch (kind) {
    case AttrKind::Color: return "color";
    case AttrKind::Shape: return "shape";
    case AttrKind::Size: return "size";
  }
  return "?";
}

std::optional<AttrKind> attr_kind_from(const std::string& name) {
  for (AttrKind k : kAllAttrKinds) {
    if (name == attr_kind_name(k)) return k;
  }
  return std::nullopt;
}

const char* question_type_name(QuestionType type) {
  switch (type) {
    case QuestionType::Direction: return "Direction";
    case QuestionType::Containment: return "Containment";
    case QuestionType::Contact: return "Contact";
    case QuestionType::Distance: return "Distance";
    case QuestionType::Color: return "Color";
    case QuestionType::Shape: return "Shape";
    case QuestionType::Size: return "Size";
    case QuestionType::Comparison: return "Comparison";
    case QuestionType::Quantity: return "Quantity";
    case QuestionType::Usage: return "Usage";
    case QuestionType::Other: return "Other";
  }
  return "?";
}

std::optional<QuestionType> question_type_from(const std::string& name) {
  for (QuestionType t : kAllQuestionTypes) {
    if (name == question_type_name(t)) return t;
  }
  return std::nullopt;
}

const SceneGraph* SceneCorpus::find(const std::string& scene_id) const {
  auto it = index.find(scene_id);
  if (it == index.end()) return nullptr;
  return &scenes[it->second];
}

// ---------------------------------------------------------------------------
// Lexicon

namespace {

std::string canonical_token_form(const std::string& surface) {
  std::string s = normalize_ws(to_lower_ascii(surface));
  for (char& c : s) {
    if (c == ' ') c = '_';
  }
  return s;
}

json parse_json_or_throw(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedFile, what + ": " + e.what());
  }
}

std::string require_string(const json& j, const char* key,
                           const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorKind::MalformedFile,
                ctx + ": missing or non-string field \"" + key + "\"");
  }
  return it->get<std::string>();
}

std::size_t phrase_token_count(const std::string& phrase) {
  return split_ws(phrase).size();
}

}  // namespace

Lexicon Lexicon::from_json_file(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedFile, e.what());
  }
  return from_json_text(text);
}

Lexicon Lexicon::from_json_text(const std::string& text) {
  json doc = parse_json_or_throw(text, "lexicon");
  if (!doc.is_object()) {
    throw Error(ErrorKind::MalformedFile, "lexicon: top level must be an object");
  }

  Lexicon lex;

  for (const char* member :
       {"object_synonyms", "attribute_vocab", "relation_antonyms", "stopwords"}) {
    if (doc.find(member) == doc.end()) {
      throw Error(ErrorKind::MalformedFile,
                  std::string("lexicon: missing required map \"") + member + "\"");
    }
  }

  if (auto it = doc.find("object_synonyms"); it != doc.end()) {
    if (!it->is_object()) {
      throw Error(ErrorKind::MalformedFile, "lexicon: object_synonyms must map surface to label");
    }
    for (auto& [key, value] : it->items()) {
      if (!value.is_string()) {
        throw Error(ErrorKind::MalformedFile,
                    "lexicon: object_synonyms[\"" + key + "\"] must be a string");
      }
      lex.object_synonyms_[normalize_ws(to_lower_ascii(key))] =
          canonical_token_form(value.get<std::string>());
    }
  }

  if (auto it = doc.find("attribute_vocab"); it != doc.end()) {
    if (!it->is_object()) {
      throw Error(ErrorKind::MalformedFile, "lexicon: attribute_vocab must map kind to terms");
    }
    for (auto& [key, value] : it->items()) {
      auto kind = attr_kind_from(key);
      if (!kind) {
        throw Error(ErrorKind::MalformedFile,
                    "lexicon: unknown attribute kind \"" + key + "\"");
      }
      if (!value.is_array()) {
        throw Error(ErrorKind::MalformedFile,
                    "lexicon: attribute_vocab[\"" + key + "\"] must be an array");
      }
      for (const auto& term : value) {
        if (!term.is_string()) {
          throw Error(ErrorKind::MalformedFile, "lexicon: attribute terms must be strings");
        }
        lex.attribute_vocab_[*kind].insert(
            normalize_ws(to_lower_ascii(term.get<std::string>())));
      }
    }
  }

  if (auto it = doc.find("relation_antonyms"); it != doc.end()) {
    if (!it->is_object()) {
      throw Error(ErrorKind::MalformedFile, "lexicon: relation_antonyms must map relation to opposite");
    }
    for (auto& [key, value] : it->items()) {
      if (!value.is_string()) {
        throw Error(ErrorKind::MalformedFile,
                    "lexicon: relation_antonyms[\"" + key + "\"] must be a string");
      }
      lex.relation_antonyms_[canonicalize_relation(key)] =
          canonicalize_relation(value.get<std::string>());
    }
  }

  if (auto it = doc.find("stopwords"); it != doc.end()) {
    if (!it->is_array()) {
      throw Error(ErrorKind::MalformedFile, "lexicon: stopwords must be an array");
    }
    for (const auto& word : *it) {
      if (!word.is_string()) {
        throw Error(ErrorKind::MalformedFile, "lexicon: stopwords must be strings");
      }
      lex.stopwords_.insert(normalize_ws(to_lower_ascii(word.get<std::string>())));
    }
  }

  lex.finalize();
  return lex;
}

void Lexicon::finalize() {
  // Every canonical label maps to itself so canonicalization is idempotent.
  std::vector<std::string> canon;
  canon.reserve(object_synonyms_.size());
  for (const auto& [surface, label] : object_synonyms_) {
    (void)surface;
    canon.push_back(label);
  }
  for (const auto& label : canon) {
    object_synonyms_.emplace(label, label);
  }

  // Close the antonym map under reversal, then insist it is an involution.
  std::vector<std::pair<std::string, std::string>> fwd(relation_antonyms_.begin(),
                                                       relation_antonyms_.end());
  for (const auto& [rel, opp] : fwd) {
    relation_antonyms_.emplace(opp, rel);
  }
  for (const auto& [rel, opp] : relation_antonyms_) {
    auto back = relation_antonyms_.find(opp);
    if (back == relation_antonyms_.end() || back->second != rel) {
      throw Error(ErrorKind::IntegrityError,
                  "lexicon: relation_antonyms is not an involution at \"" + rel + "\"");
    }
  }

  attribute_term_kind_.clear();
  for (AttrKind kind : kAllAttrKinds) {
    auto it = attribute_vocab_.find(kind);
    if (it == attribute_vocab_.end()) continue;
    for (const auto& term : it->second) {
      attribute_term_kind_.emplace(term, kind);  // first kind in enum order wins
      max_attribute_phrase_tokens_ =
          std::max(max_attribute_phrase_tokens_, phrase_token_count(term));
    }
  }
  for (const auto& [surface, label] : object_synonyms_) {
    (void)label;
    max_object_phrase_tokens_ =
        std::max(max_object_phrase_tokens_, phrase_token_count(surface));
  }
  for (const auto& [rel, opp] : relation_antonyms_) {
    (void)opp;
    max_relation_phrase_tokens_ =
        std::max(max_relation_phrase_tokens_, phrase_token_count(rel));
  }
}

std::string Lexicon::canonicalize_label(const std::string& surface) const {
  std::string s = normalize_ws(to_lower_ascii(surface));
  auto it = object_synonyms_.find(s);
  if (it != object_synonyms_.end()) return it->second;
  for (char& c : s) {
    if (c == ' ') c = '_';
  }
  return s;
}

std::string Lexicon::canonicalize_relation(const std::string& surface) {
  return normalize_ws(to_lower_ascii(surface));
}

std::optional<std::string> Lexicon::lookup_object_phrase(
    const std::string& joined) const {
  auto it = object_synonyms_.find(joined);
  if (it == object_synonyms_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<AttrKind, std::string>> Lexicon::lookup_attribute_phrase(
    const std::string& joined) const {
  auto it = attribute_term_kind_.find(joined);
  if (it == attribute_term_kind_.end()) return std::nullopt;
  return std::make_pair(it->second, joined);
}

std::optional<std::string> Lexicon::lookup_relation_phrase(
    const std::string& joined) const {
  auto it = relation_antonyms_.find(joined);
  if (it == relation_antonyms_.end()) return std::nullopt;
  return it->first;
}

std::optional<std::string> Lexicon::antonym_of(const std::string& relation) const {
  auto it = relation_antonyms_.find(canonicalize_relation(relation));
  if (it == relation_antonyms_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Loaders

SceneCorpus load_scene_graphs(const std::string& path, const Lexicon& lexicon) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedFile, e.what());
  }
  json doc = parse_json_or_throw(text, "scenes " + path);
  if (!doc.is_array()) {
    throw Error(ErrorKind::MalformedFile,
                "scenes " + path + ": top level must be an array of scenes");
  }

  SceneCorpus corpus;
  for (const auto& js : doc) {
    if (!js.is_object()) {
      throw Error(ErrorKind::MalformedFile, "scenes: each scene must be an object");
    }
    SceneGraph scene;
    scene.scene_id = require_string(js, "scene_id", "scene");
    if (scene.scene_id.empty()) {
      throw Error(ErrorKind::MalformedFile, "scene: empty scene_id");
    }
    if (corpus.index.count(scene.scene_id)) {
      throw Error(ErrorKind::IntegrityError,
                  "duplicate scene_id \"" + scene.scene_id + "\"");
    }

    std::set<std::string> instance_ids;
    std::set<std::string> labels;
    auto objs = js.find("objects");
    if (objs == js.end() || !objs->is_array()) {
      throw Error(ErrorKind::MalformedFile,
                  "scene " + scene.scene_id + ": missing objects array");
    }
    for (const auto& jo : *objs) {
      ObjectInstance obj;
      obj.instance_id = require_string(jo, "instance_id", "scene " + scene.scene_id);
      obj.label = lexicon.canonicalize_label(
          require_string(jo, "label", "scene " + scene.scene_id));
      if (!instance_ids.insert(obj.instance_id).second) {
        throw Error(ErrorKind::IntegrityError,
                    "scene " + scene.scene_id + ": duplicate instance_id \"" +
                        obj.instance_id + "\"");
      }
      if (auto attrs = jo.find("attributes"); attrs != jo.end()) {
        if (!attrs->is_object()) {
          throw Error(ErrorKind::MalformedFile,
                      "scene " + scene.scene_id + ": attributes must be an object");
        }
        for (auto& [key, value] : attrs->items()) {
          auto kind = attr_kind_from(key);
          if (!kind) {
            throw Error(ErrorKind::MalformedFile,
                        "scene " + scene.scene_id + ": unknown attribute kind \"" +
                            key + "\"");
          }
          if (!value.is_string()) {
            throw Error(ErrorKind::MalformedFile,
                        "scene " + scene.scene_id + ": attribute values must be strings");
          }
          obj.attributes[*kind] = normalize_ws(to_lower_ascii(value.get<std::string>()));
        }
      }
      labels.insert(obj.label);
      scene.objects.push_back(std::move(obj));
    }

    if (auto rels = js.find("relations"); rels != js.end()) {
      if (!rels->is_array()) {
        throw Error(ErrorKind::MalformedFile,
                    "scene " + scene.scene_id + ": relations must be an array");
      }
      for (const auto& jr : *rels) {
        RelationTriple triple;
        triple.subject_label = lexicon.canonicalize_label(
            require_string(jr, "subject", "scene " + scene.scene_id));
        triple.relation = Lexicon::canonicalize_relation(
            require_string(jr, "relation", "scene " + scene.scene_id));
        triple.object_label = lexicon.canonicalize_label(
            require_string(jr, "object", "scene " + scene.scene_id));
        if (!labels.count(triple.subject_label) || !labels.count(triple.object_label)) {
          throw Error(ErrorKind::IntegrityError,
                      "scene " + scene.scene_id + ": relation references unknown label (" +
                          triple.subject_label + ", " + triple.relation + ", " +
                          triple.object_label + ")");
        }
        scene.relations.push_back(std::move(triple));
      }
    }

    corpus.index.emplace(scene.scene_id, corpus.scenes.size());
    corpus.scenes.push_back(std::move(scene));
  }
  return corpus;
}

namespace {

// Applies fn to each nonblank JSONL line; 1-based line numbers in errors.
template <typename Fn>
void for_each_jsonl(const std::string& path, Fn&& fn) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedFile, e.what());
  }
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = line.find_first_not_of(" \t") == std::string::npos;
    if (blank) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedFile,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    fn(rec, lineno);
  }
}

}  // namespace

std::vector<QARecord> load_qa_dataset(const std::string& path,
                                      const SceneCorpus& scenes) {
  std::vector<QARecord> out;
  for_each_jsonl(path, [&](const json& rec, std::size_t lineno) {
    const std::string ctx = path + ":" + std::to_string(lineno);
    QARecord qa;
    qa.question_id = require_string(rec, "question_id", ctx);
    qa.scene_id = require_string(rec, "scene_id", ctx);
    qa.question = require_string(rec, "question", ctx);
    qa.answer = require_string(rec, "answer", ctx);
    if (!scenes.find(qa.scene_id)) {
      throw Error(ErrorKind::DanglingSceneRef,
                  ctx + ": scene \"" + qa.scene_id + "\" not loaded");
    }
    if (auto it = rec.find("question_type"); it != rec.end()) {
      if (!it->is_string()) {
        throw Error(ErrorKind::MalformedFile, ctx + ": question_type must be a string");
      }
      auto type = question_type_from(it->get<std::string>());
      if (!type) {
        throw Error(ErrorKind::MalformedFile,
                    ctx + ": unknown question_type \"" + it->get<std::string>() + "\"");
      }
      qa.question_type = *type;
    } else {
      qa.question_type = classify_question(qa.question);
    }
    out.push_back(std::move(qa));
  });
  return out;
}

std::vector<ResponseRecord> load_responses(const std::string& path) {
  std::vector<ResponseRecord> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for_each_jsonl(path, [&](const json& rec, std::size_t lineno) {
    const std::string ctx = path + ":" + std::to_string(lineno);
    ResponseRecord r;
    r.question_id = require_string(rec, "question_id", ctx);
    r.scene_id = require_string(rec, "scene_id", ctx);
    r.model_id = require_string(rec, "model_id", ctx);
    r.answer = require_string(rec, "answer", ctx);
    if (!seen.insert({r.question_id, r.scene_id, r.model_id}).second) {
      throw Error(ErrorKind::DuplicateResponse,
                  ctx + ": duplicate response key (" + r.question_id + ", " +
                      r.scene_id + ", " + r.model_id + ")");
    }
    out.push_back(std::move(r));
  });
  return out;
}

JoinReport validate_join(const std::vector<QARecord>& qa,
                         const std::vector<ResponseRecord>& responses) {
  std::set<std::pair<std::string, std::string>> qa_keys;
  for (const auto& q : qa) qa_keys.emplace(q.question_id, q.scene_id);
  std::set<std::pair<std::string, std::string>> resp_keys;
  for (const auto& r : responses) resp_keys.emplace(r.question_id, r.scene_id);

  JoinReport report;
  std::set<JoinKey> unmatched_qa, unmatched_resp;
  for (const auto& key : qa_keys) {
    if (resp_keys.count(key)) {
      ++report.matched;
    } else {
      unmatched_qa.insert({key.first, key.second});
    }
  }
  for (const auto& key : resp_keys) {
    if (!qa_keys.count(key)) unmatched_resp.insert({key.first, key.second});
  }
  for (const auto& q : qa) {
    if (!resp_keys.count({q.question_id, q.scene_id})) ++report.unmatched_qa;
  }
  for (const auto& r : responses) {
    if (!qa_keys.count({r.question_id, r.scene_id})) ++report.unmatched_resp;
  }
  report.unmatched_qa_keys.assign(unmatched_qa.begin(), unmatched_qa.end());
  report.unmatched_resp_keys.assign(unmatched_resp.begin(), unmatched_resp.end());
  return report;
}

std::string qa_to_jsonl(const std::vector<QARecord>& qa) {
  std::string out;
  for (const auto& q : qa) {
    json rec{{"question_id", q.question_id},
             {"scene_id", q.scene_id},
             {"question", q.question},
             {"answer", q.answer},
             {"question_type", question_type_name(q.question_type)}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::string responses_to_jsonl(const std::vector<ResponseRecord>& responses) {
  std::string out;
  for (const auto& r : responses) {
    json rec{{"question_id", r.question_id},
             {"scene_id", r.scene_id},
             {"model_id", r.model_id},
             {"answer", r.answer}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace scenecheck
