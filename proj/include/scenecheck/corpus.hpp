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

#ifndef SCENECHECK_CORPUS_HPP
#define SCENECHECK_CORPUS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace scenecheck {

enum class AttrKind { Color, Shape, Size };

const char* attr_kind_name(AttrKind kind);
std::optional<AttrKind> attr_kind_from(const std::string& name);
inline constexpr AttrKind kAllAttrKinds[] = {AttrKind::Color, AttrKind::Shape,
                                             AttrKind::Size};

enum class QuestionType {
  Direction,
  Containment,
  Contact,
  Distance,
  Color,
  Shape,
  Size,
  Comparison,
  Quantity,
  Usage,
  Other,
};

const char* question_type_name(QuestionType type);
std::optional<QuestionType> question_type_from(const std::string& name);
inline constexpr QuestionType kAllQuestionTypes[] = {
    QuestionType::Direction,  QuestionType::Containment, QuestionType::Contact,
    QuestionType::Distance,   QuestionType::Color,       QuestionType::Shape,
    QuestionType::Size,       QuestionType::Comparison,  QuestionType::Quantity,
    QuestionType::Usage,      QuestionType::Other};

struct ObjectInstance {
  std::string instance_id;
  std::string label;  // canonical: lowercase, underscores join multi-word names
  std::map<AttrKind, std::string> attributes;
};

struct RelationTriple {
  std::string subject_label;
  std::string relation;
  std::string object_label;
};

struct SceneGraph {
  std::string scene_id;
  std::vector<ObjectInstance> objects;
  std::vector<RelationTriple> relations;
};

// Scenes in file order plus an id index.
struct SceneCorpus {
  std::vector<SceneGraph> scenes;
  std::unordered_map<std::string, std::size_t> index;

  const SceneGraph* find(const std::string& scene_id) const;
  std::size_t size() const { return scenes.size(); }
  bool empty() const { return scenes.empty(); }
};

struct QARecord {
  std::string question_id;
  std::string scene_id;
  std::string question;
  std::string answer;
  QuestionType question_type = QuestionType::Other;
};

struct ResponseRecord {
  std::string question_id;
  std::string scene_id;
  std::string model_id;
  std::string answer;
};

// Surface-form normalization tables driving all canonical mapping: object
// synonyms (multi-word keys allowed), per-kind attribute vocabulary, relation
// antonyms (an involution), and stopwords.
class Lexicon {
 public:
  // Throws MalformedFile on unreadable/invalid JSON, IntegrityError when the
  // antonym map is not an involution. Canonical labels are auto-registered
  // as identity synonyms so canonicalize_label is idempotent.
  static Lexicon from_json_file(const std::string& path);
  static Lexicon from_json_text(const std::string& text);
  static const Lexicon& bundled_default();

  // Lowercase, trim, collapse whitespace, then synonym lookup; unknown
  // surfaces fall back to joining words with underscores.
  std::string canonicalize_label(const std::string& surface) const;

  // Lowercase + whitespace collapse; relations keep their spaces.
  static std::string canonicalize_relation(const std::string& surface);

  const std::unordered_map<std::string, std::string>& object_synonyms() const {
    return object_synonyms_;
  }
  const std::map<AttrKind, std::set<std::string>>& attribute_vocab() const {
    return attribute_vocab_;
  }
  const std::unordered_map<std::string, std::string>& relation_antonyms()
      const {
    return relation_antonyms_;
  }
  const std::set<std::string>& stopwords() const { return stopwords_; }

  bool is_stopword(const std::string& token) const {
    return stopwords_.count(token) > 0;
  }

  // Phrase lookup over space-joined lowercase tokens.
  std::optional<std::string> lookup_object_phrase(
      const std::string& joined) const;
  std::optional<std::pair<AttrKind, std::string>> lookup_attribute_phrase(
      const std::string& joined) const;
  std::optional<std::string> antonym_of(const std::string& relation) const;

  std::size_t max_object_phrase_tokens() const {
    return max_object_phrase_tokens_;
  }
  std::size_t max_attribute_phrase_tokens() const {
    return max_attribute_phrase_tokens_;
  }
  std::size_t max_relation_phrase_tokens() const {
    return max_relation_phrase_tokens_;
  }
  std::optional<std::string> lookup_relation_phrase(
      const std::string& joined) const;

 private:
  void finalize();  // identity closure, involution check, phrase tables

  std::unordered_map<std::string, std::string> object_synonyms_;
  std::map<AttrKind, std::set<std::string>> attribute_vocab_;
  std::unordered_map<std::string, std::string> relation_antonyms_;
  std::set<std::string> stopwords_;

  std::unordered_map<std::string, AttrKind> attribute_term_kind_;
  std::size_t max_object_phrase_tokens_ = 1;
  std::size_t max_attribute_phrase_tokens_ = 1;
  std::size_t max_relation_phrase_tokens_ = 1;
};

// JSON text of the bundled default lexicon (mirrors data/default_lexicon.json).
std::string_view default_lexicon_json();

// Loaders. All throw Error: MalformedFile for unreadable files, bad JSON or
// missing fields; IntegrityError / DanglingSceneRef / DuplicateResponse per
// the referential checks. Loading is deterministic and order preserving.
SceneCorpus load_scene_graphs(const std::string& path, const Lexicon& lexicon);
std::vector<QARecord> load_qa_dataset(const std::string& path,
                                      const SceneCorpus& scenes);
std::vector<ResponseRecord> load_responses(const std::string& path);

struct JoinKey {
  std::string question_id;
  std::string scene_id;
  auto operator<=>(const JoinKey&) const = default;
};

struct JoinReport {
  std::size_t matched = 0;        // distinct (question_id, scene_id) on both sides
  std::size_t unmatched_qa = 0;   // QA records with no response
  std::size_t unmatched_resp = 0;  // response records with no QA
  std::vector<JoinKey> unmatched_qa_keys;
  std::vector<JoinKey> unmatched_resp_keys;
};

JoinReport validate_join(const std::vector<QARecord>& qa,
                         const std::vector<ResponseRecord>& responses);

// Round-trippable JSONL writers (one record per line, trailing newline).
std::string qa_to_jsonl(const std::vector<QARecord>& qa);
std::string responses_to_jsonl(const std::vector<ResponseRecord>& responses);

}  // namespace scenecheck

#endif  // SCENECHECK_CORPUS_HPP
