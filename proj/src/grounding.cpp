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

#include "scenecheck/grounding.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include <nlohmann/json.hpp>

#include "scenecheck/textmetrics.hpp"
#include "scenecheck/util.hpp"

namespace scenecheck {

using nlohmann::json;

namespace {

std::string join_range(const std::vector<std::string>& tokens,
                       std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::vector<MentionSpan> extract_mention_spans(
    const std::vector<std::string>& tokens, const Lexicon& lexicon) {
  std::vector<MentionSpan> spans;
  const std::size_t max_len = lexicon.max_object_phrase_tokens();
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t longest = std::min(max_len, tokens.size() - i);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      auto hit = lexicon.lookup_object_phrase(join_range(tokens, i, i + len));
      if (hit) {
        spans.push_back({*hit, i, i + len});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return spans;
}

MentionSet extract_object_mentions(const std::string& text,
                                   const Lexicon& lexicon) {
  MentionSet out;
  for (const auto& span : extract_mention_spans(tokenize(text).tokens, lexicon)) {
    out.labels.insert(span.label);
  }
  return out;
}

MentionSet scene_object_set(const SceneGraph& scene) {
  MentionSet out;
  for (const auto& obj : scene.objects) out.labels.insert(obj.label);
  return out;
}

double harmonic_f1(double precision, double recall) {
  double sum = precision + recall;
  if (sum <= 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

ObjectEvalResult object_eval(const MentionSet& predicted,
                             const MentionSet& truth) {
  ObjectEvalResult r;
  std::set_intersection(predicted.labels.begin(), predicted.labels.end(),
                        truth.labels.begin(), truth.labels.end(),
                        std::inserter(r.intersection, r.intersection.end()));
  std::set_difference(predicted.labels.begin(), predicted.labels.end(),
                      truth.labels.begin(), truth.labels.end(),
                      std::inserter(r.predicted_only, r.predicted_only.end()));
  std::set_difference(truth.labels.begin(), truth.labels.end(),
                      predicted.labels.begin(), predicted.labels.end(),
                      std::inserter(r.truth_only, r.truth_only.end()));
  const double i = static_cast<double>(r.intersection.size());
  const double a = static_cast<double>(predicted.labels.size());
  const double b = static_cast<double>(truth.labels.size());
  r.empty_prediction = predicted.labels.empty();
  r.empty_truth = truth.labels.empty();
  r.precision = r.empty_prediction ? 0.0 : i / a;
  r.recall = r.empty_truth ? 0.0 : i / b;
  // Single division so 2|A∩B|/(|A|+|B|) is correctly rounded; algebraically
  // equal to 2PR/(P+R) and exact against a rational oracle.
  r.f1 = (r.intersection.empty() || a + b == 0.0) ? 0.0 : 2.0 * i / (a + b);
  return r;
}

// ---------------------------------------------------------------------------
// Attribute / relation extraction

namespace {

struct TermSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;  // space-joined matched tokens
};

bool overlaps_any(std::size_t begin, std::size_t end,
                  const std::vector<MentionSpan>& spans) {
  for (const auto& s : spans) {
    if (begin < s.end && s.begin < end) return true;
  }
  return false;
}

// Longest-match scan for phrases accepted by `lookup`, skipping positions
// already consumed by object mentions.
template <typename Lookup>
std::vector<TermSpan> scan_phrases(const std::vector<std::string>& tokens,
                                   const std::vector<MentionSpan>& mentions,
                                   std::size_t max_len, Lookup&& lookup) {
  std::vector<TermSpan> spans;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (overlaps_any(i, i + 1, mentions)) {
      ++i;
      continue;
    }
    bool matched = false;
    std::size_t longest = std::min(max_len, tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      if (overlaps_any(i, i + len, mentions)) continue;
      std::string joined = join_range(tokens, i, i + len);
      if (lookup(joined)) {
        spans.push_back({i, i + len, std::move(joined)});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return spans;
}

// Tokens strictly between a term span and a mention span; npos-like max when
// they touch or overlap is impossible here (spans never overlap).
std::size_t gap_between(const TermSpan& term, const MentionSpan& mention) {
  if (mention.end <= term.begin) return term.begin - mention.end;
  return mention.begin - term.end;
}

// Nearest mention within `window` gap tokens; ties prefer the mention that
// precedes the term.
const MentionSpan* bind_nearest(const TermSpan& term,
                                const std::vector<MentionSpan>& mentions,
                                std::size_t window) {
  const MentionSpan* best = nullptr;
  std::size_t best_gap = window + 1;
  bool best_precedes = false;
  for (const auto& m : mentions) {
    std::size_t gap = gap_between(term, m);
    if (gap > window) continue;
    bool precedes = m.end <= term.begin;
    if (!best || gap < best_gap || (gap == best_gap && precedes && !best_precedes)) {
      best = &m;
      best_gap = gap;
      best_precedes = precedes;
    }
  }
  return best;
}

constexpr std::size_t kBindWindow = 3;

}  // namespace

std::vector<AttributeAssertion> extract_attribute_assertions(
    const std::string& text, const Lexicon& lexicon) {
  const auto tokens = tokenize(text).tokens;
  const auto mentions = extract_mention_spans(tokens, lexicon);
  const auto terms = scan_phrases(
      tokens, mentions, lexicon.max_attribute_phrase_tokens(),
      [&](const std::string& joined) {
        return lexicon.lookup_attribute_phrase(joined).has_value();
      });

  std::vector<AttributeAssertion> out;
  for (const auto& term : terms) {
    const MentionSpan* target = bind_nearest(term, mentions, kBindWindow);
    if (!target) continue;
    auto hit = lexicon.lookup_attribute_phrase(term.text);
    AttributeAssertion assertion{target->label, hit->first, hit->second};
    if (std::find(out.begin(), out.end(), assertion) == out.end()) {
      out.push_back(std::move(assertion));
    }
  }
  return out;
}

std::vector<RelationAssertion> extract_relation_assertions(
    const std::string& text, const Lexicon& lexicon) {
  const auto tokens = tokenize(text).tokens;
  const auto mentions = extract_mention_spans(tokens, lexicon);
  const auto rels = scan_phrases(
      tokens, mentions, lexicon.max_relation_phrase_tokens(),
      [&](const std::string& joined) {
        return lexicon.lookup_relation_phrase(joined).has_value();
      });

  auto gap_all_stopwords = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (!lexicon.is_stopword(tokens[i])) return false;
    }
    return true;
  };

  std::vector<RelationAssertion> out;
  for (const auto& rel : rels) {
    const MentionSpan* subject = nullptr;
    const MentionSpan* object = nullptr;
    for (const auto& m : mentions) {
      if (m.end <= rel.begin) {  // candidate subject on the left
        std::size_t gap = rel.begin - m.end;
        if (gap <= kBindWindow && gap_all_stopwords(m.end, rel.begin)) {
          if (!subject || m.end > subject->end) subject = &m;  // nearest
        }
      } else if (m.begin >= rel.end) {  // candidate object on the right
        std::size_t gap = m.begin - rel.end;
        if (gap <= kBindWindow && gap_all_stopwords(rel.end, m.begin)) {
          if (!object || m.begin < object->begin) object = &m;
        }
      }
    }
    if (!subject || !object) continue;
    RelationAssertion assertion{subject->label, rel.text, object->label};
    if (std::find(out.begin(), out.end(), assertion) == out.end()) {
      out.push_back(std::move(assertion));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison against the scene graph

AttrCheckResult attribute_hallucinations(
    const std::vector<AttributeAssertion>& pred, const SceneGraph& scene) {
  AttrCheckResult result;
  for (const auto& p : pred) {
    bool label_present = false;
    bool kind_annotated = false;
    bool value_matches = false;
    std::vector<std::string> annotated;
    for (const auto& obj : scene.objects) {
      if (obj.label != p.object_label) continue;
      label_present = true;
      auto it = obj.attributes.find(p.kind);
      if (it == obj.attributes.end()) continue;
      kind_annotated = true;
      if (it->second == p.value) {
        value_matches = true;
      } else if (std::find(annotated.begin(), annotated.end(), it->second) ==
                 annotated.end()) {
        annotated.push_back(it->second);
      }
    }
    if (!label_present) {
      result.absent_object.push_back(p);
    } else if (!kind_annotated) {
      result.unverifiable.push_back(p);
    } else {
      ++result.checked;
      if (value_matches) {
        ++result.matched;
      } else {
        result.mismatches.push_back({p.object_label, p.kind, p.value, annotated});
      }
    }
  }
  return result;
}

RelationCheckResult relation_hallucinations(
    const std::vector<RelationAssertion>& pred, const SceneGraph& scene) {
  RelationCheckResult result;
  std::set<std::string> labels;
  for (const auto& obj : scene.objects) labels.insert(obj.label);

  for (const auto& p : pred) {
    if (!labels.count(p.subject_label) || !labels.count(p.object_label)) {
      result.absent_object.push_back(p);
      continue;
    }
    bool pair_annotated = false;
    bool relation_matches = false;
    std::vector<std::string> annotated;
    for (const auto& t : scene.relations) {
      if (t.subject_label != p.subject_label || t.object_label != p.object_label) {
        continue;
      }
      pair_annotated = true;
      if (t.relation == p.relation) {
        relation_matches = true;
      } else if (std::find(annotated.begin(), annotated.end(), t.relation) ==
                 annotated.end()) {
        annotated.push_back(t.relation);
      }
    }
    if (!pair_annotated) {
      result.unverifiable.push_back(p);
    } else {
      ++result.checked;
      if (relation_matches) {
        ++result.matched;
      } else {
        result.mismatches.push_back({p, annotated});
      }
    }
  }
  return result;
}

RecordEval evaluate_response(const ResponseRecord& response,
                             const SceneGraph& scene, const Lexicon& lexicon) {
  RecordEval eval;
  eval.question_id = response.question_id;
  eval.scene_id = response.scene_id;
  eval.model_id = response.model_id;
  eval.objects = object_eval(extract_object_mentions(response.answer, lexicon),
                             scene_object_set(scene));
  eval.attrs = attribute_hallucinations(
      extract_attribute_assertions(response.answer, lexicon), scene);
  eval.relations = relation_hallucinations(
      extract_relation_assertions(response.answer, lexicon), scene);
  return eval;
}

std::string record_evals_to_jsonl(const std::vector<RecordEval>& evals) {
  std::string out;
  for (const auto& e : evals) {
    json attr_mismatches = json::array();
    for (const auto& m : e.attrs.mismatches) {
      attr_mismatches.push_back({{"object", m.object_label},
                                 {"kind", attr_kind_name(m.kind)},
                                 {"predicted", m.predicted},
                                 {"true_values", m.true_values}});
    }
    json rel_mismatches = json::array();
    for (const auto& m : e.relations.mismatches) {
      rel_mismatches.push_back({{"subject", m.pred.subject_label},
                                {"relation", m.pred.relation},
                                {"object", m.pred.object_label},
                                {"true_relations", m.true_relations}});
    }
    auto attr_list = [](const std::vector<AttributeAssertion>& items) {
      json arr = json::array();
      for (const auto& a : items) {
        arr.push_back({{"object", a.object_label},
                       {"kind", attr_kind_name(a.kind)},
                       {"value", a.value}});
      }
      return arr;
    };
    auto rel_list = [](const std::vector<RelationAssertion>& items) {
      json arr = json::array();
      for (const auto& r : items) {
        arr.push_back({{"subject", r.subject_label},
                       {"relation", r.relation},
                       {"object", r.object_label}});
      }
      return arr;
    };
    json rec{{"question_id", e.question_id},
             {"scene_id", e.scene_id},
             {"model_id", e.model_id},
             {"precision", e.objects.precision},
             {"recall", e.objects.recall},
             {"f1", e.objects.f1},
             {"intersection", e.objects.intersection},
             {"predicted_only", e.objects.predicted_only},
             {"truth_only", e.objects.truth_only},
             {"attr_mismatches", attr_mismatches},
             {"relation_mismatches", rel_mismatches},
             {"unverifiable",
              {{"attributes", attr_list(e.attrs.unverifiable)},
               {"relations", rel_list(e.relations.unverifiable)}}},
             {"absent_object_attributes", attr_list(e.attrs.absent_object)},
             {"absent_object_relations", rel_list(e.relations.absent_object)},
             {"empty_prediction", e.objects.empty_prediction},
             {"empty_truth", e.objects.empty_truth}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace scenecheck
