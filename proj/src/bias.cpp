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

#include "scenecheck/bias.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "scenecheck/errors.hpp"
#include "scenecheck/textmetrics.hpp"
#include "scenecheck/util.hpp"

namespace scenecheck {

namespace {

std::string fmt_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::set<std::string> scene_labels(const SceneGraph& scene) {
  std::set<std::string> labels;
  for (const auto& obj : scene.objects) labels.insert(obj.label);
  return labels;
}

}  // namespace

std::map<std::string, ObjectStats> object_frequency(const SceneCorpus& scenes) {
  if (scenes.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "object_frequency: no scenes loaded");
  }
  std::map<std::string, ObjectStats> stats;
  for (const auto& scene : scenes.scenes) {
    for (const auto& label : scene_labels(scene)) {
      auto& s = stats[label];
      s.label = label;
      ++s.present_scenes;
    }
  }
  const std::size_t total = scenes.size();
  for (auto& [label, s] : stats) {
    (void)label;
    s.absent_scenes = total - s.present_scenes;
    s.frequency = static_cast<double>(s.present_scenes) / static_cast<double>(total);
  }
  return stats;
}

std::map<std::string, ObjectStats> object_hallucination_rate(
    const std::vector<RecordEval>& evals, const SceneCorpus& scenes) {
  // Scene-level union of predictions across that scene's records.
  std::map<std::string, std::set<std::string>> predicted_by_scene;
  for (const auto& e : evals) {
    auto& preds = predicted_by_scene[e.scene_id];
    preds.insert(e.objects.intersection.begin(), e.objects.intersection.end());
    preds.insert(e.objects.predicted_only.begin(), e.objects.predicted_only.end());
  }

  std::set<std::string> all_labels;
  for (const auto& scene : scenes.scenes) {
    auto labels = scene_labels(scene);
    all_labels.insert(labels.begin(), labels.end());
  }
  for (const auto& [scene_id, preds] : predicted_by_scene) {
    (void)scene_id;
    all_labels.insert(preds.begin(), preds.end());
  }

  std::map<std::string, ObjectStats> stats;
  for (const auto& label : all_labels) {
    auto& s = stats[label];
    s.label = label;
  }
  for (const auto& [scene_id, preds] : predicted_by_scene) {
    const SceneGraph* scene = scenes.find(scene_id);
    if (!scene) continue;  // dangling response scene; skipped from HR
    auto present = scene_labels(*scene);
    for (const auto& label : all_labels) {
      auto& s = stats[label];
      if (present.count(label)) {
        ++s.present_scenes;
      } else {
        ++s.absent_scenes;
        if (preds.count(label)) ++s.hallucinated_in_absent;
      }
    }
  }
  for (auto& [label, s] : stats) {
    (void)label;
    if (s.absent_scenes > 0) {
      s.hallucination_rate = static_cast<double>(s.hallucinated_in_absent) /
                             static_cast<double>(s.absent_scenes);
    }
    std::size_t evaluated = s.present_scenes + s.absent_scenes;
    if (evaluated > 0) {
      s.frequency = static_cast<double>(s.present_scenes) /
                    static_cast<double>(evaluated);
    }
  }
  return stats;
}

std::vector<CooccurrenceStat> cooccurrence_conditional(
    const SceneCorpus& scenes,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::set<std::string>> presence;
  presence.reserve(scenes.size());
  for (const auto& scene : scenes.scenes) presence.push_back(scene_labels(scene));

  std::vector<CooccurrenceStat> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    CooccurrenceStat stat;
    stat.a_label = a;
    stat.b_label = b;
    for (const auto& labels : presence) {
      if (!labels.count(a)) continue;
      ++stat.count_a;
      if (labels.count(b)) ++stat.count_ab;
    }
    if (stat.count_a > 0) {
      stat.p_b_given_a = static_cast<double>(stat.count_ab) /
                         static_cast<double>(stat.count_a);
    }
    out.push_back(std::move(stat));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> default_cooccurrence_pairs(
    const SceneCorpus& scenes, std::size_t top_n) {
  auto freq = object_frequency(scenes);
  std::vector<const ObjectStats*> ranked;
  ranked.reserve(freq.size());
  for (const auto& [label, s] : freq) {
    (void)label;
    ranked.push_back(&s);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ObjectStats* a, const ObjectStats* b) {
              if (a->present_scenes != b->present_scenes) {
                return a->present_scenes > b->present_scenes;
              }
              return a->label < b->label;
            });
  if (ranked.size() > top_n) ranked.resize(top_n);

  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(ranked.size() * ranked.size());
  for (const auto* a : ranked) {
    for (const auto* b : ranked) {
      if (a == b) continue;  // P(A|A) is 1 by definition, skip self pairs
      pairs.emplace_back(a->label, b->label);
    }
  }
  return pairs;
}

std::string reduce_attribute_answer(const std::string& answer, AttrKind kind,
                                    const Lexicon& lexicon) {
  const auto tokens = tokenize(answer).tokens;
  const std::size_t max_len = lexicon.max_attribute_phrase_tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t longest = std::min(max_len, tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::string joined;
      for (std::size_t j = i; j < i + len; ++j) {
        if (j > i) joined.push_back(' ');
        joined += tokens[j];
      }
      auto hit = lexicon.lookup_attribute_phrase(joined);
      if (hit && hit->first == kind) return hit->second;
    }
  }
  return "other";
}

TopKStat topk_from_counts(const std::string& object_label, AttrKind kind,
                          const std::map<std::string, std::size_t>& value_counts,
                          std::size_t k) {
  TopKStat stat;
  stat.object_label = object_label;
  stat.kind = kind;
  stat.k = k;
  stat.distinct_values = value_counts.size();
  std::size_t total = 0;
  std::vector<std::size_t> counts;
  counts.reserve(value_counts.size());
  for (const auto& [value, count] : value_counts) {
    (void)value;
    counts.push_back(count);
    total += count;
  }
  if (total == 0) {
    throw Error(ErrorKind::EmptyGroup, "topk: no queries for " + object_label);
  }
  std::sort(counts.rbegin(), counts.rend());
  std::size_t top = 0;
  for (std::size_t i = 0; i < counts.size() && i < k; ++i) top += counts[i];
  stat.n_queries = total;
  stat.ratio = static_cast<double>(top) / static_cast<double>(total);
  return stat;
}

std::vector<TopKStat> topk_groups(const std::vector<QARecord>& qa,
                                  const Lexicon& lexicon, std::size_t k) {
  std::map<std::pair<std::string, AttrKind>, std::map<std::string, std::size_t>>
      groups;
  for (const auto& q : qa) {
    AttrKind kind;
    switch (q.question_type) {
      case QuestionType::Color: kind = AttrKind::Color; break;
      case QuestionType::Shape: kind = AttrKind::Shape; break;
      case QuestionType::Size: kind = AttrKind::Size; break;
      default: continue;
    }
    auto spans = extract_mention_spans(tokenize(q.question).tokens, lexicon);
    if (spans.empty()) continue;
    const std::string& label = spans.front().label;
    ++groups[{label, kind}][reduce_attribute_answer(q.answer, kind, lexicon)];
  }
  std::vector<TopKStat> out;
  out.reserve(groups.size());
  for (const auto& [key, counts] : groups) {
    out.push_back(topk_from_counts(key.first, key.second, counts, k));
  }
  return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson_or_throw(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorKind::DegenerateInput,
                "rank_correlation: constant series, correlation undefined");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

Correlations rank_correlation(const std::vector<double>& x,
                              const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw Error(ErrorKind::DegenerateInput,
                "rank_correlation: need equal-length series with n >= 3");
  }
  Correlations c;
  c.pearson = pearson_or_throw(x, y);
  c.spearman = pearson_or_throw(average_ranks(x), average_ranks(y));
  return c;
}

// ---------------------------------------------------------------------------
// CSV emitters

std::string object_stats_csv(const std::map<std::string, ObjectStats>& freq,
                             const std::map<std::string, ObjectStats>& hr) {
  std::set<std::string> labels;
  for (const auto& [label, s] : freq) {
    (void)s;
    labels.insert(label);
  }
  for (const auto& [label, s] : hr) {
    (void)s;
    labels.insert(label);
  }
  std::string out =
      "label,present_scenes,absent_scenes,frequency,"
      "eval_absent_scenes,hallucinated_in_absent,hallucination_rate\r\n";
  for (const auto& label : labels) {
    out += csv_field(label);
    if (auto it = freq.find(label); it != freq.end()) {
      const auto& s = it->second;
      out += ',' + std::to_string(s.present_scenes);
      out += ',' + std::to_string(s.absent_scenes);
      out += ',' + fmt_ratio(s.frequency);
    } else {
      out += ",0,0," + fmt_ratio(0.0);
    }
    if (auto it = hr.find(label); it != hr.end()) {
      const auto& s = it->second;
      out += ',' + std::to_string(s.absent_scenes);
      out += ',' + std::to_string(s.hallucinated_in_absent);
      out += ',';
      if (s.hallucination_rate) out += fmt_ratio(*s.hallucination_rate);
    } else {
      out += ",0,0,";
    }
    out += "\r\n";
  }
  return out;
}

std::string cooccurrence_csv(const std::vector<CooccurrenceStat>& stats) {
  std::string out = "a_label,b_label,count_a,count_ab,p_b_given_a\r\n";
  for (const auto& s : stats) {
    out += csv_field(s.a_label);
    out += ',' + csv_field(s.b_label);
    out += ',' + std::to_string(s.count_a);
    out += ',' + std::to_string(s.count_ab);
    out += ',';
    if (s.p_b_given_a) out += fmt_ratio(*s.p_b_given_a);
    out += "\r\n";
  }
  return out;
}

std::string topk_csv(const std::vector<TopKStat>& stats) {
  std::string out = "object_label,kind,k,n_queries,distinct_values,ratio\r\n";
  for (const auto& s : stats) {
    out += csv_field(s.object_label);
    out += ',';
    out += attr_kind_name(s.kind);
    out += ',' + std::to_string(s.k);
    out += ',' + std::to_string(s.n_queries);
    out += ',' + std::to_string(s.distinct_values);
    out += ',' + fmt_ratio(s.ratio);
    out += "\r\n";
  }
  return out;
}

std::string scatter_freq_hr_csv(const std::map<std::string, ObjectStats>& freq,
                                const std::map<std::string, ObjectStats>& hr) {
  std::set<std::string> labels;
  for (const auto& [label, s] : freq) {
    (void)s;
    labels.insert(label);
  }
  for (const auto& [label, s] : hr) {
    (void)s;
    labels.insert(label);
  }
  std::string out = "label,frequency,hallucination_rate\r\n";
  for (const auto& label : labels) {
    out += csv_field(label);
    out += ',';
    if (auto it = freq.find(label); it != freq.end()) {
      out += fmt_ratio(it->second.frequency);
    } else {
      out += fmt_ratio(0.0);  // predicted label never annotated in any scene
    }
    out += ',';
    if (auto it = hr.find(label); it != hr.end() && it->second.hallucination_rate) {
      out += fmt_ratio(*it->second.hallucination_rate);
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace scenecheck
