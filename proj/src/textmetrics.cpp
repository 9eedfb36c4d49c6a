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

#include "scenecheck/textmetrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <unordered_map>

namespace scenecheck {

TokenSeq TokenSeq::from_words(std::vector<std::string> words) {
  TokenSeq seq;
  seq.tokens = std::move(words);
  return seq;
}

TokenSeq tokenize(const std::string& text) {
  TokenSeq out;
  std::string cur;
  auto flush = [&] {
    std::size_t b = 0, e = cur.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(cur[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(cur[e - 1]))) --e;
    if (e > b) out.tokens.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else {
      cur.push_back(c < 128 ? static_cast<char>(std::tolower(c)) : ch);
    }
  }
  flush();
  return out;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  const auto& x = a.tokens;
  const auto& y = b.tokens;
  if (x.empty() || y.empty()) return 0;
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

double rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(candidate.size());
  const double r = lcs / static_cast<double>(reference.size());
  return 2.0 * p * r / (p + r);
}

namespace {

// n-grams keyed by their tokens joined with a separator that tokenize()
// cannot emit.
std::unordered_map<std::string, int> ngram_counts(const TokenSeq& seq, int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(seq.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    std::string key = seq.tokens[i];
    for (int k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key.append(seq.tokens[i + k]);
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double bleu4(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty()) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const auto cand_grams = ngram_counts(candidate, n);
    const auto ref_grams = ngram_counts(reference, n);
    long long matched = 0, total = 0;
    for (const auto& [gram, count] : cand_grams) {
      total += count;
      auto it = ref_grams.find(gram);
      if (it != ref_grams.end()) matched += std::min(count, it->second);
    }
    double p;
    if (n >= 2 && matched == 0) {
      p = static_cast<double>(matched + 1) / static_cast<double>(total + 1);
    } else {
      p = total == 0 ? 0.0
                     : static_cast<double>(matched) / static_cast<double>(total);
    }
    if (p == 0.0) return 0.0;
    log_sum += std::log(p);
  }
  const double bp =
      candidate.size() < reference.size()
          ? std::exp(1.0 - static_cast<double>(reference.size()) /
                               static_cast<double>(candidate.size()))
          : 1.0;
  return bp * std::exp(log_sum / 4.0);
}

namespace {

// Strips the longest applicable suffix of {ing, es, ed, s} when at least
// three characters remain.
std::string stem(const std::string& word) {
  static constexpr const char* kSuffixes[] = {"ing", "es", "ed", "s"};
  for (const char* suffix : kSuffixes) {
    const std::size_t n = std::strlen(suffix);
    if (word.size() >= n + 3 &&
        word.compare(word.size() - n, n, suffix) == 0) {
      return word.substr(0, word.size() - n);
    }
  }
  return word;
}

}  // namespace

double meteor_lite(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const std::size_t nc = candidate.size(), nr = reference.size();
  std::vector<int> cand_to_ref(nc, -1);
  std::vector<bool> ref_used(nr, false);

  // Exact stage, greedy left to right.
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nr; ++j) {
      if (!ref_used[j] && candidate.tokens[i] == reference.tokens[j]) {
        cand_to_ref[i] = static_cast<int>(j);
        ref_used[j] = true;
        break;
      }
    }
  }
  // Stem stage over the leftovers, same greedy order.
  for (std::size_t i = 0; i < nc; ++i) {
    if (cand_to_ref[i] >= 0) continue;
    const std::string cand_stem = stem(candidate.tokens[i]);
    for (std::size_t j = 0; j < nr; ++j) {
      if (!ref_used[j] && cand_stem == stem(reference.tokens[j])) {
        cand_to_ref[i] = static_cast<int>(j);
        ref_used[j] = true;
        break;
      }
    }
  }

  // Chunks: maximal runs of matches contiguous in both sequences.
  std::size_t m = 0, chunks = 0;
  int prev_i = -2, prev_j = -2;
  for (std::size_t i = 0; i < nc; ++i) {
    if (cand_to_ref[i] < 0) continue;
    ++m;
    if (static_cast<int>(i) != prev_i + 1 || cand_to_ref[i] != prev_j + 1) {
      ++chunks;
    }
    prev_i = static_cast<int>(i);
    prev_j = cand_to_ref[i];
  }
  if (m == 0) return 0.0;

  const double p = static_cast<double>(m) / static_cast<double>(nc);
  const double r = static_cast<double>(m) / static_cast<double>(nr);
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double penalty =
      0.5 * std::pow(static_cast<double>(chunks) / static_cast<double>(m), 3.0);
  return fmean * (1.0 - penalty);
}

bool exceeds_threshold(double score, double threshold) {
  return score > threshold;
}

}  // namespace scenecheck
