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

#ifndef SCENECHECK_TEXTMETRICS_HPP
#define SCENECHECK_TEXTMETRICS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace scenecheck {

// Ordered lowercase tokens. Produced by tokenize(); from_words() exists for
// callers that already hold a token list (tests, mostly).
struct TokenSeq {
  std::vector<std::string> tokens;

  static TokenSeq from_words(std::vector<std::string> words);

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

// ASCII-lowercases, splits on whitespace, strips leading/trailing ASCII
// punctuation per token, drops empties. Multi-byte UTF-8 passes through.
TokenSeq tokenize(const std::string& text);

// Longest common subsequence length; symmetric in its arguments.
std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

// ROUGE-L with balanced F (beta = 1): P = LCS/|cand|, R = LCS/|ref|,
// score = 2PR/(P+R). Zero when either side is empty or the LCS is empty.
double rouge_l(const TokenSeq& candidate, const TokenSeq& reference);

// BLEU-4: geometric mean of modified n-gram precisions (n = 1..4), add-one
// smoothing on numerator and denominator for n >= 2 when the raw numerator
// is zero, brevity penalty exp(1 - |ref|/|cand|) when the candidate is
// shorter than the reference.
double bleu4(const TokenSeq& candidate, const TokenSeq& reference);

// Unigram-alignment METEOR without external lexical resources: an exact match
// stage, then a suffix-strip stem stage ({s, es, ed, ing}, remainder >= 3
// chars). Fmean = 10PR/(R+9P), chunk penalty 0.5*(chunks/m)^3.
double meteor_lite(const TokenSeq& candidate, const TokenSeq& reference);

// Strict inequality, matching the hallucination-rate indicator.
bool exceeds_threshold(double score, double threshold);

}  // namespace scenecheck

#endif  // SCENECHECK_TEXTMETRICS_HPP
