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

#ifndef SCENECHECK_MOCKS_HPP
#define SCENECHECK_MOCKS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "scenecheck/corpus.hpp"
#include "scenecheck/probes.hpp"

namespace scenecheck {

// Reference responders. Echo answers a constant; ContextBlind keys the answer
// on the question text alone; Grounded reads the scene graph; Noisy is
// Grounded with probability noise_p of swapping in a random corpus label.
enum class MockKind { Echo, ContextBlind, Grounded, Noisy };

struct MockPolicy {
  MockKind kind = MockKind::Echo;
  double noise_p = 0.0;  // only meaningful for Noisy

  // Accepts "echo", "context-blind", "grounded", "noisy:<p>".
  // Throws InvalidConfig on anything else or p outside [0,1].
  static MockPolicy parse(const std::string& text);
  std::string name() const;
};

// One response per QA record, deterministic in (policy, seed, inputs).
std::vector<ResponseRecord> mock_respond(const MockPolicy& policy,
                                         const std::vector<QARecord>& qa,
                                         const SceneCorpus& scenes,
                                         const Lexicon& lexicon,
                                         std::uint64_t seed,
                                         const std::string& model_id);

// Materializes every distinct probe context as a QARecord so a responder can
// answer both sides of each pair. Question text resolves through `qa` first,
// then `generated` (the "-opp" questions). Unresolvable contexts are skipped.
std::vector<QARecord> expand_probe_contexts(
    const std::vector<ProbePair>& pairs, const std::vector<QARecord>& qa,
    const std::vector<QARecord>& generated);

}  // namespace scenecheck

#endif  // SCENECHECK_MOCKS_HPP
