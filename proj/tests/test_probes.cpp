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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scenecheck/corpus.hpp"
#include "scenecheck/errors.hpp"
#include "scenecheck/probes.hpp"
#include "scenecheck/util.hpp"
#include "test_support.hpp"

using namespace scenecheck;
using scenecheck::testing::TempDir;
using scenecheck::testing::fixture_path;

namespace {

const Lexicon& lex() { return Lexicon::bundled_default(); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

QARecord qa(const std::string& id, const std::string& scene,
            const std::string& question, QuestionType type) {
  return QARecord{id, scene, question, "x", type};
}

}  // namespace

TEST_CASE("classify_question covers the whole taxonomy") {
  CHECK(classify_question("What is to the left of the table?") ==
        QuestionType::Direction);
  CHECK(classify_question("What is above the bookshelf?") ==
        QuestionType::Direction);
  CHECK(classify_question("Is the chair next to the window?") ==
        QuestionType::Direction);
  CHECK(classify_question("Is the lamp inside the cabinet?") ==
        QuestionType::Containment);
  CHECK(classify_question("What does the box contain?") ==
        QuestionType::Containment);
  CHECK(classify_question("What is on top of the table?") ==
        QuestionType::Contact);
  CHECK(classify_question("Is the towel hanging on the wall?") ==
        QuestionType::Contact);
  CHECK(classify_question("What is near the bed?") == QuestionType::Distance);
  CHECK(classify_question("Which chair is closest to the door?") ==
        QuestionType::Distance);
  CHECK(classify_question("What color is the chair?") == QuestionType::Color);
  CHECK(classify_question("What colour is the sofa?") == QuestionType::Color);
  CHECK(classify_question("What shape is the table?") == QuestionType::Shape);
  CHECK(classify_question("Is the table round?") == QuestionType::Shape);
  CHECK(classify_question("How big is the bed?") == QuestionType::Size);
  CHECK(classify_question("Which is bigger, the desk or the chair?") ==
        QuestionType::Comparison);
  CHECK(classify_question("How many chairs are there?") ==
        QuestionType::Quantity);
  CHECK(classify_question("What is the number of windows?") ==
        QuestionType::Quantity);
  CHECK(classify_question("What is the lamp used for?") == QuestionType::Usage);
  CHECK(classify_question("What is the purpose of the shelf?") ==
        QuestionType::Usage);
  CHECK(classify_question("What is the table for?") == QuestionType::Usage);
  CHECK(classify_question("Describe the room.") == QuestionType::Other);
  CHECK(classify_question("") == QuestionType::Other);
}

TEST_CASE("classify_question rules are ordered first-match") {
  // "in the" (Containment) wins over "how many" (Quantity).
  CHECK(classify_question("How many chairs are in the room?") ==
        QuestionType::Containment);
  // "behind" (Direction) wins over "near" (Distance).
  CHECK(classify_question("Is the sofa behind or near the table?") ==
        QuestionType::Direction);
  // Exact-token matching: "bigger" does not trigger the Size rule's "big".
  CHECK(classify_question("Is it bigger than the chair?") ==
        QuestionType::Comparison);
}

TEST_CASE("generate_random_pairs is deterministic per seed") {
  const SceneCorpus corpus = load_scene_graphs(fixture_path("scenes50.json"), lex());
  const auto qa = load_qa_dataset(fixture_path("qa50.jsonl"), corpus);

  const auto pairs1 = generate_random_pairs(qa, corpus, 42);
  const auto pairs2 = generate_random_pairs(qa, corpus, 42);
  CHECK(probe_pairs_to_jsonl(pairs1) == probe_pairs_to_jsonl(pairs2));

  const auto pairs3 = generate_random_pairs(qa, corpus, 43);
  CHECK(probe_pairs_to_jsonl(pairs1) != probe_pairs_to_jsonl(pairs3));
}

TEST_CASE("generate_random_pairs invariants") {
  const SceneCorpus corpus = load_scene_graphs(fixture_path("scenes50.json"), lex());
  const auto records = load_qa_dataset(fixture_path("qa50.jsonl"), corpus);
  const auto pairs = generate_random_pairs(records, corpus, 7);
  REQUIRE(pairs.size() == records.size());
  std::set<std::string> ids;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const ProbePair& p = pairs[i];
    CHECK(p.mode == ProbeMode::RandomScene);
    CHECK(p.context_a.question_id == records[i].question_id);
    CHECK(p.context_a.scene_id == records[i].scene_id);
    CHECK(p.context_b.question_id == records[i].question_id);
    CHECK(p.context_b.scene_id != p.context_a.scene_id);
    CHECK(corpus.find(p.context_b.scene_id) != nullptr);
    CHECK(p.source_question_id == records[i].question_id);
    CHECK(p.grammatical);
    ids.insert(p.probe_id);
  }
  CHECK(ids.size() == pairs.size());  // distinct probe ids
  CHECK(pairs[0].probe_id == "rnd-000000");
}

TEST_CASE("generate_random_pairs needs at least two scenes") {
  SceneCorpus one;
  one.scenes.push_back({"s1", {}, {}});
  one.index["s1"] = 0;
  const std::vector<QARecord> records = {qa("q1", "s1", "?", QuestionType::Other)};
  CHECK(kind_of([&] { generate_random_pairs(records, one, 1); }) ==
        ErrorKind::TooFewScenes);
}

TEST_CASE("invert_relation uses the antonym map") {
  CHECK(invert_relation("above", lex()) == "below");
  CHECK(invert_relation("in front of", lex()) == "behind");
  CHECK(invert_relation("on the right", lex()) == "on the left");
  CHECK(kind_of([] { invert_relation("next to", lex()); }) ==
        ErrorKind::NoAntonym);
}

TEST_CASE("generate_opposite_questions flips exactly one relation phrase") {
  const std::vector<QARecord> records = {
      qa("q1", "s1", "What is on the right of the table?", QuestionType::Direction),
      qa("q2", "s1", "What is above the shelf?", QuestionType::Direction),
      qa("q3", "s1", "What is ON   TOP of the box?", QuestionType::Contact),
  };
  const auto result = generate_opposite_questions(records, lex());
  REQUIRE(result.questions.size() == 3);
  CHECK(result.questions[0].question == "What is on the left of the table?");
  CHECK(result.questions[0].question_id == "q1-opp");
  CHECK(result.questions[0].scene_id == "s1");
  CHECK(result.questions[1].question == "What is below the shelf?");
  // Case-insensitive match with flexible whitespace; replacement is canonical.
  CHECK(result.questions[2].question == "What is beneath the box?");

  REQUIRE(result.pairs.size() == 3);
  CHECK(result.pairs[0].mode == ProbeMode::OppositeQuestion);
  CHECK(result.pairs[0].context_a == ProbeContext{"q1", "s1"});
  CHECK(result.pairs[0].context_b == ProbeContext{"q1-opp", "s1"});
  CHECK(result.pairs[0].source_question_id == "q1");
  CHECK(result.pairs[0].grammatical);
  CHECK(result.report.emitted == 3);
}

TEST_CASE("generate_opposite_questions skip accounting") {
  const std::vector<QARecord> records = {
      // Non-spatial types are skipped outright.
      qa("c1", "s1", "What color is the chair?", QuestionType::Color),
      // Spatial type but no invertible phrase in the text.
      qa("d1", "s1", "Which way does the chair face?", QuestionType::Direction),
      // Two phrases: ambiguous, skipped.
      qa("d2", "s1", "Is the chair near the table or far from the door?",
         QuestionType::Distance),
      // One phrase: emitted.
      qa("d3", "s1", "What is behind the sofa?", QuestionType::Direction),
  };
  const auto result = generate_opposite_questions(records, lex());
  CHECK(result.report.emitted == 1);
  CHECK(result.report.skipped_non_spatial == 1);
  CHECK(result.report.skipped_no_phrase == 1);
  CHECK(result.report.skipped_multi_phrase == 1);
  REQUIRE(result.questions.size() == 1);
  CHECK(result.questions[0].question == "What is in front of the sofa?");
}

TEST_CASE("generate_opposite_questions on the small fixture") {
  const SceneCorpus corpus =
      load_scene_graphs(fixture_path("scenes_small.json"), lex());
  const auto records = load_qa_dataset(fixture_path("qa_small.jsonl"), corpus);
  const auto result = generate_opposite_questions(records, lex());
  CHECK(result.report.emitted == 5);
  CHECK(result.report.skipped_non_spatial == 7);
  CHECK(result.report.skipped_no_phrase == 0);
  CHECK(result.report.skipped_multi_phrase == 0);

  std::map<std::string, std::string> flipped;
  for (const auto& q : result.questions) flipped[q.question_id] = q.question;
  CHECK(flipped.at("qs-01-opp") == "What is in front of the table?");
  CHECK(flipped.at("qs-04-opp") == "What is beneath the table?");
  CHECK(flipped.at("qs-05-opp") == "What is far the bed?");
  CHECK(flipped.at("qs-10-opp") == "What is outside the trash can?");
  CHECK(flipped.at("qs-11-opp") == "What is below the bookshelf?");
}

TEST_CASE("ungrammatical inversions are emitted but flagged") {
  const std::vector<QARecord> records = {
      // near -> far without a trailing "from": awkward.
      qa("g1", "s1", "What is near the bed?", QuestionType::Distance),
      // far from -> near from: also awkward.
      qa("g2", "s1", "What is far from the window?", QuestionType::Distance),
      // near from? no: "near the" is fine after inversion to far? No -- far
      // followed by "from" reads fine: "far from" stays grammatical.
      qa("g3", "s1", "Is the lamp above the desk?", QuestionType::Direction),
  };
  const auto result = generate_opposite_questions(records, lex());
  REQUIRE(result.pairs.size() == 3);
  CHECK(result.questions[0].question == "What is far the bed?");
  CHECK_FALSE(result.pairs[0].grammatical);
  CHECK(result.questions[1].question == "What is near from the window?");
  CHECK_FALSE(result.pairs[1].grammatical);
  CHECK(result.questions[2].question == "Is the lamp below the desk?");
  CHECK(result.pairs[2].grammatical);
}

TEST_CASE("probe pair serialization round-trips") {
  const SceneCorpus corpus = load_scene_graphs(fixture_path("scenes50.json"), lex());
  const auto records = load_qa_dataset(fixture_path("qa50.jsonl"), corpus);
  const auto pairs = generate_random_pairs(records, corpus, 5);

  TempDir tmp;
  write_file(tmp.str("probes.jsonl"), probe_pairs_to_jsonl(pairs));
  const auto loaded = load_probe_pairs(tmp.str("probes.jsonl"));
  REQUIRE(loaded.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(loaded[i].probe_id == pairs[i].probe_id);
    CHECK(loaded[i].mode == pairs[i].mode);
    CHECK(loaded[i].context_a == pairs[i].context_a);
    CHECK(loaded[i].context_b == pairs[i].context_b);
    CHECK(loaded[i].source_question_id == pairs[i].source_question_id);
    CHECK(loaded[i].grammatical == pairs[i].grammatical);
  }
}

TEST_CASE("load_probe_pairs validates records") {
  TempDir tmp;
  SUBCASE("bad mode") {
    write_file(tmp.str("p.jsonl"),
               R"({"probe_id": "p1", "mode": "sideways", "context_a": {"question_id": "q", "scene_id": "s"}, "context_b": {"question_id": "q", "scene_id": "t"}})"
               "\n");
    CHECK(kind_of([&] { load_probe_pairs(tmp.str("p.jsonl")); }) ==
          ErrorKind::MalformedFile);
  }
  SUBCASE("missing context") {
    write_file(tmp.str("p.jsonl"),
               R"({"probe_id": "p1", "mode": "random_scene", "context_a": {"question_id": "q", "scene_id": "s"}})"
               "\n");
    CHECK(kind_of([&] { load_probe_pairs(tmp.str("p.jsonl")); }) ==
          ErrorKind::MalformedFile);
  }
  SUBCASE("invalid json with line number") {
    write_file(tmp.str("p.jsonl"), "{}\n{broken\n");
    try {
      load_probe_pairs(tmp.str("p.jsonl"));
      FAIL("expected MalformedFile");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedFile);
    }
  }
  SUBCASE("missing file") {
    CHECK(kind_of([&] { load_probe_pairs(tmp.str("ghost.jsonl")); }) ==
          ErrorKind::MalformedFile);
  }
}

TEST_CASE("probe_mode names round-trip") {
  CHECK(probe_mode_name(ProbeMode::RandomScene) == std::string("random_scene"));
  CHECK(probe_mode_name(ProbeMode::OppositeQuestion) ==
        std::string("opposite_question"));
  CHECK(probe_mode_from("random_scene") == ProbeMode::RandomScene);
  CHECK(probe_mode_from("random") == ProbeMode::RandomScene);
  CHECK(probe_mode_from("opposite_question") == ProbeMode::OppositeQuestion);
  CHECK(probe_mode_from("opposite") == ProbeMode::OppositeQuestion);
  CHECK_FALSE(probe_mode_from("diagonal").has_value());
}
