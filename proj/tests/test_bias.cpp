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

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scenecheck/bias.hpp"
#include "scenecheck/corpus.hpp"
#include "scenecheck/errors.hpp"
#include "test_support.hpp"

using namespace scenecheck;
using scenecheck::testing::fixture_path;

namespace {

const Lexicon& lex() { return Lexicon::bundled_default(); }

const SceneCorpus& rooms20() {
  static const SceneCorpus corpus =
      load_scene_graphs(fixture_path("scenes20.json"), lex());
  return corpus;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

RecordEval eval_stub(const std::string& scene_id,
                     std::set<std::string> intersection,
                     std::set<std::string> predicted_only) {
  RecordEval e;
  e.question_id = "q";
  e.scene_id = scene_id;
  e.model_id = "m";
  e.objects.intersection = std::move(intersection);
  e.objects.predicted_only = std::move(predicted_only);
  return e;
}

}  // namespace

TEST_CASE("object_frequency matches the hand counts on the 20-scene fixture") {
  const auto freq = object_frequency(rooms20());
  const std::map<std::string, std::size_t> expected = {
      {"wall", 20}, {"floor", 19}, {"chair", 15},    {"door", 14},
      {"table", 12}, {"window", 10}, {"lamp", 9},    {"sofa", 6},
      {"bed", 5},   {"trash_can", 4}, {"tv", 3},
  };
  REQUIRE(freq.size() == expected.size());
  for (const auto& [label, present] : expected) {
    REQUIRE(freq.count(label) == 1);
    const ObjectStats& s = freq.at(label);
    CHECK(s.present_scenes == present);
    CHECK(s.absent_scenes == 20 - present);
    CHECK(s.frequency ==
          doctest::Approx(static_cast<double>(present) / 20.0).epsilon(1e-15));
    CHECK_FALSE(s.hallucination_rate.has_value());
  }
}

TEST_CASE("object_frequency rejects an empty corpus") {
  CHECK(kind_of([] { object_frequency(SceneCorpus{}); }) ==
        ErrorKind::EmptyCorpus);
}

TEST_CASE("object_hallucination_rate counts only evaluated scenes") {
  // Two evaluated scenes: room-20 (wall only) and room-01 (all 11 labels).
  std::vector<RecordEval> evals;
  evals.push_back(eval_stub("room-20", {"wall"}, {"tv"}));
  evals.push_back(eval_stub("room-20", {}, {}));
  evals.push_back(eval_stub("room-01", {"chair"}, {}));
  const auto hr = object_hallucination_rate(evals, rooms20());

  const ObjectStats& tv = hr.at("tv");
  CHECK(tv.present_scenes == 1);   // room-01
  CHECK(tv.absent_scenes == 1);    // room-20
  CHECK(tv.hallucinated_in_absent == 1);
  REQUIRE(tv.hallucination_rate.has_value());
  CHECK(*tv.hallucination_rate == 1.0);

  const ObjectStats& chair = hr.at("chair");
  CHECK(chair.absent_scenes == 1);
  CHECK(chair.hallucinated_in_absent == 0);
  REQUIRE(chair.hallucination_rate.has_value());
  CHECK(*chair.hallucination_rate == 0.0);

  // wall is present in both evaluated scenes: rate undefined.
  const ObjectStats& wall = hr.at("wall");
  CHECK(wall.present_scenes == 2);
  CHECK(wall.absent_scenes == 0);
  CHECK_FALSE(wall.hallucination_rate.has_value());
}

TEST_CASE("object_hallucination_rate includes out-of-corpus predictions") {
  std::vector<RecordEval> evals;
  evals.push_back(eval_stub("room-20", {}, {"unicorn"}));
  const auto hr = object_hallucination_rate(evals, rooms20());
  REQUIRE(hr.count("unicorn") == 1);
  CHECK(hr.at("unicorn").hallucinated_in_absent == 1);
  REQUIRE(hr.at("unicorn").hallucination_rate.has_value());
  CHECK(*hr.at("unicorn").hallucination_rate == 1.0);
}

TEST_CASE("cooccurrence_conditional matches hand counts") {
  const auto stats = cooccurrence_conditional(
      rooms20(), {{"wall", "floor"}, {"floor", "wall"}, {"chair", "tv"},
                  {"tv", "chair"}, {"ghost", "wall"}});
  REQUIRE(stats.size() == 5);

  CHECK(stats[0].count_a == 20);
  CHECK(stats[0].count_ab == 19);
  CHECK(*stats[0].p_b_given_a == doctest::Approx(0.95).epsilon(1e-15));

  CHECK(stats[1].count_a == 19);
  CHECK(*stats[1].p_b_given_a == 1.0);

  CHECK(stats[2].count_a == 15);
  CHECK(stats[2].count_ab == 3);
  CHECK(*stats[2].p_b_given_a == doctest::Approx(0.2).epsilon(1e-15));

  CHECK(*stats[3].p_b_given_a == 1.0);

  // Never-present label: probability undefined.
  CHECK(stats[4].count_a == 0);
  CHECK_FALSE(stats[4].p_b_given_a.has_value());
}

TEST_CASE("default_cooccurrence_pairs ranks by presence and skips self") {
  const auto pairs = default_cooccurrence_pairs(rooms20(), 3);
  // Top 3 labels: wall (20), floor (19), chair (15) -> 3*2 ordered pairs.
  REQUIRE(pairs.size() == 6);
  std::set<std::string> involved;
  for (const auto& [a, b] : pairs) {
    involved.insert(a);
    involved.insert(b);
    CHECK(a != b);
  }
  CHECK(involved == std::set<std::string>{"wall", "floor", "chair"});
}

TEST_CASE("topk_from_counts ratio on the documented distribution") {
  const std::map<std::string, std::size_t> counts = {
      {"brown", 5}, {"red", 3}, {"white", 2}, {"blue", 1}, {"black", 1}};
  const auto t3 = topk_from_counts("chair", AttrKind::Color, counts, 3);
  CHECK(t3.n_queries == 12);
  CHECK(t3.distinct_values == 5);
  CHECK(t3.ratio == doctest::Approx(10.0 / 12.0).epsilon(1e-9));

  // Monotone in k, and saturates at 1 once k covers all distinct values.
  double prev = 0.0;
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto t = topk_from_counts("chair", AttrKind::Color, counts, k);
    CHECK(t.ratio >= prev);
    prev = t.ratio;
  }
  CHECK(topk_from_counts("chair", AttrKind::Color, counts, 5).ratio == 1.0);
  CHECK(topk_from_counts("chair", AttrKind::Color, counts, 9).ratio == 1.0);

  CHECK(kind_of([] {
          topk_from_counts("chair", AttrKind::Color, {}, 3);
        }) == ErrorKind::EmptyGroup);
}

TEST_CASE("reduce_attribute_answer picks the first matching term") {
  CHECK(reduce_attribute_answer("brown", AttrKind::Color, lex()) == "brown");
  CHECK(reduce_attribute_answer("the chair is brown", AttrKind::Color, lex()) ==
        "brown");
  CHECK(reduce_attribute_answer("dark brown, almost black", AttrKind::Color,
                                lex()) == "brown");
  // Terms of another kind do not leak across.
  CHECK(reduce_attribute_answer("it is round", AttrKind::Color, lex()) ==
        "other");
  CHECK(reduce_attribute_answer("no idea", AttrKind::Color, lex()) == "other");
  CHECK(reduce_attribute_answer("l-shaped", AttrKind::Shape, lex()) ==
        "l-shaped");
}

TEST_CASE("topk_groups on the topk fixture reproduces the headline ratio") {
  const SceneCorpus corpus =
      load_scene_graphs(fixture_path("scenes_small.json"), lex());
  const auto qa = load_qa_dataset(fixture_path("qa_topk.jsonl"), corpus);
  const auto groups = topk_groups(qa, lex(), 3);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].object_label == "chair");
  CHECK(groups[0].kind == AttrKind::Color);
  CHECK(groups[0].n_queries == 12);
  CHECK(groups[0].distinct_values == 5);
  CHECK(groups[0].ratio == doctest::Approx(10.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("rank_correlation frozen oracle values") {
  const auto c = rank_correlation({1, 2, 3, 4, 5}, {2, 1, 4, 3, 6});
  CHECK(c.pearson == doctest::Approx(0.8219949365267865).epsilon(1e-12));
  CHECK(c.spearman == doctest::Approx(0.8).epsilon(1e-12));

  // Tied values use average ranks.
  const auto t = rank_correlation({1, 2, 2, 3, 4}, {1, 3, 2, 5, 4});
  CHECK(t.pearson == doctest::Approx(0.8320502943378436).epsilon(1e-12));
  CHECK(t.spearman == doctest::Approx(0.8720815992723809).epsilon(1e-12));

  // Perfect monotone agreement.
  const auto p = rank_correlation({1, 2, 3}, {10, 20, 30});
  CHECK(p.pearson == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.spearman == doctest::Approx(1.0).epsilon(1e-12));
  const auto n = rank_correlation({1, 2, 3}, {30, 20, 10});
  CHECK(n.pearson == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(n.spearman == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("rank_correlation degenerate inputs") {
  CHECK(kind_of([] { rank_correlation({1, 2, 3}, {1, 2}); }) ==
        ErrorKind::DegenerateInput);
  CHECK(kind_of([] { rank_correlation({1, 2}, {3, 4}); }) ==
        ErrorKind::DegenerateInput);
  CHECK(kind_of([] { rank_correlation({1, 1, 1}, {1, 2, 3}); }) ==
        ErrorKind::DegenerateInput);
  CHECK(kind_of([] { rank_correlation({1, 2, 3}, {7, 7, 7}); }) ==
        ErrorKind::DegenerateInput);
}

TEST_CASE("csv emitters produce CRLF rows with stable headers") {
  const auto freq = object_frequency(rooms20());
  std::vector<RecordEval> evals;
  evals.push_back(eval_stub("room-20", {"wall"}, {"tv"}));
  const auto hr = object_hallucination_rate(evals, rooms20());

  const std::string stats_csv = object_stats_csv(freq, hr);
  CHECK(stats_csv.rfind("label,present_scenes,absent_scenes,frequency,"
                        "eval_absent_scenes,hallucinated_in_absent,"
                        "hallucination_rate\r\n", 0) == 0);
  CHECK(stats_csv.find("wall,20,0,1.000000,") != std::string::npos);
  CHECK(stats_csv.find("tv,3,17,0.150000,1,1,1.000000") != std::string::npos);

  const std::string co_csv = cooccurrence_csv(cooccurrence_conditional(
      rooms20(), {{"wall", "floor"}}));
  CHECK(co_csv.rfind("a_label,b_label,count_a,count_ab,p_b_given_a\r\n", 0) == 0);
  CHECK(co_csv.find("wall,floor,20,19,0.950000") != std::string::npos);

  const std::map<std::string, std::size_t> counts = {{"brown", 5}, {"red", 3},
                                                     {"white", 2}, {"blue", 1},
                                                     {"black", 1}};
  const std::string tk_csv =
      topk_csv({topk_from_counts("chair", AttrKind::Color, counts, 3)});
  CHECK(tk_csv.rfind("object_label,kind,k,n_queries,distinct_values,ratio\r\n",
                     0) == 0);
  CHECK(tk_csv.find("chair,color,3,12,5,0.833333") != std::string::npos);

  const std::string scatter = scatter_freq_hr_csv(freq, hr);
  CHECK(scatter.rfind("label,frequency,hallucination_rate\r\n", 0) == 0);
  // Labels never absent in evaluated scenes keep a blank HR field.
  CHECK(scatter.find("wall,1.000000,\r\n") != std::string::npos);
  CHECK(scatter.find("tv,0.150000,1.000000") != std::string::npos);
}
