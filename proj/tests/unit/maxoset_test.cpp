#include "qadiag/maxoset.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/test_support.hpp"

namespace qadiag {
namespace {

MaxOsetAnalysis fig6_analysis() {
  Corpus corpus = testing::load_fixture("fig6.jsonl");
  return analyze_question(corpus.questions.front(), overlap_config(), {"S2"});
}

std::map<TokenSet, std::vector<std::string>> sets_by_words(const std::vector<OverlapSet>& sets) {
  std::map<TokenSet, std::vector<std::string>> m;
  for (const auto& s : sets) m[s.words] = s.members;
  return m;
}

TEST(OverlapSets, Fig6Grouping) {
  MaxOsetAnalysis a = fig6_analysis();
  auto sets = sets_by_words(a.all_sets);
  ASSERT_EQ(sets.size(), 4u);
  EXPECT_EQ(sets.at({"babe", "belanger"}), (std::vector<std::string>{"S2", "S4"}));
  EXPECT_EQ(sets.at({"play", "amateur", "basketball"}), std::vector<std::string>{"S3"});
  EXPECT_EQ(sets.at({"basketball"}), std::vector<std::string>{"S1"});
  EXPECT_EQ(sets.at({"babe"}), std::vector<std::string>{"S5"});
  EXPECT_TRUE(a.zero_overlap.empty());
}

TEST(OverlapSets, AllCandidatesDisjointFromQuestion) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "nothing shared", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "also unrelated", std::nullopt, {}});
  MaxOsetAnalysis a = overlap_sets(q, overlap_config());
  EXPECT_TRUE(a.all_sets.empty());
  EXPECT_EQ(a.zero_overlap, (std::set<std::string>{"c1", "c2"}));
}

TEST(OverlapSets, IdenticalCandidatesFormOneSet) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  for (int i = 0; i < 3; ++i)
    q.candidates.push_back({"c" + std::to_string(i), "d", "zebra quartz", std::nullopt, {}});
  MaxOsetAnalysis a = overlap_sets(q, overlap_config());
  ASSERT_EQ(a.all_sets.size(), 1u);
  EXPECT_EQ(a.all_sets[0].members.size(), 3u);
}

TEST(OverlapSets, EmptyCandidatesIsAnError) {
  Question q{"q", "t", {"k"}, std::nullopt, {}};
  EXPECT_THROW(overlap_sets(q, overlap_config()), DataError);
}

TEST(MaxOsets, Fig6MaximalSets) {
  MaxOsetAnalysis a = fig6_analysis();
  auto maximal = sets_by_words(a.maximal_sets);
  ASSERT_EQ(maximal.size(), 2u);
  EXPECT_EQ(maximal.at({"babe", "belanger"}), (std::vector<std::string>{"S2", "S4"}));
  EXPECT_EQ(maximal.at({"play", "amateur", "basketball"}), std::vector<std::string>{"S3"});
}

TEST(MaxOsets, IncomparableSetsAreBothMaximal) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "quartz", std::nullopt, {}});
  MaxOsetAnalysis a = overlap_sets(q, overlap_config());
  compute_maxosets(a);
  EXPECT_EQ(a.maximal_sets.size(), 2u);
}

TEST(MaxOsets, OnlyTopOfChainIsMaximal) {
  Question q{"q", "zebra quartz violin", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "zebra quartz", std::nullopt, {}});
  q.candidates.push_back({"c3", "d", "zebra quartz violin", std::nullopt, {}});
  MaxOsetAnalysis a = overlap_sets(q, overlap_config());
  compute_maxosets(a);
  ASSERT_EQ(a.maximal_sets.size(), 1u);
  EXPECT_EQ(a.maximal_sets[0].words, (TokenSet{"zebra", "quartz", "violin"}));
}

TEST(BoundStats, Fig6Bounds) {
  std::vector<MaxOsetAnalysis> analyses = {fig6_analysis()};
  BoundStats stats = bound_stats(analyses);
  EXPECT_DOUBLE_EQ(stats.max, 1.0);
  EXPECT_DOUBLE_EQ(stats.min, 0.0);
  EXPECT_DOUBLE_EQ(stats.expected_max, 0.5);
}

TEST(BoundStats, AllMaximalMembersCorrect) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra quartz", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "zebra quartz", std::nullopt, {}});
  q.candidates.push_back({"c3", "d", "zebra", std::nullopt, {}});  // dominated, incorrect
  std::vector<MaxOsetAnalysis> analyses = {
      analyze_question(q, overlap_config(), {"c1", "c2"})};
  BoundStats stats = bound_stats(analyses);
  EXPECT_DOUBLE_EQ(stats.max, 1.0);
  EXPECT_DOUBLE_EQ(stats.min, 1.0);
  EXPECT_DOUBLE_EQ(stats.expected_max, 1.0);
}

TEST(BoundStats, NoCorrectCandidatesAnywhere) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "quartz", std::nullopt, {}});
  std::vector<MaxOsetAnalysis> analyses = {analyze_question(q, overlap_config(), {})};
  BoundStats stats = bound_stats(analyses);
  EXPECT_DOUBLE_EQ(stats.max, 0.0);
  EXPECT_DOUBLE_EQ(stats.min, 0.0);
  EXPECT_DOUBLE_EQ(stats.expected_max, 0.0);
}

TEST(BoundStats, EmptyIsAnError) {
  std::vector<MaxOsetAnalysis> analyses;
  EXPECT_THROW(bound_stats(analyses), DataError);
}

TEST(Categorize, Fig6OnlyMayBeAChance) {
  EXPECT_EQ(categorize_question(fig6_analysis()),
            std::set<QuestionCategory>{QuestionCategory::MayBeChanceToGetRight});
}

TEST(Categorize, SingleCorrectCandidateWithOverlap) {
  Question q{"q", "zebra", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  auto classes = categorize_question(analyze_question(q, overlap_config(), {"c1"}));
  EXPECT_EQ(classes, (std::set<QuestionCategory>{QuestionCategory::ImpossibleToGetWrong,
                                                 QuestionCategory::AlwaysChanceToGetRight,
                                                 QuestionCategory::MayBeChanceToGetRight}));
}

TEST(Categorize, AllIncorrectWithOverlap) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "quartz", std::nullopt, {}});
  auto classes = categorize_question(analyze_question(q, overlap_config(), {}));
  EXPECT_EQ(classes, (std::set<QuestionCategory>{QuestionCategory::WrongAnswersAlwaysTooHigh,
                                                 QuestionCategory::NoCorrectWithAnyOverlap,
                                                 QuestionCategory::NoCorrectAnswers}));
}

TEST(Categorize, CorrectCandidateWithZeroOverlap) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "unrelated entirely", std::nullopt, {}});
  auto classes = categorize_question(analyze_question(q, overlap_config(), {"c2"}));
  // the only correct answer has no overlap: scoring can never surface it
  EXPECT_TRUE(classes.count(QuestionCategory::WrongAnswersAlwaysTooHigh));
  EXPECT_TRUE(classes.count(QuestionCategory::NoCorrectWithAnyOverlap));
  EXPECT_FALSE(classes.count(QuestionCategory::NoCorrectAnswers));
}

TEST(RankBoundsOp, Fig6S2BestFirstWorstThird) {
  MaxOsetAnalysis a = fig6_analysis();
  auto rb = rank_bounds(a, "S2");
  ASSERT_TRUE(rb.has_value());
  EXPECT_EQ(rb->best, 1u);
  EXPECT_EQ(rb->worst, 3u);
}

TEST(RankBoundsOp, Fig6S5DominatedByOneSuperset) {
  MaxOsetAnalysis a = fig6_analysis();
  auto rb = rank_bounds(a, "S5");
  ASSERT_TRUE(rb.has_value());
  EXPECT_EQ(rb->best, 2u);   // {babe} sits below {babe, belanger}
  EXPECT_EQ(rb->worst, 4u);  // every other nonequal set can be pushed above
}

TEST(RankBoundsOp, SoleOverlappingCandidateIsPinnedFirst) {
  Question q{"q", "zebra quartz", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "unrelated", std::nullopt, {}});
  MaxOsetAnalysis a = overlap_sets(q, overlap_config());
  auto rb = rank_bounds(a, "c1");
  ASSERT_TRUE(rb.has_value());
  EXPECT_EQ(rb->best, 1u);
  EXPECT_EQ(rb->worst, 1u);
}

TEST(RankBoundsOp, ZeroOverlapCandidateIsSignaled) {
  Question q{"q", "zebra", {"k"}, std::nullopt, {}};
  q.candidates.push_back({"c1", "d", "zebra", std::nullopt, {}});
  q.candidates.push_back({"c2", "d", "unrelated", std::nullopt, {}});
  EXPECT_EQ(rank_bounds(q, "c2", overlap_config()), std::nullopt);
}

// --- properties --------------------------------------------------------------

TEST(MaxOsetProperties, SetsPartitionNonZeroOverlapCandidates) {
  std::mt19937 rng(500);
  NormalizationConfig cfg = overlap_config();
  for (int trial = 0; trial < 500; ++trial) {
    Question q = testing::random_question(rng);
    MaxOsetAnalysis a = overlap_sets(q, cfg);
    std::size_t in_sets = 0;
    std::set<std::string> seen;
    for (const auto& s : a.all_sets) {
      in_sets += s.members.size();
      for (const auto& id : s.members) EXPECT_TRUE(seen.insert(id).second);
      // every member's overlap equals the set's words exactly
      for (const auto& id : s.members) {
        for (const auto& c : q.candidates)
          if (c.id == id) EXPECT_EQ(overlap_words(q, c, cfg), s.words);
      }
      EXPECT_FALSE(s.words.empty());
    }
    EXPECT_EQ(in_sets + a.zero_overlap.size(), q.candidates.size());
  }
}

TEST(MaxOsetProperties, MaximalSetsFormAnAntichain) {
  std::mt19937 rng(501);
  NormalizationConfig cfg = overlap_config();
  for (int trial = 0; trial < 500; ++trial) {
    Question q = testing::random_question(rng);
    MaxOsetAnalysis a = overlap_sets(q, cfg);
    compute_maxosets(a);
    for (const auto& s1 : a.maximal_sets)
      for (const auto& s2 : a.maximal_sets) {
        EXPECT_FALSE(proper_subset(s1.words, s2.words));
      }
    // every non-maximal set is dominated by some maximal set
    for (const auto& s : a.all_sets) {
      bool is_maximal = false;
      for (const auto& m : a.maximal_sets) is_maximal |= m.words == s.words;
      if (is_maximal) continue;
      bool dominated = false;
      for (const auto& m : a.maximal_sets) dominated |= proper_subset(s.words, m.words);
      EXPECT_TRUE(dominated);
    }
  }
}

// Sampled strictly-positive weightings against the analytical claims: the
// top scorer lives in a maximal set, observed dense ranks stay inside
// rank_bounds, and the min/max predicates bound what the top pick can be.
TEST(MaxOsetProperties, PositiveWeightSamplingOracle) {
  std::mt19937 rng(502);
  NormalizationConfig cfg = overlap_config();
  int tables = 0;
  while (tables < 1500) {
    Question q = testing::random_question(rng);
    MaxOsetAnalysis a = analyze_question(q, cfg, testing::gold_correct_ids(q));
    if (a.all_sets.empty()) continue;  // no overlap anywhere: weights are moot

    std::set<std::string> maximal_members;
    for (const auto& s : a.maximal_sets)
      for (const auto& id : s.members) maximal_members.insert(id);

    for (int rep = 0; rep < 3; ++rep, ++tables) {
      auto weights = testing::random_positive_weights(rng, 8);
      std::vector<double> scores;
      std::map<std::string, double> score_of;
      for (const auto& c : q.candidates) {
        double s = testing::weighted_overlap_score(overlap_words(q, c, cfg), weights);
        scores.push_back(s);
        score_of[c.id] = s;
      }
      double top_score = *std::max_element(scores.begin(), scores.end());

      std::vector<std::string> top_picks;
      for (const auto& c : q.candidates)
        if (score_of[c.id] == top_score) top_picks.push_back(c.id);

      // (b) every top scorer belongs to a maximal overlap set
      for (const auto& id : top_picks) EXPECT_TRUE(maximal_members.count(id));

      // (c) observed dense ranks lie within rank_bounds
      for (const auto& c : q.candidates) {
        auto rb = rank_bounds(a, c.id);
        if (!rb) continue;
        std::size_t r = testing::dense_rank(score_of[c.id], scores);
        EXPECT_GE(r, rb->best);
        EXPECT_LE(r, rb->worst);
      }

      // (d) min predicate forces a correct top pick; failed max predicate
      // forbids one
      if (min_predicate(a))
        for (const auto& id : top_picks) EXPECT_TRUE(a.correct_ids.count(id));
      if (!max_predicate(a))
        for (const auto& id : top_picks) EXPECT_FALSE(a.correct_ids.count(id));
    }
  }
}

TEST(MaxOsetProperties, CategoryContainments) {
  std::mt19937 rng(503);
  NormalizationConfig cfg = overlap_config();
  for (int trial = 0; trial < 1000; ++trial) {
    Question q = testing::random_question(rng);
    MaxOsetAnalysis a = analyze_question(q, cfg, testing::gold_correct_ids(q));
    auto classes = categorize_question(a);
    if (classes.count(QuestionCategory::ImpossibleToGetWrong))
      EXPECT_TRUE(classes.count(QuestionCategory::AlwaysChanceToGetRight));
    if (classes.count(QuestionCategory::AlwaysChanceToGetRight))
      EXPECT_TRUE(classes.count(QuestionCategory::MayBeChanceToGetRight));
    if (classes.count(QuestionCategory::NoCorrectAnswers))
      EXPECT_TRUE(classes.count(QuestionCategory::NoCorrectWithAnyOverlap));
    // expected-max value sits between the min and max predicates
    double em = expected_max_value(a);
    if (min_predicate(a)) EXPECT_DOUBLE_EQ(em, 1.0);
    if (!max_predicate(a)) EXPECT_DOUBLE_EQ(em, 0.0);
    EXPECT_GE(em, 0.0);
    EXPECT_LE(em, 1.0);
  }
}

}  // namespace
}  // namespace qadiag
