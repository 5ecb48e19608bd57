#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qadiag/common.hpp"
#include "qadiag/corpus.hpp"
#include "qadiag/judge.hpp"
#include "qadiag/score.hpp"

namespace qadiag {

// All candidates of one question whose overlap with the question is exactly
// this word set. Word sets are nonempty; zero-overlap candidates are tracked
// separately on the analysis.
struct OverlapSet {
  TokenSet words;
  std::vector<std::string> members;  // candidate ids, input order

  bool operator==(const OverlapSet&) const = default;
};

struct MaxOsetAnalysis {
  std::string question_id;
  std::vector<OverlapSet> all_sets;      // ordered by word set
  std::vector<OverlapSet> maximal_sets;  // word sets that are no other set's proper subset
  std::set<std::string> zero_overlap;    // candidates sharing no content word with the question
  std::set<std::string> correct_ids;
};

// Groups candidates by exact overlap word set.
inline MaxOsetAnalysis overlap_sets(const Question& question, const NormalizationConfig& config) {
  if (question.candidates.empty())
    throw DataError("overlap_sets: question '" + question.id + "' has no candidates");
  MaxOsetAnalysis analysis;
  analysis.question_id = question.id;
  std::map<TokenSet, std::vector<std::string>> groups;
  for (const auto& c : question.candidates) {
    TokenSet words = overlap_words(question, c, config);
    if (words.empty())
      analysis.zero_overlap.insert(c.id);
    else
      groups[words].push_back(c.id);
  }
  for (auto& [words, members] : groups)
    analysis.all_sets.push_back(OverlapSet{words, std::move(members)});
  return analysis;
}

inline bool proper_subset(const TokenSet& a, const TokenSet& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Keeps the word sets that are not a proper subset of any other set's words.
inline void compute_maxosets(MaxOsetAnalysis& analysis) {
  analysis.maximal_sets.clear();
  for (const auto& candidate_set : analysis.all_sets) {
    bool dominated = false;
    for (const auto& other : analysis.all_sets) {
      if (proper_subset(candidate_set.words, other.words)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) analysis.maximal_sets.push_back(candidate_set);
  }
}

inline MaxOsetAnalysis analyze_question(const Question& question,
                                        const NormalizationConfig& config,
                                        const std::set<std::string>& correct_ids) {
  MaxOsetAnalysis analysis = overlap_sets(question, config);
  compute_maxosets(analysis);
  analysis.correct_ids = correct_ids;
  return analysis;
}

namespace maxoset_detail {

inline std::size_t correct_members(const OverlapSet& set, const std::set<std::string>& correct) {
  std::size_t n = 0;
  for (const auto& id : set.members) n += correct.count(id);
  return n;
}

}  // namespace maxoset_detail

// Some maximal set contains a correct candidate: an ideal weighting could
// rank a correct sentence first.
inline bool max_predicate(const MaxOsetAnalysis& analysis) {
  for (const auto& set : analysis.maximal_sets)
    if (maxoset_detail::correct_members(set, analysis.correct_ids) > 0) return true;
  return false;
}

// Every member of every maximal set is correct: no weighting can put an
// incorrect sentence first.
inline bool min_predicate(const MaxOsetAnalysis& analysis) {
  if (analysis.maximal_sets.empty()) return false;
  for (const auto& set : analysis.maximal_sets)
    if (maxoset_detail::correct_members(set, analysis.correct_ids) != set.members.size())
      return false;
  return true;
}

// Best maximal set's correct fraction: the top-1 expectation of a weighting
// that finds the most favorable maximal set and breaks its tie uniformly.
inline double expected_max_value(const MaxOsetAnalysis& analysis) {
  double best = 0.0;
  for (const auto& set : analysis.maximal_sets)
    best = std::max(best, static_cast<double>(maxoset_detail::correct_members(
                              set, analysis.correct_ids)) /
                              static_cast<double>(set.members.size()));
  return best;
}

// Corpus-level bounds on any positive term-weighting scheme.
struct BoundStats {
  double max = 0.0;           // fraction of questions satisfying max_predicate
  double min = 0.0;           // fraction satisfying min_predicate
  double expected_max = 0.0;  // mean of expected_max_value
};

inline BoundStats bound_stats(const std::vector<MaxOsetAnalysis>& analyses) {
  if (analyses.empty()) throw DataError("bound_stats: no questions");
  BoundStats stats;
  for (const auto& a : analyses) {
    if (max_predicate(a)) stats.max += 1.0;
    if (min_predicate(a)) stats.min += 1.0;
    stats.expected_max += expected_max_value(a);
  }
  double n = static_cast<double>(analyses.size());
  stats.max /= n;
  stats.min /= n;
  stats.expected_max /= n;
  return stats;
}

inline std::vector<MaxOsetAnalysis> analyze_corpus(const Corpus& corpus,
                                                   const NormalizationConfig& config,
                                                   const ResolvedLabels& labels) {
  std::vector<MaxOsetAnalysis> analyses;
  analyses.reserve(corpus.questions.size());
  for (const auto& q : corpus.questions) {
    if (q.candidates.empty()) {
      MaxOsetAnalysis empty;
      empty.question_id = q.id;
      analyses.push_back(std::move(empty));
      continue;
    }
    analyses.push_back(analyze_question(q, config, labels.correct_ids.at(q.id)));
  }
  return analyses;
}

inline BoundStats bound_stats(const Corpus& corpus, const NormalizationConfig& config,
                              const ResolvedLabels& labels) {
  return bound_stats(analyze_corpus(corpus, config, labels));
}

// Diagnostic classes for one question. The first four quantify over the
// maximal sets (and require at least one to exist); the last two quantify
// over all candidates. Classes overlap by design.
enum class QuestionCategory {
  ImpossibleToGetWrong,       // every maximal-set member is correct
  AlwaysChanceToGetRight,     // every maximal set contains a correct member
  MayBeChanceToGetRight,      // some maximal set contains a correct member
  WrongAnswersAlwaysTooHigh,  // no maximal-set member is correct
  NoCorrectWithAnyOverlap,    // every candidate is incorrect or zero-overlap
  NoCorrectAnswers,           // every candidate is incorrect
};

inline const char* to_string(QuestionCategory c) {
  switch (c) {
    case QuestionCategory::ImpossibleToGetWrong: return "impossible_to_get_it_wrong";
    case QuestionCategory::AlwaysChanceToGetRight: return "always_a_chance_to_get_it_right";
    case QuestionCategory::MayBeChanceToGetRight: return "may_be_a_chance_to_get_it_right";
    case QuestionCategory::WrongAnswersAlwaysTooHigh: return "wrong_answers_always_weighted_too_highly";
    case QuestionCategory::NoCorrectWithAnyOverlap: return "no_correct_answers_with_any_overlap";
    case QuestionCategory::NoCorrectAnswers: return "no_correct_answers";
  }
  return "";
}

constexpr std::array<QuestionCategory, 6> kAllCategories = {
    QuestionCategory::ImpossibleToGetWrong,    QuestionCategory::AlwaysChanceToGetRight,
    QuestionCategory::MayBeChanceToGetRight,   QuestionCategory::WrongAnswersAlwaysTooHigh,
    QuestionCategory::NoCorrectWithAnyOverlap, QuestionCategory::NoCorrectAnswers,
};

inline std::set<QuestionCategory> categorize_question(const MaxOsetAnalysis& analysis) {
  std::set<QuestionCategory> classes;
  bool have_sets = !analysis.maximal_sets.empty();
  bool may_be = max_predicate(analysis);
  if (min_predicate(analysis)) classes.insert(QuestionCategory::ImpossibleToGetWrong);
  if (have_sets) {
    bool always = true;
    for (const auto& set : analysis.maximal_sets)
      if (maxoset_detail::correct_members(set, analysis.correct_ids) == 0) always = false;
    if (always) classes.insert(QuestionCategory::AlwaysChanceToGetRight);
    if (!may_be) classes.insert(QuestionCategory::WrongAnswersAlwaysTooHigh);
  }
  if (may_be) classes.insert(QuestionCategory::MayBeChanceToGetRight);

  bool no_correct_overlap = true;  // correct candidates, if any, have zero overlap
  bool no_correct = true;
  for (const auto& set : analysis.all_sets)
    if (maxoset_detail::correct_members(set, analysis.correct_ids) > 0) no_correct_overlap = false;
  if (!analysis.correct_ids.empty()) no_correct = false;
  if (no_correct_overlap) classes.insert(QuestionCategory::NoCorrectWithAnyOverlap);
  if (no_correct) classes.insert(QuestionCategory::NoCorrectAnswers);
  return classes;
}

// Counts and fractions per class over a question set.
struct CategoryBreakdown {
  std::map<QuestionCategory, std::size_t> counts;
  std::size_t num_questions = 0;

  double percentage(QuestionCategory c) const {
    auto it = counts.find(c);
    if (it == counts.end() || num_questions == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(num_questions);
  }
};

inline CategoryBreakdown categorize_corpus(const std::vector<MaxOsetAnalysis>& analyses) {
  CategoryBreakdown breakdown;
  breakdown.num_questions = analyses.size();
  for (auto c : kAllCategories) breakdown.counts[c] = 0;
  for (const auto& a : analyses)
    for (auto c : categorize_question(a)) ++breakdown.counts[c];
  return breakdown;
}

struct RankBounds {
  std::size_t best = 1;   // dense rank under the most favorable positive weights
  std::size_t worst = 1;  // dense rank under the least favorable positive weights
};

// Achievable dense-rank interval for one candidate over all strictly
// positive term weightings. Strict-subset overlaps always score strictly
// lower; any incomparable or superset word set can be pushed above the
// candidate; supersets can never fall below it.
inline std::optional<RankBounds> rank_bounds(const MaxOsetAnalysis& analysis,
                                             const std::string& candidate_id) {
  const OverlapSet* own = nullptr;
  for (const auto& set : analysis.all_sets) {
    for (const auto& id : set.members)
      if (id == candidate_id) own = &set;
    if (own) break;
  }
  if (!own) return std::nullopt;  // zero overlap: rank unconstrained by weights
  RankBounds bounds;
  for (const auto& other : analysis.all_sets) {
    if (other.words == own->words) continue;
    if (proper_subset(own->words, other.words)) ++bounds.best;
    if (!proper_subset(other.words, own->words)) ++bounds.worst;
  }
  return bounds;
}

inline std::optional<RankBounds> rank_bounds(const Question& question,
                                             const std::string& candidate_id,
                                             const NormalizationConfig& config) {
  MaxOsetAnalysis analysis = overlap_sets(question, config);
  return rank_bounds(analysis, candidate_id);
}

}  // namespace qadiag
