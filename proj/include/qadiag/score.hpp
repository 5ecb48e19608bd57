#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qadiag/common.hpp"
#include "qadiag/corpus.hpp"
#include "qadiag/judge.hpp"
#include "qadiag/text.hpp"

namespace qadiag {

// Per-word weights derived from one corpus: idf(w) = ln(N / df(w)) + 1,
// where N is the number of candidate sentences and df counts sentences whose
// content words include w. Unknown words get df = 1. All weights are >= 1,
// so subset dominance between overlap sets is preserved.
struct IdfTable {
  std::map<std::string, double> idf;
  std::size_t num_sentences = 0;

  double weight(const std::string& word) const {
    auto it = idf.find(word);
    if (it != idf.end()) return it->second;
    return std::log(static_cast<double>(std::max<std::size_t>(num_sentences, 1))) + 1.0;
  }
};

inline IdfTable build_idf_table(const Corpus& corpus, const NormalizationConfig& config) {
  IdfTable table;
  std::map<std::string, std::size_t> df;
  for (const auto& q : corpus.questions) {
    for (const auto& c : q.candidates) {
      ++table.num_sentences;
      for (const auto& w : content_words(c.sentence, config)) ++df[w];
    }
  }
  double n = static_cast<double>(std::max<std::size_t>(table.num_sentences, 1));
  for (const auto& [word, count] : df)
    table.idf[word] = std::log(n / static_cast<double>(count)) + 1.0;
  return table;
}

enum class ScorerKind { UnweightedOverlap, IdfWeightedOverlap };

struct ScorerSpec {
  ScorerKind kind = ScorerKind::UnweightedOverlap;
  const IdfTable* idf_source = nullptr;  // required for IdfWeightedOverlap
};

// Content words shared by question and candidate.
inline TokenSet overlap_words(const Question& question, const Candidate& candidate,
                              const NormalizationConfig& config) {
  TokenSet q = content_words(question.text, config);
  TokenSet s = content_words(candidate.sentence, config);
  TokenSet overlap;
  std::set_intersection(q.begin(), q.end(), s.begin(), s.end(),
                        std::inserter(overlap, overlap.begin()));
  return overlap;
}

inline double score_overlap(const TokenSet& overlap, const ScorerSpec& scorer) {
  if (scorer.kind == ScorerKind::UnweightedOverlap)
    return static_cast<double>(overlap.size());
  if (!scorer.idf_source) throw DataError("idf-weighted scorer has no idf_source");
  double sum = 0.0;
  for (const auto& w : overlap) sum += scorer.idf_source->weight(w);
  return sum;
}

inline double score_candidate(const Question& question, const Candidate& candidate,
                              const ScorerSpec& scorer, const NormalizationConfig& config) {
  return score_overlap(overlap_words(question, candidate, config), scorer);
}

// Candidates of one question ordered by score; equal scores grouped into
// tiers. Input order is retained inside a tier for reporting only.
struct RankedList {
  std::vector<std::pair<std::string, double>> entries;  // sorted by score desc
  std::vector<std::vector<std::string>> tiers;          // candidate ids per tier
  std::vector<double> tier_scores;                      // strictly decreasing
};

inline RankedList rank_question(const Question& question, const ScorerSpec& scorer,
                                const NormalizationConfig& config) {
  if (question.candidates.empty())
    throw DataError("rank_question: question '" + question.id + "' has no candidates");
  // score -> ids in input order; descending by score
  std::map<double, std::vector<std::string>, std::greater<double>> by_score;
  for (const auto& c : question.candidates)
    by_score[score_candidate(question, c, scorer, config)].push_back(c.id);
  RankedList ranked;
  for (auto& [score, ids] : by_score) {
    for (const auto& id : ids) ranked.entries.emplace_back(id, score);
    ranked.tiers.push_back(std::move(ids));
    ranked.tier_scores.push_back(score);
  }
  return ranked;
}

enum class Metric { Top1, Mrr5 };

inline const char* to_string(Metric m) { return m == Metric::Top1 ? "top1" : "mrr5"; }

// Expected / best-case / worst-case score over tie-breaking orders.
struct TieAwareScore {
  double expected = 0.0;
  double maximum = 0.0;
  double minimum = 0.0;
  Metric metric = Metric::Top1;
};

namespace score_detail {

inline double reciprocal_rank_at5(std::size_t position) {  // 1-based
  return position <= 5 ? 1.0 / static_cast<double>(position) : 0.0;
}

}  // namespace score_detail

// correct_ids: the question's correct candidates (gold or auto labels).
inline TieAwareScore question_score(const RankedList& ranked,
                                    const std::set<std::string>& correct_ids, Metric metric) {
  TieAwareScore score;
  score.metric = metric;
  if (metric == Metric::Top1) {
    const auto& top = ranked.tiers.front();
    std::size_t hits = 0;
    for (const auto& id : top) hits += correct_ids.count(id);
    score.expected = static_cast<double>(hits) / static_cast<double>(top.size());
    score.maximum = hits > 0 ? 1.0 : 0.0;
    score.minimum = hits == top.size() ? 1.0 : 0.0;
    return score;
  }
  // MRR over the top five positions. Only the first tier containing a
  // correct candidate matters: the first correct item always lands inside
  // it, at a position governed by that tier's internal order alone.
  std::size_t start = 0;  // candidates in strictly higher tiers
  for (const auto& tier : ranked.tiers) {
    std::size_t n = tier.size();
    std::size_t hits = 0;
    for (const auto& id : tier) hits += correct_ids.count(id);
    if (hits > 0) {
      double expected = 0.0;
      double none_before = 1.0;  // P(no correct in the first p-1 slots)
      for (std::size_t p = 1; p + hits <= n + 1; ++p) {
        double remaining = static_cast<double>(n - p + 1);
        expected += none_before * (static_cast<double>(hits) / remaining) *
                    score_detail::reciprocal_rank_at5(start + p);
        none_before *= static_cast<double>(n - hits - p + 1) / remaining;
      }
      score.expected = expected;
      score.maximum = score_detail::reciprocal_rank_at5(start + 1);
      score.minimum = score_detail::reciprocal_rank_at5(start + (n - hits) + 1);
      return score;
    }
    start += n;
  }
  return score;  // no correct candidate anywhere
}

inline TieAwareScore question_score(const Question& question, const ScorerSpec& scorer,
                                    const NormalizationConfig& config,
                                    const std::set<std::string>& correct_ids, Metric metric) {
  return question_score(rank_question(question, scorer, config), correct_ids, metric);
}

// Unweighted mean over questions; a question without candidates contributes
// zero to every component.
inline TieAwareScore corpus_score(const Corpus& corpus, const ScorerSpec& scorer,
                                  const NormalizationConfig& config,
                                  const ResolvedLabels& labels, Metric metric) {
  if (corpus.questions.empty()) throw DataError("corpus_score: corpus has no questions");
  TieAwareScore total;
  total.metric = metric;
  for (const auto& q : corpus.questions) {
    if (q.candidates.empty()) continue;
    TieAwareScore s = question_score(q, scorer, config, labels.correct_ids.at(q.id), metric);
    total.expected += s.expected;
    total.maximum += s.maximum;
    total.minimum += s.minimum;
  }
  double n = static_cast<double>(corpus.questions.size());
  total.expected /= n;
  total.maximum /= n;
  total.minimum /= n;
  return total;
}

}  // namespace qadiag
