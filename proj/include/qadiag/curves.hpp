#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qadiag/corpus.hpp"
#include "qadiag/judge.hpp"
#include "qadiag/score.hpp"

namespace qadiag {

struct CurvePoint {
  long x = 0;
  double y = 0.0;
  bool defined = true;

  bool operator==(const CurvePoint&) const = default;
};

struct CurveSeries {
  std::string label;
  std::vector<CurvePoint> points;  // ascending x
};

// A pair of conditional distributions plus any degenerate-class notes.
struct CurveFamily {
  CurveSeries correct;
  CurveSeries incorrect;
  std::vector<std::string> warnings;
};

namespace curve_detail {

// Integer bin for a score: exact for unweighted overlap counts, nearest
// integer for weighted scores.
inline long score_bin(double score) { return std::lround(score); }

inline CurveSeries normalized(const std::string& label, const std::map<long, std::size_t>& counts,
                              std::size_t total) {
  CurveSeries series;
  series.label = label;
  for (const auto& [x, count] : counts)
    series.points.push_back(
        {x, static_cast<double>(count) / static_cast<double>(total), true});
  return series;
}

inline CurveFamily class_conditional(const std::string& what,
                                     const std::map<long, std::size_t>& correct,
                                     std::size_t n_correct,
                                     const std::map<long, std::size_t>& incorrect,
                                     std::size_t n_incorrect) {
  CurveFamily family;
  family.correct.label = "correct";
  family.incorrect.label = "incorrect";
  if (n_correct > 0)
    family.correct = normalized("correct", correct, n_correct);
  else
    family.warnings.push_back("no correct candidates; " + what + " correct series is empty");
  if (n_incorrect > 0)
    family.incorrect = normalized("incorrect", incorrect, n_incorrect);
  else
    family.warnings.push_back("no incorrect candidates; " + what + " incorrect series is empty");
  return family;
}

}  // namespace curve_detail

// Pr(score bin = x | correct) and Pr(score bin = x | incorrect) over every
// candidate in the corpus.
inline CurveFamily score_distribution_curves(const Corpus& corpus, const ScorerSpec& scorer,
                                             const NormalizationConfig& config,
                                             const ResolvedLabels& labels) {
  std::map<long, std::size_t> correct, incorrect;
  std::size_t n_correct = 0, n_incorrect = 0;
  for (const auto& q : corpus.questions) {
    for (const auto& c : q.candidates) {
      long bin = curve_detail::score_bin(score_candidate(q, c, scorer, config));
      if (labels.correct.at(CandidateKey{q.id, c.id})) {
        ++correct[bin];
        ++n_correct;
      } else {
        ++incorrect[bin];
        ++n_incorrect;
      }
    }
  }
  return curve_detail::class_conditional("score", correct, n_correct, incorrect, n_incorrect);
}

// Pr(rank = x | correct) and Pr(rank = x | incorrect), where a candidate's
// rank is its tier's competition rank: the number of candidates in strictly
// higher tiers, so the top tier has rank 0.
inline CurveFamily rank_curves(const Corpus& corpus, const ScorerSpec& scorer,
                               const NormalizationConfig& config, const ResolvedLabels& labels) {
  std::map<long, std::size_t> correct, incorrect;
  std::size_t n_correct = 0, n_incorrect = 0;
  for (const auto& q : corpus.questions) {
    if (q.candidates.empty()) continue;
    RankedList ranked = rank_question(q, scorer, config);
    std::size_t rank = 0;
    for (const auto& tier : ranked.tiers) {
      for (const auto& id : tier) {
        if (labels.correct.at(CandidateKey{q.id, id})) {
          ++correct[static_cast<long>(rank)];
          ++n_correct;
        } else {
          ++incorrect[static_cast<long>(rank)];
          ++n_incorrect;
        }
      }
      rank += tier.size();
    }
  }
  return curve_detail::class_conditional("rank", correct, n_correct, incorrect, n_incorrect);
}

struct LogOddsCurves {
  CurveSeries log_odds;  // ln(correct / incorrect) per bin; undefined where a
                         // class count is zero unless smoothing is on
  CurveSeries mass;      // correct + incorrect per bin
};

// smooth > 0 adds it to both counts of every observed bin before the ratio.
inline LogOddsCurves log_odds_curve(const Corpus& corpus, const ScorerSpec& scorer,
                                    const NormalizationConfig& config,
                                    const ResolvedLabels& labels, double smooth = 0.0) {
  std::map<long, std::pair<std::size_t, std::size_t>> counts;  // bin -> (correct, incorrect)
  for (const auto& q : corpus.questions) {
    for (const auto& c : q.candidates) {
      long bin = curve_detail::score_bin(score_candidate(q, c, scorer, config));
      if (labels.correct.at(CandidateKey{q.id, c.id}))
        ++counts[bin].first;
      else
        ++counts[bin].second;
    }
  }
  LogOddsCurves curves;
  curves.log_odds.label = "log_odds";
  curves.mass.label = "mass";
  for (const auto& [x, cnt] : counts) {
    auto [c, i] = cnt;
    CurvePoint point{x, 0.0, true};
    if (smooth > 0.0) {
      point.y = std::log((static_cast<double>(c) + smooth) / (static_cast<double>(i) + smooth));
    } else if (c > 0 && i > 0) {
      point.y = std::log(static_cast<double>(c) / static_cast<double>(i));
    } else {
      point.defined = false;
    }
    curves.log_odds.points.push_back(point);
    curves.mass.points.push_back({x, static_cast<double>(c + i), true});
  }
  return curves;
}

}  // namespace qadiag
