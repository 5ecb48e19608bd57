#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qadiag/common.hpp"
#include "qadiag/corpus.hpp"
#include "qadiag/judge.hpp"

namespace qadiag {

// Distribution of answer opportunities (correct candidates) per question,
// over the questions that have at least one. Questions with none are counted
// separately. Summary statistics cover the same >= 1 population; the
// standard deviation is the population form.
struct FrequencyHistogram {
  std::vector<std::pair<std::size_t, double>> points;  // (occurrences, fraction of questions)
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  std::size_t questions_with_answer = 0;
  std::size_t questions_without_answer = 0;
};

inline FrequencyHistogram answer_frequency_histogram(const Corpus& corpus,
                                                     const ResolvedLabels& labels) {
  FrequencyHistogram hist;
  std::vector<std::size_t> occurrences;
  std::map<std::size_t, std::size_t> buckets;
  for (const auto& q : corpus.questions) {
    std::size_t n = labels.correct_ids.at(q.id).size();
    if (n == 0) {
      ++hist.questions_without_answer;
      continue;
    }
    occurrences.push_back(n);
    ++buckets[n];
  }
  hist.questions_with_answer = occurrences.size();
  if (occurrences.empty()) return hist;

  double total = static_cast<double>(occurrences.size());
  for (const auto& [occ, count] : buckets)
    hist.points.emplace_back(occ, static_cast<double>(count) / total);

  double sum = 0.0;
  for (std::size_t n : occurrences) sum += static_cast<double>(n);
  hist.mean = sum / total;
  double var = 0.0;
  for (std::size_t n : occurrences) {
    double d = static_cast<double>(n) - hist.mean;
    var += d * d;
  }
  hist.stddev = std::sqrt(var / total);
  std::sort(occurrences.begin(), occurrences.end());
  std::size_t mid = occurrences.size() / 2;
  hist.median = occurrences.size() % 2 == 1
                    ? static_cast<double>(occurrences[mid])
                    : (static_cast<double>(occurrences[mid - 1]) +
                       static_cast<double>(occurrences[mid])) / 2.0;
  return hist;
}

// One question's answer-opportunity count against the share of systems that
// answered it correctly.
struct QuestionOutcome {
  std::string question_id;
  std::size_t occurrences = 0;
  double fraction_correct = 0.0;  // over the systems that judged this question
};

struct FrequencyGroup {
  std::size_t occurrences = 0;
  double mean_fraction_correct = 0.0;
  std::vector<std::string> question_ids;  // corpus order
};

struct CorrectnessByFrequency {
  std::vector<QuestionOutcome> scatter;  // corpus order; only judged questions
  std::vector<FrequencyGroup> groups;    // ascending occurrence count
};

inline CorrectnessByFrequency correctness_by_frequency(const Corpus& corpus,
                                                       const std::vector<SystemRun>& runs,
                                                       const ResolvedLabels& labels) {
  if (runs.empty()) throw DataError("correctness_by_frequency: no system runs");
  CorrectnessByFrequency result;
  std::map<std::size_t, std::pair<double, std::vector<std::string>>> groups;
  for (const auto& q : corpus.questions) {
    std::size_t judged = 0, correct = 0;
    for (const auto& run : runs) {
      auto it = run.judgments.find(q.id);
      if (it == run.judgments.end()) continue;
      ++judged;
      if (it->second) ++correct;
    }
    if (judged == 0) continue;  // no system judged this question
    QuestionOutcome outcome{q.id, labels.correct_ids.at(q.id).size(),
                            static_cast<double>(correct) / static_cast<double>(judged)};
    auto& [sum, ids] = groups[outcome.occurrences];
    sum += outcome.fraction_correct;
    ids.push_back(q.id);
    result.scatter.push_back(std::move(outcome));
  }
  for (auto& [occ, acc] : groups)
    result.groups.push_back(
        {occ, acc.first / static_cast<double>(acc.second.size()), std::move(acc.second)});
  return result;
}

}  // namespace qadiag
