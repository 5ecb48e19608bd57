#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qadiag/common.hpp"
#include "qadiag/corpus.hpp"

namespace qadiag {

// How answer-bearing sentences are combined when a question's answer occurs
// in more than one of them: pool all their same-type entities into one draw,
// or average the per-sentence ratios.
enum class ConfusabilityAggregate { Pool, PerSentenceMean };

inline const char* to_string(ConfusabilityAggregate a) {
  return a == ConfusabilityAggregate::Pool ? "pool" : "mean";
}

// Expected accuracy of picking uniformly among same-type entities in the
// sentences that contain a correct answer of the question's type.
inline double question_confusability(const Question& question,
                                     ConfusabilityAggregate aggregate = ConfusabilityAggregate::Pool) {
  if (!question.answer_type)
    throw DataError("question '" + question.id + "' has no answer_type");
  const std::string& type = *question.answer_type;

  std::size_t pooled_answers = 0, pooled_total = 0;
  double ratio_sum = 0.0;
  std::size_t bearing_sentences = 0;
  for (const auto& c : question.candidates) {
    std::size_t answers = 0, total = 0;
    for (const auto& e : c.entities) {
      if (e.type != type) continue;
      ++total;
      if (e.is_answer) ++answers;
    }
    if (answers == 0) continue;  // not an answer-bearing sentence
    pooled_answers += answers;
    pooled_total += total;
    ratio_sum += static_cast<double>(answers) / static_cast<double>(total);
    ++bearing_sentences;
  }
  if (bearing_sentences == 0)
    throw DataError("question '" + question.id + "' has no candidate with a correct '" + type +
                    "' entity");
  if (aggregate == ConfusabilityAggregate::Pool)
    return static_cast<double>(pooled_answers) / static_cast<double>(pooled_total);
  return ratio_sum / static_cast<double>(bearing_sentences);
}

struct ConfusabilityRow {
  std::string answer_type;
  double expected_score = 0.0;  // mean of per-question scores of this type
  std::size_t frequency = 0;    // questions scored
};

struct ConfusabilityTable {
  std::vector<ConfusabilityRow> rows;  // ordered by answer_type
  double overall = 0.0;                // mean over all scored questions
  std::optional<double> overall_without_defaults;  // excludes defaultnp/defaultvp
  std::size_t skipped = 0;  // typed questions that could not be scored
};

inline ConfusabilityTable confusability_table(
    const Corpus& corpus, ConfusabilityAggregate aggregate = ConfusabilityAggregate::Pool) {
  std::map<std::string, std::pair<double, std::size_t>> by_type;  // sum, count
  double sum = 0.0, sum_nd = 0.0;
  std::size_t n = 0, n_nd = 0;
  ConfusabilityTable table;
  for (const auto& q : corpus.questions) {
    if (!q.answer_type) continue;
    double score;
    try {
      score = question_confusability(q, aggregate);
    } catch (const DataError&) {
      ++table.skipped;
      continue;
    }
    auto& [type_sum, type_count] = by_type[*q.answer_type];
    type_sum += score;
    ++type_count;
    sum += score;
    ++n;
    if (*q.answer_type != "defaultnp" && *q.answer_type != "defaultvp") {
      sum_nd += score;
      ++n_nd;
    }
  }
  if (n == 0) throw DataError("confusability_table: no scorable typed questions");
  for (const auto& [type, acc] : by_type)
    table.rows.push_back({type, acc.first / static_cast<double>(acc.second), acc.second});
  table.overall = sum / static_cast<double>(n);
  if (n_nd > 0) table.overall_without_defaults = sum_nd / static_cast<double>(n_nd);
  return table;
}

}  // namespace qadiag
