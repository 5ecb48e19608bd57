#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qadiag/common.hpp"
#include "qadiag/corpus.hpp"
#include "qadiag/text.hpp"

namespace qadiag {

// Automatic correctness verdict for one candidate: a sentence is correct if
// it contains at least half of the normalized content words of some answer
// key (2m >= |k|, ties count as correct; alternative keys combine by OR).
struct JudgedLabel {
  bool correct = false;
  std::optional<std::size_t> matched_key_index;  // first satisfying key
  double matched_fraction = 0.0;                 // best m/|k| over keys
  int degenerate_keys = 0;  // keys that normalized to the empty set and fell
                            // back to raw lowercase tokens

  bool operator==(const JudgedLabel&) const = default;
};

inline JudgedLabel judge_candidate(const Candidate& candidate, const Question& question,
                                   const NormalizationConfig& config) {
  const TokenSet sentence_words = content_words(candidate.sentence, config);
  // Raw-token view, lazily built for degenerate keys only.
  std::optional<TokenSet> sentence_raw;

  JudgedLabel label;
  for (std::size_t i = 0; i < question.answer_keys.size(); ++i) {
    TokenSet key_words = content_words(question.answer_keys[i], config);
    const TokenSet* sentence_side = &sentence_words;
    if (key_words.empty()) {
      ++label.degenerate_keys;
      auto raw = tokenize(question.answer_keys[i], config);
      key_words = TokenSet(raw.begin(), raw.end());
      if (key_words.empty()) continue;  // nothing to match against
      if (!sentence_raw) {
        auto toks = tokenize(candidate.sentence, config);
        sentence_raw = TokenSet(toks.begin(), toks.end());
      }
      sentence_side = &*sentence_raw;
    }
    std::size_t matched = 0;
    for (const auto& w : key_words) matched += sentence_side->count(w);
    double fraction = static_cast<double>(matched) / static_cast<double>(key_words.size());
    label.matched_fraction = std::max(label.matched_fraction, fraction);
    if (2 * matched >= key_words.size() && !label.matched_key_index) {
      label.correct = true;
      label.matched_key_index = i;
    }
  }
  return label;
}

using CandidateKey = std::pair<std::string, std::string>;  // (question id, candidate id)

inline std::map<CandidateKey, JudgedLabel> judge_corpus(const Corpus& corpus,
                                                        const NormalizationConfig& config) {
  auto per_question = parallel_map_indexed(corpus.questions.size(), [&](std::size_t i) {
    const Question& q = corpus.questions[i];
    std::vector<std::pair<std::string, JudgedLabel>> labels;
    labels.reserve(q.candidates.size());
    for (const auto& c : q.candidates) labels.emplace_back(c.id, judge_candidate(c, q, config));
    return labels;
  });
  std::map<CandidateKey, JudgedLabel> out;
  for (std::size_t i = 0; i < corpus.questions.size(); ++i)
    for (auto& [cid, label] : per_question[i])
      out.emplace(CandidateKey{corpus.questions[i].id, cid}, label);
  return out;
}

// Fraction of gold-labeled candidates whose automatic label agrees.
inline double agreement_rate(const std::map<CandidateKey, JudgedLabel>& judged,
                             const Corpus& corpus) {
  std::size_t total = 0;
  std::size_t agree = 0;
  for (const auto& q : corpus.questions) {
    for (const auto& c : q.candidates) {
      if (!c.gold_correct) continue;
      ++total;
      auto it = judged.find(CandidateKey{q.id, c.id});
      if (it != judged.end() && it->second.correct == *c.gold_correct) ++agree;
    }
  }
  if (total == 0) throw DataError("agreement_rate: corpus has no gold labels");
  return static_cast<double>(agree) / static_cast<double>(total);
}

// Which correctness source an analysis used for a question's candidates.
enum class LabelSource { Gold, Auto, Mixed, None };

inline const char* to_string(LabelSource s) {
  switch (s) {
    case LabelSource::Gold: return "gold";
    case LabelSource::Auto: return "auto";
    case LabelSource::Mixed: return "mixed";
    case LabelSource::None: return "none";
  }
  return "none";
}

// Effective labels: gold_correct when present, automatic judgment otherwise.
struct ResolvedLabels {
  std::map<CandidateKey, bool> correct;                 // effective label
  std::map<CandidateKey, JudgedLabel> auto_labels;      // full automatic output
  std::map<std::string, std::set<std::string>> correct_ids;  // per question
  std::map<std::string, LabelSource> source;            // per question
};

inline ResolvedLabels resolve_labels(const Corpus& corpus, const NormalizationConfig& judge_cfg) {
  ResolvedLabels resolved;
  resolved.auto_labels = judge_corpus(corpus, judge_cfg);
  for (const auto& q : corpus.questions) {
    auto& ids = resolved.correct_ids[q.id];
    std::size_t gold = 0;
    for (const auto& c : q.candidates) {
      bool correct = c.gold_correct
                         ? *c.gold_correct
                         : resolved.auto_labels.at(CandidateKey{q.id, c.id}).correct;
      if (c.gold_correct) ++gold;
      resolved.correct.emplace(CandidateKey{q.id, c.id}, correct);
      if (correct) ids.insert(c.id);
    }
    resolved.source[q.id] = q.candidates.empty() ? LabelSource::None
                            : gold == q.candidates.size() ? LabelSource::Gold
                            : gold == 0                   ? LabelSource::Auto
                                                          : LabelSource::Mixed;
  }
  return resolved;
}

}  // namespace qadiag
