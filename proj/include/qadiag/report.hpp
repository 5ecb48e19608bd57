#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qadiag/common.hpp"
#include "qadiag/confusability.hpp"
#include "qadiag/corpus.hpp"
#include "qadiag/curves.hpp"
#include "qadiag/frequency.hpp"
#include "qadiag/judge.hpp"
#include "qadiag/maxoset.hpp"
#include "qadiag/score.hpp"
#include "qadiag/text.hpp"

namespace qadiag {

// Fully resolved invocation; echoed verbatim into every output file so a
// report is reproducible from its own header.
struct RunConfig {
  std::string subcommand;
  std::string corpus_path;
  std::optional<std::string> runs_path;
  std::string out_dir = ".";
  ScorerKind scorer = ScorerKind::UnweightedOverlap;
  Metric metric = Metric::Top1;
  bool overlap_stem = false;  // sentence/question overlap normalization
  bool judge_stem = true;     // answer-key judging normalization
  std::optional<std::string> stopwords_path;  // embedded default when absent
  double smooth = 0.0;        // add-epsilon smoothing for log-odds bins
  ConfusabilityAggregate aggregate = ConfusabilityAggregate::Pool;

  std::set<std::string> stopwords() const {
    return stopwords_path ? load_stopwords(*stopwords_path) : default_stopwords();
  }
  NormalizationConfig overlap_config() const { return {true, overlap_stem, stopwords()}; }
  NormalizationConfig judging_config() const { return {true, judge_stem, stopwords()}; }
};

inline const char* to_string(ScorerKind k) {
  return k == ScorerKind::UnweightedOverlap ? "overlap" : "idf";
}

namespace report_detail {

inline std::string config_comment(const RunConfig& cfg) {
  std::string line = "# qadiag subcommand=" + cfg.subcommand + " corpus=" + cfg.corpus_path;
  line += " runs=" + (cfg.runs_path ? *cfg.runs_path : std::string("-"));
  line += " out=" + cfg.out_dir;
  line += std::string(" scorer=") + to_string(cfg.scorer);
  line += std::string(" metric=") + to_string(cfg.metric);
  line += std::string(" stem=") + (cfg.overlap_stem ? "on" : "off");
  line += std::string(" judge_stem=") + (cfg.judge_stem ? "on" : "off");
  line += " stopwords=" + (cfg.stopwords_path ? *cfg.stopwords_path : std::string("default"));
  line += " stopword_checksum=" + stopword_checksum(cfg.stopwords());
  line += " smooth=" + format_double(cfg.smooth);
  line += std::string(" aggregate=") + to_string(cfg.aggregate);
  return line;
}

inline nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["subcommand"] = cfg.subcommand;
  j["corpus"] = cfg.corpus_path;
  j["runs"] = cfg.runs_path ? nlohmann::json(*cfg.runs_path) : nlohmann::json(nullptr);
  j["out_dir"] = cfg.out_dir;
  j["scorer"] = to_string(cfg.scorer);
  j["metric"] = to_string(cfg.metric);
  j["stem"] = cfg.overlap_stem ? "on" : "off";
  j["judge_stem"] = cfg.judge_stem ? "on" : "off";
  j["stopwords"] = cfg.stopwords_path ? *cfg.stopwords_path : "default";
  j["stopword_checksum"] = stopword_checksum(cfg.stopwords());
  j["smooth"] = cfg.smooth;
  j["aggregate"] = to_string(cfg.aggregate);
  return j;
}

inline std::ofstream open_out(const RunConfig& cfg, const std::string& filename) {
  std::filesystem::create_directories(cfg.out_dir);
  auto path = std::filesystem::path(cfg.out_dir) / filename;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write output file: " + path.string());
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline nlohmann::json token_set_json(const TokenSet& words) {
  return nlohmann::json(std::vector<std::string>(words.begin(), words.end()));
}

}  // namespace report_detail

// judge.csv: effective per-candidate labels and their provenance.
inline void write_judge_csv(std::ostream& out, const RunConfig& cfg, const Corpus& corpus,
                            const ResolvedLabels& labels) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "question_id,candidate_id,correct,matched_fraction,source\n";
  for (const auto& q : corpus.questions) {
    for (const auto& c : q.candidates) {
      CandidateKey key{q.id, c.id};
      out << q.id << ',' << c.id << ',' << (labels.correct.at(key) ? "true" : "false") << ','
          << format_double(labels.auto_labels.at(key).matched_fraction) << ','
          << (c.gold_correct ? "gold" : "auto") << '\n';
    }
  }
}

// score.csv: per-question tie-aware scores plus a closing mean row.
inline void write_score_csv(std::ostream& out, const RunConfig& cfg, const Corpus& corpus,
                            const ScorerSpec& scorer, const NormalizationConfig& config,
                            const ResolvedLabels& labels) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "question_id,n_candidates,label_source,top_score,top_score_per_qword,expected,maximum,"
         "minimum\n";
  for (const auto& q : corpus.questions) {
    if (q.candidates.empty()) {
      out << q.id << ",0,none,0,0,0,0,0\n";
      continue;
    }
    RankedList ranked = rank_question(q, scorer, config);
    TieAwareScore s = question_score(ranked, labels.correct_ids.at(q.id), cfg.metric);
    double top = ranked.tier_scores.front();
    std::size_t qwords = content_words(q.text, config).size();
    double per_qword = qwords == 0 ? 0.0 : top / static_cast<double>(qwords);
    out << q.id << ',' << q.candidates.size() << ',' << to_string(labels.source.at(q.id)) << ','
        << format_double(top) << ',' << format_double(per_qword) << ','
        << format_double(s.expected) << ',' << format_double(s.maximum) << ','
        << format_double(s.minimum) << '\n';
  }
  TieAwareScore total = corpus_score(corpus, scorer, config, labels, cfg.metric);
  out << "ALL," << corpus.questions.size() << ",-,-,-," << format_double(total.expected) << ','
      << format_double(total.maximum) << ',' << format_double(total.minimum) << '\n';
}

inline void write_series_csv(std::ostream& out, const CurveSeries& series) {
  for (const auto& p : series.points)
    out << series.label << ',' << p.x << ',' << format_double(p.y) << ','
        << (p.defined ? "true" : "false") << '\n';
}

inline void write_curve_family_csv(std::ostream& out, const RunConfig& cfg,
                                   const CurveFamily& family) {
  out << report_detail::config_comment(cfg) << '\n';
  for (const auto& w : family.warnings) out << "# warning: " << w << '\n';
  out << "series,x,y,defined\n";
  write_series_csv(out, family.correct);
  write_series_csv(out, family.incorrect);
}

inline void write_log_odds_csv(std::ostream& out, const RunConfig& cfg,
                               const LogOddsCurves& curves) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "series,x,y,defined\n";
  write_series_csv(out, curves.log_odds);
  write_series_csv(out, curves.mass);
}

// bounds.json: per-question overlap-set reports plus the corpus summary.
inline nlohmann::json bounds_json(const RunConfig& cfg, const Corpus& corpus,
                                  const std::vector<MaxOsetAnalysis>& analyses,
                                  const BoundStats& stats, const CategoryBreakdown& breakdown) {
  nlohmann::json j;
  j["config"] = report_detail::config_json(cfg);
  j["questions"] = nlohmann::json::array();
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    const MaxOsetAnalysis& a = analyses[i];
    nlohmann::json q;
    q["id"] = a.question_id;
    auto set_json = [](const OverlapSet& s) {
      nlohmann::json o;
      o["words"] = report_detail::token_set_json(s.words);
      o["members"] = s.members;
      return o;
    };
    q["overlap_sets"] = nlohmann::json::array();
    for (const auto& s : a.all_sets) q["overlap_sets"].push_back(set_json(s));
    q["maximal_sets"] = nlohmann::json::array();
    for (const auto& s : a.maximal_sets) q["maximal_sets"].push_back(set_json(s));
    q["zero_overlap"] =
        nlohmann::json(std::vector<std::string>(a.zero_overlap.begin(), a.zero_overlap.end()));
    q["correct"] =
        nlohmann::json(std::vector<std::string>(a.correct_ids.begin(), a.correct_ids.end()));
    q["classes"] = nlohmann::json::array();
    for (auto c : categorize_question(a)) q["classes"].push_back(to_string(c));
    q["expected_max"] = expected_max_value(a);
    q["rank_bounds"] = nlohmann::json::object();
    for (const auto& c : corpus.questions[i].candidates) {
      if (auto rb = rank_bounds(a, c.id))
        q["rank_bounds"][c.id] = {{"best", rb->best}, {"worst", rb->worst}};
      else
        q["rank_bounds"][c.id] = nullptr;
    }
    j["questions"].push_back(std::move(q));
  }
  j["summary"] = {{"expected_max", stats.expected_max},
                  {"max", stats.max},
                  {"min", stats.min},
                  {"num_questions", breakdown.num_questions}};
  nlohmann::json cats;
  for (auto c : kAllCategories)
    cats[to_string(c)] = {{"count", breakdown.counts.at(c)},
                          {"percentage", breakdown.percentage(c)}};
  j["summary"]["categories"] = std::move(cats);
  return j;
}

inline void write_bounds_summary_csv(std::ostream& out, const RunConfig& cfg,
                                     const BoundStats& stats, std::size_t num_questions) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "expected_max,max,min,num_questions\n";
  out << format_double(stats.expected_max) << ',' << format_double(stats.max) << ','
      << format_double(stats.min) << ',' << num_questions << '\n';
}

inline void write_categories_csv(std::ostream& out, const RunConfig& cfg,
                                 const CategoryBreakdown& breakdown) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "category,count,percentage\n";
  for (auto c : kAllCategories)
    out << to_string(c) << ',' << breakdown.counts.at(c) << ','
        << format_double(breakdown.percentage(c)) << '\n';
}

inline void write_confusability_csv(std::ostream& out, const RunConfig& cfg,
                                    const ConfusabilityTable& table) {
  out << report_detail::config_comment(cfg) << '\n';
  if (table.skipped > 0)
    out << "# warning: " << table.skipped << " typed question(s) skipped (no scorable entities)\n";
  out << "answer_type,expected_score,frequency\n";
  std::size_t total = 0, total_nd = 0;
  for (const auto& row : table.rows) {
    out << row.answer_type << ',' << format_double(row.expected_score) << ',' << row.frequency
        << '\n';
    total += row.frequency;
    if (row.answer_type != "defaultnp" && row.answer_type != "defaultvp")
      total_nd += row.frequency;
  }
  out << "overall," << format_double(table.overall) << ',' << total << '\n';
  if (table.overall_without_defaults)
    out << "overall_without_defaults," << format_double(*table.overall_without_defaults) << ','
        << total_nd << '\n';
  else
    out << "overall_without_defaults,n/a,0\n";
}

inline void write_frequency_histogram_csv(std::ostream& out, const RunConfig& cfg,
                                          const FrequencyHistogram& hist) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "# mean=" << format_double(hist.mean) << " median=" << format_double(hist.median)
      << " stddev=" << format_double(hist.stddev)
      << " questions_with_answer=" << hist.questions_with_answer
      << " questions_without_answer=" << hist.questions_without_answer << '\n';
  out << "occurrences,fraction_of_questions\n";
  for (const auto& [occ, fraction] : hist.points)
    out << occ << ',' << format_double(fraction) << '\n';
}

inline void write_frequency_scatter_csv(std::ostream& out, const RunConfig& cfg,
                                        const CorrectnessByFrequency& data) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "question_id,occurrences,fraction_systems_correct\n";
  for (const auto& q : data.scatter)
    out << q.question_id << ',' << q.occurrences << ',' << format_double(q.fraction_correct)
        << '\n';
}

inline void write_frequency_groups_csv(std::ostream& out, const RunConfig& cfg,
                                       const CorrectnessByFrequency& data) {
  out << report_detail::config_comment(cfg) << '\n';
  out << "occurrences,mean_fraction_systems_correct,n_questions,question_ids\n";
  for (const auto& g : data.groups)
    out << g.occurrences << ',' << format_double(g.mean_fraction_correct) << ','
        << g.question_ids.size() << ',' << report_detail::join(g.question_ids, ";") << '\n';
}

// Runs every analysis that applies to the corpus and writes one file per
// report plus summary.json. Returns the filenames written.
inline std::vector<std::string> run_report(const RunConfig& cfg, const Corpus& corpus,
                                           const std::vector<SystemRun>& runs) {
  using report_detail::open_out;
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, auto&& writer) {
    auto out = open_out(cfg, name);
    writer(out);
    written.push_back(name);
  };

  NormalizationConfig overlap_cfg = cfg.overlap_config();
  NormalizationConfig judge_cfg = cfg.judging_config();
  ResolvedLabels labels = resolve_labels(corpus, judge_cfg);

  IdfTable idf;
  ScorerSpec scorer{cfg.scorer, nullptr};
  if (cfg.scorer == ScorerKind::IdfWeightedOverlap) {
    idf = build_idf_table(corpus, overlap_cfg);
    scorer.idf_source = &idf;
  }

  emit("judge.csv", [&](std::ostream& o) { write_judge_csv(o, cfg, corpus, labels); });
  emit("score.csv",
       [&](std::ostream& o) { write_score_csv(o, cfg, corpus, scorer, overlap_cfg, labels); });

  CurveFamily score_family = score_distribution_curves(corpus, scorer, overlap_cfg, labels);
  emit("curves_score.csv",
       [&](std::ostream& o) { write_curve_family_csv(o, cfg, score_family); });
  CurveFamily rank_family = rank_curves(corpus, scorer, overlap_cfg, labels);
  emit("curves_rank.csv", [&](std::ostream& o) { write_curve_family_csv(o, cfg, rank_family); });
  LogOddsCurves lo = log_odds_curve(corpus, scorer, overlap_cfg, labels, cfg.smooth);
  emit("curves_logodds.csv", [&](std::ostream& o) { write_log_odds_csv(o, cfg, lo); });

  std::vector<MaxOsetAnalysis> analyses = analyze_corpus(corpus, overlap_cfg, labels);
  BoundStats stats = bound_stats(analyses);
  CategoryBreakdown breakdown = categorize_corpus(analyses);
  emit("bounds.json", [&](std::ostream& o) {
    o << bounds_json(cfg, corpus, analyses, stats, breakdown).dump(2) << '\n';
  });
  emit("bounds_summary.csv", [&](std::ostream& o) {
    write_bounds_summary_csv(o, cfg, stats, analyses.size());
  });
  emit("bounds_categories.csv",
       [&](std::ostream& o) { write_categories_csv(o, cfg, breakdown); });

  std::optional<ConfusabilityTable> confusability;
  try {
    confusability = confusability_table(corpus, cfg.aggregate);
  } catch (const DataError&) {
    // no typed, annotated questions in this corpus
  }
  if (confusability)
    emit("confusability.csv",
         [&](std::ostream& o) { write_confusability_csv(o, cfg, *confusability); });

  FrequencyHistogram hist = answer_frequency_histogram(corpus, labels);
  emit("frequency_histogram.csv",
       [&](std::ostream& o) { write_frequency_histogram_csv(o, cfg, hist); });

  std::optional<CorrectnessByFrequency> by_freq;
  if (!runs.empty()) {
    by_freq = correctness_by_frequency(corpus, runs, labels);
    emit("frequency_scatter.csv",
         [&](std::ostream& o) { write_frequency_scatter_csv(o, cfg, *by_freq); });
    emit("frequency_groups.csv",
         [&](std::ostream& o) { write_frequency_groups_csv(o, cfg, *by_freq); });
  }

  // summary.json: key numbers from each analysis, keys sorted.
  nlohmann::json summary;
  summary["config"] = report_detail::config_json(cfg);
  std::size_t n_candidates = 0;
  for (const auto& q : corpus.questions) n_candidates += q.candidates.size();
  summary["corpus"] = {{"questions", corpus.questions.size()},
                       {"candidates", n_candidates},
                       {"warnings", validate(corpus)}};
  try {
    summary["agreement_rate"] = agreement_rate(labels.auto_labels, corpus);
  } catch (const DataError&) {
    summary["agreement_rate"] = nullptr;
  }
  auto tie_json = [](const TieAwareScore& s) {
    return nlohmann::json{{"expected", s.expected}, {"maximum", s.maximum}, {"minimum", s.minimum}};
  };
  summary["scoring"] = {
      {"top1", tie_json(corpus_score(corpus, scorer, overlap_cfg, labels, Metric::Top1))},
      {"mrr5", tie_json(corpus_score(corpus, scorer, overlap_cfg, labels, Metric::Mrr5))}};
  summary["bounds"] = {{"expected_max", stats.expected_max},
                       {"max", stats.max},
                       {"min", stats.min}};
  nlohmann::json cats;
  for (auto c : kAllCategories) cats[to_string(c)] = breakdown.counts.at(c);
  summary["bounds"]["categories"] = std::move(cats);
  if (confusability) {
    summary["confusability"] = {
        {"overall", confusability->overall},
        {"overall_without_defaults", confusability->overall_without_defaults
                                         ? nlohmann::json(*confusability->overall_without_defaults)
                                         : nlohmann::json(nullptr)},
        {"types", confusability->rows.size()},
        {"skipped", confusability->skipped}};
  } else {
    summary["confusability"] = nullptr;
  }
  summary["frequency"] = {{"mean", hist.mean},
                          {"median", hist.median},
                          {"stddev", hist.stddev},
                          {"questions_with_answer", hist.questions_with_answer},
                          {"questions_without_answer", hist.questions_without_answer}};
  emit("summary.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
  return written;
}

}  // namespace qadiag
