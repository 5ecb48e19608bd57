// qadiag: diagnostics for sentence-ranking and answer-extraction components
// of question answering systems, over annotated corpora.
//
// Subcommands: judge, score, curves, bounds, confusability, frequency,
// report. Inputs are JSON Lines corpora (one question per line); outputs are
// CSV/JSON reports written to --out. Identical inputs and flags produce
// byte-identical outputs.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qadiag/report.hpp"

namespace {

using namespace qadiag;

struct CliOptions {
  RunConfig cfg;
  std::string scorer = "overlap";
  std::string metric = "top1";
  std::string stem = "off";
  std::string judge_stem = "on";
  std::string aggregate = "pool";
};

void add_common_options(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--corpus", opt.cfg.corpus_path, "corpus file (JSON Lines)")->required();
  sub->add_option("--runs", opt.cfg.runs_path, "system-run file (JSON Lines)");
  sub->add_option("--out", opt.cfg.out_dir, "output directory (default: current)");
  sub->add_option("--scorer", opt.scorer, "overlap|idf")->check(CLI::IsMember({"overlap", "idf"}));
  sub->add_option("--metric", opt.metric, "top1|mrr5")->check(CLI::IsMember({"top1", "mrr5"}));
  sub->add_option("--stem", opt.stem, "stem for overlap scoring: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  sub->add_option("--judge-stem", opt.judge_stem, "stem for answer-key judging: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  sub->add_option("--stopwords", opt.cfg.stopwords_path,
                  "stopword file (default: built-in list or QA_DIAG_STOPWORDS)");
  sub->add_option("--smooth", opt.cfg.smooth, "add-epsilon smoothing for log-odds bins")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--aggregate", opt.aggregate, "confusability aggregation: pool|mean")
      ->check(CLI::IsMember({"pool", "mean"}));
}

RunConfig resolve(CliOptions& opt, const std::string& subcommand) {
  RunConfig cfg = opt.cfg;
  cfg.subcommand = subcommand;
  cfg.scorer = opt.scorer == "idf" ? ScorerKind::IdfWeightedOverlap : ScorerKind::UnweightedOverlap;
  cfg.metric = opt.metric == "mrr5" ? Metric::Mrr5 : Metric::Top1;
  cfg.overlap_stem = opt.stem == "on";
  cfg.judge_stem = opt.judge_stem == "on";
  cfg.aggregate =
      opt.aggregate == "mean" ? ConfusabilityAggregate::PerSentenceMean : ConfusabilityAggregate::Pool;
  if (!cfg.stopwords_path) {
    if (const char* env = std::getenv("QA_DIAG_STOPWORDS")) cfg.stopwords_path = env;
  }
  return cfg;
}

struct Analyses {
  Corpus corpus;
  std::vector<SystemRun> runs;
  NormalizationConfig overlap_cfg;
  ResolvedLabels labels;
  IdfTable idf;
  ScorerSpec scorer;
};

Analyses prepare(const RunConfig& cfg) {
  Analyses a;
  a.corpus = load_corpus(cfg.corpus_path);
  if (cfg.runs_path) a.runs = load_system_runs(*cfg.runs_path, a.corpus);
  a.overlap_cfg = cfg.overlap_config();
  a.labels = resolve_labels(a.corpus, cfg.judging_config());
  a.scorer = ScorerSpec{cfg.scorer, nullptr};
  if (cfg.scorer == ScorerKind::IdfWeightedOverlap) {
    a.idf = build_idf_table(a.corpus, a.overlap_cfg);
    a.scorer.idf_source = &a.idf;
  }
  return a;
}

void note_written(const RunConfig& cfg, const std::string& name) {
  std::cout << "wrote " << (std::filesystem::path(cfg.out_dir) / name).string() << '\n';
}

template <typename Writer>
void emit(const RunConfig& cfg, const std::string& name, Writer&& writer) {
  auto out = report_detail::open_out(cfg, name);
  writer(out);
  note_written(cfg, name);
}

int run_judge(const RunConfig& cfg) {
  Analyses a = prepare(cfg);
  emit(cfg, "judge.csv", [&](std::ostream& o) { write_judge_csv(o, cfg, a.corpus, a.labels); });
  try {
    std::cout << "agreement_rate=" << format_double(agreement_rate(a.labels.auto_labels, a.corpus))
              << '\n';
  } catch (const DataError&) {
    std::cout << "agreement_rate=n/a (no gold labels)\n";
  }
  return 0;
}

int run_score(const RunConfig& cfg) {
  Analyses a = prepare(cfg);
  emit(cfg, "score.csv", [&](std::ostream& o) {
    write_score_csv(o, cfg, a.corpus, a.scorer, a.overlap_cfg, a.labels);
  });
  TieAwareScore s = corpus_score(a.corpus, a.scorer, a.overlap_cfg, a.labels, cfg.metric);
  std::cout << to_string(cfg.metric) << " expected=" << format_double(s.expected)
            << " maximum=" << format_double(s.maximum) << " minimum=" << format_double(s.minimum)
            << '\n';
  return 0;
}

int run_curves(const RunConfig& cfg) {
  Analyses a = prepare(cfg);
  CurveFamily score_family = score_distribution_curves(a.corpus, a.scorer, a.overlap_cfg, a.labels);
  emit(cfg, "curves_score.csv",
       [&](std::ostream& o) { write_curve_family_csv(o, cfg, score_family); });
  CurveFamily rank_family = rank_curves(a.corpus, a.scorer, a.overlap_cfg, a.labels);
  emit(cfg, "curves_rank.csv",
       [&](std::ostream& o) { write_curve_family_csv(o, cfg, rank_family); });
  LogOddsCurves lo = log_odds_curve(a.corpus, a.scorer, a.overlap_cfg, a.labels, cfg.smooth);
  emit(cfg, "curves_logodds.csv", [&](std::ostream& o) { write_log_odds_csv(o, cfg, lo); });
  return 0;
}

int run_bounds(const RunConfig& cfg) {
  Analyses a = prepare(cfg);
  std::vector<MaxOsetAnalysis> analyses = analyze_corpus(a.corpus, a.overlap_cfg, a.labels);
  BoundStats stats = bound_stats(analyses);
  CategoryBreakdown breakdown = categorize_corpus(analyses);
  nlohmann::json j = bounds_json(cfg, a.corpus, analyses, stats, breakdown);
  emit(cfg, "bounds.json", [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  emit(cfg, "bounds_summary.csv", [&](std::ostream& o) {
    write_bounds_summary_csv(o, cfg, stats, analyses.size());
  });
  emit(cfg, "bounds_categories.csv",
       [&](std::ostream& o) { write_categories_csv(o, cfg, breakdown); });
  std::cout << "expected_max=" << format_double(stats.expected_max)
            << " max=" << format_double(stats.max) << " min=" << format_double(stats.min) << '\n';
  return 0;
}

int run_confusability(const RunConfig& cfg) {
  Analyses a = prepare(cfg);
  ConfusabilityTable table = confusability_table(a.corpus, cfg.aggregate);
  emit(cfg, "confusability.csv",
       [&](std::ostream& o) { write_confusability_csv(o, cfg, table); });
  std::cout << "overall=" << format_double(table.overall) << '\n';
  return 0;
}

int run_frequency(const RunConfig& cfg) {
  Analyses a = prepare(cfg);
  FrequencyHistogram hist = answer_frequency_histogram(a.corpus, a.labels);
  emit(cfg, "frequency_histogram.csv",
       [&](std::ostream& o) { write_frequency_histogram_csv(o, cfg, hist); });
  if (!a.runs.empty()) {
    CorrectnessByFrequency by_freq = correctness_by_frequency(a.corpus, a.runs, a.labels);
    emit(cfg, "frequency_scatter.csv",
         [&](std::ostream& o) { write_frequency_scatter_csv(o, cfg, by_freq); });
    emit(cfg, "frequency_groups.csv",
         [&](std::ostream& o) { write_frequency_groups_csv(o, cfg, by_freq); });
  }
  std::cout << "mean=" << format_double(hist.mean) << " median=" << format_double(hist.median)
            << " stddev=" << format_double(hist.stddev) << '\n';
  return 0;
}

int run_full_report(const RunConfig& cfg) {
  Corpus corpus = load_corpus(cfg.corpus_path);
  std::vector<SystemRun> runs;
  if (cfg.runs_path) runs = load_system_runs(*cfg.runs_path, corpus);
  for (const auto& name : run_report(cfg, corpus, runs)) note_written(cfg, name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagnostics for term-overlap ranking and answer-type extraction over QA corpora"};
  app.require_subcommand(1);

  std::map<std::string, CliOptions> options;
  std::map<std::string, int (*)(const RunConfig&)> runners = {
      {"judge", run_judge},          {"score", run_score},
      {"curves", run_curves},        {"bounds", run_bounds},
      {"confusability", run_confusability}, {"frequency", run_frequency},
      {"report", run_full_report}};
  std::map<std::string, std::string> descriptions = {
      {"judge", "label candidates against answer keys"},
      {"score", "tie-aware expected/max/min ranking scores"},
      {"curves", "score, rank, and log-odds distribution curves"},
      {"bounds", "overlap-set analysis and weighting-scheme bounds"},
      {"confusability", "expected score of answer-type extraction"},
      {"frequency", "answer-opportunity statistics"},
      {"report", "run every applicable analysis"}};
  for (auto& [name, runner] : runners)
    add_common_options(app.add_subcommand(name, descriptions[name]), options[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (auto& [name, runner] : runners) {
    if (!app.get_subcommand(name)->parsed()) continue;
    try {
      return runner(resolve(options[name], name));
    } catch (const ParseError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const DataError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 1;
}
