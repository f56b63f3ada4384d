#include <fstream>

#include <gtest/gtest.h>

#include "summertime/evaluate.hpp"
#include "support.hpp"

using namespace summertime;

namespace {

Corpus small_corpus(std::uint64_t seed = 7) {
  auto cfg = SyntheticConfig::standard();
  cfg.subjects = 3;
  cfg.bouts_per_class = 2;
  cfg.max_windows = 8;
  return generate_synthetic(cfg, seed);
}

EvaluationConfig fast_config() {
  EvaluationConfig c;
  c.gmm_prior.k_max = 8;
  c.mlp.epochs = 30;
  return c;
}

std::size_t total_windows(const Corpus& c) {
  std::size_t n = 0;
  for (const auto& b : c.bouts) n += b.window_count(kDefaultWindowLength);
  return n;
}

}  // namespace

TEST(Rmse, KnownValueAndErrors) {
  const std::vector<double> p{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> a{1.0, 0.0, 3.0, 0.0};
  EXPECT_DOUBLE_EQ(rmse(p, a), std::sqrt(20.0 / 4.0));
  EXPECT_THROW(rmse(p, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(rmse(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST(Methods, ParseList) {
  const auto m = parse_methods("summertime, ann_voting,summertime");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[1], Method::ann_voting);
  EXPECT_THROW(parse_methods("summertime,bogus"), std::invalid_argument);
  EXPECT_THROW(parse_methods(""), std::invalid_argument);
  for (const Method x : default_methods()) EXPECT_EQ(parse_method(to_string(x)), x);
}

TEST(Scoring, HandBuiltOutcomes) {
  std::vector<BoutOutcome> outcomes;
  auto add = [&](std::size_t actual, std::size_t predicted, std::size_t windows, double met, double pred) {
    BoutOutcome o;
    o.actual_label = actual;
    o.predicted_label = predicted;
    o.window_count = windows;
    o.actual_met = met;
    o.predicted_met = pred;
    outcomes.push_back(o);
  };
  add(0, 0, 3, 1.0, 1.5);
  add(0, 1, 2, 1.0, 1.0);
  add(1, 1, 4, 4.0, 2.0);
  add(1, 1, 1, 2.0, 2.0);
  const auto c = score_classification(outcomes, 3);
  EXPECT_EQ(c.confusion[0][0], 1);
  EXPECT_EQ(c.confusion[0][1], 1);
  EXPECT_EQ(c.confusion[1][1], 2);
  EXPECT_EQ(c.window_confusion[1][1], 5);
  EXPECT_DOUBLE_EQ(c.recall_per_class[0], 0.5);
  EXPECT_DOUBLE_EQ(c.recall_per_class[1], 1.0);
  EXPECT_TRUE(std::isnan(c.recall_per_class[2]));
  EXPECT_DOUBLE_EQ(c.overall_recall, 0.75);

  const auto r = score_regression(outcomes, 3);
  EXPECT_DOUBLE_EQ(r.rmse_per_class[0], std::sqrt(0.25 / 2.0));
  EXPECT_DOUBLE_EQ(r.rmse_per_class[1], std::sqrt(4.0 / 2.0));
  EXPECT_DOUBLE_EQ(r.rmse_overall, std::sqrt(4.25 / 4.0));
}

TEST(Loso, OracleMethodIsPerfect) {
  const auto corpus = small_corpus();
  const auto report = run_loso(corpus, Method::oracle, fast_config());
  ASSERT_TRUE(report.classification && report.regression);
  EXPECT_DOUBLE_EQ(report.classification->overall_recall, 1.0);
  for (const double r : report.classification->recall_per_class) EXPECT_DOUBLE_EQ(r, 1.0);
  EXPECT_DOUBLE_EQ(report.regression->rmse_overall, 0.0);
  EXPECT_EQ(report.fold_count, 3u);
}

TEST(Loso, ConfusionCountsEveryBoutOnce) {
  const auto corpus = small_corpus();
  const auto cmp = compare_methods(corpus, {Method::summertime, Method::ann_voting}, fast_config());
  ASSERT_EQ(cmp.reports.size(), 2u);
  for (const auto& r : cmp.reports) {
    long bouts = 0;
    long windows = 0;
    for (std::size_t a = 0; a < corpus.label_set.size(); ++a)
      for (std::size_t p = 0; p < corpus.label_set.size(); ++p) {
        bouts += r.classification->confusion[a][p];
        windows += r.classification->window_confusion[a][p];
      }
    EXPECT_EQ(bouts, static_cast<long>(corpus.bouts.size()));
    EXPECT_EQ(windows, static_cast<long>(total_windows(corpus)));
    // Row sums equal the class sizes.
    for (std::size_t a = 0; a < corpus.label_set.size(); ++a) {
      long row = 0;
      for (const long v : r.classification->confusion[a]) row += v;
      EXPECT_EQ(row, 6);
    }
  }
  EXPECT_FALSE(cmp.reports[1].regression.has_value());
}

TEST(Loso, OverallRmseEqualsPooledBoutRmse) {
  const auto corpus = small_corpus();
  const auto report = run_loso(corpus, Method::linreg_local, fast_config());
  std::vector<double> p;
  std::vector<double> a;
  for (const auto& o : report.outcomes) {
    p.push_back(*o.predicted_met);
    a.push_back(o.actual_met);
    EXPECT_GE(*o.predicted_met, 0.0);
  }
  EXPECT_DOUBLE_EQ(report.regression->rmse_overall, rmse(p, a));
  EXPECT_FALSE(report.classification.has_value());
  EXPECT_TRUE(report.regression->has_training_rmse);
}

TEST(Loso, TrainingNeverSeesTheTestSubject) {
  const auto corpus = small_corpus();
  const auto cmp = compare_methods(corpus, {Method::summertime}, fast_config());
  ASSERT_EQ(cmp.folds.size(), 3u);
  for (const auto& f : cmp.folds) {
    EXPECT_EQ(std::count(f.train_subjects.begin(), f.train_subjects.end(), f.test_subject), 0);
    Corpus expected = corpus;
    std::erase_if(expected.bouts, [&](const Bout& b) { return b.subject_id == f.test_subject; });
    EXPECT_EQ(f.train_fingerprint, corpus_fingerprint(expected));
    EXPECT_TRUE(f.k_effective.has_value());
  }
  for (const auto& o : cmp.reports[0].outcomes) {
    const auto it = std::find_if(corpus.bouts.begin(), corpus.bouts.end(),
                                 [&](const Bout& b) { return b.bout_id == o.bout_id; });
    ASSERT_NE(it, corpus.bouts.end());
    EXPECT_EQ(it->subject_id, cmp.folds[o.fold].test_subject);
  }
}

TEST(Loso, SerialAndParallelRunsAgree) {
  const auto corpus = small_corpus(3);
  auto serial = fast_config();
  auto parallel = fast_config();
  parallel.parallel_folds = 3;
  const auto methods = std::vector<Method>{Method::summertime, Method::fivereg_ann, Method::ann_regression};
  const auto a = to_json(compare_methods(corpus, methods, serial)).dump();
  const auto b = to_json(compare_methods(corpus, methods, parallel)).dump();
  EXPECT_EQ(a, b);
}

TEST(Loso, RegressionWithoutTargetsNamesTheFold) {
  auto corpus = small_corpus();
  for (auto& b : corpus.bouts) b.targets.clear();
  try {
    compare_methods(corpus, {Method::linreg_local}, fast_config());
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("fold 0"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(compare_methods(corpus, {Method::ann_voting}, fast_config()));
}

TEST(Fingerprint, TracksResultRelevantSettingsOnly) {
  const auto corpus = small_corpus();
  const auto base = fast_config();
  auto threads = base;
  threads.parallel_folds = 4;
  auto seed = base;
  seed.mlp.seed = 99;
  auto agg = base;
  agg.aggregation = Aggregation::sum;
  EXPECT_EQ(config_fingerprint(corpus, base), config_fingerprint(corpus, threads));
  EXPECT_NE(config_fingerprint(corpus, base), config_fingerprint(corpus, seed));
  EXPECT_NE(config_fingerprint(corpus, base), config_fingerprint(corpus, agg));
  EXPECT_NE(config_fingerprint(corpus, base), config_fingerprint(small_corpus(8), base));
}

TEST(Report, FilesAndReferencePanel) {
  const auto corpus = small_corpus();
  const auto cmp = compare_methods(corpus, {Method::summertime, Method::ann_voting}, fast_config());
  const auto dir = testsupport::scratch_dir("report");
  write_report_files(cmp, dir);
  for (const char* f : {"report.json", "confusion_summertime.csv", "confusion_ann_voting.csv", "rmse_summertime.csv",
                        "reference_panel.csv"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  EXPECT_FALSE(std::filesystem::exists(dir / "rmse_ann_voting.csv"));

  std::ifstream in(dir / "report.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("config_fingerprint"), cmp.config_fingerprint);
  EXPECT_EQ(j.at("methods").size(), 2u);
  EXPECT_TRUE(j.contains("reference"));

  std::ifstream csv(dir / "confusion_summertime.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "actual,Sed,LHH,MtV,Walk,Run,recall");

  const auto table = render_table(cmp);
  EXPECT_NE(table.find("summertime"), std::string::npos);
  EXPECT_NE(table.find("ann_voting"), std::string::npos);
}
