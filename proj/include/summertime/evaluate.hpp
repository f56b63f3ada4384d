#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "summertime/classify.hpp"
#include "summertime/dataset.hpp"
#include "summertime/regress.hpp"
#include "summertime/vbgmm.hpp"

namespace summertime {

/// Methods compared under leave-one-subject-out cross-validation.
///   summertime     summary classifier + augmented per-class regression
///   ann_voting     per-window classifier with majority voting
///   linreg_local   one pooled linear model on window features
///   fivereg_ann    window-only per-class regression routed by ann_voting
///   ann_regression per-window regression network
///   oracle         true labels and targets; harness sanity check
enum class Method { summertime, ann_voting, linreg_local, fivereg_ann, ann_regression, oracle };

std::string to_string(Method method);
Method parse_method(const std::string& name);
/// Comma-separated list, e.g. "summertime,ann_voting".
std::vector<Method> parse_methods(const std::string& list);
const std::vector<Method>& default_methods();

bool classifies(Method method);
bool regresses(Method method);

struct EvaluationConfig {
  int window_length = kDefaultWindowLength;
  MixturePrior gmm_prior;
  MixtureFitOptions gmm_options;
  MlpConfig mlp;
  DesignMode regression_mode = DesignMode::augmented;  // summertime's suite
  Aggregation aggregation = Aggregation::mean;
  int parallel_folds = 1;  // does not affect results

  nlohmann::json to_json() const;
};

/// sqrt(mean((predicted - actual)^2)).
double rmse(std::span<const double> predicted, std::span<const double> actual);

struct BoutOutcome {
  std::size_t fold = 0;
  std::string bout_id;
  std::size_t actual_label = 0;
  std::size_t window_count = 0;
  std::optional<std::size_t> predicted_label;
  double actual_met = 0.0;
  std::optional<double> predicted_met;
};

struct ClassificationScores {
  std::vector<std::vector<long>> confusion;          // rows actual, columns predicted; one count per bout
  std::vector<std::vector<long>> window_confusion;   // same, weighted by window count
  std::vector<double> recall_per_class;
  double overall_recall = 0.0;  // correctly classified bouts / all bouts
};

struct RegressionScores {
  std::vector<double> rmse_per_class;  // NaN for a class with no bouts
  double rmse_overall = 0.0;
  double training_window_rmse = 0.0;  // pooled over folds, in-sample
  bool has_training_rmse = false;
};

struct EvaluationReport {
  Method method = Method::summertime;
  std::vector<std::string> labels;
  std::optional<ClassificationScores> classification;
  std::optional<RegressionScores> regression;
  std::size_t fold_count = 0;
  std::string config_fingerprint;
  std::vector<BoutOutcome> outcomes;  // sorted by fold, then corpus order
};

struct FoldRecord {
  std::size_t index = 0;
  std::string test_subject;
  std::vector<std::string> train_subjects;
  std::size_t train_bouts = 0;
  std::size_t test_bouts = 0;
  std::string train_fingerprint;
  std::optional<int> k_effective;
};

struct Comparison {
  std::vector<std::string> labels;
  std::string config_fingerprint;
  std::vector<FoldRecord> folds;
  std::vector<EvaluationReport> reports;  // one per requested method, same order
};

/// Digest of the corpus contents and every setting that changes results.
std::string config_fingerprint(const Corpus& corpus, const EvaluationConfig& config);

/// Digest of the bouts a fold trains on.
std::string corpus_fingerprint(const Corpus& corpus);

/// Runs every method on identical folds. All stages are refit per fold on
/// the training subjects only.
Comparison compare_methods(const Corpus& corpus, const std::vector<Method>& methods, const EvaluationConfig& config);

EvaluationReport run_loso(const Corpus& corpus, Method method, const EvaluationConfig& config);

/// Scores rebuilt from bout outcomes.
ClassificationScores score_classification(const std::vector<BoutOutcome>& outcomes, std::size_t class_count);
RegressionScores score_regression(const std::vector<BoutOutcome>& outcomes, std::size_t class_count);

nlohmann::json to_json(const EvaluationReport& report);
nlohmann::json to_json(const Comparison& comparison);

/// report.json plus confusion_<method>.csv / rmse_<method>.csv per method and
/// reference_panel.csv.
void write_report_files(const Comparison& comparison, const std::filesystem::path& dir);

/// Side-by-side recall and RMSE table, one row per method.
std::string render_table(const Comparison& comparison);

}  // namespace summertime
