#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "summertime/classify.hpp"
#include "summertime/features.hpp"
#include "summertime/summarize.hpp"

namespace summertime {

enum class DesignMode { augmented, window_only };
enum class Aggregation { sum, mean };

std::string to_string(DesignMode mode);
std::string to_string(Aggregation aggregation);
Aggregation parse_aggregation(const std::string& text);

/// Least-squares coefficients minimizing |y - X b|^2. Rank-deficient designs
/// get the minimum-norm solution.
Eigen::VectorXd fit_ols(const Eigen::MatrixXd& rows, const Eigen::VectorXd& targets);

/// [1, f1..fW] or, with a summary, [1, f1..fW, r1..rK].
Eigen::VectorXd build_design_row(const Eigen::VectorXd& window, const SummaryVector* summary = nullptr);

/// One design row per window of the bout.
Eigen::MatrixXd build_design_matrix(const BoutFeatures& windows, const SummaryVector* summary = nullptr);

struct LinearModel {
  Eigen::VectorXd beta;
  std::string class_label;  // "all" for a pooled model
  DesignMode mode = DesignMode::window_only;
  Eigen::Index window_dim = 0;
  Eigen::Index summary_dim = 0;

  Eigen::Index width() const { return 1 + window_dim + (mode == DesignMode::augmented ? summary_dim : 0); }
  double predict(const Eigen::VectorXd& design_row) const;
};

/// Per-class (or pooled) linear models. Routing picks the model by class
/// index; a pooled suite routes every class to its single model.
struct RegressionSuite {
  std::vector<LinearModel> models;
  std::vector<std::string> labels;
  Aggregation aggregation = Aggregation::mean;
  bool pooled = false;
  std::vector<std::string> warnings;
  double training_sse = 0.0;  // per-window, unclamped, true-label routing
  std::size_t training_rows = 0;

  const LinearModel& route(std::size_t class_index) const;
  double training_rmse() const;
};

/// Training data for the regression phase; all vectors are indexed by bout.
/// `summaries` may be empty for window-only fits.
struct RegressionData {
  const std::vector<BoutFeatures>& windows;
  const std::vector<SummaryVector>& summaries;
  const std::vector<std::size_t>& labels;
  const std::vector<std::vector<double>>& targets;
};

/// One OLS model per class, each fitted on that class's windows only (true
/// labels). A class with fewer windows than augmented design columns falls
/// back to window-only mode and records a warning.
RegressionSuite fit_n_regression(const RegressionData& data, const std::vector<std::string>& label_names,
                                 DesignMode mode, Aggregation aggregation);

/// Single window-only model over every training window.
RegressionSuite fit_pooled_regression(const RegressionData& data, Aggregation aggregation);

double aggregate(const Eigen::VectorXd& per_window, Aggregation aggregation);
double aggregate(const std::vector<double>& per_window, Aggregation aggregation);

/// Unclamped per-window predictions of the routed model.
Eigen::VectorXd predict_window_mets(const RegressionSuite& suite, std::size_t predicted_class,
                                    const BoutFeatures& windows, const SummaryVector* summary);

/// Routed per-window predictions, clamped at 0, then aggregated.
double predict_bout_met(const RegressionSuite& suite, std::size_t predicted_class, const BoutFeatures& windows,
                        const SummaryVector* summary, Aggregation aggregation);

/// Regression network applied per window, clamped at 0, then aggregated.
double predict_ann_regression(const MlpModel& window_model, const BoutFeatures& windows, Aggregation aggregation);

nlohmann::json to_json(const RegressionSuite& suite);
RegressionSuite regression_suite_from_json(const nlohmann::json& j);

}  // namespace summertime
