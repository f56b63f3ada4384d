#include "summertime/regress.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace summertime {

std::string to_string(DesignMode mode) { return mode == DesignMode::augmented ? "augmented" : "window_only"; }
std::string to_string(Aggregation aggregation) { return aggregation == Aggregation::sum ? "sum" : "mean"; }

Aggregation parse_aggregation(const std::string& text) {
  if (text == "sum") return Aggregation::sum;
  if (text == "mean") return Aggregation::mean;
  throw std::invalid_argument("aggregation must be 'sum' or 'mean', got '" + text + "'");
}

Eigen::VectorXd fit_ols(const Eigen::MatrixXd& rows, const Eigen::VectorXd& targets) {
  if (rows.rows() < 1) throw std::invalid_argument("least squares needs at least one row");
  if (rows.rows() != targets.size()) throw std::invalid_argument("design rows and targets differ in length");
  if (!rows.allFinite() || !targets.allFinite()) throw std::invalid_argument("least squares input is not finite");
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(rows);
  return cod.solve(targets);
}

Eigen::VectorXd build_design_row(const Eigen::VectorXd& window, const SummaryVector* summary) {
  const Eigen::Index k = summary ? summary->ratios.size() : 0;
  Eigen::VectorXd row(1 + window.size() + k);
  row(0) = 1.0;
  row.segment(1, window.size()) = window;
  if (summary) row.tail(k) = summary->ratios;
  return row;
}

Eigen::MatrixXd build_design_matrix(const BoutFeatures& windows, const SummaryVector* summary) {
  const Eigen::Index k = summary ? summary->ratios.size() : 0;
  const Eigen::Index w = windows.windows.cols();
  Eigen::MatrixXd out(windows.window_count(), 1 + w + k);
  out.col(0).setOnes();
  out.middleCols(1, w) = windows.windows;
  if (summary) out.rightCols(k).rowwise() = summary->ratios.transpose();
  return out;
}

double LinearModel::predict(const Eigen::VectorXd& design_row) const {
  if (design_row.size() != beta.size())
    throw std::invalid_argument("design row width " + std::to_string(design_row.size()) +
                                " does not match model width " + std::to_string(beta.size()));
  return beta.dot(design_row);
}

const LinearModel& RegressionSuite::route(std::size_t class_index) const {
  if (pooled) return models.at(0);
  if (class_index >= models.size())
    throw std::out_of_range("no regression model for class index " + std::to_string(class_index));
  return models[class_index];
}

double RegressionSuite::training_rmse() const {
  return training_rows == 0 ? 0.0 : std::sqrt(training_sse / static_cast<double>(training_rows));
}

namespace {

void check_data(const RegressionData& data, bool need_summaries) {
  const auto n = data.windows.size();
  if (data.labels.size() != n || data.targets.size() != n)
    throw std::invalid_argument("regression data vectors differ in length");
  if (need_summaries && data.summaries.size() != n) throw std::invalid_argument("one summary per bout required");
  for (std::size_t i = 0; i < n; ++i)
    if (data.targets[i].size() != static_cast<std::size_t>(data.windows[i].window_count()))
      throw std::invalid_argument("bout '" + data.windows[i].bout_id + "' has no per-window MET targets");
}

struct Stacked {
  Eigen::MatrixXd rows;
  Eigen::VectorXd targets;
};

Stacked stack(const RegressionData& data, const std::vector<std::size_t>& bouts, bool augmented) {
  Eigen::Index total = 0;
  for (const auto b : bouts) total += data.windows[b].window_count();
  Stacked s;
  if (bouts.empty()) return s;
  const Eigen::Index width = 1 + data.windows[bouts.front()].windows.cols() +
                             (augmented ? data.summaries[bouts.front()].ratios.size() : 0);
  s.rows.resize(total, width);
  s.targets.resize(total);
  Eigen::Index r = 0;
  for (const auto b : bouts) {
    const SummaryVector* summary = augmented ? &data.summaries[b] : nullptr;
    const Eigen::MatrixXd x = build_design_matrix(data.windows[b], summary);
    if (x.cols() != width) throw std::invalid_argument("inconsistent design width across bouts");
    s.rows.middleRows(r, x.rows()) = x;
    for (Eigen::Index w = 0; w < x.rows(); ++w) s.targets(r + w) = data.targets[b][static_cast<std::size_t>(w)];
    r += x.rows();
  }
  return s;
}

}  // namespace

RegressionSuite fit_n_regression(const RegressionData& data, const std::vector<std::string>& label_names,
                                 DesignMode mode, Aggregation aggregation) {
  const bool augmented = mode == DesignMode::augmented;
  check_data(data, augmented);
  if (data.windows.empty()) throw std::invalid_argument("no training bouts");

  RegressionSuite suite;
  suite.labels = label_names;
  suite.aggregation = aggregation;
  const Eigen::Index w_dim = data.windows.front().windows.cols();
  const Eigen::Index k_dim = augmented ? data.summaries.front().ratios.size() : 0;

  for (std::size_t c = 0; c < label_names.size(); ++c) {
    std::vector<std::size_t> bouts;
    for (std::size_t i = 0; i < data.labels.size(); ++i)
      if (data.labels[i] == c) bouts.push_back(i);
    if (bouts.empty()) throw std::invalid_argument("class '" + label_names[c] + "' has no training windows");

    Eigen::Index windows = 0;
    for (const auto b : bouts) windows += data.windows[b].window_count();
    bool use_summary = augmented;
    if (augmented && windows < 1 + w_dim + k_dim) {
      use_summary = false;
      suite.warnings.push_back("class '" + label_names[c] + "' has " + std::to_string(windows) + " training windows, fewer than " +
                               std::to_string(1 + w_dim + k_dim) + " design columns; using window-only model");
    }

    const Stacked s = stack(data, bouts, use_summary);
    LinearModel model;
    model.beta = fit_ols(s.rows, s.targets);
    model.class_label = label_names[c];
    model.mode = use_summary ? DesignMode::augmented : DesignMode::window_only;
    model.window_dim = w_dim;
    model.summary_dim = k_dim;
    suite.training_sse += (s.rows * model.beta - s.targets).squaredNorm();
    suite.training_rows += static_cast<std::size_t>(s.rows.rows());
    suite.models.push_back(std::move(model));
  }
  return suite;
}

RegressionSuite fit_pooled_regression(const RegressionData& data, Aggregation aggregation) {
  check_data(data, false);
  if (data.windows.empty()) throw std::invalid_argument("no training bouts");
  std::vector<std::size_t> bouts(data.windows.size());
  for (std::size_t i = 0; i < bouts.size(); ++i) bouts[i] = i;
  const Stacked s = stack(data, bouts, false);

  RegressionSuite suite;
  suite.pooled = true;
  suite.labels = {"all"};
  suite.aggregation = aggregation;
  LinearModel model;
  model.beta = fit_ols(s.rows, s.targets);
  model.class_label = "all";
  model.mode = DesignMode::window_only;
  model.window_dim = data.windows.front().windows.cols();
  suite.training_sse = (s.rows * model.beta - s.targets).squaredNorm();
  suite.training_rows = static_cast<std::size_t>(s.rows.rows());
  suite.models.push_back(std::move(model));
  return suite;
}

double aggregate(const Eigen::VectorXd& per_window, Aggregation aggregation) {
  if (per_window.size() == 0) throw std::invalid_argument("cannot aggregate an empty bout");
  return aggregation == Aggregation::sum ? per_window.sum() : per_window.mean();
}

double aggregate(const std::vector<double>& per_window, Aggregation aggregation) {
  return aggregate(Eigen::Map<const Eigen::VectorXd>(per_window.data(), static_cast<Eigen::Index>(per_window.size())),
                   aggregation);
}

Eigen::VectorXd predict_window_mets(const RegressionSuite& suite, std::size_t predicted_class,
                                    const BoutFeatures& windows, const SummaryVector* summary) {
  const LinearModel& model = suite.route(predicted_class);
  const bool augmented = model.mode == DesignMode::augmented;
  if (augmented && !summary) throw std::invalid_argument("augmented model needs the bout summary");
  if (augmented && summary->ratios.size() != model.summary_dim)
    throw std::invalid_argument("summary width does not match the regression model");
  const Eigen::MatrixXd x = build_design_matrix(windows, augmented ? summary : nullptr);
  if (x.cols() != model.beta.size()) throw std::invalid_argument("design width does not match the regression model");
  return x * model.beta;
}

double predict_bout_met(const RegressionSuite& suite, std::size_t predicted_class, const BoutFeatures& windows,
                        const SummaryVector* summary, Aggregation aggregation) {
  const Eigen::VectorXd per_window = predict_window_mets(suite, predicted_class, windows, summary).cwiseMax(0.0);
  return aggregate(per_window, aggregation);
}

double predict_ann_regression(const MlpModel& window_model, const BoutFeatures& windows, Aggregation aggregation) {
  if (windows.window_count() == 0) throw std::invalid_argument("bout '" + windows.bout_id + "': bout has no windows");
  Eigen::VectorXd per_window(windows.window_count());
  for (Eigen::Index w = 0; w < windows.window_count(); ++w)
    per_window(w) = std::max(0.0, predict_value(window_model, windows.windows.row(w).transpose()));
  return aggregate(per_window, aggregation);
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const RegressionSuite& suite) {
  nlohmann::json j;
  j["format"] = "summertime.regression";
  j["version"] = 1;
  j["aggregation"] = to_string(suite.aggregation);
  j["pooled"] = suite.pooled;
  j["labels"] = suite.labels;
  j["models"] = nlohmann::json::object();
  for (const auto& m : suite.models) {
    j["models"][m.class_label] = {{"mode", to_string(m.mode)},
                                  {"window_dim", m.window_dim},
                                  {"summary_dim", m.summary_dim},
                                  {"beta", std::vector<double>(m.beta.data(), m.beta.data() + m.beta.size())}};
  }
  j["warnings"] = suite.warnings;
  j["training_sse"] = suite.training_sse;
  j["training_rows"] = suite.training_rows;
  return j;
}

RegressionSuite regression_suite_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "summertime.regression") throw std::invalid_argument("not a regression suite document");
  if (j.at("version").get<int>() != 1) throw std::invalid_argument("unsupported regression suite version");
  RegressionSuite suite;
  suite.aggregation = parse_aggregation(j.at("aggregation").get<std::string>());
  suite.pooled = j.at("pooled").get<bool>();
  suite.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& label : suite.labels) {
    const auto& m = j.at("models").at(label);
    LinearModel model;
    model.class_label = label;
    model.mode = m.at("mode").get<std::string>() == "augmented" ? DesignMode::augmented : DesignMode::window_only;
    model.window_dim = m.at("window_dim").get<Eigen::Index>();
    model.summary_dim = m.at("summary_dim").get<Eigen::Index>();
    const auto beta = m.at("beta").get<std::vector<double>>();
    model.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    if (model.beta.size() != model.width()) throw std::invalid_argument("coefficient count does not match mode");
    suite.models.push_back(std::move(model));
  }
  suite.warnings = j.value("warnings", std::vector<std::string>{});
  suite.training_sse = j.value("training_sse", 0.0);
  suite.training_rows = j.value("training_rows", std::size_t{0});
  return suite;
}

}  // namespace summertime
