#include "summertime/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "summertime/features.hpp"
#include "summertime/reference.hpp"
#include "summertime/summarize.hpp"
#include "text_io.hpp"

namespace summertime {

std::string to_string(Method method) {
  switch (method) {
    case Method::summertime: return "summertime";
    case Method::ann_voting: return "ann_voting";
    case Method::linreg_local: return "linreg_local";
    case Method::fivereg_ann: return "fivereg_ann";
    case Method::ann_regression: return "ann_regression";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (const Method m : {Method::summertime, Method::ann_voting, Method::linreg_local, Method::fivereg_ann,
                         Method::ann_regression, Method::oracle})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  for (const auto field : detail::split_csv(list)) {
    const auto name = detail::trim(field);
    if (name.empty()) continue;
    const Method m = parse_method(std::string(name));
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw std::invalid_argument("method list is empty");
  return out;
}

const std::vector<Method>& default_methods() {
  static const std::vector<Method> kMethods{Method::summertime, Method::ann_voting, Method::linreg_local,
                                            Method::fivereg_ann, Method::ann_regression};
  return kMethods;
}

bool classifies(Method m) {
  return m == Method::summertime || m == Method::ann_voting || m == Method::fivereg_ann || m == Method::oracle;
}

bool regresses(Method m) { return m != Method::ann_voting; }

nlohmann::json EvaluationConfig::to_json() const {
  nlohmann::json j;
  j["window_length"] = window_length;
  nlohmann::json gmm;
  gmm["k_max"] = gmm_prior.k_max;
  gmm["dirichlet_alpha0"] = gmm_prior.dirichlet_alpha0;
  gmm["mean_scale_beta0"] = gmm_prior.mean_scale_beta0;
  gmm["wishart_dof_nu0"] = gmm_prior.wishart_dof_nu0 ? nlohmann::json(*gmm_prior.wishart_dof_nu0) : nlohmann::json("dim+1");
  gmm["mean_prior"] = gmm_prior.mean_prior ? nlohmann::json(std::vector<double>(gmm_prior.mean_prior->data(),
                                                                                 gmm_prior.mean_prior->data() +
                                                                                     gmm_prior.mean_prior->size()))
                                           : nlohmann::json("zero");
  gmm["wishart_scale_W0"] = gmm_prior.wishart_scale_W0 ? "custom" : "identity";
  gmm["tol"] = gmm_options.tol;
  gmm["max_iter"] = gmm_options.max_iter;
  gmm["n_init"] = gmm_options.n_init;
  gmm["weight_floor"] = gmm_options.weight_floor ? nlohmann::json(*gmm_options.weight_floor) : nlohmann::json("1/(10N)");
  gmm["covariance_floor"] = gmm_options.covariance_floor;
  gmm["seed"] = gmm_options.seed;
  j["gmm"] = gmm;
  j["mlp"] = {{"hidden_dim", mlp.hidden_dim}, {"epochs", mlp.epochs}, {"learning_rate", mlp.learning_rate},
              {"momentum", mlp.momentum},     {"l2", mlp.l2},         {"batch_size", mlp.batch_size},
              {"seed", mlp.seed}};
  j["regression_mode"] = summertime::to_string(regression_mode);
  j["aggregation"] = summertime::to_string(aggregation);
  return j;
}

double rmse(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) throw std::invalid_argument("rmse: length mismatch");
  if (predicted.empty()) throw std::invalid_argument("rmse: empty input");
  double sse = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - actual[i];
    sse += d * d;
  }
  return std::sqrt(sse / static_cast<double>(predicted.size()));
}

std::string corpus_fingerprint(const Corpus& corpus) {
  detail::Fnv1a h;
  h.update(std::to_string(corpus.axis_count));
  for (const auto& l : corpus.label_set) h.update("|" + l);
  for (const auto& b : corpus.bouts) {
    h.update("#" + b.bout_id + "|" + b.subject_id + "|" + std::to_string(b.label) + "|");
    h.update(std::to_string(b.samples()));
    for (Eigen::Index i = 0; i < b.signal.size(); ++i) h.update(b.signal.data()[i]);
    for (const double t : b.targets) h.update(t);
  }
  return h.hex();
}

std::string config_fingerprint(const Corpus& corpus, const EvaluationConfig& config) {
  detail::Fnv1a h;
  h.update(config.to_json().dump());
  h.update(corpus_fingerprint(corpus));
  return h.hex();
}

// ---------------------------------------------------------------------------
// Per-fold work

namespace {

struct FoldResult {
  FoldRecord record;
  std::vector<std::vector<BoutOutcome>> outcomes;  // per method
  std::vector<double> training_sse;                // per method
  std::vector<std::size_t> training_rows;
};

class FoldRunner {
 public:
  FoldRunner(const Fold& fold, const EvaluationConfig& config)
      : fold_(fold),
        config_(config),
        train_features_(featurize(fold.train, config.window_length)),
        test_features_(featurize(fold.test, config.window_length)) {
    for (const auto& b : fold.train.bouts) {
      train_labels_.push_back(b.label);
      train_targets_.push_back(b.targets);
    }
  }

  const MixtureModel& mixture() {
    if (!mixture_) {
      mixture_.emplace(fit_mixture(stack_windows(train_features_), config_.gmm_prior, config_.gmm_options));
      train_summaries_ = summarize_corpus(train_features_, *mixture_);
      test_summaries_ = summarize_corpus(test_features_, *mixture_);
    }
    return *mixture_;
  }

  const std::vector<SummaryVector>& train_summaries() {
    mixture();
    return train_summaries_;
  }
  const std::vector<SummaryVector>& test_summaries() {
    mixture();
    return test_summaries_;
  }

  const MlpModel& summary_classifier() {
    if (!summary_mlp_) {
      const auto& summaries = train_summaries();
      Eigen::MatrixXd x(static_cast<Eigen::Index>(summaries.size()), mixture().k_effective());
      for (std::size_t i = 0; i < summaries.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = summaries[i].ratios.transpose();
      summary_mlp_.emplace(train_mlp(x, train_labels_, fold_.train.label_set, config_.mlp));
    }
    return *summary_mlp_;
  }

  const MlpModel& window_classifier() {
    if (!window_mlp_) {
      const Eigen::MatrixXd x = stack_windows(train_features_);
      std::vector<std::size_t> labels;
      labels.reserve(static_cast<std::size_t>(x.rows()));
      for (std::size_t i = 0; i < train_features_.size(); ++i)
        labels.insert(labels.end(), static_cast<std::size_t>(train_features_[i].window_count()), train_labels_[i]);
      window_mlp_.emplace(train_mlp(x, labels, fold_.train.label_set, config_.mlp));
    }
    return *window_mlp_;
  }

  const MlpModel& window_regressor() {
    if (!window_reg_mlp_) {
      const Eigen::MatrixXd x = stack_windows(train_features_);
      Eigen::VectorXd y(x.rows());
      Eigen::Index r = 0;
      for (const auto& t : train_targets_)
        for (const double v : t) y(r++) = v;
      window_reg_mlp_.emplace(train_mlp_regressor(x, y, config_.mlp));
    }
    return *window_reg_mlp_;
  }

  const RegressionSuite& augmented_suite() {
    if (!augmented_) {
      const RegressionData data{train_features_, train_summaries(), train_labels_, train_targets_};
      augmented_.emplace(fit_n_regression(data, fold_.train.label_set, config_.regression_mode, config_.aggregation));
    }
    return *augmented_;
  }

  const RegressionSuite& window_only_suite() {
    if (!window_only_) {
      const std::vector<SummaryVector> none;
      const RegressionData data{train_features_, none, train_labels_, train_targets_};
      window_only_.emplace(fit_n_regression(data, fold_.train.label_set, DesignMode::window_only, config_.aggregation));
    }
    return *window_only_;
  }

  const RegressionSuite& pooled_suite() {
    if (!pooled_) {
      const std::vector<SummaryVector> none;
      const RegressionData data{train_features_, none, train_labels_, train_targets_};
      pooled_.emplace(fit_pooled_regression(data, config_.aggregation));
    }
    return *pooled_;
  }

  std::vector<std::size_t> voting_predictions() {
    if (voting_.empty())
      for (const auto& f : test_features_) voting_.push_back(classify_bout_voting(window_classifier(), f).label);
    return voting_;
  }

  std::vector<BoutOutcome> run(Method method, double& training_sse, std::size_t& training_rows) {
    const auto& test = fold_.test.bouts;
    std::vector<BoutOutcome> out(test.size());
    const bool with_targets = fold_.test.has_targets();
    if (regresses(method) && !(with_targets && fold_.train.has_targets()))
      throw std::invalid_argument("method '" + to_string(method) + "' needs per-window MET targets");

    for (std::size_t i = 0; i < test.size(); ++i) {
      auto& o = out[i];
      o.fold = fold_.index;
      o.bout_id = test[i].bout_id;
      o.actual_label = test[i].label;
      o.window_count = static_cast<std::size_t>(test_features_[i].window_count());
      if (with_targets) o.actual_met = aggregate(test[i].targets, config_.aggregation);
    }

    switch (method) {
      case Method::summertime: {
        const auto& clf = summary_classifier();
        const auto& suite = augmented_suite();
        for (std::size_t i = 0; i < test.size(); ++i) {
          const auto label = predict(clf, test_summaries()[i].ratios).label;
          out[i].predicted_label = label;
          out[i].predicted_met =
              predict_bout_met(suite, label, test_features_[i], &test_summaries()[i], config_.aggregation);
        }
        training_sse = suite.training_sse;
        training_rows = suite.training_rows;
        break;
      }
      case Method::ann_voting: {
        const auto labels = voting_predictions();
        for (std::size_t i = 0; i < test.size(); ++i) out[i].predicted_label = labels[i];
        break;
      }
      case Method::fivereg_ann: {
        const auto labels = voting_predictions();
        const auto& suite = window_only_suite();
        for (std::size_t i = 0; i < test.size(); ++i) {
          out[i].predicted_label = labels[i];
          out[i].predicted_met = predict_bout_met(suite, labels[i], test_features_[i], nullptr, config_.aggregation);
        }
        training_sse = suite.training_sse;
        training_rows = suite.training_rows;
        break;
      }
      case Method::linreg_local: {
        const auto& suite = pooled_suite();
        for (std::size_t i = 0; i < test.size(); ++i)
          out[i].predicted_met = predict_bout_met(suite, 0, test_features_[i], nullptr, config_.aggregation);
        training_sse = suite.training_sse;
        training_rows = suite.training_rows;
        break;
      }
      case Method::ann_regression: {
        const auto& net = window_regressor();
        for (std::size_t i = 0; i < test.size(); ++i)
          out[i].predicted_met = predict_ann_regression(net, test_features_[i], config_.aggregation);
        break;
      }
      case Method::oracle: {
        for (std::size_t i = 0; i < test.size(); ++i) {
          out[i].predicted_label = test[i].label;
          out[i].predicted_met = out[i].actual_met;
        }
        break;
      }
    }
    return out;
  }

  std::optional<int> k_effective() const {
    return mixture_ ? std::optional<int>(mixture_->k_effective()) : std::nullopt;
  }

 private:
  const Fold& fold_;
  const EvaluationConfig& config_;
  std::vector<BoutFeatures> train_features_;
  std::vector<BoutFeatures> test_features_;
  std::vector<std::size_t> train_labels_;
  std::vector<std::vector<double>> train_targets_;

  std::optional<MixtureModel> mixture_;
  std::vector<SummaryVector> train_summaries_;
  std::vector<SummaryVector> test_summaries_;
  std::optional<MlpModel> summary_mlp_;
  std::optional<MlpModel> window_mlp_;
  std::optional<MlpModel> window_reg_mlp_;
  std::optional<RegressionSuite> augmented_;
  std::optional<RegressionSuite> window_only_;
  std::optional<RegressionSuite> pooled_;
  std::vector<std::size_t> voting_;
};

FoldResult run_fold(const Fold& fold, const std::vector<Method>& methods, const EvaluationConfig& config) {
  FoldResult result;
  result.record.index = fold.index;
  result.record.test_subject = fold.test_subject;
  result.record.train_subjects = fold.train.subjects();
  std::sort(result.record.train_subjects.begin(), result.record.train_subjects.end());
  result.record.train_bouts = fold.train.bouts.size();
  result.record.test_bouts = fold.test.bouts.size();
  result.record.train_fingerprint = corpus_fingerprint(fold.train);

  try {
    FoldRunner runner(fold, config);
    for (const Method m : methods) {
      double sse = 0.0;
      std::size_t rows = 0;
      result.outcomes.push_back(runner.run(m, sse, rows));
      result.training_sse.push_back(sse);
      result.training_rows.push_back(rows);
    }
    result.record.k_effective = runner.k_effective();
  } catch (const std::exception& e) {
    throw std::runtime_error("fold " + std::to_string(fold.index) + " (test subject " + fold.test_subject +
                             "): " + e.what());
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scoring

ClassificationScores score_classification(const std::vector<BoutOutcome>& outcomes, std::size_t class_count) {
  ClassificationScores s;
  s.confusion.assign(class_count, std::vector<long>(class_count, 0));
  s.window_confusion.assign(class_count, std::vector<long>(class_count, 0));
  long correct = 0;
  long total = 0;
  for (const auto& o : outcomes) {
    if (!o.predicted_label) throw std::logic_error("outcome without a class prediction");
    ++s.confusion[o.actual_label][*o.predicted_label];
    s.window_confusion[o.actual_label][*o.predicted_label] += static_cast<long>(o.window_count);
    correct += o.actual_label == *o.predicted_label ? 1 : 0;
    ++total;
  }
  for (std::size_t c = 0; c < class_count; ++c) {
    long row = 0;
    for (const long v : s.confusion[c]) row += v;
    s.recall_per_class.push_back(row == 0 ? std::numeric_limits<double>::quiet_NaN()
                                           : static_cast<double>(s.confusion[c][c]) / static_cast<double>(row));
  }
  s.overall_recall = total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  return s;
}

RegressionScores score_regression(const std::vector<BoutOutcome>& outcomes, std::size_t class_count) {
  RegressionScores s;
  std::vector<double> predicted;
  std::vector<double> actual;
  std::vector<std::vector<double>> class_pred(class_count);
  std::vector<std::vector<double>> class_actual(class_count);
  for (const auto& o : outcomes) {
    if (!o.predicted_met) throw std::logic_error("outcome without a MET prediction");
    predicted.push_back(*o.predicted_met);
    actual.push_back(o.actual_met);
    class_pred[o.actual_label].push_back(*o.predicted_met);
    class_actual[o.actual_label].push_back(o.actual_met);
  }
  for (std::size_t c = 0; c < class_count; ++c)
    s.rmse_per_class.push_back(class_pred[c].empty() ? std::numeric_limits<double>::quiet_NaN()
                                                     : rmse(class_pred[c], class_actual[c]));
  s.rmse_overall = predicted.empty() ? 0.0 : rmse(predicted, actual);
  return s;
}

Comparison compare_methods(const Corpus& corpus, const std::vector<Method>& methods, const EvaluationConfig& config) {
  if (methods.empty()) throw std::invalid_argument("no methods requested");
  corpus.validate(config.window_length);
  const auto folds = loso_folds(corpus);

  std::vector<FoldResult> results(folds.size());
  const auto workers = static_cast<std::size_t>(std::max(1, config.parallel_folds));
  if (workers == 1) {
    for (std::size_t f = 0; f < folds.size(); ++f) results[f] = run_fold(folds[f], methods, config);
  } else {
    for (std::size_t start = 0; start < folds.size(); start += workers) {
      std::vector<std::future<FoldResult>> pending;
      const std::size_t stop = std::min(folds.size(), start + workers);
      for (std::size_t f = start; f < stop; ++f)
        pending.push_back(std::async(std::launch::async, run_fold, std::cref(folds[f]), std::cref(methods),
                                     std::cref(config)));
      for (std::size_t f = start; f < stop; ++f) results[f] = pending[f - start].get();
    }
  }

  Comparison cmp;
  cmp.labels = corpus.label_set;
  cmp.config_fingerprint = config_fingerprint(corpus, config);
  for (const auto& r : results) cmp.folds.push_back(r.record);

  for (std::size_t m = 0; m < methods.size(); ++m) {
    EvaluationReport report;
    report.method = methods[m];
    report.labels = corpus.label_set;
    report.fold_count = folds.size();
    report.config_fingerprint = cmp.config_fingerprint;
    double sse = 0.0;
    std::size_t rows = 0;
    for (const auto& r : results) {
      report.outcomes.insert(report.outcomes.end(), r.outcomes[m].begin(), r.outcomes[m].end());
      sse += r.training_sse[m];
      rows += r.training_rows[m];
    }
    if (classifies(methods[m])) report.classification = score_classification(report.outcomes, corpus.label_set.size());
    if (regresses(methods[m])) {
      report.regression = score_regression(report.outcomes, corpus.label_set.size());
      if (rows > 0) {
        report.regression->training_window_rmse = std::sqrt(sse / static_cast<double>(rows));
        report.regression->has_training_rmse = true;
      }
    }
    cmp.reports.push_back(std::move(report));
  }
  return cmp;
}

EvaluationReport run_loso(const Corpus& corpus, Method method, const EvaluationConfig& config) {
  return std::move(compare_methods(corpus, {method}, config).reports.front());
}

// ---------------------------------------------------------------------------
// Output

namespace {

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json numbers(const std::vector<double>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const double v : values) out.push_back(number_or_null(v));
  return out;
}

}  // namespace

nlohmann::json to_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["method"] = to_string(report.method);
  j["fold_count"] = report.fold_count;
  j["config_fingerprint"] = report.config_fingerprint;
  j["labels"] = report.labels;
  if (report.classification) {
    const auto& c = *report.classification;
    j["classification"] = {{"confusion", c.confusion},
                           {"window_weighted_confusion", c.window_confusion},
                           {"recall_per_class", numbers(c.recall_per_class)},
                           {"overall_recall", c.overall_recall}};
  }
  if (report.regression) {
    const auto& r = *report.regression;
    j["regression"] = {{"rmse_per_class", numbers(r.rmse_per_class)}, {"rmse_overall", r.rmse_overall}};
    if (r.has_training_rmse) j["regression"]["training_window_rmse"] = r.training_window_rmse;
  }
  j["bouts"] = nlohmann::json::array();
  for (const auto& o : report.outcomes) {
    nlohmann::json b{{"fold", o.fold}, {"bout_id", o.bout_id}, {"actual", report.labels[o.actual_label]},
                     {"windows", o.window_count}};
    if (o.predicted_label) b["predicted"] = report.labels[*o.predicted_label];
    if (o.predicted_met) {
      b["actual_met"] = o.actual_met;
      b["predicted_met"] = *o.predicted_met;
    }
    j["bouts"].push_back(std::move(b));
  }
  return j;
}

nlohmann::json to_json(const Comparison& comparison) {
  nlohmann::json j;
  j["format"] = "summertime.report";
  j["version"] = 1;
  j["config_fingerprint"] = comparison.config_fingerprint;
  j["labels"] = comparison.labels;
  j["folds"] = nlohmann::json::array();
  for (const auto& f : comparison.folds) {
    nlohmann::json fj{{"index", f.index},
                      {"test_subject", f.test_subject},
                      {"train_subjects", f.train_subjects},
                      {"train_bouts", f.train_bouts},
                      {"test_bouts", f.test_bouts},
                      {"train_fingerprint", f.train_fingerprint}};
    if (f.k_effective) fj["k_effective"] = *f.k_effective;
    j["folds"].push_back(std::move(fj));
  }
  j["methods"] = nlohmann::json::array();
  for (const auto& r : comparison.reports) j["methods"].push_back(to_json(r));
  j["reference"] = reference::panel();
  return j;
}

void write_report_files(const Comparison& comparison, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": cannot create directory: " + ec.message());
  auto open = [](const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error(file.string() + ": cannot write file");
    return out;
  };

  open(dir / "report.json") << to_json(comparison).dump(2) << '\n';

  const auto& labels = comparison.labels;
  for (const auto& r : comparison.reports) {
    const auto name = to_string(r.method);
    if (r.classification) {
      auto out = open(dir / ("confusion_" + name + ".csv"));
      out << "actual";
      for (const auto& l : labels) out << ',' << l;
      out << ",recall\n";
      for (std::size_t a = 0; a < labels.size(); ++a) {
        out << labels[a];
        for (const long v : r.classification->confusion[a]) out << ',' << v;
        out << ',' << detail::format_double(r.classification->recall_per_class[a]) << '\n';
      }
    }
    if (r.regression) {
      auto out = open(dir / ("rmse_" + name + ".csv"));
      out << "class,rmse\n";
      for (std::size_t c = 0; c < labels.size(); ++c)
        out << labels[c] << ',' << detail::format_double(r.regression->rmse_per_class[c]) << '\n';
      out << "Overall," << detail::format_double(r.regression->rmse_overall) << '\n';
    }
  }

  auto out = open(dir / "reference_panel.csv");
  out << "table,row";
  for (const auto& c : reference::categories()) out << ',' << c;
  out << ",overall\n";
  for (std::size_t i = 0; i < reference::categories().size(); ++i) {
    out << "summary_classifier_confusion_pct," << reference::categories()[i];
    for (const double v : reference::summary_classifier_confusion_pct()[i]) out << ',' << std::fixed << std::setprecision(2) << v;
    out << ",\n";
  }
  for (std::size_t i = 0; i < reference::categories().size(); ++i) {
    out << "voting_classifier_confusion_pct," << reference::categories()[i];
    for (const double v : reference::voting_classifier_confusion_pct()[i]) out << ',' << std::fixed << std::setprecision(2) << v;
    out << ",\n";
  }
  out << "window_counts_by_category,windows";
  for (const int v : reference::window_counts_by_category()) out << ',' << v;
  out << ",\n";
  for (const auto& row : reference::met_rmse_by_method()) {
    out << "met_rmse," << row.method;
    for (const double v : row.per_class) out << ',' << std::fixed << std::setprecision(4) << v;
    out << ',' << std::fixed << std::setprecision(4) << row.overall << '\n';
  }
}

std::string render_table(const Comparison& comparison) {
  std::ostringstream os;
  const auto& labels = comparison.labels;
  auto cell = [&os](double v, int width, int precision) {
    if (std::isfinite(v))
      os << std::setw(width) << std::fixed << std::setprecision(precision) << v;
    else
      os << std::setw(width) << "-";
  };
  os << "config fingerprint " << comparison.config_fingerprint << "\n\n";
  os << "Recall (per bout)\n" << std::left << std::setw(16) << "method" << std::right;
  for (const auto& l : labels) os << std::setw(9) << l;
  os << std::setw(9) << "Overall" << '\n';
  for (const auto& r : comparison.reports) {
    if (!r.classification) continue;
    os << std::left << std::setw(16) << to_string(r.method) << std::right;
    for (const double v : r.classification->recall_per_class) cell(v, 9, 4);
    cell(r.classification->overall_recall, 9, 4);
    os << '\n';
  }
  os << "\nMET RMSE\n" << std::left << std::setw(16) << "method" << std::right;
  for (const auto& l : labels) os << std::setw(9) << l;
  os << std::setw(9) << "Overall" << '\n';
  for (const auto& r : comparison.reports) {
    if (!r.regression) continue;
    os << std::left << std::setw(16) << to_string(r.method) << std::right;
    for (const double v : r.regression->rmse_per_class) cell(v, 9, 4);
    cell(r.regression->rmse_overall, 9, 4);
    os << '\n';
  }
  return os.str();
}

}  // namespace summertime
