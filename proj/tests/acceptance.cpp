// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "summertime/config.hpp"
#include "summertime/pipeline.hpp"
#include "summertime/reference.hpp"
#include "summertime/regress.hpp"
#include "summertime/summarize.hpp"
#include "support.hpp"

using namespace summertime;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void verdict(int criterion, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail << std::endl;
  if (!ok) ++failures;
}

template <typename F>
void guard(int criterion, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    verdict(criterion, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << std::fixed << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

bool within_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

void model_selection() {
  const auto start = Clock::now();
  int recovered = 0;
  int monotone = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    MixturePrior prior;
    prior.k_max = 10;
    MixtureFitOptions options;
    options.seed = seed;
    const auto model = fit_mixture(testsupport::three_blobs(seed), prior, options);
    if (model.k_effective() == 3) ++recovered;
    const auto& trace = model.elbo_trace();
    bool up = true;
    for (std::size_t i = 1; i < trace.size(); ++i) up = up && trace[i] >= trace[i - 1] - 1e-8;
    if (up) ++monotone;
  }
  const double elapsed = seconds_since(start);
  verdict(1, recovered >= 95 && monotone == 100 && elapsed < 60.0,
          "K=3 in " + std::to_string(recovered) + "/100 seeds, ELBO nondecreasing in " + std::to_string(monotone) +
              "/100, " + fmt(elapsed, 1) + " s");
}

void responsibilities_and_assignment() {
  MixturePrior prior;
  prior.k_max = 10;
  const auto model = fit_mixture(testsupport::three_blobs(11), prior);
  testsupport::Gen g(12);
  double worst_sum = 0.0;
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::VectorXd x = g.normal_vector(2, 8.0);
    const Eigen::VectorXd r = responsibilities(model, x);
    worst_sum = std::max(worst_sum, std::abs(r.sum() - 1.0));
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < r.size(); ++k)
      if (r(k) > r(best)) best = k;
    if (assign(model, x) == static_cast<std::size_t>(best)) ++agree;
  }
  verdict(2, worst_sum <= 1e-9 && agree == 1000,
          "max |sum - 1| = " + sci(worst_sum) + ", assign == argmax in " + std::to_string(agree) + "/1000");
}

void feature_oracles() {
  testsupport::Gen g(21);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::MatrixXd w = g.count_window(12, 1);
    std::vector<double> x(w.data(), w.data() + 12);
    const auto fast = percentile_points(x);
    const auto slow = oracle::sorted_percentiles(x);
    for (std::size_t i = 0; i < 5; ++i)
      if (!(fast[i] == slow[i] || within_relative(fast[i], slow[i], 1e-12))) ++mismatches;
    const double a = lag1_autocorrelation(x);
    const double b = oracle::lag1_autocorrelation(x);
    if (!(a == b || within_relative(a, b, 1e-12))) ++mismatches;
  }
  const std::array<int, 5> expected{2, 3, 6, 9, 11};
  const bool positions = percentile_positions(12) == expected;
  verdict(3, mismatches == 0 && positions,
          std::to_string(mismatches) + " oracle mismatches over 1000 windows; n=12 positions " +
              (positions ? "2,3,6,9,11" : "wrong"));
}

void summary_invariants() {
  testsupport::Gen g(31);
  Eigen::MatrixXd x(450, 18);
  for (int i = 0; i < 450; ++i) {
    x.row(i) = g.normal_matrix(1, 18);
    x(i, i % 3) += 12.0;
  }
  MixturePrior prior;
  prior.k_max = 6;
  const auto model = fit_mixture(x, prior);
  const auto k = static_cast<std::size_t>(model.k_effective());
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BoutFeatures bout;
    bout.bout_id = "b";
    const int n = g.integer(1, 25);
    bout.windows = g.normal_matrix(n, 18);
    for (int w = 0; w < n; ++w) bout.windows(w, g.integer(0, 2)) += 12.0;
    const auto s = summarize_bout(bout, model);

    std::vector<int> hist(k, 0);
    for (int w = 0; w < n; ++w) ++hist[assign(model, bout.windows.row(w).transpose())];
    for (std::size_t c = 0; c < k; ++c)
      if (s.ratios(static_cast<Eigen::Index>(c)) != static_cast<double>(hist[c]) / n) ++bad;
    if (std::abs(s.ratios.sum() - 1.0) > 1e-12 || (s.ratios.array() < 0.0).any()) ++bad;

    BoutFeatures reversed = bout;
    reversed.windows = bout.windows.colwise().reverse();
    if (summarize_bout(reversed, model).ratios != s.ratios) ++bad;
  }
  verdict(4, bad == 0, std::to_string(bad) + " violations over 100 bouts (simplex, reorder, histogram)");
}

void ols_oracle() {
  testsupport::Gen g(41);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int cols = trial == 0 ? 25 : g.integer(1, 25);
    const int rows = trial == 0 ? 200 : g.integer(cols + 5, 200);
    const Eigen::MatrixXd x = g.normal_matrix(rows, cols);
    const Eigen::VectorXd y = g.normal_vector(rows, 2.0);
    const Eigen::VectorXd beta = oracle::normal_equations(x, y);
    worst = std::max(worst, (fit_ols(x, y) - beta).norm() / beta.norm());
  }
  double residual = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int cols = g.integer(2, 25);
    const Eigen::MatrixXd x = g.normal_matrix(g.integer(cols, 200), cols);
    const Eigen::VectorXd y = x * g.normal_vector(cols, 3.0);
    residual = std::max(residual, (x * fit_ols(x, y) - y).norm() / std::max(1.0, y.norm()));
  }
  verdict(5, worst <= 1e-8 && residual < 1e-9,
          "max relative beta error " + sci(worst) + ", noiseless residual " + sci(residual));
}

void gradient_check() {
  testsupport::Gen g(51);
  double worst_softmax = 0.0;
  double worst_linear = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int in = g.integer(2, 18);
    const int classes = g.integer(2, 5);
    MlpModel soft = MlpModel::zeros(OutputHead::softmax, in, 25, classes);
    MlpModel lin = MlpModel::zeros(OutputHead::linear, in, 25, 1);
    for (std::size_t i = 0; i < soft.params.size(); ++i) soft.params.at(i) = g.normal(0.0, 0.7);
    for (std::size_t i = 0; i < lin.params.size(); ++i) lin.params.at(i) = g.normal(0.0, 0.7);
    const Eigen::MatrixXd x = g.normal_matrix(5, in);
    Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(5, classes);
    for (int r = 0; r < 5; ++r) onehot(r, g.integer(0, classes - 1)) = 1.0;
    worst_softmax = std::max(worst_softmax, oracle::max_gradient_error(soft, x, onehot, 1e-4));
    worst_linear = std::max(worst_linear, oracle::max_gradient_error(lin, x, g.normal_matrix(5, 1, 3.0), 1e-4));
  }
  verdict(6, worst_softmax <= 1e-4 && worst_linear <= 1e-4,
          "max relative gradient error softmax " + sci(worst_softmax) + ", linear " +
              sci(worst_linear));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const nlohmann::json& method_entry(const nlohmann::json& report, const std::string& name) {
  for (const auto& m : report.at("methods"))
    if (m.at("method") == name) return m;
  throw std::runtime_error("method " + name + " missing from report");
}

void end_to_end(const nlohmann::json& report, double elapsed) {
  const auto& st = method_entry(report, "summertime");
  const auto& voting = method_entry(report, "ann_voting");
  const auto& window_only = method_entry(report, "fivereg_ann");

  double min_recall = 1.0;
  for (const auto& r : st.at("classification").at("recall_per_class"))
    min_recall = r.is_number() ? std::min(min_recall, r.get<double>()) : 0.0;
  const double st_recall = st.at("classification").at("overall_recall");
  const double voting_recall = voting.at("classification").at("overall_recall");

  const double train_aug = st.at("regression").at("training_window_rmse");
  const double train_win = window_only.at("regression").at("training_window_rmse");
  const double test_aug = st.at("regression").at("rmse_overall");
  const double test_win = window_only.at("regression").at("rmse_overall");

  const bool a = min_recall > 0.2;
  const bool b = st_recall >= voting_recall;
  const bool c = train_aug <= train_win && test_aug <= 1.1 * test_win;
  verdict(7, a && b && c && elapsed < 600.0,
          "(a) min class recall " + fmt(min_recall) + " (b) recall " + fmt(st_recall) + " vs voting " +
              fmt(voting_recall) + " (c) training RMSE " + fmt(train_aug) + " vs " + fmt(train_win) +
              ", test RMSE " + fmt(test_aug) + " vs " + fmt(test_win) + "; " + fmt(elapsed, 1) + " s");
}

void fixture_integrity(const nlohmann::json& report) {
  const auto& ref = report.at("reference");
  const std::vector<double> diagonal{99.88, 83.23, 82.17, 97.62, 72.16};
  const std::vector<double> row{0.1741, 1.0406, 1.4231, 1.2268, 1.2693};
  const std::vector<int> counts{16475, 2505, 1570, 3775, 485};

  bool ok = ref.at("recall_pct").at("summertime").get<std::vector<double>>() == diagonal;
  ok = ok && ref.at("voting_classifier_confusion_pct").at(4).at(4).get<double>() == 8.25;
  ok = ok && ref.at("recall_pct").at("ann_voting").at(4).get<double>() == 8.25;
  bool found_row = false;
  for (const auto& r : ref.at("met_rmse"))
    if (r.at("method") == "summertime")
      found_row = r.at("per_class").get<std::vector<double>>() == row && r.at("overall").get<double>() == 0.7206;
  ok = ok && found_row;
  ok = ok && ref.at("window_counts_by_category").get<std::vector<int>>() == counts;
  ok = ok && ref == reference::panel();
  verdict(9, ok, "reference panel in report.json carries the stored values unchanged");
}

}  // namespace

int main() {
  guard(1, model_selection);
  guard(2, responsibilities_and_assignment);
  guard(3, feature_oracles);
  guard(4, summary_invariants);
  guard(5, ols_oracle);
  guard(6, gradient_check);

  const auto dir = testsupport::scratch_dir("acceptance");
  PipelineConfig config;
  config.evaluation.parallel_folds = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::ostringstream sink;
  std::ostringstream diagnostics;

  nlohmann::json first;
  bool first_ok = false;
  guard(7, [&] {
    config.out = dir / "run1";
    const auto start = Clock::now();
    if (cmd_run(config, {sink, diagnostics}) != 0) throw std::runtime_error(diagnostics.str());
    const double elapsed = seconds_since(start);
    std::ifstream in(config.out / "report.json");
    first = nlohmann::json::parse(in);
    first_ok = true;
    end_to_end(first, elapsed);
  });

  guard(8, [&] {
    config.out = dir / "run2";
    if (!first_ok) throw std::runtime_error("first run did not complete");
    if (cmd_run(config, {sink, diagnostics}) != 0) throw std::runtime_error(diagnostics.str());
    const auto a = slurp(dir / "run1" / "report.json");
    const auto b = slurp(dir / "run2" / "report.json");
    verdict(8, !a.empty() && a == b, "report.json of two runs: " + std::to_string(a.size()) + " bytes, " +
                                         (a == b ? "identical" : "different"));
  });

  guard(9, [&] {
    if (!first_ok) throw std::runtime_error("no report to inspect");
    fixture_integrity(first);
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
