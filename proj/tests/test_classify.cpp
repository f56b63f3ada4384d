#include <gtest/gtest.h>

#include "summertime/classify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace summertime;

namespace {

MlpModel random_model(OutputHead head, int in, int hidden, int out, testsupport::Gen& g) {
  MlpModel m = MlpModel::zeros(head, in, hidden, out);
  for (std::size_t i = 0; i < m.params.size(); ++i) m.params.at(i) = g.normal(0.0, 0.7);
  return m;
}

Eigen::MatrixXd one_hot_targets(testsupport::Gen& g, int rows, int classes) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows, classes);
  for (int i = 0; i < rows; ++i) t(i, g.integer(0, classes - 1)) = 1.0;
  return t;
}

using oracle::max_gradient_error;

MlpConfig quick_config(int epochs = 200) {
  MlpConfig c;
  c.epochs = epochs;
  c.seed = 3;
  return c;
}

}  // namespace

TEST(Gradient, SoftmaxHeadMatchesFiniteDifferences) {
  testsupport::Gen g(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int in = g.integer(2, 8);
    const int classes = g.integer(2, 5);
    const auto model = random_model(OutputHead::softmax, in, 25, classes, g);
    const Eigen::MatrixXd x = g.normal_matrix(5, in);
    EXPECT_LT(max_gradient_error(model, x, one_hot_targets(g, 5, classes), 1e-4), 1e-4);
    EXPECT_LT(max_gradient_error(model, x, one_hot_targets(g, 5, classes), 0.0), 1e-4);
  }
}

TEST(Gradient, LinearHeadMatchesFiniteDifferences) {
  testsupport::Gen g(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int in = g.integer(2, 18);
    const auto model = random_model(OutputHead::linear, in, 25, 1, g);
    const Eigen::MatrixXd x = g.normal_matrix(5, in);
    const Eigen::MatrixXd t = g.normal_matrix(5, 1, 3.0);
    EXPECT_LT(max_gradient_error(model, x, t, 1e-4), 1e-4);
  }
}

TEST(Gradient, ScalerIsAppliedBeforeTheNetwork) {
  testsupport::Gen g(3);
  auto model = random_model(OutputHead::linear, 3, 4, 1, g);
  const Eigen::MatrixXd x = g.normal_matrix(5, 3, 10.0);
  model.input_scaler = Standardizer::fit(x);
  const Eigen::MatrixXd t = g.normal_matrix(5, 1);
  auto plain = model;
  plain.input_scaler = Standardizer::identity(3);
  const auto a = loss_and_gradient(model, x, t, 0.0);
  const auto b = loss_and_gradient(plain, model.input_scaler.transform(x), t, 0.0);
  EXPECT_DOUBLE_EQ(a.total_loss, b.total_loss);
}

TEST(Softmax, SimplexForExtremeLogits) {
  testsupport::Gen g(4);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd logits = g.normal_vector(5, 300.0);
    const auto p = softmax(logits);
    EXPECT_TRUE(p.allFinite());
    EXPECT_NEAR(p.sum(), 1.0, 1e-9);
    EXPECT_TRUE((p.array() >= 0.0).all());
  }
}

TEST(Training, SeparableTwoClassReachesFullAccuracy) {
  testsupport::Gen g(5);
  Eigen::MatrixXd x(20, 4);
  std::vector<std::size_t> y(20);
  for (int i = 0; i < 20; ++i) {
    y[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i % 2);
    x.row(i) = g.normal_matrix(1, 4, 0.3);
    x(i, 0) += i % 2 == 0 ? -1.0 : 1.0;
  }
  const auto model = train_mlp(x, y, {"a", "b"}, quick_config(200));
  for (int i = 0; i < 20; ++i) EXPECT_EQ(predict(model, x.row(i).transpose()).label, y[static_cast<std::size_t>(i)]);
  EXPECT_EQ(model.training_log.size(), 200u);
  EXPECT_LT(model.training_log.back(), model.training_log.front());
}

TEST(Training, SameSeedSameWeights) {
  testsupport::Gen g(6);
  const Eigen::MatrixXd x = g.normal_matrix(40, 3);
  std::vector<std::size_t> y(40);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = i % 3;
  const auto a = train_mlp(x, y, {"a", "b", "c"}, quick_config(50));
  const auto b = train_mlp(x, y, {"a", "b", "c"}, quick_config(50));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  auto other = quick_config(50);
  other.seed = 4;
  EXPECT_NE(to_json(train_mlp(x, y, {"a", "b", "c"}, other)).dump(), to_json(a).dump());
}

TEST(Training, MemorizesTenSamples) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    testsupport::Gen g(100 + seed);
    const Eigen::MatrixXd x = g.normal_matrix(10, 5);
    std::vector<std::size_t> y(10);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<std::size_t>(g.integer(0, 2));
    y[0] = 0;
    y[1] = 1;
    y[2] = 2;
    auto cfg = quick_config(5000);
    cfg.seed = seed;
    const auto model = train_mlp(x, y, {"a", "b", "c"}, cfg);
    EXPECT_LT(model.training_log.back(), 0.01) << "seed " << seed;
  }
}

TEST(Training, AbsentClassIsNamed) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(6, 2);
  const std::vector<std::size_t> y{0, 0, 1, 1, 0, 1};
  try {
    train_mlp(x, y, {"Sed", "LHH", "Run"}, quick_config(5));
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("'Run'"), std::string::npos) << e.what();
  }
}

TEST(Training, DivergenceSuggestsSmallerLearningRate) {
  testsupport::Gen g(7);
  const Eigen::MatrixXd x = g.normal_matrix(30, 3);
  const Eigen::VectorXd y = g.normal_vector(30, 1e6);
  auto cfg = quick_config(100);
  cfg.learning_rate = 1e3;
  try {
    train_mlp_regressor(x, y, cfg);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("learning rate"), std::string::npos) << e.what();
  }
}

TEST(Training, RegressorFitsSmoothFunction) {
  testsupport::Gen g(8);
  const Eigen::MatrixXd x = g.normal_matrix(200, 2);
  Eigen::VectorXd y(200);
  for (int i = 0; i < 200; ++i) y(i) = 3.0 + 2.0 * x(i, 0) - x(i, 1);
  const auto model = train_mlp_regressor(x, y, quick_config(300));
  double sse = 0.0;
  for (int i = 0; i < 200; ++i) sse += std::pow(predict_value(model, x.row(i).transpose()) - y(i), 2);
  EXPECT_LT(std::sqrt(sse / 200.0), 0.2);
}

TEST(Training, RejectsBadConfig) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(6, 2);
  const std::vector<std::size_t> y{0, 1, 0, 1, 0, 1};
  auto cfg = quick_config(5);
  cfg.hidden_dim = 0;
  EXPECT_THROW(train_mlp(x, y, {"a", "b"}, cfg), std::invalid_argument);
  cfg = quick_config(5);
  cfg.learning_rate = -1.0;
  EXPECT_THROW(train_mlp(x, y, {"a", "b"}, cfg), std::invalid_argument);
}

TEST(Prediction, ZeroModelGivesUniformProbabilities) {
  const auto model = MlpModel::zeros(OutputHead::softmax, 4, 25, 5);
  const auto p = predict(model, Eigen::VectorXd::Ones(4));
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(p.probabilities(i), 0.2);
  EXPECT_EQ(p.label, 0u);
}

TEST(Prediction, WrongInputWidthIsAnError) {
  const auto model = MlpModel::zeros(OutputHead::softmax, 4, 3, 2);
  EXPECT_THROW(predict(model, Eigen::VectorXd::Ones(5)), std::invalid_argument);
  EXPECT_THROW(predict_value(model, Eigen::VectorXd::Ones(4)), std::logic_error);
}

namespace {

// One input, one hidden unit: negative inputs vote class 0, positive vote class 1.
MlpModel sign_voter() {
  auto m = MlpModel::zeros(OutputHead::softmax, 1, 1, 2);
  m.params.w1(0, 0) = 1.0;
  m.params.w2(0, 0) = -5.0;
  m.params.w2(1, 0) = 5.0;
  return m;
}

BoutFeatures windows_of(std::initializer_list<double> values) {
  BoutFeatures b;
  b.bout_id = "b";
  b.windows.resize(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (const double v : values) b.windows(i++, 0) = v;
  return b;
}

}  // namespace

TEST(Voting, MajorityWins) {
  const auto p = classify_bout_voting(sign_voter(), windows_of({-1.0, 0.5, 0.7}));
  EXPECT_EQ(p.label, 1u);
  EXPECT_DOUBLE_EQ(p.probabilities(1), 2.0 / 3.0);
}

TEST(Voting, TieGoesToLargerSummedProbability) {
  // Confident class-0 windows outweigh hesitant class-1 windows.
  EXPECT_EQ(classify_bout_voting(sign_voter(), windows_of({-1.0, -1.0, 0.2, 0.2})).label, 0u);
  EXPECT_EQ(classify_bout_voting(sign_voter(), windows_of({-0.2, -0.2, 1.0, 1.0})).label, 1u);
  // Perfect symmetry falls back to the lowest index.
  EXPECT_EQ(classify_bout_voting(sign_voter(), windows_of({-1.0, 1.0})).label, 0u);
}

TEST(Serialization, MlpJsonRoundTrip) {
  testsupport::Gen g(9);
  const Eigen::MatrixXd x = g.normal_matrix(30, 3, 5.0);
  std::vector<std::size_t> y(30);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = i % 2;
  const auto model = train_mlp(x, y, {"a", "b"}, quick_config(20));
  const auto back = mlp_from_json(nlohmann::json::parse(to_json(model).dump()));
  EXPECT_EQ(back.labels, model.labels);
  EXPECT_EQ(back.training_log, model.training_log);
  for (int i = 0; i < 30; ++i)
    EXPECT_EQ(predict(back, x.row(i).transpose()).probabilities, predict(model, x.row(i).transpose()).probabilities);
  EXPECT_THROW(mlp_from_json(nlohmann::json{{"format", "nope"}}), std::invalid_argument);
}
