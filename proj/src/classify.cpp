#include "summertime/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "summertime/vbgmm.hpp"

namespace summertime {

void MlpConfig::validate() const {
  if (hidden_dim < 1) throw std::invalid_argument("mlp.hidden_dim must be positive");
  if (epochs < 1) throw std::invalid_argument("mlp.epochs must be positive");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("mlp.learning_rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("mlp.momentum must lie in [0, 1)");
  if (!(l2 >= 0.0)) throw std::invalid_argument("mlp.l2 must be nonnegative");
  if (batch_size < 1) throw std::invalid_argument("mlp.batch_size must be positive");
}

std::size_t MlpParameters::size() const {
  return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() + b2.size());
}

double& MlpParameters::at(std::size_t i) {
  auto idx = static_cast<Eigen::Index>(i);
  if (idx < w1.size()) return w1.data()[idx];
  idx -= w1.size();
  if (idx < b1.size()) return b1.data()[idx];
  idx -= b1.size();
  if (idx < w2.size()) return w2.data()[idx];
  idx -= w2.size();
  if (idx < b2.size()) return b2.data()[idx];
  throw std::out_of_range("parameter index out of range");
}

double MlpParameters::at(std::size_t i) const { return const_cast<MlpParameters*>(this)->at(i); }

MlpModel MlpModel::zeros(OutputHead head, int input_dim, int hidden_dim, int output_dim) {
  MlpModel m;
  m.head = head;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.output_dim = output_dim;
  m.input_scaler = Standardizer::identity(input_dim);
  m.params.w1 = Eigen::MatrixXd::Zero(hidden_dim, input_dim);
  m.params.b1 = Eigen::VectorXd::Zero(hidden_dim);
  m.params.w2 = Eigen::MatrixXd::Zero(output_dim, hidden_dim);
  m.params.b2 = Eigen::VectorXd::Zero(output_dim);
  m.config.hidden_dim = hidden_dim;
  return m;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double mx = logits.maxCoeff();
  Eigen::VectorXd p = (logits.array() - mx).exp().matrix();
  return p / p.sum();
}

namespace {

Eigen::MatrixXd row_softmax(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) out.row(i) = softmax(logits.row(i).transpose()).transpose();
  return out;
}

// Loss on inputs that are already standardized.
MlpLoss loss_and_gradient_scaled(const MlpModel& model, const Eigen::MatrixXd& z, const Eigen::MatrixXd& targets,
                                 double l2) {
  const auto& p = model.params;
  const double batch = static_cast<double>(z.rows());
  const Eigen::MatrixXd hidden = ((z * p.w1.transpose()).rowwise() + p.b1.transpose()).array().tanh().matrix();
  const Eigen::MatrixXd out = (hidden * p.w2.transpose()).rowwise() + p.b2.transpose();

  MlpLoss result;
  Eigen::MatrixXd d_out;
  if (model.head == OutputHead::softmax) {
    const Eigen::MatrixXd prob = row_softmax(out);
    double ce = 0.0;
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      Eigen::Index cls = 0;
      targets.row(i).maxCoeff(&cls);
      // log-softmax directly avoids log(0) for confident wrong predictions
      const double mx = out.row(i).maxCoeff();
      const double lse = mx + std::log((out.row(i).array() - mx).exp().sum());
      ce -= out(i, cls) - lse;
    }
    result.data_loss = ce / batch;
    d_out = (prob - targets) / batch;
  } else {
    const Eigen::MatrixXd err = out - targets;
    result.data_loss = 0.5 * err.squaredNorm() / batch;
    d_out = err / batch;
  }
  result.total_loss = result.data_loss + 0.5 * l2 * (p.w1.squaredNorm() + p.w2.squaredNorm());

  auto& g = result.gradient;
  g.w2 = d_out.transpose() * hidden + l2 * p.w2;
  g.b2 = d_out.colwise().sum().transpose();
  const Eigen::MatrixXd d_hidden = ((d_out * p.w2).array() * (1.0 - hidden.array().square())).matrix();
  g.w1 = d_hidden.transpose() * z + l2 * p.w1;
  g.b1 = d_hidden.colwise().sum().transpose();
  return result;
}

MlpModel train(OutputHead head, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
               std::vector<std::string> label_names, const MlpConfig& config) {
  config.validate();
  if (inputs.rows() < 1) throw TrainingError("no training examples");
  if (inputs.rows() != targets.rows()) throw std::invalid_argument("input and target row counts differ");
  if (!inputs.allFinite() || !targets.allFinite()) throw TrainingError("training data contain non-finite values");

  const int in_dim = static_cast<int>(inputs.cols());
  const int out_dim = static_cast<int>(targets.cols());
  MlpModel model = MlpModel::zeros(head, in_dim, config.hidden_dim, out_dim);
  model.config = config;
  model.labels = std::move(label_names);
  model.input_scaler = Standardizer::fit(inputs);

  std::mt19937_64 rng(config.seed);
  auto xavier = [&rng](Eigen::MatrixXd& w) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = dist(rng);
  };
  xavier(model.params.w1);
  xavier(model.params.w2);
  if (head == OutputHead::linear) model.params.b2(0) = targets.col(0).mean();

  const Eigen::MatrixXd z = model.input_scaler.transform(inputs);
  const auto n = static_cast<std::size_t>(inputs.rows());
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);

  MlpParameters velocity = model.params;
  for (std::size_t i = 0; i < velocity.size(); ++i) velocity.at(i) = 0.0;

  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  model.training_log.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t stop = std::min(n, start + batch_size);
      const std::vector<Eigen::Index> idx(order.begin() + static_cast<std::ptrdiff_t>(start),
                                          order.begin() + static_cast<std::ptrdiff_t>(stop));
      const Eigen::MatrixXd zb = z(idx, Eigen::all);
      const Eigen::MatrixXd tb = targets(idx, Eigen::all);
      const MlpLoss step = loss_and_gradient_scaled(model, zb, tb, config.l2);
      if (!std::isfinite(step.total_loss))
        throw TrainingError("training diverged (non-finite loss at epoch " + std::to_string(epoch + 1) +
                            "); try a smaller learning rate");
      epoch_loss += step.data_loss * static_cast<double>(stop - start);

      velocity.w1 = config.momentum * velocity.w1 - config.learning_rate * step.gradient.w1;
      velocity.b1 = config.momentum * velocity.b1 - config.learning_rate * step.gradient.b1;
      velocity.w2 = config.momentum * velocity.w2 - config.learning_rate * step.gradient.w2;
      velocity.b2 = config.momentum * velocity.b2 - config.learning_rate * step.gradient.b2;
      model.params.w1 += velocity.w1;
      model.params.b1 += velocity.b1;
      model.params.w2 += velocity.w2;
      model.params.b2 += velocity.b2;
    }
    model.training_log.push_back(epoch_loss / static_cast<double>(n));
  }
  if (!model.params.w1.allFinite() || !model.params.w2.allFinite())
    throw TrainingError("training diverged (non-finite weights); try a smaller learning rate");
  return model;
}

}  // namespace

MlpLoss loss_and_gradient(const MlpModel& model, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                          double l2) {
  if (inputs.cols() != model.input_dim || targets.cols() != model.output_dim || inputs.rows() != targets.rows())
    throw std::invalid_argument("batch shape does not match the network");
  return loss_and_gradient_scaled(model, model.input_scaler.transform(inputs), targets, l2);
}

MlpModel train_mlp(const Eigen::MatrixXd& inputs, const std::vector<std::size_t>& labels,
                   const std::vector<std::string>& label_names, const MlpConfig& config) {
  if (labels.size() != static_cast<std::size_t>(inputs.rows()))
    throw std::invalid_argument("one label per input row required");
  if (label_names.size() < 2) throw std::invalid_argument("classification needs at least two classes");
  std::vector<std::size_t> counts(label_names.size(), 0);
  for (const auto l : labels) {
    if (l >= label_names.size()) throw std::out_of_range("label index out of range");
    ++counts[l];
  }
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] == 0) throw TrainingError("class '" + label_names[c] + "' is absent from the training data");

  Eigen::MatrixXd one_hot = Eigen::MatrixXd::Zero(inputs.rows(), static_cast<Eigen::Index>(label_names.size()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    one_hot(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(labels[i])) = 1.0;
  return train(OutputHead::softmax, inputs, one_hot, label_names, config);
}

MlpModel train_mlp_regressor(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, const MlpConfig& config) {
  return train(OutputHead::linear, inputs, targets, {}, config);
}

Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& input) {
  if (input.size() != model.input_dim)
    throw std::invalid_argument("input dimension " + std::to_string(input.size()) + " does not match network input " +
                                std::to_string(model.input_dim));
  const auto& p = model.params;
  const Eigen::VectorXd hidden = (p.w1 * model.input_scaler.transform_vector(input) + p.b1).array().tanh().matrix();
  return p.w2 * hidden + p.b2;
}

ClassPrediction predict(const MlpModel& model, const Eigen::VectorXd& input) {
  if (model.head != OutputHead::softmax) throw std::logic_error("predict needs a classification network");
  ClassPrediction out;
  out.probabilities = softmax(forward(model, input));
  out.label = argmax_lowest(out.probabilities);
  return out;
}

double predict_value(const MlpModel& model, const Eigen::VectorXd& input) {
  if (model.head != OutputHead::linear) throw std::logic_error("predict_value needs a regression network");
  return forward(model, input)(0);
}

ClassPrediction classify_bout_voting(const MlpModel& window_model, const BoutFeatures& windows) {
  if (windows.window_count() == 0) throw std::invalid_argument("bout '" + windows.bout_id + "': bout has no windows");
  const auto classes = static_cast<Eigen::Index>(window_model.class_count());
  Eigen::VectorXd votes = Eigen::VectorXd::Zero(classes);
  Eigen::VectorXd summed = Eigen::VectorXd::Zero(classes);
  for (Eigen::Index w = 0; w < windows.window_count(); ++w) {
    const auto p = predict(window_model, windows.windows.row(w).transpose());
    votes(static_cast<Eigen::Index>(p.label)) += 1.0;
    summed += p.probabilities;
  }
  const double top = votes.maxCoeff();
  Eigen::Index best = -1;
  for (Eigen::Index c = 0; c < classes; ++c) {
    if (votes(c) != top) continue;
    if (best < 0 || summed(c) > summed(best)) best = c;
  }
  return {static_cast<std::size_t>(best), votes / static_cast<double>(windows.window_count())};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> flat(const Eigen::MatrixXd& m) {
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r = m;
  return {r.data(), r.data() + r.size()};
}

Eigen::MatrixXd unflat(const std::vector<double>& v, Eigen::Index rows, Eigen::Index cols) {
  if (static_cast<Eigen::Index>(v.size()) != rows * cols) throw std::invalid_argument("weight matrix size mismatch");
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), rows, cols);
}

}  // namespace

nlohmann::json to_json(const MlpModel& model) {
  nlohmann::json j;
  j["format"] = "summertime.mlp";
  j["version"] = 1;
  j["head"] = model.head == OutputHead::softmax ? "softmax" : "linear";
  j["input_dim"] = model.input_dim;
  j["hidden_dim"] = model.hidden_dim;
  j["output_dim"] = model.output_dim;
  j["labels"] = model.labels;
  j["input_scaler"] = {{"mean", flat(model.input_scaler.mean)}, {"std", flat(model.input_scaler.scale)}};
  j["weights"] = {{"w1", flat(model.params.w1)},
                  {"b1", flat(model.params.b1)},
                  {"w2", flat(model.params.w2)},
                  {"b2", flat(model.params.b2)}};
  const auto& c = model.config;
  j["config"] = {{"hidden_dim", c.hidden_dim}, {"epochs", c.epochs},         {"learning_rate", c.learning_rate},
                 {"momentum", c.momentum},     {"l2", c.l2},                 {"batch_size", c.batch_size},
                 {"seed", c.seed}};
  j["training_log"] = model.training_log;
  return j;
}

MlpModel mlp_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "summertime.mlp") throw std::invalid_argument("not an MLP model document");
  if (j.at("version").get<int>() != 1) throw std::invalid_argument("unsupported MLP model version");
  const auto head = j.at("head").get<std::string>() == "softmax" ? OutputHead::softmax : OutputHead::linear;
  const int in = j.at("input_dim").get<int>();
  const int hidden = j.at("hidden_dim").get<int>();
  const int out = j.at("output_dim").get<int>();
  MlpModel m = MlpModel::zeros(head, in, hidden, out);
  m.labels = j.at("labels").get<std::vector<std::string>>();
  m.input_scaler.mean = unflat(j.at("input_scaler").at("mean").get<std::vector<double>>(), in, 1);
  m.input_scaler.scale = unflat(j.at("input_scaler").at("std").get<std::vector<double>>(), in, 1);
  const auto& w = j.at("weights");
  m.params.w1 = unflat(w.at("w1").get<std::vector<double>>(), hidden, in);
  m.params.b1 = unflat(w.at("b1").get<std::vector<double>>(), hidden, 1);
  m.params.w2 = unflat(w.at("w2").get<std::vector<double>>(), out, hidden);
  m.params.b2 = unflat(w.at("b2").get<std::vector<double>>(), out, 1);
  const auto& c = j.at("config");
  m.config = {c.at("hidden_dim").get<int>(),        c.at("epochs").get<int>(), c.at("learning_rate").get<double>(),
              c.at("momentum").get<double>(),       c.at("l2").get<double>(),  c.at("batch_size").get<int>(),
              c.at("seed").get<std::uint64_t>()};
  m.training_log = j.at("training_log").get<std::vector<double>>();
  return m;
}

}  // namespace summertime
