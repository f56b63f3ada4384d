#pragma once

// Single-hidden-layer network (tanh hidden units) with either a softmax head
// for classification or an identity head for regression, trained by
// mini-batch gradient descent with momentum and L2 weight decay.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "summertime/features.hpp"
#include "summertime/standardizer.hpp"

namespace summertime {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputHead { softmax, linear };

struct MlpConfig {
  int hidden_dim = 25;
  int epochs = 500;
  double learning_rate = 0.01;
  double momentum = 0.9;
  double l2 = 1e-4;
  int batch_size = 32;
  std::uint64_t seed = 0;

  void validate() const;
};

/// w1 is hidden x input, w2 is output x hidden.
struct MlpParameters {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;

  std::size_t size() const;
  /// Flat view order: w1 (column-major), b1, w2 (column-major), b2.
  double& at(std::size_t i);
  double at(std::size_t i) const;
};

struct MlpModel {
  OutputHead head = OutputHead::softmax;
  int input_dim = 0;
  int hidden_dim = 0;
  int output_dim = 0;
  Standardizer input_scaler;
  MlpParameters params;
  std::vector<std::string> labels;  // softmax head only
  MlpConfig config;
  std::vector<double> training_log;  // mean data loss per epoch

  /// All weights and biases zero, identity input scaling.
  static MlpModel zeros(OutputHead head, int input_dim, int hidden_dim, int output_dim);

  std::size_t class_count() const { return static_cast<std::size_t>(output_dim); }
};

struct ClassPrediction {
  std::size_t label = 0;
  Eigen::VectorXd probabilities;
};

/// `labels[i]` indexes `label_names`; every name must occur at least once.
MlpModel train_mlp(const Eigen::MatrixXd& inputs, const std::vector<std::size_t>& labels,
                   const std::vector<std::string>& label_names, const MlpConfig& config = {});

/// Squared-error regression variant with a single linear output.
MlpModel train_mlp_regressor(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                             const MlpConfig& config = {});

/// Pre-softmax logits (softmax head) or the regression output (linear head).
Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& input);

ClassPrediction predict(const MlpModel& model, const Eigen::VectorXd& input);
double predict_value(const MlpModel& model, const Eigen::VectorXd& input);

/// Per-window prediction then majority vote. Ties go to the tied label with
/// the largest summed window probability, then the lowest index. The
/// reported probabilities are the vote shares.
ClassPrediction classify_bout_voting(const MlpModel& window_model, const BoutFeatures& windows);

struct MlpLoss {
  double data_loss = 0.0;   // mean cross-entropy or mean 0.5 * squared error
  double total_loss = 0.0;  // data_loss + 0.5 * l2 * (|w1|^2 + |w2|^2)
  MlpParameters gradient;   // of total_loss
};

/// Loss and analytic gradient on a batch. `targets` is one-hot (softmax) or
/// a single column of values (linear), one row per input row.
MlpLoss loss_and_gradient(const MlpModel& model, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                          double l2);

Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

nlohmann::json to_json(const MlpModel& model);
MlpModel mlp_from_json(const nlohmann::json& j);

}  // namespace summertime
