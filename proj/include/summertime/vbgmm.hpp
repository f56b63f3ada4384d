#pragma once

// Variational Bayesian Gaussian mixture: Dirichlet prior on the mixing
// weights, Gaussian-Wishart prior on each component's mean and precision,
// fitted by coordinate ascent on the evidence lower bound (ELBO) from several
// seeded starts, keeping the best. Components whose expected weight falls
// below a floor are pruned after convergence, so the effective component
// count is learned from the data.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "summertime/standardizer.hpp"

namespace summertime {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ELBO went down between two coordinate-ascent steps. This indicates a
/// broken update, never a property of the data.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Priors live in the standardized feature space. Unset optionals take the
/// dimension-dependent defaults: zero mean, nu0 = dim + 1, W0 = identity.
struct MixturePrior {
  int k_max = 20;
  double dirichlet_alpha0 = 1e-3;
  double mean_scale_beta0 = 1.0;
  std::optional<Eigen::VectorXd> mean_prior;
  std::optional<double> wishart_dof_nu0;
  std::optional<Eigen::MatrixXd> wishart_scale_W0;

  void validate(Eigen::Index dim) const;
};

struct MixtureFitOptions {
  double tol = 1e-6;  // relative ELBO change
  int max_iter = 500;  // per coordinate-ascent phase
  int n_init = 5;  // restarts; the highest final ELBO wins
  std::optional<double> weight_floor;  // default 1 / (10 N)
  double covariance_floor = 1e-6;      // eigenvalue floor, standardized space
  double elbo_slack = 1e-8;
  std::uint64_t seed = 0;
};

/// Fitted mixture in the original feature space. Weights, means and
/// covariances are posterior expectations of the surviving components.
class MixtureModel {
 public:
  MixtureModel(Eigen::VectorXd weights, std::vector<Eigen::VectorXd> means,
               std::vector<Eigen::MatrixXd> covariances, Standardizer standardizer,
               std::vector<double> elbo_trace, std::uint64_t seed, int iterations = 0,
               bool converged = false);

  Eigen::Index dim() const { return standardizer_.dim(); }
  int k_effective() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }
  const std::vector<Eigen::VectorXd>& means() const { return means_; }
  const std::vector<Eigen::MatrixXd>& covariances() const { return covariances_; }
  const Standardizer& standardizer() const { return standardizer_; }
  const std::vector<double>& elbo_trace() const { return elbo_trace_; }
  std::uint64_t seed() const { return seed_; }
  int iterations() const { return iterations_; }
  bool converged() const { return converged_; }

  /// log pi_k + log N(x | mu_k, Sigma_k) for every component.
  Eigen::VectorXd component_log_scores(const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd weights_;
  std::vector<Eigen::VectorXd> means_;
  std::vector<Eigen::MatrixXd> covariances_;
  std::vector<Eigen::MatrixXd> chol_lower_;
  std::vector<double> log_det_;
  Standardizer standardizer_;
  std::vector<double> elbo_trace_;
  std::uint64_t seed_ = 0;
  int iterations_ = 0;
  bool converged_ = false;
};

MixtureModel fit_mixture(const Eigen::MatrixXd& features, const MixturePrior& prior = {},
                         const MixtureFitOptions& options = {});

/// gamma_k(x) = pi_k N(x|mu_k,Sigma_k) / sum_l pi_l N(x|mu_l,Sigma_l), evaluated in log space.
Eigen::VectorXd responsibilities(const MixtureModel& model, const Eigen::VectorXd& x);

/// argmax_k gamma_k(x), lowest index on ties.
std::size_t assign(const MixtureModel& model, const Eigen::VectorXd& x);

/// log sum_k pi_k N(x | mu_k, Sigma_k).
double log_density(const MixtureModel& model, const Eigen::VectorXd& x);

/// Index of the largest entry; the lowest index wins ties.
std::size_t argmax_lowest(const Eigen::VectorXd& v);

double log_sum_exp(const Eigen::VectorXd& v);

nlohmann::json to_json(const MixtureModel& model);
MixtureModel mixture_from_json(const nlohmann::json& j);

}  // namespace summertime
