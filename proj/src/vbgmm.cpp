#include "summertime/vbgmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

namespace summertime {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2 pi)

double digamma(double x) { return boost::math::digamma(x); }

/// ln B(W, nu) for the Wishart normalizer, given ln|W|.
double log_wishart_norm(double log_det_w, double nu, int d) {
  double out = -0.5 * nu * log_det_w - 0.5 * nu * d * std::numbers::ln2 -
               0.25 * d * (d - 1) * std::log(std::numbers::pi);
  for (int i = 1; i <= d; ++i) out -= std::lgamma(0.5 * (nu + 1 - i));
  return out;
}

double log_dirichlet_norm(const Eigen::VectorXd& alpha) {
  double out = std::lgamma(alpha.sum());
  for (Eigen::Index k = 0; k < alpha.size(); ++k) out -= std::lgamma(alpha(k));
  return out;
}

struct ResolvedPrior {
  double alpha0 = 0.0;
  double beta0 = 0.0;
  double nu0 = 0.0;
  Eigen::VectorXd m0;
  Eigen::MatrixXd w0_inv;
  double log_det_w0 = 0.0;
};

// Variational posterior over weights and component parameters, plus the
// sufficient statistics of the responsibilities that produced it.
struct Posterior {
  Eigen::VectorXd alpha, beta, nu;
  std::vector<Eigen::VectorXd> m;
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::MatrixXd> w_chol;  // lower factor of W
  Eigen::VectorXd log_det_w;
  Eigen::VectorXd log_pi;      // E[ln pi_k]
  Eigen::VectorXd log_lambda;  // E[ln |Lambda_k|]

  Eigen::VectorXd n_k;
  std::vector<Eigen::VectorXd> xbar;
  std::vector<Eigen::MatrixXd> scatter;  // N_k S_k
};

Posterior m_step(const Eigen::MatrixXd& z, const Eigen::MatrixXd& resp, const ResolvedPrior& prior) {
  const Eigen::Index d = z.cols();
  const Eigen::Index k_count = resp.cols();
  Posterior q;
  q.n_k = resp.colwise().sum().transpose();
  q.alpha = q.n_k.array() + prior.alpha0;
  q.beta = q.n_k.array() + prior.beta0;
  q.nu = q.n_k.array() + prior.nu0;
  q.m.resize(static_cast<std::size_t>(k_count));
  q.w.resize(static_cast<std::size_t>(k_count));
  q.w_chol.resize(static_cast<std::size_t>(k_count));
  q.xbar.resize(static_cast<std::size_t>(k_count));
  q.scatter.resize(static_cast<std::size_t>(k_count));
  q.log_det_w.resize(k_count);
  q.log_lambda.resize(k_count);

  const double digamma_total = digamma(q.alpha.sum());
  q.log_pi = q.alpha.unaryExpr([&](double a) { return digamma(a) - digamma_total; });

  for (Eigen::Index k = 0; k < k_count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double nk = q.n_k(k);
    Eigen::VectorXd xbar = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
    if (nk > 0.0) {
      xbar = (z.transpose() * resp.col(k)) / nk;
      const Eigen::MatrixXd centered = z.rowwise() - xbar.transpose();
      scatter = centered.transpose() * (centered.array().colwise() * resp.col(k).array()).matrix();
      scatter = 0.5 * (scatter + scatter.transpose());
    }
    q.m[ku] = (prior.beta0 * prior.m0 + nk * xbar) / q.beta(k);

    const Eigen::VectorXd diff = xbar - prior.m0;
    Eigen::MatrixXd w_inv = prior.w0_inv + scatter + (prior.beta0 * nk / (prior.beta0 + nk)) * diff * diff.transpose();
    w_inv = 0.5 * (w_inv + w_inv.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt_inv(w_inv);
    if (llt_inv.info() != Eigen::Success) throw FitError("posterior scale matrix lost positive definiteness");
    Eigen::MatrixXd w = llt_inv.solve(Eigen::MatrixXd::Identity(d, d));
    w = 0.5 * (w + w.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(w);
    if (llt.info() != Eigen::Success) throw FitError("posterior scale matrix lost positive definiteness");

    q.w[ku] = w;
    q.w_chol[ku] = llt.matrixL();
    q.log_det_w(k) = 2.0 * q.w_chol[ku].diagonal().array().log().sum();
    double ll = d * std::numbers::ln2 + q.log_det_w(k);
    for (Eigen::Index i = 1; i <= d; ++i) ll += digamma(0.5 * (q.nu(k) + 1.0 - static_cast<double>(i)));
    q.log_lambda(k) = ll;
    q.xbar[ku] = std::move(xbar);
    q.scatter[ku] = std::move(scatter);
  }
  return q;
}

/// Optimal q(Z) given the parameter posterior. Returns the responsibilities.
/// A component index in `excluded` gets no responsibility at all.
Eigen::MatrixXd e_step(const Eigen::MatrixXd& z, const Posterior& q, Eigen::Index excluded = -1) {
  const Eigen::Index n = z.rows();
  const Eigen::Index d = z.cols();
  const Eigen::Index k_count = q.alpha.size();
  Eigen::MatrixXd log_rho(n, k_count);
  for (Eigen::Index k = 0; k < k_count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Eigen::MatrixXd proj = (z.rowwise() - q.m[ku].transpose()) * q.w_chol[ku];
    const Eigen::VectorXd quad = proj.rowwise().squaredNorm();
    const double constant = q.log_pi(k) + 0.5 * q.log_lambda(k) - 0.5 * d * kLog2Pi - 0.5 * d / q.beta(k);
    log_rho.col(k) = (constant - 0.5 * q.nu(k) * quad.array()).matrix();
  }
  if (excluded >= 0) log_rho.col(excluded).setConstant(-std::numeric_limits<double>::infinity());
  Eigen::MatrixXd resp(n, k_count);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mx = log_rho.row(i).maxCoeff();
    const Eigen::ArrayXd e = (log_rho.row(i).array() - mx).exp();
    resp.row(i) = e / e.sum();
  }
  return resp;
}

double elbo(const Eigen::MatrixXd& resp, const Posterior& q, const ResolvedPrior& prior) {
  const Eigen::Index k_count = q.alpha.size();
  const int d = static_cast<int>(prior.m0.size());
  const double dd = static_cast<double>(d);

  double likelihood = 0.0;       // E[ln p(X|Z,mu,Lambda)]
  double z_prior = 0.0;          // E[ln p(Z|pi)]
  double param_prior = 0.0;      // E[ln p(mu,Lambda)]
  double param_entropy = 0.0;    // -E[ln q(mu,Lambda)]
  double sum_log_pi = q.log_pi.sum();

  const double log_b0 = log_wishart_norm(prior.log_det_w0, prior.nu0, d);
  for (Eigen::Index k = 0; k < k_count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Eigen::MatrixXd& w = q.w[ku];
    const double nk = q.n_k(k);
    const double ll = q.log_lambda(k);
    const double nu = q.nu(k);
    const double beta = q.beta(k);

    const Eigen::VectorXd dx = q.xbar[ku] - q.m[ku];
    likelihood += 0.5 * (nk * (ll - dd / beta - dd * kLog2Pi) - nu * (q.scatter[ku].cwiseProduct(w)).sum() -
                         nu * nk * dx.dot(w * dx));
    z_prior += nk * q.log_pi(k);

    const Eigen::VectorXd dm = q.m[ku] - prior.m0;
    param_prior += 0.5 * (dd * std::log(prior.beta0 / (2.0 * std::numbers::pi)) + ll - dd * prior.beta0 / beta -
                          prior.beta0 * nu * dm.dot(w * dm)) +
                   log_b0 + 0.5 * (prior.nu0 - dd - 1.0) * ll - 0.5 * nu * (prior.w0_inv.cwiseProduct(w)).sum();

    const double entropy_lambda = -log_wishart_norm(q.log_det_w(k), nu, d) - 0.5 * (nu - dd - 1.0) * ll + 0.5 * nu * dd;
    param_entropy -= 0.5 * ll + 0.5 * dd * std::log(beta / (2.0 * std::numbers::pi)) - 0.5 * dd - entropy_lambda;
  }

  const Eigen::VectorXd alpha0 = Eigen::VectorXd::Constant(k_count, prior.alpha0);
  const double pi_prior = log_dirichlet_norm(alpha0) + (prior.alpha0 - 1.0) * sum_log_pi;
  const double pi_entropy = -(((q.alpha.array() - 1.0) * q.log_pi.array()).sum() + log_dirichlet_norm(q.alpha));

  double z_entropy = 0.0;
  for (Eigen::Index i = 0; i < resp.size(); ++i) {
    const double r = resp.data()[i];
    if (r > 0.0) z_entropy -= r * std::log(r);
  }

  return likelihood + z_prior + pi_prior + param_prior + z_entropy + pi_entropy + param_entropy;
}

/// k-means++ seeding followed by nearest-centre hard assignment.
Eigen::MatrixXd seed_responsibilities(const Eigen::MatrixXd& z, int k_count, std::mt19937_64& rng) {
  const Eigen::Index n = z.rows();
  std::vector<Eigen::Index> centers;
  centers.push_back(std::uniform_int_distribution<Eigen::Index>(0, n - 1)(rng));
  Eigen::VectorXd nearest = (z.rowwise() - z.row(centers[0])).rowwise().squaredNorm();
  while (static_cast<int>(centers.size()) < k_count) {
    const double total = nearest.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      std::discrete_distribution<Eigen::Index> dist(nearest.data(), nearest.data() + n);
      pick = dist(rng);
    } else {
      pick = std::uniform_int_distribution<Eigen::Index>(0, n - 1)(rng);
    }
    centers.push_back(pick);
    nearest = nearest.cwiseMin((z.rowwise() - z.row(pick)).rowwise().squaredNorm());
  }

  Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, k_count);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < k_count; ++k) {
      const double dist = (z.row(i) - z.row(centers[static_cast<std::size_t>(k)])).squaredNorm();
      if (dist < best_d) {
        best_d = dist;
        best = k;
      }
    }
    resp(i, best) = 1.0;
  }
  return resp;
}

struct Attempt {
  Posterior q;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

/// One coordinate-ascent run from a fresh k-means++ start. After convergence,
/// deletion moves hand the windows of one component to the others; a move is
/// kept only when the bound rises straight away, so the trace stays monotone.
Attempt run_attempt(const Eigen::MatrixXd& z, const ResolvedPrior& rp, int k_max, const MixtureFitOptions& options,
                    double weight_floor, std::mt19937_64& rng) {
  Attempt a;
  Eigen::MatrixXd resp = seed_responsibilities(z, k_max, rng);
  auto record = [&](double bound) {
    if (!std::isfinite(bound)) throw FitError("ELBO became non-finite at iteration " + std::to_string(a.iterations));
    if (!a.trace.empty() && bound < a.trace.back() - options.elbo_slack)
      throw InternalConsistencyError("ELBO decreased from " + std::to_string(a.trace.back()) + " to " +
                                     std::to_string(bound) + " at iteration " + std::to_string(a.iterations));
    a.trace.push_back(bound);
  };

  // Coordinate ascent from `resp` until the relative change drops below tol.
  auto ascend = [&](bool fresh) {
    a.converged = false;
    for (int sweep = 0; sweep < options.max_iter; ++sweep) {
      if (!fresh) resp = e_step(z, a.q);
      fresh = false;
      ++a.iterations;
      a.q = m_step(z, resp, rp);
      const double prev = a.trace.empty() ? std::numeric_limits<double>::quiet_NaN() : a.trace.back();
      record(elbo(resp, a.q, rp));
      if (std::isfinite(prev) && std::abs(a.trace.back() - prev) <= options.tol * std::abs(a.trace.back())) {
        a.converged = true;
        return;
      }
    }
  };

  ascend(true);
  bool moved = a.converged;
  while (moved) {
    moved = false;
    const Eigen::VectorXd pi = a.q.alpha / a.q.alpha.sum();
    std::vector<Eigen::Index> active;
    for (Eigen::Index k = 0; k < pi.size(); ++k)
      if (pi(k) >= weight_floor) active.push_back(k);
    if (active.size() < 2) break;
    std::stable_sort(active.begin(), active.end(), [&](Eigen::Index x, Eigen::Index y) { return pi(x) < pi(y); });
    for (const Eigen::Index k : active) {
      Eigen::MatrixXd trial = e_step(z, a.q, k);
      Posterior tq = m_step(z, trial, rp);
      const double bound = elbo(trial, tq, rp);
      if (std::isfinite(bound) && bound > a.trace.back() + options.tol * std::abs(a.trace.back())) {
        resp = std::move(trial);
        a.q = std::move(tq);
        ++a.iterations;
        record(bound);
        ascend(false);
        moved = a.converged;
        break;
      }
    }
  }
  return a;
}

ResolvedPrior resolve(const MixturePrior& prior, Eigen::Index d) {
  ResolvedPrior r;
  r.alpha0 = prior.dirichlet_alpha0;
  r.beta0 = prior.mean_scale_beta0;
  r.nu0 = prior.wishart_dof_nu0.value_or(static_cast<double>(d) + 1.0);
  r.m0 = prior.mean_prior.value_or(Eigen::VectorXd::Zero(d));
  const Eigen::MatrixXd w0 = prior.wishart_scale_W0.value_or(Eigen::MatrixXd::Identity(d, d));
  Eigen::LLT<Eigen::MatrixXd> llt(w0);
  r.w0_inv = llt.solve(Eigen::MatrixXd::Identity(d, d));
  r.log_det_w0 = 2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
  return r;
}

}  // namespace

void MixturePrior::validate(Eigen::Index dim) const {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (!(dirichlet_alpha0 > 0.0)) throw std::invalid_argument("dirichlet_alpha0 must be positive");
  if (!(mean_scale_beta0 > 0.0)) throw std::invalid_argument("mean_scale_beta0 must be positive");
  if (mean_prior && mean_prior->size() != dim) throw std::invalid_argument("mean_prior dimension mismatch");
  if (wishart_dof_nu0 && !(*wishart_dof_nu0 > static_cast<double>(dim) - 1.0))
    throw std::invalid_argument("wishart_dof_nu0 must exceed dim - 1");
  if (wishart_scale_W0) {
    const auto& w = *wishart_scale_W0;
    if (w.rows() != dim || w.cols() != dim) throw std::invalid_argument("wishart_scale_W0 dimension mismatch");
    if (!w.isApprox(w.transpose())) throw std::invalid_argument("wishart_scale_W0 must be symmetric");
    if (Eigen::LLT<Eigen::MatrixXd>(w).info() != Eigen::Success)
      throw std::invalid_argument("wishart_scale_W0 must be positive definite");
  }
}

MixtureModel::MixtureModel(Eigen::VectorXd weights, std::vector<Eigen::VectorXd> means,
                           std::vector<Eigen::MatrixXd> covariances, Standardizer standardizer,
                           std::vector<double> elbo_trace, std::uint64_t seed, int iterations, bool converged)
    : weights_(std::move(weights)),
      means_(std::move(means)),
      covariances_(std::move(covariances)),
      standardizer_(std::move(standardizer)),
      elbo_trace_(std::move(elbo_trace)),
      seed_(seed),
      iterations_(iterations),
      converged_(converged) {
  const auto k = static_cast<std::size_t>(weights_.size());
  if (k == 0) throw std::invalid_argument("mixture needs at least one component");
  if (means_.size() != k || covariances_.size() != k) throw std::invalid_argument("component count mismatch");
  if (standardizer_.scale.size() != standardizer_.dim()) throw std::invalid_argument("standardizer size mismatch");
  if (std::abs(weights_.sum() - 1.0) > 1e-9 || (weights_.array() <= 0.0).any())
    throw std::invalid_argument("mixture weights must be a positive simplex");
  const Eigen::Index d = standardizer_.dim();
  for (std::size_t i = 0; i < k; ++i) {
    if (means_[i].size() != d || covariances_[i].rows() != d || covariances_[i].cols() != d)
      throw std::invalid_argument("component dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(covariances_[i]);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("component covariance is not positive definite");
    chol_lower_.emplace_back(llt.matrixL());
    log_det_.push_back(2.0 * chol_lower_.back().diagonal().array().log().sum());
  }
}

Eigen::VectorXd MixtureModel::component_log_scores(const Eigen::VectorXd& x) const {
  if (x.size() != dim())
    throw std::invalid_argument("feature dimension " + std::to_string(x.size()) + " does not match model dimension " +
                                std::to_string(dim()));
  const auto k = weights_.size();
  Eigen::VectorXd out(k);
  const double d = static_cast<double>(dim());
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const Eigen::VectorXd y = chol_lower_[iu].triangularView<Eigen::Lower>().solve(x - means_[iu]);
    out(i) = std::log(weights_(i)) - 0.5 * (d * kLog2Pi + log_det_[iu] + y.squaredNorm());
  }
  return out;
}

MixtureModel fit_mixture(const Eigen::MatrixXd& features, const MixturePrior& prior, const MixtureFitOptions& options) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (d < 1) throw FitError("features have zero columns");
  if (!features.allFinite()) throw FitError("features contain non-finite values");
  prior.validate(d);
  if (n < prior.k_max)
    throw FitError("need at least k_max = " + std::to_string(prior.k_max) + " rows, got " + std::to_string(n));
  if (!(options.tol > 0.0) || options.max_iter < 1 || options.n_init < 1)
    throw std::invalid_argument("tol, max_iter and n_init must be positive");

  const Standardizer standardizer = Standardizer::fit(features);
  const Eigen::MatrixXd z = standardizer.transform(features);
  const ResolvedPrior rp = resolve(prior, d);

  const double floor = options.weight_floor.value_or(1.0 / (10.0 * static_cast<double>(n)));

  // Restarts share one generator, so the whole fit depends only on the seed.
  std::mt19937_64 rng(options.seed);
  Attempt best = run_attempt(z, rp, prior.k_max, options, floor, rng);
  for (int r = 1; r < options.n_init; ++r) {
    Attempt next = run_attempt(z, rp, prior.k_max, options, floor, rng);
    if (next.trace.back() > best.trace.back()) best = std::move(next);
  }
  const Posterior& q = best.q;
  const Eigen::VectorXd expected_pi = q.alpha / q.alpha.sum();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < expected_pi.size(); ++k)
    if (expected_pi(k) >= floor) kept.push_back(k);
  if (kept.empty()) kept.push_back(static_cast<Eigen::Index>(argmax_lowest(expected_pi)));

  Eigen::VectorXd weights(static_cast<Eigen::Index>(kept.size()));
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;
  const Eigen::VectorXd& s = standardizer.scale;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Eigen::Index k = kept[i];
    const auto ku = static_cast<std::size_t>(k);
    weights(static_cast<Eigen::Index>(i)) = expected_pi(k);

    // E[Lambda] = nu W, so the plug-in covariance is W^{-1} / nu.
    Eigen::MatrixXd cov = q.w[ku].inverse() / q.nu(k);
    cov = 0.5 * (cov + cov.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const Eigen::VectorXd values = eig.eigenvalues().cwiseMax(options.covariance_floor);
    cov = eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
    cov = s.asDiagonal() * cov * s.asDiagonal();
    covariances.push_back(0.5 * (cov + cov.transpose()));
    means.push_back(standardizer.mean + q.m[ku].cwiseProduct(s));
  }
  weights /= weights.sum();

  return MixtureModel(std::move(weights), std::move(means), std::move(covariances), standardizer,
                      std::move(best.trace), options.seed, best.iterations, best.converged);
}

std::size_t argmax_lowest(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw std::invalid_argument("argmax of an empty vector");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return static_cast<std::size_t>(best);
}

double log_sum_exp(const Eigen::VectorXd& v) {
  const double mx = v.maxCoeff();
  if (!std::isfinite(mx)) return mx;
  return mx + std::log((v.array() - mx).exp().sum());
}

Eigen::VectorXd responsibilities(const MixtureModel& model, const Eigen::VectorXd& x) {
  const Eigen::VectorXd scores = model.component_log_scores(x);
  const double mx = scores.maxCoeff();
  Eigen::VectorXd gamma = (scores.array() - mx).exp().matrix();
  gamma /= gamma.sum();
  return gamma;
}

std::size_t assign(const MixtureModel& model, const Eigen::VectorXd& x) {
  return argmax_lowest(model.component_log_scores(x));
}

double log_density(const MixtureModel& model, const Eigen::VectorXd& x) {
  return log_sum_exp(model.component_log_scores(x));
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

nlohmann::json to_json(const MixtureModel& model) {
  nlohmann::json j;
  j["format"] = "summertime.mixture";
  j["version"] = 1;
  j["dim"] = model.dim();
  j["k_effective"] = model.k_effective();
  j["seed"] = model.seed();
  j["iterations"] = model.iterations();
  j["converged"] = model.converged();
  j["weights"] = to_vec(model.weights());
  j["means"] = nlohmann::json::array();
  j["covariances"] = nlohmann::json::array();
  for (int k = 0; k < model.k_effective(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    j["means"].push_back(to_vec(model.means()[ku]));
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major = model.covariances()[ku];
    j["covariances"].push_back(std::vector<double>(row_major.data(), row_major.data() + row_major.size()));
  }
  j["standardizer"] = {{"mean", to_vec(model.standardizer().mean)}, {"std", to_vec(model.standardizer().scale)}};
  j["elbo_trace"] = model.elbo_trace();
  return j;
}

MixtureModel mixture_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "summertime.mixture") throw std::invalid_argument("not a mixture model document");
  if (j.at("version").get<int>() != 1) throw std::invalid_argument("unsupported mixture model version");
  const auto d = j.at("dim").get<Eigen::Index>();
  Standardizer standardizer{from_vec(j.at("standardizer").at("mean").get<std::vector<double>>()),
                            from_vec(j.at("standardizer").at("std").get<std::vector<double>>())};
  if (standardizer.dim() != d) throw std::invalid_argument("standardizer dimension mismatch");

  std::vector<Eigen::VectorXd> means;
  for (const auto& m : j.at("means")) means.push_back(from_vec(m.get<std::vector<double>>()));
  std::vector<Eigen::MatrixXd> covariances;
  for (const auto& c : j.at("covariances")) {
    const auto flat = c.get<std::vector<double>>();
    if (static_cast<Eigen::Index>(flat.size()) != d * d) throw std::invalid_argument("covariance size mismatch");
    covariances.emplace_back(
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(flat.data(), d, d));
  }
  return MixtureModel(from_vec(j.at("weights").get<std::vector<double>>()), std::move(means), std::move(covariances),
                      std::move(standardizer), j.at("elbo_trace").get<std::vector<double>>(),
                      j.at("seed").get<std::uint64_t>(), j.value("iterations", 0), j.value("converged", false));
}

}  // namespace summertime
