#include "summertime/standardizer.hpp"

#include <cmath>
#include <stdexcept>

namespace summertime {

Standardizer Standardizer::fit(const Eigen::MatrixXd& rows) {
  if (rows.rows() < 1) throw std::invalid_argument("cannot standardize an empty matrix");
  Standardizer s;
  s.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - s.mean.transpose();
  s.scale = (centered.array().square().colwise().sum() / static_cast<double>(rows.rows())).sqrt().transpose();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
    if (!(s.scale(j) > 1e-12 * (1.0 + std::abs(s.mean(j))))) s.scale(j) = 1.0;
  }
  return s;
}

Standardizer Standardizer::identity(Eigen::Index dim) {
  return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)};
}

Eigen::MatrixXd Standardizer::transform(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != dim()) throw std::invalid_argument("standardizer dimension mismatch");
  return (rows.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

Eigen::VectorXd Standardizer::transform_vector(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw std::invalid_argument("standardizer dimension mismatch");
  return (x - mean).cwiseQuotient(scale);
}

}  // namespace summertime
