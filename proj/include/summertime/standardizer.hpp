#pragma once

#include <Eigen/Dense>

namespace summertime {

/// Per-column z-score transform fitted on training rows. Columns with
/// (near) zero spread get a unit scale so they map to a constant 0.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& rows);
  static Standardizer identity(Eigen::Index dim);

  Eigen::Index dim() const { return mean.size(); }
  Eigen::MatrixXd transform(const Eigen::MatrixXd& rows) const;
  Eigen::VectorXd transform_vector(const Eigen::VectorXd& x) const;
};

}  // namespace summertime
