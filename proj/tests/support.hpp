#pragma once

// Seeded generators shared by the property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "summertime/dataset.hpp"

namespace testsupport {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double mean = 0.0, double sd = 1.0) { return std::normal_distribution<double>(mean, sd)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, double sd = 1.0) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(0.0, sd);
    return m;
  }

  Eigen::VectorXd normal_vector(Eigen::Index n, double sd = 1.0) { return normal_matrix(n, 1, sd).col(0); }

  // Nonnegative whole counts with occasional ties and zeros.
  Eigen::MatrixXd count_window(Eigen::Index length, Eigen::Index axes) {
    Eigen::MatrixXd w(length, axes);
    const int style = integer(0, 3);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      switch (style) {
        case 0: w.data()[i] = std::round(uniform(0.0, 1000.0)); break;
        case 1: w.data()[i] = static_cast<double>(integer(0, 4)); break;
        case 2: w.data()[i] = uniform(-50.0, 50.0); break;
        default: w.data()[i] = std::round(std::abs(normal(300.0, 120.0))); break;
      }
    }
    return w;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Three isotropic Gaussian blobs, `per` points each, centers `separation`
// standard deviations apart.
inline Eigen::MatrixXd three_blobs(std::uint64_t seed, int per = 300, Eigen::Index dim = 2, double sd = 1.0,
                                   double separation = 10.0) {
  Gen g(seed);
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(3, dim);
  centers(1, 0) = separation * sd;
  centers(2, 1 % dim) += separation * sd;
  if (dim == 1) centers(2, 0) = 2.0 * separation * sd;
  Eigen::MatrixXd x(3 * per, dim);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < per; ++i) x.row(c * per + i) = centers.row(c) + g.normal_matrix(1, dim, sd);
  return x;
}

// Small hand-built corpus: `subjects` x `classes` bouts with per-window targets.
inline summertime::Corpus tiny_corpus(std::uint64_t seed, int subjects = 3, int windows = 4) {
  Gen g(seed);
  summertime::Corpus c;
  c.axis_count = 3;
  c.label_set = summertime::default_label_set();
  for (int s = 0; s < subjects; ++s)
    for (std::size_t k = 0; k < c.label_set.size(); ++k) {
      summertime::Bout b;
      b.subject_id = "P" + std::to_string(s + 1);
      b.bout_id = b.subject_id + "_" + c.label_set[k];
      b.label = k;
      b.signal = g.count_window(windows * summertime::kDefaultWindowLength, 3).cwiseAbs();
      for (int w = 0; w < windows; ++w) b.targets.push_back(1.0 + static_cast<double>(k) + g.uniform(0.0, 0.5));
      c.bouts.push_back(std::move(b));
    }
  return c;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("summertime_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace testsupport
