#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "summertime/dataset.hpp"

namespace summertime {

/// Features computed per axis: five percentiles then lag-1 autocorrelation.
inline constexpr int kFeaturesPerAxis = 6;

/// Percentile levels (in percent) reported for each axis of a window.
inline constexpr std::array<int, 5> kPercentileLevels{10, 25, 50, 75, 90};

/// One window's feature vector. Layout is axis-major:
/// [axis1: p10 p25 p50 p75 p90 ac1, axis2: ..., ...].
struct WindowFeatures {
  std::string bout_id;
  std::size_t window_index = 0;
  Eigen::VectorXd values;
};

/// All window features of one bout, row w = window w in temporal order.
struct BoutFeatures {
  std::string bout_id;
  Eigen::MatrixXd windows;

  Eigen::Index window_count() const { return windows.rows(); }
  WindowFeatures window(Eigen::Index w) const {
    return {bout_id, static_cast<std::size_t>(w), windows.row(w).transpose()};
  }
};

/// Disjoint, contiguous windows in order; trailing samples that do not fill
/// a whole window are dropped. Each element is a (window_length x axes) block.
std::vector<Eigen::MatrixXd> segment(const Bout& bout, int window_length = kDefaultWindowLength);

/// 1-based sorted positions used for the percentile levels at window length n.
/// Nearest-rank rule ceil(q * n) clamped to [1, n]; n = 12 gives 2, 3, 6, 9, 11.
std::array<int, 5> percentile_positions(int n);

/// Nearest-rank percentiles (no interpolation) of one axis of a window.
std::array<double, 5> percentile_points(std::span<const double> window_axis);

/// Sample lag-1 autocorrelation, sum_{t<n} (x_t - m)(x_{t+1} - m) / sum_t (x_t - m)^2.
/// Returns 0 for a constant window.
double lag1_autocorrelation(std::span<const double> window_axis);

/// Feature vector of one (window_length x axes) window block.
Eigen::VectorXd window_features(const Eigen::MatrixXd& window);

BoutFeatures featurize_bout(const Bout& bout, int window_length = kDefaultWindowLength);

/// One entry per bout, same order as the corpus.
std::vector<BoutFeatures> featurize(const Corpus& corpus, int window_length = kDefaultWindowLength);

/// Stacks the window rows of the selected bouts (all when `indices` is empty).
Eigen::MatrixXd stack_windows(const std::vector<BoutFeatures>& features,
                              const std::vector<std::size_t>& indices = {});

/// CSV `bout_id,window_index,f1..fN`.
void write_feature_csv(const std::vector<BoutFeatures>& features, const std::filesystem::path& file);

}  // namespace summertime
