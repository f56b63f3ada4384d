#include "summertime/features.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "text_io.hpp"

namespace summertime {

std::vector<Eigen::MatrixXd> segment(const Bout& bout, int window_length) {
  if (window_length < 2) throw std::invalid_argument("window length must be at least 2");
  if (bout.samples() < window_length)
    throw CorpusError("bout '" + bout.bout_id + "': bout shorter than one window");

  const auto count = bout.samples() / window_length;
  std::vector<Eigen::MatrixXd> windows;
  windows.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index w = 0; w < count; ++w) windows.emplace_back(bout.signal.middleRows(w * window_length, window_length));
  return windows;
}

std::array<int, 5> percentile_positions(int n) {
  if (n < 1) throw std::invalid_argument("percentile positions need a nonempty window");
  std::array<int, 5> positions{};
  for (std::size_t i = 0; i < kPercentileLevels.size(); ++i) {
    const int rank = (kPercentileLevels[i] * n + 99) / 100;  // integer ceil
    positions[i] = std::clamp(rank, 1, n);
  }
  return positions;
}

std::array<double, 5> percentile_points(std::span<const double> window_axis) {
  const int n = static_cast<int>(window_axis.size());
  std::vector<double> sorted(window_axis.begin(), window_axis.end());
  std::sort(sorted.begin(), sorted.end());
  const auto positions = percentile_positions(n);
  std::array<double, 5> out{};
  for (std::size_t i = 0; i < positions.size(); ++i) out[i] = sorted[static_cast<std::size_t>(positions[i] - 1)];
  return out;
}

double lag1_autocorrelation(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("lag-1 autocorrelation needs at least 2 samples");
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= static_cast<double>(n);

  double denom = 0.0;
  double numer = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double d = x[t] - mean;
    denom += d * d;
    if (t + 1 < n) numer += d * (x[t + 1] - mean);
  }
  if (denom == 0.0) return 0.0;
  return std::clamp(numer / denom, -1.0, 1.0);
}

Eigen::VectorXd window_features(const Eigen::MatrixXd& window) {
  const Eigen::Index axes = window.cols();
  Eigen::VectorXd out(axes * kFeaturesPerAxis);
  std::vector<double> column(static_cast<std::size_t>(window.rows()));
  for (Eigen::Index a = 0; a < axes; ++a) {
    for (Eigen::Index t = 0; t < window.rows(); ++t) column[static_cast<std::size_t>(t)] = window(t, a);
    const auto pct = percentile_points(column);
    const Eigen::Index base = a * kFeaturesPerAxis;
    for (std::size_t i = 0; i < pct.size(); ++i) out(base + static_cast<Eigen::Index>(i)) = pct[i];
    out(base + 5) = lag1_autocorrelation(column);
  }
  return out;
}

BoutFeatures featurize_bout(const Bout& bout, int window_length) {
  const auto windows = segment(bout, window_length);
  BoutFeatures out;
  out.bout_id = bout.bout_id;
  out.windows.resize(static_cast<Eigen::Index>(windows.size()), bout.axes() * kFeaturesPerAxis);
  for (std::size_t w = 0; w < windows.size(); ++w)
    out.windows.row(static_cast<Eigen::Index>(w)) = window_features(windows[w]).transpose();
  return out;
}

std::vector<BoutFeatures> featurize(const Corpus& corpus, int window_length) {
  std::vector<BoutFeatures> out;
  out.reserve(corpus.bouts.size());
  for (const auto& bout : corpus.bouts) out.push_back(featurize_bout(bout, window_length));
  return out;
}

Eigen::MatrixXd stack_windows(const std::vector<BoutFeatures>& features, const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> selected = indices;
  if (selected.empty()) {
    selected.resize(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) selected[i] = i;
  }
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto i : selected) {
    rows += features.at(i).window_count();
    cols = features[i].windows.cols();
  }
  Eigen::MatrixXd out(rows, cols);
  Eigen::Index r = 0;
  for (const auto i : selected) {
    const auto& w = features[i].windows;
    if (w.cols() != cols) throw std::invalid_argument("inconsistent feature width across bouts");
    out.middleRows(r, w.rows()) = w;
    r += w.rows();
  }
  return out;
}

void write_feature_csv(const std::vector<BoutFeatures>& features, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error(file.string() + ": cannot write file");
  const Eigen::Index width = features.empty() ? 0 : features.front().windows.cols();
  out << "bout_id,window_index";
  for (Eigen::Index j = 0; j < width; ++j) out << ",f" << (j + 1);
  out << '\n';
  for (const auto& bout : features) {
    for (Eigen::Index w = 0; w < bout.window_count(); ++w) {
      out << bout.bout_id << ',' << w;
      for (Eigen::Index j = 0; j < bout.windows.cols(); ++j) out << ',' << detail::format_double(bout.windows(w, j));
      out << '\n';
    }
  }
}

}  // namespace summertime
