#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace summertime {

inline constexpr int kDefaultWindowLength = 12;

/// Raised for any malformed or inconsistent corpus on disk or in memory.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for invalid synthetic-generator settings.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The five intensity categories used by the child activity study.
std::vector<std::string> default_label_set();

/// One contiguous recording of a single activity by one subject.
///
/// `signal` holds counts at one sample per second, one column per axis.
/// `targets` holds one MET value per disjoint window (empty when the corpus
/// carries no energy-expenditure measurements).
struct Bout {
  std::string bout_id;
  std::string subject_id;
  std::size_t label = 0;  // index into Corpus::label_set
  Eigen::MatrixXd signal;
  std::vector<double> targets;

  Eigen::Index samples() const { return signal.rows(); }
  Eigen::Index axes() const { return signal.cols(); }
  std::size_t window_count(int window_length) const {
    return static_cast<std::size_t>(signal.rows() / window_length);
  }
  bool has_targets() const { return !targets.empty(); }

  bool operator==(const Bout& other) const;
};

struct Corpus {
  std::vector<Bout> bouts;
  int axis_count = 0;
  std::vector<std::string> label_set;
  std::string provenance;
  std::optional<std::uint64_t> seed;

  std::size_t label_index(const std::string& label) const;
  std::vector<std::string> subjects() const;  // distinct, in first-seen order
  bool has_targets() const;

  /// Throws CorpusError naming the first violated invariant.
  void validate(int window_length = kDefaultWindowLength) const;

  bool operator==(const Corpus& other) const = default;
};

/// Reads a corpus. `path` is either a manifest CSV or a directory holding
/// `manifest.csv`. An optional `labels.txt` beside the manifest fixes the
/// label order; otherwise the default five-category set is used.
Corpus load_corpus(const std::filesystem::path& path, int window_length = kDefaultWindowLength);

/// Writes `manifest.csv`, `labels.txt`, `provenance.txt` and one signal CSV
/// per bout under `dir`. MET targets are written on each window's first row.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir,
                 int window_length = kDefaultWindowLength);

/// Count-generating regime for a window. Samples follow
/// mean + amplitude * sin(2*pi*t/period + phase) + sd * noise, floored at 0
/// and rounded to whole counts, then scaled per axis and per subject.
struct MotifRegime {
  std::string name;
  double mean = 0.0;
  double sd = 1.0;
  double amplitude = 0.0;
  double period = 4.0;
};

/// Linear ground truth: met = intercept + slope * (window mean count / 100) + N(0, noise_sd).
struct MetRule {
  double intercept = 1.0;
  double slope = 0.0;
  double noise_sd = 0.0;
};

struct ClassRegime {
  std::string label;
  std::vector<double> motif_weights;  // one per motif, sums to 1
  MetRule met;
};

struct SyntheticConfig {
  int subjects = 10;
  int bouts_per_class = 4;  // per subject
  int axis_count = 3;
  int window_length = kDefaultWindowLength;
  int min_windows = 5;
  int max_windows = 20;
  std::vector<double> axis_scales{1.0, 0.7, 0.5};
  double subject_scale_spread = 0.10;  // subject count scale ~ U(1 - s, 1 + s)
  std::vector<MotifRegime> motifs;
  std::vector<ClassRegime> classes;

  /// Five overlapping activity categories built from six motifs.
  static SyntheticConfig standard();

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// Expected per-sample count on axis 0 for a class, averaged over subjects.
  double expected_class_mean(std::size_t class_index) const;
};

Corpus generate_synthetic(const SyntheticConfig& config, std::uint64_t seed);

struct Fold {
  std::size_t index = 0;
  std::string test_subject;
  Corpus train;
  Corpus test;
};

/// Leave-one-subject-out split, one fold per distinct subject in first-seen order.
std::vector<Fold> loso_folds(const Corpus& corpus);

}  // namespace summertime
