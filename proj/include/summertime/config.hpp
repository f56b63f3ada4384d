#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "summertime/dataset.hpp"
#include "summertime/evaluate.hpp"

namespace summertime {

/// Everything a pipeline run needs. Loaded from an INI document:
///
///   [data]        window_length
///   [synthetic]   seed subjects bouts_per_class axis_count min_windows max_windows
///   [gmm]         k_max dirichlet_alpha0 mean_scale_beta0 wishart_dof_nu0 tol max_iter
///                 n_init weight_floor covariance_floor seed
///   [mlp]         hidden_dim epochs learning_rate momentum l2 batch_size seed
///   [regression]  mode aggregation
///   [evaluation]  methods parallel_folds
///   [io]          corpus out
///
/// Unknown sections or keys are rejected. A missing key keeps its default.
struct PipelineConfig {
  EvaluationConfig evaluation;
  std::vector<Method> methods = default_methods();
  SyntheticConfig synthetic = SyntheticConfig::standard();
  std::uint64_t synthetic_seed = 7;
  std::filesystem::path corpus;  // empty: generate the synthetic corpus
  std::filesystem::path out = "out";

  /// Throws ConfigError("section.key: why") for the first bad value.
  void validate() const;
};

PipelineConfig parse_config(std::istream& in, const std::string& source = "<config>");
PipelineConfig load_config(const std::filesystem::path& file);

}  // namespace summertime
