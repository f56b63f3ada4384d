#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "summertime/features.hpp"
#include "summertime/vbgmm.hpp"

namespace summertime {

/// Fixed-length summary of one bout: the fraction of its windows assigned
/// to each mixture component.
struct SummaryVector {
  std::string bout_id;
  Eigen::VectorXd ratios;
  std::size_t window_count = 0;
};

/// Ratios from hard assignments; `cluster_count` is the summary width.
SummaryVector summary_from_assignments(const std::string& bout_id, std::span<const std::size_t> assignments,
                                       std::size_t cluster_count);

SummaryVector summarize_bout(const BoutFeatures& windows, const MixtureModel& model);

/// One summary per bout, in input order.
std::vector<SummaryVector> summarize_corpus(const std::vector<BoutFeatures>& features, const MixtureModel& model);

/// CSV `bout_id,window_count,r1..rK`.
void write_summary_csv(const std::vector<SummaryVector>& summaries, const std::filesystem::path& file);
std::vector<SummaryVector> read_summary_csv(const std::filesystem::path& file);

}  // namespace summertime
