#pragma once

// Published results of the original child activity study. They were obtained
// on a private dataset, so they are rendered next to our own numbers for
// context and never used as pass/fail targets.

#include <string>
#include <vector>

#include <json.hpp>

namespace summertime::reference {

struct WindowCount {
  std::string category;
  std::string activity;
  int windows = 0;
};

/// Category order used by every table below.
const std::vector<std::string>& categories();

/// 12-second window counts per activity.
const std::vector<WindowCount>& window_counts_by_activity();

/// Window counts per category: Sed, LHH, MtV, Walk, Run.
const std::vector<int>& window_counts_by_category();

/// Confusion counts of the summary-based classifier (rows actual, columns predicted).
const std::vector<std::vector<int>>& summary_classifier_confusion_counts();

/// Same classifier as row percentages; recall on the diagonal.
const std::vector<std::vector<double>>& summary_classifier_confusion_pct();

/// Per-window network with majority voting, row percentages.
const std::vector<std::vector<double>>& voting_classifier_confusion_pct();

struct RmseRow {
  std::string method;
  std::vector<double> per_class;  // Sed, LHH, MtV, Walk, Run
  double overall = 0.0;
};

/// MET RMSE per regression method.
const std::vector<RmseRow>& met_rmse_by_method();

/// Everything above as one JSON panel, values unchanged.
nlohmann::json panel();

}  // namespace summertime::reference
