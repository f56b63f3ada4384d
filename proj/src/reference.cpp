#include "summertime/reference.hpp"

namespace summertime::reference {

const std::vector<std::string>& categories() {
  static const std::vector<std::string> kCategories{"Sed", "LHH", "MtV", "Walk", "Run"};
  return kCategories;
}

const std::vector<WindowCount>& window_counts_by_activity() {
  static const std::vector<WindowCount> kCounts{
      {"Sed", "Lying Rest", 14755},        {"Sed", "Playing Computer Games", 860},
      {"Sed", "Reading", 860},             {"LHH", "Light Cleaning", 840},
      {"LHH", "Sweeping", 865},            {"LHH", "Workout Video", 800},
      {"MtV", "Wall Ball", 845},           {"MtV", "Playing Catch", 725},
      {"Walk", "Brisk Track Walking", 1210}, {"Walk", "Slow Track Walking", 1000},
      {"Walk", "Walking Course", 1565},    {"Run", "Track Running", 485},
  };
  return kCounts;
}

const std::vector<int>& window_counts_by_category() {
  static const std::vector<int> kCounts{16475, 2505, 1570, 3775, 485};
  return kCounts;
}

const std::vector<std::vector<int>>& summary_classifier_confusion_counts() {
  static const std::vector<std::vector<int>> kCounts{
      {16455, 20, 0, 0, 0},
      {90, 2085, 310, 20, 0},
      {20, 240, 1290, 20, 0},
      {25, 0, 25, 3685, 40},
      {0, 0, 0, 135, 350},
  };
  return kCounts;
}

const std::vector<std::vector<double>>& summary_classifier_confusion_pct() {
  static const std::vector<std::vector<double>> kPct{
      {99.88, 0.12, 0.00, 0.00, 0.00},
      {3.59, 83.23, 12.38, 0.80, 0.00},
      {1.27, 15.29, 82.17, 1.27, 0.00},
      {0.66, 0.00, 0.66, 97.62, 1.06},
      {0.00, 0.00, 0.00, 27.84, 72.16},
  };
  return kPct;
}

const std::vector<std::vector<double>>& voting_classifier_confusion_pct() {
  static const std::vector<std::vector<double>> kPct{
      {99.64, 0.36, 0.00, 0.00, 0.00},
      {0.00, 87.82, 6.59, 3.99, 1.60},
      {0.00, 68.15, 31.85, 0.00, 0.00},
      {0.66, 4.24, 0.00, 85.56, 9.54},
      {0.00, 16.49, 0.00, 75.26, 8.25},
  };
  return kPct;
}

const std::vector<RmseRow>& met_rmse_by_method() {
  static const std::vector<RmseRow> kRows{
      {"linreg_local", {2.0105, 2.7549, 3.3990, 2.6670, 4.1593}, 2.3690},
      {"fivereg_ann", {0.1787, 1.2631, 1.6737, 1.3500, 1.7201}, 0.8346},
      {"ann_regression", {0.3999, 2.2715, 2.7789, 2.1308, 3.6695}, 1.4402},
      {"summertime", {0.1741, 1.0406, 1.4231, 1.2268, 1.2693}, 0.7206},
  };
  return kRows;
}

nlohmann::json panel() {
  nlohmann::json j;
  j["source"] = "published results on the original child activity dataset (reference only)";
  j["categories"] = categories();
  j["window_counts_by_category"] = window_counts_by_category();
  j["window_counts_by_activity"] = nlohmann::json::array();
  for (const auto& w : window_counts_by_activity())
    j["window_counts_by_activity"].push_back({{"category", w.category}, {"activity", w.activity}, {"windows", w.windows}});
  j["summary_classifier_confusion_counts"] = summary_classifier_confusion_counts();
  j["summary_classifier_confusion_pct"] = summary_classifier_confusion_pct();
  j["voting_classifier_confusion_pct"] = voting_classifier_confusion_pct();

  std::vector<double> summary_recall;
  std::vector<double> voting_recall;
  for (std::size_t i = 0; i < categories().size(); ++i) {
    summary_recall.push_back(summary_classifier_confusion_pct()[i][i]);
    voting_recall.push_back(voting_classifier_confusion_pct()[i][i]);
  }
  j["recall_pct"] = {{"summertime", summary_recall}, {"ann_voting", voting_recall}};

  j["met_rmse"] = nlohmann::json::array();
  for (const auto& row : met_rmse_by_method())
    j["met_rmse"].push_back({{"method", row.method}, {"per_class", row.per_class}, {"overall", row.overall}});
  return j;
}

}  // namespace summertime::reference
