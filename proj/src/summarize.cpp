#include "summertime/summarize.hpp"

#include <fstream>
#include <stdexcept>

#include "text_io.hpp"

namespace summertime {

SummaryVector summary_from_assignments(const std::string& bout_id, std::span<const std::size_t> assignments,
                                       std::size_t cluster_count) {
  if (assignments.empty()) throw std::invalid_argument("bout '" + bout_id + "': bout has no windows");
  std::vector<std::size_t> counts(cluster_count, 0);
  for (const auto a : assignments) {
    if (a >= cluster_count) throw std::out_of_range("cluster index out of range");
    ++counts[a];
  }
  SummaryVector out{bout_id, Eigen::VectorXd(static_cast<Eigen::Index>(cluster_count)), assignments.size()};
  const double total = static_cast<double>(assignments.size());
  for (std::size_t k = 0; k < cluster_count; ++k)
    out.ratios(static_cast<Eigen::Index>(k)) = static_cast<double>(counts[k]) / total;
  return out;
}

SummaryVector summarize_bout(const BoutFeatures& windows, const MixtureModel& model) {
  if (windows.window_count() == 0) throw std::invalid_argument("bout '" + windows.bout_id + "': bout has no windows");
  if (windows.windows.cols() != model.dim())
    throw std::invalid_argument("bout '" + windows.bout_id + "': feature width " +
                                std::to_string(windows.windows.cols()) + " does not match model dimension " +
                                std::to_string(model.dim()));
  std::vector<std::size_t> assignments;
  assignments.reserve(static_cast<std::size_t>(windows.window_count()));
  for (Eigen::Index w = 0; w < windows.window_count(); ++w)
    assignments.push_back(assign(model, windows.windows.row(w).transpose()));
  return summary_from_assignments(windows.bout_id, assignments, static_cast<std::size_t>(model.k_effective()));
}

std::vector<SummaryVector> summarize_corpus(const std::vector<BoutFeatures>& features, const MixtureModel& model) {
  std::vector<SummaryVector> out;
  out.reserve(features.size());
  for (const auto& bout : features) out.push_back(summarize_bout(bout, model));
  return out;
}

void write_summary_csv(const std::vector<SummaryVector>& summaries, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error(file.string() + ": cannot write file");
  const Eigen::Index k = summaries.empty() ? 0 : summaries.front().ratios.size();
  out << "bout_id,window_count";
  for (Eigen::Index i = 0; i < k; ++i) out << ",r" << (i + 1);
  out << '\n';
  for (const auto& s : summaries) {
    out << s.bout_id << ',' << s.window_count;
    for (Eigen::Index i = 0; i < s.ratios.size(); ++i) out << ',' << detail::format_double(s.ratios(i));
    out << '\n';
  }
}

std::vector<SummaryVector> read_summary_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error(file.string() + ": cannot open file");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(file.string() + ": missing header");
  const auto width = detail::split_csv(line).size();
  if (width < 3) throw std::runtime_error(file.string() + ": header needs at least one ratio column");

  std::vector<SummaryVector> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != width) throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": wrong field count");
    SummaryVector s;
    s.bout_id = std::string(fields[0]);
    const auto count = detail::parse_double(fields[1]);
    if (!count) throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": bad window count");
    s.window_count = static_cast<std::size_t>(*count);
    s.ratios.resize(static_cast<Eigen::Index>(width - 2));
    for (std::size_t i = 2; i < width; ++i) {
      const auto v = detail::parse_double(fields[i]);
      if (!v) throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": bad ratio");
      s.ratios(static_cast<Eigen::Index>(i - 2)) = *v;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace summertime
