#include "summertime/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "text_io.hpp"

namespace summertime {

namespace fs = std::filesystem;
using detail::format_double;
using detail::parse_double;
using detail::split_csv;
using detail::trim;

std::vector<std::string> default_label_set() { return {"Sed", "LHH", "MtV", "Walk", "Run"}; }

bool Bout::operator==(const Bout& other) const {
  return bout_id == other.bout_id && subject_id == other.subject_id && label == other.label &&
         signal.rows() == other.signal.rows() && signal.cols() == other.signal.cols() &&
         signal == other.signal && targets == other.targets;
}

std::size_t Corpus::label_index(const std::string& label) const {
  const auto it = std::find(label_set.begin(), label_set.end(), label);
  if (it == label_set.end()) throw CorpusError("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - label_set.begin());
}

std::vector<std::string> Corpus::subjects() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& bout : bouts)
    if (seen.insert(bout.subject_id).second) out.push_back(bout.subject_id);
  return out;
}

bool Corpus::has_targets() const {
  return !bouts.empty() &&
         std::all_of(bouts.begin(), bouts.end(), [](const Bout& b) { return b.has_targets(); });
}

void Corpus::validate(int window_length) const {
  if (window_length < 2) throw CorpusError("window length must be at least 2");
  if (axis_count < 1) throw CorpusError("axis count must be at least 1");
  if (label_set.size() < 2) throw CorpusError("label set needs at least 2 labels");
  std::set<std::string> labels(label_set.begin(), label_set.end());
  if (labels.size() != label_set.size()) throw CorpusError("label set has duplicates");

  std::unordered_set<std::string> ids;
  for (const auto& bout : bouts) {
    const std::string where = "bout '" + bout.bout_id + "': ";
    if (bout.bout_id.empty()) throw CorpusError("bout with empty id");
    if (!ids.insert(bout.bout_id).second) throw CorpusError(where + "duplicate bout id");
    if (bout.subject_id.empty()) throw CorpusError(where + "empty subject id");
    if (bout.label >= label_set.size()) throw CorpusError(where + "label index out of range");
    if (bout.axes() != axis_count)
      throw CorpusError(where + "inconsistent axis count (" + std::to_string(bout.axes()) +
                        " vs " + std::to_string(axis_count) + ")");
    if (bout.samples() < window_length) throw CorpusError(where + "bout shorter than one window");
    if (!bout.signal.allFinite()) throw CorpusError(where + "non-finite count");
    if (bout.has_targets()) {
      if (bout.targets.size() != bout.window_count(window_length))
        throw CorpusError(where + "target count does not match window count");
      for (const double t : bout.targets)
        if (!std::isfinite(t) || t < 0.0) throw CorpusError(where + "MET target must be finite and nonnegative");
    }
  }
}

// ---------------------------------------------------------------------------
// Reading

namespace {

std::string located(const fs::path& file, std::size_t line, const std::string& msg) {
  return file.string() + ":" + std::to_string(line) + ": " + msg;
}

std::vector<std::string> read_lines(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw CorpusError(file.string() + ": cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

Bout read_bout_signal(const fs::path& file, int window_length) {
  const auto lines = read_lines(file);
  if (lines.empty()) throw CorpusError(located(file, 1, "missing header"));

  const auto header = split_csv(lines[0]);
  if (header.size() < 2 || trim(header[0]) != "t")
    throw CorpusError(located(file, 1, "header must start with 't,axis1'"));
  const bool has_met = trim(header.back()) == "met";
  const std::size_t axes = header.size() - 1 - (has_met ? 1 : 0);
  if (axes < 1) throw CorpusError(located(file, 1, "no axis columns"));
  for (std::size_t a = 0; a < axes; ++a) {
    if (trim(header[a + 1]) != "axis" + std::to_string(a + 1))
      throw CorpusError(located(file, 1, "expected column 'axis" + std::to_string(a + 1) + "'"));
  }

  std::size_t n = 0;
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (!trim(lines[i]).empty()) ++n;

  Bout bout;
  bout.signal.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(axes));
  std::vector<std::optional<double>> met(n);

  Eigen::Index row = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto fields = split_csv(lines[i]);
    if (fields.size() != header.size())
      throw CorpusError(located(file, i + 1, "expected " + std::to_string(header.size()) +
                                                 " fields, found " + std::to_string(fields.size())));
    if (!parse_double(fields[0])) throw CorpusError(located(file, i + 1, "non-numeric value in column 't'"));
    for (std::size_t a = 0; a < axes; ++a) {
      const auto v = parse_double(fields[a + 1]);
      if (!v) throw CorpusError(located(file, i + 1, "non-numeric count in column 'axis" + std::to_string(a + 1) + "'"));
      if (!std::isfinite(*v)) throw CorpusError(located(file, i + 1, "non-finite count"));
      bout.signal(row, static_cast<Eigen::Index>(a)) = *v;
    }
    if (has_met && !trim(fields.back()).empty()) {
      const auto v = parse_double(fields.back());
      if (!v || !std::isfinite(*v) || *v < 0.0)
        throw CorpusError(located(file, i + 1, "MET value must be a finite nonnegative number"));
      met[static_cast<std::size_t>(row)] = *v;
    }
    ++row;
  }

  if (bout.samples() < window_length) throw CorpusError(file.string() + ": bout shorter than one window");

  if (has_met) {
    const auto windows = bout.window_count(window_length);
    bout.targets.resize(windows);
    const auto len = static_cast<std::size_t>(window_length);
    for (std::size_t w = 0; w < windows; ++w) {
      std::optional<double> value;
      for (std::size_t r = w * len; r < (w + 1) * len; ++r) {
        if (!met[r]) continue;
        if (value && *value != *met[r])
          throw CorpusError(located(file, r + 2, "conflicting MET values within window " + std::to_string(w)));
        value = met[r];
      }
      if (!value) throw CorpusError(located(file, w * len + 2, "window " + std::to_string(w) + " has no MET value"));
      bout.targets[w] = *value;
    }
  }
  return bout;
}

}  // namespace

Corpus load_corpus(const fs::path& path, int window_length) {
  const fs::path manifest = fs::is_directory(path) ? path / "manifest.csv" : path;
  const fs::path base = manifest.parent_path();
  const auto lines = read_lines(manifest);

  Corpus corpus;
  corpus.label_set = default_label_set();
  if (fs::exists(base / "labels.txt")) {
    corpus.label_set.clear();
    for (const auto& line : read_lines(base / "labels.txt"))
      if (!trim(line).empty()) corpus.label_set.emplace_back(trim(line));
  }
  if (fs::exists(base / "provenance.txt")) {
    for (const auto& line : read_lines(base / "provenance.txt")) {
      if (line.rfind("seed: ", 0) == 0) {
        corpus.seed = std::stoull(line.substr(6));
      } else if (!line.empty()) {
        corpus.provenance += (corpus.provenance.empty() ? "" : "\n") + line;
      }
    }
  }

  if (lines.empty() || trim(lines[0]) != "bout_id,subject_id,label,file")
    throw CorpusError(located(manifest, 1, "header must be 'bout_id,subject_id,label,file'"));

  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto fields = split_csv(lines[i]);
    if (fields.size() != 4) throw CorpusError(located(manifest, i + 1, "expected 4 fields"));
    for (const auto& f : fields)
      if (trim(f).empty()) throw CorpusError(located(manifest, i + 1, "empty field"));

    const std::string label(trim(fields[2]));
    const auto it = std::find(corpus.label_set.begin(), corpus.label_set.end(), label);
    if (it == corpus.label_set.end())
      throw CorpusError(located(manifest, i + 1, "unknown label '" + label + "'"));

    const fs::path signal_file = base / std::string(trim(fields[3]));
    Bout bout = read_bout_signal(signal_file, window_length);
    bout.bout_id = std::string(trim(fields[0]));
    bout.subject_id = std::string(trim(fields[1]));
    bout.label = static_cast<std::size_t>(it - corpus.label_set.begin());

    if (corpus.axis_count == 0) corpus.axis_count = static_cast<int>(bout.axes());
    if (bout.axes() != corpus.axis_count)
      throw CorpusError(located(manifest, i + 1, "inconsistent axis count in '" + signal_file.string() + "'"));
    corpus.bouts.push_back(std::move(bout));
  }

  try {
    corpus.validate(window_length);
  } catch (const CorpusError& e) {
    throw CorpusError(manifest.string() + ": " + e.what());
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Writing

void save_corpus(const Corpus& corpus, const fs::path& dir, int window_length) {
  corpus.validate(window_length);
  std::error_code ec;
  fs::create_directories(dir / "bouts", ec);
  if (ec) throw CorpusError(dir.string() + ": cannot create directory: " + ec.message());

  auto open = [](const fs::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw CorpusError(file.string() + ": cannot write file");
    return out;
  };

  {
    auto out = open(dir / "labels.txt");
    for (const auto& l : corpus.label_set) out << l << '\n';
  }
  {
    auto out = open(dir / "provenance.txt");
    if (!corpus.provenance.empty()) out << corpus.provenance << '\n';
    if (corpus.seed) out << "seed: " << *corpus.seed << '\n';
  }

  auto manifest = open(dir / "manifest.csv");
  manifest << "bout_id,subject_id,label,file\n";
  const int width = static_cast<int>(std::to_string(corpus.bouts.size()).size());
  for (std::size_t i = 0; i < corpus.bouts.size(); ++i) {
    const auto& bout = corpus.bouts[i];
    std::string index = std::to_string(i);
    index.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(index.size()))), '0');
    const std::string rel = "bouts/bout_" + index + ".csv";
    manifest << bout.bout_id << ',' << bout.subject_id << ',' << corpus.label_set[bout.label] << ',' << rel << '\n';

    std::ostringstream body;
    body << 't';
    for (Eigen::Index a = 0; a < bout.axes(); ++a) body << ",axis" << (a + 1);
    if (bout.has_targets()) body << ",met";
    body << '\n';
    for (Eigen::Index t = 0; t < bout.samples(); ++t) {
      body << t;
      for (Eigen::Index a = 0; a < bout.axes(); ++a) body << ',' << format_double(bout.signal(t, a));
      if (bout.has_targets()) {
        body << ',';
        const auto w = static_cast<std::size_t>(t / window_length);
        if (t % window_length == 0 && w < bout.targets.size()) body << format_double(bout.targets[w]);
      }
      body << '\n';
    }
    auto out = open(dir / rel);
    out << body.str();
  }
}

// ---------------------------------------------------------------------------
// Synthetic corpora

SyntheticConfig SyntheticConfig::standard() {
  SyntheticConfig c;
  c.motifs = {
      {"rest", 6.0, 1.5, 0.0, 4.0},         {"fidget", 45.0, 8.0, 4.0, 6.0},
      {"chores", 190.0, 40.0, 35.0, 8.0},   {"vigorous", 420.0, 80.0, 110.0, 5.0},
      {"walk", 620.0, 60.0, 140.0, 3.0},    {"run", 920.0, 90.0, 230.0, 2.0},
  };
  //               rest  fidget chores vigor walk  run
  c.classes = {
      {"Sed", {0.85, 0.15, 0.00, 0.00, 0.00, 0.00}, {1.2, 0.05, 0.10}},
      {"LHH", {0.00, 0.35, 0.50, 0.15, 0.00, 0.00}, {2.0, 0.45, 0.30}},
      {"MtV", {0.00, 0.00, 0.35, 0.55, 0.10, 0.00}, {3.0, 0.50, 0.50}},
      {"Walk", {0.00, 0.00, 0.00, 0.10, 0.80, 0.10}, {2.2, 0.55, 0.40}},
      {"Run", {0.00, 0.00, 0.00, 0.00, 0.45, 0.55}, {2.5, 0.80, 0.60}},
  };
  return c;
}

void SyntheticConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) { throw ConfigError(key + ": " + why); };
  if (subjects < 2) fail("subjects", "must be at least 2");
  if (bouts_per_class < 1) fail("bouts_per_class", "must be positive");
  if (axis_count < 1) fail("axis_count", "must be positive");
  if (window_length < 2) fail("window_length", "must be at least 2");
  if (min_windows < 1) fail("min_windows", "must be positive");
  if (max_windows < min_windows) fail("max_windows", "must be at least min_windows");
  if (static_cast<int>(axis_scales.size()) != axis_count) fail("axis_scales", "needs one entry per axis");
  for (const double s : axis_scales)
    if (!(s > 0.0)) fail("axis_scales", "entries must be positive");
  if (!(subject_scale_spread >= 0.0 && subject_scale_spread < 1.0))
    fail("subject_scale_spread", "must lie in [0, 1)");
  if (motifs.empty()) fail("motifs", "at least one motif required");
  for (const auto& m : motifs) {
    if (!(m.mean > 0.0)) fail("motifs." + m.name + ".mean", "must be positive");
    if (!(m.sd > 0.0)) fail("motifs." + m.name + ".sd", "must be positive");
    if (!(m.amplitude >= 0.0)) fail("motifs." + m.name + ".amplitude", "must be nonnegative");
    if (!(m.period > 0.0)) fail("motifs." + m.name + ".period", "must be positive");
  }
  if (classes.size() < 2) fail("classes", "at least two classes required");
  for (const auto& c : classes) {
    if (c.motif_weights.size() != motifs.size()) fail("classes." + c.label + ".motif_weights", "one weight per motif");
    double total = 0.0;
    for (const double w : c.motif_weights) {
      if (!(w >= 0.0)) fail("classes." + c.label + ".motif_weights", "weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) fail("classes." + c.label + ".motif_weights", "weights must sum to 1");
    if (!(c.met.noise_sd >= 0.0)) fail("classes." + c.label + ".met.noise_sd", "must be nonnegative");
  }
}

double SyntheticConfig::expected_class_mean(std::size_t class_index) const {
  double mean = 0.0;
  const auto& weights = classes.at(class_index).motif_weights;
  for (std::size_t m = 0; m < motifs.size(); ++m) mean += weights[m] * motifs[m].mean;
  return mean * axis_scales.at(0);
}

Corpus generate_synthetic(const SyntheticConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> window_dist(config.min_windows, config.max_windows);
  std::uniform_int_distribution<int> remainder_dist(0, config.window_length - 1);
  std::uniform_real_distribution<double> scale_dist(1.0 - config.subject_scale_spread,
                                                    1.0 + config.subject_scale_spread);

  Corpus corpus;
  corpus.axis_count = config.axis_count;
  for (const auto& c : config.classes) corpus.label_set.push_back(c.label);
  corpus.seed = seed;
  corpus.provenance = "synthetic: " + std::to_string(config.subjects) + " subjects x " +
                      std::to_string(config.classes.size()) + " classes x " +
                      std::to_string(config.bouts_per_class) + " bouts";

  std::vector<std::discrete_distribution<std::size_t>> motif_dists;
  for (const auto& c : config.classes) motif_dists.emplace_back(c.motif_weights.begin(), c.motif_weights.end());

  const int subject_width = static_cast<int>(std::to_string(config.subjects).size());
  const auto L = config.window_length;
  for (int s = 0; s < config.subjects; ++s) {
    std::string subject = std::to_string(s + 1);
    subject.insert(0, static_cast<std::size_t>(std::max(0, subject_width - static_cast<int>(subject.size()))), '0');
    subject = "S" + subject;
    const double subject_scale = scale_dist(rng);

    for (std::size_t c = 0; c < config.classes.size(); ++c) {
      const auto& cls = config.classes[c];
      for (int b = 0; b < config.bouts_per_class; ++b) {
        const int windows = window_dist(rng);
        const int samples = windows * L + remainder_dist(rng);

        Bout bout;
        bout.bout_id = subject + "_" + cls.label + "_" + std::to_string(b + 1);
        bout.subject_id = subject;
        bout.label = c;
        bout.signal.resize(samples, config.axis_count);
        bout.targets.reserve(static_cast<std::size_t>(windows));

        std::size_t motif = 0;
        double phase = 0.0;
        for (int t = 0; t < samples; ++t) {
          if (t % L == 0) {
            motif = motif_dists[c](rng);
            phase = phase_dist(rng);
          }
          const auto& m = config.motifs[motif];
          for (int a = 0; a < config.axis_count; ++a) {
            const double raw = m.mean + m.amplitude * std::sin(2.0 * std::numbers::pi * t / m.period + phase) +
                               m.sd * noise(rng);
            const double scaled = std::max(0.0, raw) * config.axis_scales[static_cast<std::size_t>(a)] * subject_scale;
            bout.signal(t, a) = std::round(scaled);
          }
          if (t % L == L - 1 && t / L < windows) {
            const double mean_count = bout.signal.middleRows(t - L + 1, L).mean();
            const double met = cls.met.intercept + cls.met.slope * mean_count / 100.0 + cls.met.noise_sd * noise(rng);
            bout.targets.push_back(std::max(0.0, met));
          }
        }
        corpus.bouts.push_back(std::move(bout));
      }
    }
  }
  corpus.validate(L);
  return corpus;
}

// ---------------------------------------------------------------------------

std::vector<Fold> loso_folds(const Corpus& corpus) {
  const auto subjects = corpus.subjects();
  if (subjects.size() < 2) throw CorpusError("LOSO requires >=2 subjects");

  std::vector<Fold> folds;
  folds.reserve(subjects.size());
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    Fold fold;
    fold.index = i;
    fold.test_subject = subjects[i];
    for (Corpus* part : {&fold.train, &fold.test}) {
      part->axis_count = corpus.axis_count;
      part->label_set = corpus.label_set;
      part->provenance = corpus.provenance;
      part->seed = corpus.seed;
    }
    for (const auto& bout : corpus.bouts)
      (bout.subject_id == subjects[i] ? fold.test : fold.train).bouts.push_back(bout);
    folds.push_back(std::move(fold));
  }
  return folds;
}

}  // namespace summertime
