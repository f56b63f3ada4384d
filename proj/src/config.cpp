#include "summertime/config.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "text_io.hpp"

namespace summertime {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> kKeys{
      {"data", {"window_length"}},
      {"synthetic", {"seed", "subjects", "bouts_per_class", "axis_count", "min_windows", "max_windows"}},
      {"gmm",
       {"k_max", "dirichlet_alpha0", "mean_scale_beta0", "wishart_dof_nu0", "tol", "max_iter", "n_init",
        "weight_floor", "covariance_floor", "seed"}},
      {"mlp", {"hidden_dim", "epochs", "learning_rate", "momentum", "l2", "batch_size", "seed"}},
      {"regression", {"mode", "aggregation"}},
      {"evaluation", {"methods", "parallel_folds"}},
      {"io", {"corpus", "out"}},
  };
  return kKeys;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(section);
    if (!s) return std::nullopt;
    const auto v = s->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return std::string(detail::trim(*v));
  }

  template <typename T>
  void integer(const std::string& section, const std::string& key, T& out) const {
    const auto v = raw(section, key);
    if (!v) return;
    long long parsed = 0;
    const auto* end = v->data() + v->size();
    const auto r = std::from_chars(v->data(), end, parsed);
    if (v->empty() || r.ec != std::errc() || r.ptr != end || parsed < 0 ||
        static_cast<unsigned long long>(parsed) > static_cast<unsigned long long>(std::numeric_limits<T>::max()))
      throw ConfigError(section + "." + key + ": expected a nonnegative integer, got '" + *v + "'");
    out = static_cast<T>(parsed);
  }

  void real(const std::string& section, const std::string& key, double& out) const {
    const auto v = raw(section, key);
    if (!v) return;
    const auto parsed = detail::parse_double(*v);
    if (!parsed) throw ConfigError(section + "." + key + ": expected a number, got '" + *v + "'");
    out = *parsed;
  }

  void optional_real(const std::string& section, const std::string& key, std::optional<double>& out) const {
    if (!raw(section, key)) return;
    double value = 0.0;
    real(section, key, value);
    out = value;
  }

 private:
  const pt::ptree& tree_;
};

void reject_unknown(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (body.empty()) throw ConfigError(section + ": key outside any section");
      throw ConfigError(section + ": unknown section");
    }
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ConfigError(section + "." + key + ": unknown key");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) { throw ConfigError(key + ": " + why); };
  const auto& e = evaluation;
  if (e.window_length < 2) fail("data.window_length", "must be at least 2");
  if (e.gmm_prior.k_max < 1) fail("gmm.k_max", "must be at least 1");
  if (!(e.gmm_prior.dirichlet_alpha0 > 0.0)) fail("gmm.dirichlet_alpha0", "must be positive");
  if (!(e.gmm_prior.mean_scale_beta0 > 0.0)) fail("gmm.mean_scale_beta0", "must be positive");
  if (e.gmm_prior.wishart_dof_nu0 && !(*e.gmm_prior.wishart_dof_nu0 > 0.0)) fail("gmm.wishart_dof_nu0", "must be positive");
  if (!(e.gmm_options.tol > 0.0)) fail("gmm.tol", "must be positive");
  if (e.gmm_options.max_iter < 1) fail("gmm.max_iter", "must be positive");
  if (e.gmm_options.n_init < 1) fail("gmm.n_init", "must be positive");
  if (e.gmm_options.weight_floor && !(*e.gmm_options.weight_floor >= 0.0 && *e.gmm_options.weight_floor < 1.0))
    fail("gmm.weight_floor", "must lie in [0, 1)");
  if (!(e.gmm_options.covariance_floor > 0.0)) fail("gmm.covariance_floor", "must be positive");
  if (e.mlp.hidden_dim < 1) fail("mlp.hidden_dim", "must be positive");
  if (e.mlp.epochs < 1) fail("mlp.epochs", "must be positive");
  if (!(e.mlp.learning_rate > 0.0)) fail("mlp.learning_rate", "must be positive");
  if (!(e.mlp.momentum >= 0.0 && e.mlp.momentum < 1.0)) fail("mlp.momentum", "must lie in [0, 1)");
  if (!(e.mlp.l2 >= 0.0)) fail("mlp.l2", "must be nonnegative");
  if (e.mlp.batch_size < 1) fail("mlp.batch_size", "must be positive");
  if (e.parallel_folds < 1) fail("evaluation.parallel_folds", "must be positive");
  if (methods.empty()) fail("evaluation.methods", "at least one method required");
  try {
    synthetic.validate();
  } catch (const ConfigError& err) {
    throw ConfigError(std::string("synthetic.") + err.what());
  }
  if (synthetic.window_length != e.window_length) fail("synthetic.window_length", "must equal data.window_length");
}

PipelineConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& err) {
    throw ConfigError(source + ":" + std::to_string(err.line()) + ": " + err.message());
  }
  reject_unknown(tree);

  PipelineConfig c;
  const Reader r(tree);
  auto& e = c.evaluation;
  r.integer("data", "window_length", e.window_length);
  c.synthetic.window_length = e.window_length;

  r.integer("synthetic", "seed", c.synthetic_seed);
  r.integer("synthetic", "subjects", c.synthetic.subjects);
  r.integer("synthetic", "bouts_per_class", c.synthetic.bouts_per_class);
  r.integer("synthetic", "axis_count", c.synthetic.axis_count);
  r.integer("synthetic", "min_windows", c.synthetic.min_windows);
  r.integer("synthetic", "max_windows", c.synthetic.max_windows);
  if (c.synthetic.axis_count != static_cast<int>(c.synthetic.axis_scales.size())) {
    // Extra axes repeat the last scale; fewer axes truncate.
    const double last = c.synthetic.axis_scales.empty() ? 1.0 : c.synthetic.axis_scales.back();
    c.synthetic.axis_scales.resize(static_cast<std::size_t>(std::max(0, c.synthetic.axis_count)), last);
  }

  r.integer("gmm", "k_max", e.gmm_prior.k_max);
  r.real("gmm", "dirichlet_alpha0", e.gmm_prior.dirichlet_alpha0);
  r.real("gmm", "mean_scale_beta0", e.gmm_prior.mean_scale_beta0);
  r.optional_real("gmm", "wishart_dof_nu0", e.gmm_prior.wishart_dof_nu0);
  r.real("gmm", "tol", e.gmm_options.tol);
  r.integer("gmm", "max_iter", e.gmm_options.max_iter);
  r.integer("gmm", "n_init", e.gmm_options.n_init);
  r.optional_real("gmm", "weight_floor", e.gmm_options.weight_floor);
  r.real("gmm", "covariance_floor", e.gmm_options.covariance_floor);
  r.integer("gmm", "seed", e.gmm_options.seed);

  r.integer("mlp", "hidden_dim", e.mlp.hidden_dim);
  r.integer("mlp", "epochs", e.mlp.epochs);
  r.real("mlp", "learning_rate", e.mlp.learning_rate);
  r.real("mlp", "momentum", e.mlp.momentum);
  r.real("mlp", "l2", e.mlp.l2);
  r.integer("mlp", "batch_size", e.mlp.batch_size);
  r.integer("mlp", "seed", e.mlp.seed);

  if (const auto mode = r.raw("regression", "mode")) {
    if (*mode == "augmented")
      e.regression_mode = DesignMode::augmented;
    else if (*mode == "window_only")
      e.regression_mode = DesignMode::window_only;
    else
      throw ConfigError("regression.mode: expected 'augmented' or 'window_only', got '" + *mode + "'");
  }
  if (const auto agg = r.raw("regression", "aggregation")) {
    try {
      e.aggregation = parse_aggregation(*agg);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("regression.aggregation: ") + err.what());
    }
  }

  if (const auto methods = r.raw("evaluation", "methods")) {
    try {
      c.methods = parse_methods(*methods);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("evaluation.methods: ") + err.what());
    }
  }
  r.integer("evaluation", "parallel_folds", e.parallel_folds);

  if (const auto v = r.raw("io", "corpus")) c.corpus = *v;
  if (const auto v = r.raw("io", "out")) c.out = *v;

  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot open config file");
  return parse_config(in, file.string());
}

}  // namespace summertime
