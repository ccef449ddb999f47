#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>

#include <CLI11.hpp>

#include "invk/data.hpp"
#include "invk/io.hpp"
#include "svg.hpp"

namespace invk::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Imaginary coefficient text: "", "+", "-" stand for +1, +1, -1.
std::optional<double> to_coefficient(std::string_view s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return to_double(s);
}

std::optional<Scalar> to_complex(std::string_view s) {
  s.remove_suffix(1);  // trailing i or j
  std::size_t split = std::string_view::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const auto im = to_coefficient(s);
    if (!im) return std::nullopt;
    return Scalar(0.0, *im);
  }
  const auto re = to_double(s.substr(0, split));
  const auto im = to_coefficient(s.substr(split));
  if (!re || !im) return std::nullopt;
  return Scalar(*re, *im);
}

ordered_json scalar_json(const Scalar& v, bool complex) {
  if (!complex) return v.real();
  return ordered_json::array({v.real(), v.imag()});
}

ordered_json point_json(const DataPoint& p) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < p.dim(); ++i) {
    out.push_back(scalar_json(p.coords[i], p.field == Field::Complex));
  }
  return out;
}

template <typename T>
ordered_json vector_json(const std::vector<T>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(v);
  return out;
}

ordered_json vector_json(const Eigen::VectorXd& values) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(values[i]);
  return out;
}

std::optional<double> sigma_of(const BaseKernelSpec& base) {
  if (const auto* g = std::get_if<Gaussian>(&base)) return g->sigma;
  if (const auto* l = std::get_if<Laplace>(&base)) return l->sigma;
  return std::nullopt;
}

ordered_json kernel_json(const KernelChoice& kernel) {
  ordered_json out;
  out["kernel"] = to_string(kernel.spec);
  if (const auto sigma = sigma_of(kernel.spec.base)) {
    out["sigma"] = *sigma;
    out["sigma_source"] = kernel.sigma_source;
  }
  return out;
}

void warn_chain(const KernelSpec& spec, std::ostream& err) {
  if (!spec.invariance) return;
  for (const auto& w : chain_warnings(*spec.invariance)) err << "warning: " << w << "\n";
}

fs::path ensure_dir(const std::string& dir) {
  fs::path path(dir.empty() ? "." : dir);
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw IoError("cannot create output directory '" + path.string() + "': " + ec.message());
  return path;
}

void write_json(const fs::path& path, const ordered_json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

Dataset load_input(const RunConfig& config) {
  if (config.input.empty()) throw SpecError("--input is required for '" + config.command + "'");
  return load_csv(config.input, config.labels);
}

// Points to draw: raw coordinates for real planar data, otherwise the
// first two embedding columns.
Eigen::MatrixXd scatter_points(const Dataset& data, const Eigen::MatrixXd& embedding) {
  if (data.dim() == 2 && data.field() == Field::Real) {
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(data.size()), 2);
    for (std::size_t i = 0; i < data.size(); ++i) {
      pts(static_cast<Eigen::Index>(i), 0) = data.points[i].coords[0].real();
      pts(static_cast<Eigen::Index>(i), 1) = data.points[i].coords[1].real();
    }
    return pts;
  }
  return embedding.leftCols(std::min<Eigen::Index>(embedding.cols(), 2));
}

ordered_json mixing_json(const MixingEstimate& mix) {
  ordered_json out;
  ordered_json dirs = ordered_json::array();
  for (const auto& d : mix.directions) dirs.push_back(ordered_json::array({d.x(), d.y()}));
  out["directions"] = dirs;
  out["counts"] = vector_json(mix.counts);
  if (mix.angle_errors_deg) {
    out["angle_errors_deg"] = vector_json(*mix.angle_errors_deg);
    out["max_angle_error_deg"] =
        mix.angle_errors_deg->empty()
            ? 0.0
            : *std::max_element(mix.angle_errors_deg->begin(), mix.angle_errors_deg->end());
  }
  if (mix.matched_truth) out["matched_truth"] = vector_json(*mix.matched_truth);
  return out;
}

struct RoleOutcome {
  ordered_json summary;
  std::optional<double> accuracy;
  std::optional<GramMatrix> gram;
  std::vector<int> labels;
  Eigen::MatrixXd embedding;
};

RoleOutcome run_role(const Experiment& exp, const KernelChoice& kernel, std::uint64_t seed) {
  RoleOutcome outcome;
  GramMatrix gram = build_gram(exp.data, kernel.spec);
  const ClusteringResult result = spectral_cluster(gram, exp.k, seed);
  outcome.summary = clustering_summary(kernel, exp.data, gram, result, exp.k);
  if (outcome.summary.contains("accuracy")) {
    outcome.accuracy = outcome.summary["accuracy"].get<double>();
  }
  if (!exp.truth_directions.empty()) {
    try {
      outcome.summary["mixing"] = mixing_json(estimate_mixing(exp.data, result.labels, exp.truth_directions));
    } catch (const Error& e) {
      outcome.summary["mixing"] = {{"error", e.what()}};
    }
  }
  outcome.labels = result.labels;
  outcome.embedding = result.embedding;
  outcome.gram = std::move(gram);
  return outcome;
}

}  // namespace

std::optional<InvarianceSpec> invariance_from_text(std::string_view text, std::optional<int> m) {
  const std::string key = lower(trim(text));
  if (key.empty() || key == "none") return std::nullopt;
  if (key == "rot") {
    if (!m) throw SpecError("--inv rot needs --m (or use rot:m)");
  }
  InvarianceSpec spec = parse_invariance(key == "rot" ? "rot:" + std::to_string(*m) : key);
  validate(spec);
  return spec;
}

BaseKernelSpec base_kernel_from_text(std::string_view name, double sigma, int degree) {
  const std::string key = lower(trim(name));
  BaseKernelSpec base;
  if (key == "linear") {
    base = Linear{};
  } else if (key == "gaussian") {
    base = Gaussian{sigma};
  } else if (key == "laplace") {
    base = Laplace{sigma};
  } else if (key == "poly") {
    base = PolyInhom{degree};
  } else if (key == "polyhom") {
    base = PolyHom{degree};
  } else {
    throw SpecError("unknown kernel '" + std::string(name) +
                    "' (expected linear, gaussian, laplace, poly or polyhom)");
  }
  validate(base);
  return base;
}

DataPoint parse_point(std::string_view text) {
  std::vector<Scalar> values;
  bool complex = false;
  std::size_t column = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view raw =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    ++column;
    const std::string_view token = trim(raw);
    if (token.empty()) throw ParseError(0, column, "component " + std::to_string(column) + " is empty");
    const char last = token.back();
    if (last == 'i' || last == 'j') {
      const auto v = to_complex(token);
      if (!v) {
        throw ParseError(0, column, "component " + std::to_string(column) + " '" +
                                        std::string(token) + "' is not a complex number");
      }
      values.push_back(*v);
      complex = true;
    } else {
      const auto v = to_double(token);
      if (!v) {
        throw ParseError(0, column, "component " + std::to_string(column) + " '" +
                                        std::string(token) + "' is not a finite number");
      }
      values.emplace_back(*v, 0.0);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (complex) return DataPoint::complex(values);
  std::vector<double> reals;
  reals.reserve(values.size());
  for (const auto& v : values) reals.push_back(v.real());
  return DataPoint::real(reals);
}

KernelChoice resolve_kernel(const RunConfig& config, const Dataset& data) {
  std::optional<InvarianceSpec> invariance = invariance_from_text(config.invariance, config.m);
  // Probe the family with a placeholder bandwidth before paying for the median.
  BaseKernelSpec probe = base_kernel_from_text(config.kernel, 1.0, config.degree);
  if (!is_radial(probe)) return {{probe, std::move(invariance)}, "none"};
  if (config.sigma) {
    return {{base_kernel_from_text(config.kernel, *config.sigma, config.degree), std::move(invariance)},
            "flag"};
  }
  const double sigma = median_bandwidth(data, invariance);
  return {{base_kernel_from_text(config.kernel, sigma, config.degree), std::move(invariance)},
          "median"};
}

BlockContrast block_contrast(const Eigen::MatrixXd& gram, const std::vector<int>& labels) {
  double within = 0.0, between = 0.0;
  std::size_t n_within = 0, n_between = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (i == j) continue;
      const double v = gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (labels[i] == labels[j]) {
        within += v;
        ++n_within;
      } else {
        between += v;
        ++n_between;
      }
    }
  }
  BlockContrast out;
  out.within_mean = n_within ? within / static_cast<double>(n_within) : 0.0;
  out.between_mean = n_between ? between / static_cast<double>(n_between) : 0.0;
  out.ratio = out.between_mean != 0.0 ? out.within_mean / out.between_mean
                                      : std::numeric_limits<double>::infinity();
  return out;
}

ordered_json clustering_summary(const KernelChoice& kernel, const Dataset& data,
                                const GramMatrix& gram, const ClusteringResult& result, int k) {
  ordered_json out = kernel_json(kernel);
  out["k"] = k;
  out["seed"] = result.seed;
  out["points"] = data.size();
  if (data.labels) out["accuracy"] = clustering_accuracy(result.labels, *data.labels);

  const PsdReport psd = check_psd(gram);
  out["psd"] = {{"min_eigenvalue", psd.min_eigenvalue},
                {"tolerance", psd.tolerance},
                {"passed", psd.passed}};

  ordered_json entropy;
  entropy["estimate"] = result.entropy_estimate;
  entropy["contribution_sum"] = result.entropy_contributions.sum();
  entropy["selected_axes"] = vector_json(result.selected_axes);
  ordered_json selected = ordered_json::array();
  double captured = 0.0;
  for (const auto axis : result.selected_axes) {
    selected.push_back(result.entropy_contributions[axis]);
    captured += result.entropy_contributions[axis];
  }
  entropy["selected_contributions"] = selected;
  entropy["selected_fraction"] =
      result.entropy_estimate != 0.0 ? captured / result.entropy_estimate : 0.0;
  out["entropy"] = entropy;

  const Eigen::Index lead = std::min<Eigen::Index>(result.eigenvalues.size(), 10);
  out["leading_eigenvalues"] = vector_json(Eigen::VectorXd(result.eigenvalues.head(lead)));
  out["inertia"] = result.inertia;
  out["degenerate"] = result.degenerate;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (int label : result.labels) {
    if (label >= 0 && static_cast<std::size_t>(label) < sizes.size()) ++sizes[static_cast<std::size_t>(label)];
  }
  out["cluster_sizes"] = vector_json(sizes);
  out["flagged_rows"] = vector_json(result.flagged_rows);
  if (data.labels) {
    const BlockContrast bc = block_contrast(gram.values, *data.labels);
    out["block_contrast"] = {{"within_mean", bc.within_mean},
                             {"between_mean", bc.between_mean},
                             {"ratio", bc.ratio}};
  }
  return out;
}

std::string labels_csv(const std::vector<int>& labels) {
  std::string out = "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(labels[i]) + "\n";
  }
  return out;
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Usage: return 2;
    case ErrorCategory::Numerical: return 3;
    case ErrorCategory::Io: return 4;
  }
  return 1;
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Dataset pair;
  if (!config.input.empty()) {
    if (!config.x.empty() || !config.y.empty()) {
      throw SpecError("give either --input or --x/--y, not both");
    }
    pair = load_csv(config.input, config.labels);
    if (pair.size() != 2) {
      throw SpecError("--input for eval must hold exactly 2 rows, found " + std::to_string(pair.size()));
    }
  } else {
    if (config.x.empty() || config.y.empty()) throw SpecError("eval needs --x and --y (or --input)");
    for (const auto& [flag, text] : {std::pair{"--x", &config.x}, std::pair{"--y", &config.y}}) {
      try {
        pair.points.push_back(parse_point(*text));
      } catch (Error& e) {
        e.add_context(flag);
        throw;
      }
    }
  }
  pair.meta.name = "eval";

  const KernelChoice kernel = resolve_kernel(config, pair);
  warn_chain(kernel.spec, err);
  const DataPoint& x = pair.points[0];
  const DataPoint& y = pair.points[1];
  const double value = eval_kernel(kernel.spec, x, y);
  const ScalarTriple t = kernel_triple(kernel.spec, x, y);
  const bool complex = x.field == Field::Complex || y.field == Field::Complex;

  ordered_json record = kernel_json(kernel);
  record["x"] = point_json(x);
  record["y"] = point_json(y);
  record["triple"] = {{"xx", t.sxx}, {"xy", scalar_json(t.sxy, complex)}, {"yy", t.syy}};
  record["value"] = value;

  out << format_number(value) << "\n" << record.dump() << "\n";
  if (!config.out.empty()) write_json(ensure_dir(config.out) / "eval.json", record);
  return 0;
}

int cmd_gram(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Dataset data = load_input(config);
  const KernelChoice kernel = resolve_kernel(config, data);
  warn_chain(kernel.spec, err);
  const GramMatrix gram = build_gram(data, kernel.spec);
  const PsdReport psd = check_psd(gram);

  const fs::path dir = ensure_dir(config.out);
  write_matrix_csv(dir / "gram.csv", gram.values);
  ordered_json report = kernel_json(kernel);
  report["points"] = data.size();
  report["min_eigenvalue"] = psd.min_eigenvalue;
  report["tolerance"] = psd.tolerance;
  report["passed"] = psd.passed;
  write_json(dir / "psd.json", report);
  if (config.svg) {
    const auto order = data.labels ? order_by_label(*data.labels) : std::vector<std::size_t>{};
    write_text(dir / "gram.svg", heatmap_svg(gram.values, order, "Gram matrix, " + to_string(kernel.spec)));
  }
  out << "gram " << data.size() << "x" << data.size() << " " << to_string(kernel.spec)
      << " psd=" << (psd.passed ? "pass" : "fail") << " min_eigenvalue="
      << format_number(psd.min_eigenvalue) << "\n";
  return 0;
}

int cmd_cluster(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int k = config.k.value_or(2);
  if (k < 2) throw SpecError("--k must be at least 2");
  const Dataset data = load_input(config);
  const KernelChoice kernel = resolve_kernel(config, data);
  warn_chain(kernel.spec, err);
  const GramMatrix gram = build_gram(data, kernel.spec);
  const ClusteringResult result = spectral_cluster(gram, k, config.seed);

  ordered_json metrics;
  metrics["dataset"] = dataset_meta_json(data);
  metrics["clustering"] = clustering_summary(kernel, data, gram, result, k);

  const fs::path dir = ensure_dir(config.out);
  write_text(dir / "labels.csv", labels_csv(result.labels));
  write_json(dir / "metrics.json", metrics);
  if (config.svg) {
    write_text(dir / "scatter.svg", scatter_svg(scatter_points(data, result.embedding), result.labels,
                                                "Clusters, " + to_string(kernel.spec)));
  }
  out << "cluster k=" << k << " " << to_string(kernel.spec);
  if (metrics["clustering"].contains("accuracy")) {
    out << " accuracy=" << format_number(metrics["clustering"]["accuracy"].get<double>());
  }
  out << "\n";
  return 0;
}

int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err) {
  ExperimentOverrides overrides;
  overrides.sigma = config.sigma;
  overrides.k = config.k;
  if (!config.input.empty()) overrides.input = config.input;
  overrides.input_has_labels = config.labels;
  const Experiment exp = make_experiment(lower(config.preset), config.seed, overrides);
  if (exp.k < 2) throw SpecError("--k must be at least 2");
  warn_chain(exp.invariant.spec, err);

  RoleOutcome invariant = run_role(exp, exp.invariant, config.seed);
  RoleOutcome baseline;
  try {
    baseline = run_role(exp, exp.baseline, config.seed);
  } catch (const Error& e) {
    // A collapsing baseline is a result, not a failed run.
    baseline.summary = kernel_json(exp.baseline);
    baseline.summary["error"] = e.what();
  }

  ordered_json metrics;
  metrics["experiment"] = exp.name;
  metrics["seed"] = config.seed;
  metrics["k"] = exp.k;
  metrics["dataset"] = dataset_meta_json(exp.data);
  if (!exp.truth_directions.empty()) {
    ordered_json truth = ordered_json::array();
    for (const auto& d : exp.truth_directions) truth.push_back(ordered_json::array({d.x(), d.y()}));
    metrics["truth_directions"] = truth;
  }
  metrics["invariant"] = invariant.summary;
  metrics["baseline"] = baseline.summary;
  if (invariant.accuracy && baseline.accuracy) {
    metrics["accuracy_gap"] = *invariant.accuracy - *baseline.accuracy;
  }

  const fs::path dir = ensure_dir(config.out);
  if (exp.data.field() == Field::Real) write_dataset_csv(dir / "dataset.csv", exp.data);
  write_json(dir / "metrics.json", metrics);
  const std::vector<int>& order_labels = exp.data.labels ? *exp.data.labels : invariant.labels;
  const auto order = order_by_label(order_labels);
  for (const auto* role : {&invariant, &baseline}) {
    if (!role->gram) continue;
    const std::string tag = role == &invariant ? "invariant" : "baseline";
    const KernelChoice& kernel = role == &invariant ? exp.invariant : exp.baseline;
    write_text(dir / ("labels_" + tag + ".csv"), labels_csv(role->labels));
    write_matrix_csv(dir / ("gram_" + tag + ".csv"), role->gram->values);
    if (config.svg) {
      write_text(dir / ("scatter_" + tag + ".svg"),
                 scatter_svg(scatter_points(exp.data, role->embedding), role->labels,
                             exp.name + " " + tag + ", " + to_string(kernel.spec)));
      write_text(dir / ("gram_" + tag + ".svg"),
                 heatmap_svg(role->gram->values, order,
                             exp.name + " " + tag + " Gram, " + to_string(kernel.spec)));
    }
  }

  out << exp.name << " seed=" << config.seed << " k=" << exp.k;
  for (const auto& [tag, role] : {std::pair{"invariant", &invariant}, std::pair{"baseline", &baseline}}) {
    out << " " << tag << "=";
    if (role->accuracy) {
      out << format_number(*role->accuracy);
    } else if (role->summary.contains("error")) {
      out << "error";
    } else {
      out << "n/a";
    }
  }
  if (metrics.contains("accuracy_gap")) out << " gap=" << format_number(metrics["accuracy_gap"].get<double>());
  if (invariant.summary.contains("mixing") && invariant.summary["mixing"].contains("max_angle_error_deg")) {
    out << " max_angle_error_deg="
        << format_number(invariant.summary["mixing"]["max_angle_error_deg"].get<double>());
  }
  out << "\n";
  return 0;
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream&) {
  std::vector<Eigen::Vector2d> truth;
  const Dataset data = preset_dataset(lower(config.preset), config.seed, &truth);
  ordered_json meta = dataset_meta_json(data);
  if (!truth.empty()) {
    ordered_json dirs = ordered_json::array();
    for (const auto& d : truth) dirs.push_back(ordered_json::array({d.x(), d.y()}));
    meta["truth_directions"] = dirs;
  }
  const fs::path dir = ensure_dir(config.out);
  write_dataset_csv(dir / "dataset.csv", data);
  write_json(dir / "dataset.json", meta);
  out << "wrote " << (dir / "dataset.csv").string() << " (" << data.size() << " points, dim "
      << data.dim() << ")\n";
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Invariant kernels, Gram diagnostics and KECA spectral clustering", "invk"};
  app.require_subcommand(1);

  std::optional<double> sigma;
  std::optional<int> m;
  std::optional<int> k;

  auto add_kernel = [&](CLI::App* sub) {
    sub->add_option("--kernel", config.kernel, "linear | gaussian | laplace | poly | polyhom")
        ->capture_default_str();
    sub->add_option("--sigma", sigma, "bandwidth for gaussian/laplace (default: median heuristic)");
    sub->add_option("--degree", config.degree, "degree for poly/polyhom")->capture_default_str();
    sub->add_option("--m", m, "order for a bare --inv rot");
    sub->add_option("--inv", config.invariance,
                    "none | sign | rot:m | phase | scale | proj | chain(a,b,...)")
        ->capture_default_str();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--out", config.out, "output directory")->capture_default_str();
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "dataset CSV");
    sub->add_flag("--labels", config.labels, "last CSV column holds integer labels");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate k(x, y) for two points");
  add_kernel(eval);
  add_common(eval);
  add_input(eval);
  eval->add_option("--x", config.x, "first point, e.g. 1,0 or 1+2i,0");
  eval->add_option("--y", config.y, "second point");

  CLI::App* gram = app.add_subcommand("gram", "Gram matrix CSV, PSD report, heatmap");
  add_kernel(gram);
  add_common(gram);
  add_input(gram);
  gram->add_flag("--svg", config.svg, "write an SVG heatmap");

  CLI::App* cluster = app.add_subcommand("cluster", "KECA spectral clustering of a dataset");
  add_kernel(cluster);
  add_common(cluster);
  add_input(cluster);
  cluster->add_option("--k", k, "number of clusters (default 2)");
  cluster->add_flag("--svg", config.svg, "write an SVG scatter plot");

  CLI::App* exp = app.add_subcommand("exp", "run a preset experiment with its baseline");
  exp->add_option("preset", config.preset, "xor | digits | flutes")->required();
  add_common(exp);
  add_input(exp);
  exp->add_option("--sigma", sigma, "override the preset bandwidth");
  exp->add_option("--k", k, "override the preset cluster count");
  exp->add_flag("--svg", config.svg, "write SVG scatter plots and heatmaps");

  CLI::App* gen = app.add_subcommand("gen", "write a preset's dataset as CSV");
  gen->add_option("preset", config.preset, "xor | digits | flutes")->required();
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  config.sigma = sigma;
  config.m = m;
  config.k = k;

  try {
    if (eval->parsed()) {
      config.command = "eval";
      if (eval->count("--out") == 0) config.out.clear();
      return cmd_eval(config, out, err);
    }
    if (gram->parsed()) {
      config.command = "gram";
      return cmd_gram(config, out, err);
    }
    if (cluster->parsed()) {
      config.command = "cluster";
      return cmd_cluster(config, out, err);
    }
    if (exp->parsed()) {
      config.command = "exp";
      return cmd_experiment(config, out, err);
    }
    config.command = "gen";
    return cmd_generate(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace invk::cli
