#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "invk/dataset.hpp"
#include "invk/errors.hpp"
#include "invk/invariance.hpp"
#include "invk/spectral.hpp"
#include "presets.hpp"

namespace invk::cli {

struct RunConfig {
  std::string command;  // eval | gram | cluster | exp | gen
  std::string preset;   // exp and gen
  std::string kernel = "gaussian";
  std::string invariance = "none";
  std::optional<double> sigma;
  int degree = 2;
  std::optional<int> m;
  std::optional<int> k;
  std::uint64_t seed = 0;
  std::string input;
  bool labels = false;  // last CSV column holds labels
  std::string out = ".";
  bool svg = false;
  std::string x;
  std::string y;
};

// "none" (or empty) means no invariance. A bare "rot" takes its order from m.
std::optional<InvarianceSpec> invariance_from_text(std::string_view text, std::optional<int> m);

BaseKernelSpec base_kernel_from_text(std::string_view name, double sigma, int degree);

// Comma-separated components; complex entries as "a+bi", "bi", "-i".
// Throws ParseError (line 0, column = component index).
DataPoint parse_point(std::string_view text);

// Kernel named by the config, with the median heuristic when a radial
// kernel has no --sigma.
KernelChoice resolve_kernel(const RunConfig& config, const Dataset& data);

// Off-diagonal mean Gram entry within and between label groups.
struct BlockContrast {
  double within_mean = 0.0;
  double between_mean = 0.0;
  double ratio = 0.0;
};
BlockContrast block_contrast(const Eigen::MatrixXd& gram, const std::vector<int>& labels);

nlohmann::ordered_json clustering_summary(const KernelChoice& kernel, const Dataset& data,
                                          const GramMatrix& gram, const ClusteringResult& result,
                                          int k);

std::string labels_csv(const std::vector<int>& labels);

int exit_code(ErrorCategory category);

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gram(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_cluster(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, dispatches, and maps failures onto exit codes:
// 0 success, 2 usage or parse, 3 numerical, 4 I/O.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace invk::cli
