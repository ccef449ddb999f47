#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "invk/dataset.hpp"
#include "invk/invariance.hpp"

namespace invk {

// Real symmetric kernel matrix with the kernel that produced it.
struct GramMatrix {
  Eigen::MatrixXd values;
  KernelSpec kernel;

  Eigen::Index size() const { return values.rows(); }
};

// Evaluates the upper triangle (optionally on several threads) and mirrors
// it. Evaluation errors are rethrown with the offending pair attached.
// threads == 0 picks the hardware concurrency.
GramMatrix build_gram(const Dataset& data, const KernelSpec& spec,
                      unsigned threads = 0);

struct PsdReport {
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;  // 1e-8 * max(trace, 1)
  bool passed = false;
};

PsdReport check_psd(const Eigen::MatrixXd& values);
inline PsdReport check_psd(const GramMatrix& gram) { return check_psd(gram.values); }

// Eigenvalues sorted descending; each eigenvector's largest-magnitude
// component is positive (first such component on ties).
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

inline constexpr Eigen::Index kDenseEigenLimit = 5000;

EigenDecomposition sym_eig(const Eigen::MatrixXd& values);
inline EigenDecomposition sym_eig(const GramMatrix& gram) { return sym_eig(gram.values); }

// Renyi quadratic entropy estimate V = (1'K1)/N^2 and its split over kernel
// principal axes, gamma_i = lambda_i (v_i'1)^2 / N^2, which sums to V.
struct EntropyDecomposition {
  double estimate = 0.0;
  Eigen::VectorXd contributions;
  EigenDecomposition eigen;
};

EntropyDecomposition renyi_entropy(const Eigen::MatrixXd& values);
inline EntropyDecomposition renyi_entropy(const GramMatrix& gram) {
  return renyi_entropy(gram.values);
}

struct KecaEmbedding {
  Eigen::MatrixXd embedding;               // N x C, rows unit length unless flagged
  std::vector<Eigen::Index> selected_axes; // indices into the descending spectrum
  std::vector<Eigen::Index> flagged_rows;  // rows with norm < 1e-12, left unnormalized
};

// Picks the C axes with the largest entropy contributions (ties: larger
// eigenvalue, then lower index) and scales eigenvector a_j by sqrt(lambda).
// Throws DegenerateEmbeddingError when every contribution vanishes.
KecaEmbedding keca_embed(const EntropyDecomposition& entropy, Eigen::Index components);
KecaEmbedding keca_embed(const Eigen::MatrixXd& values, Eigen::Index components);

enum class Metric { Euclidean, Angular };

struct KMeansResult {
  std::vector<int> labels;
  double inertia = 0.0;
  Eigen::MatrixXd centers;
};

struct KMeansOptions {
  int max_iterations = 300;
  int restarts = 10;
};

// k-means++ seeded Lloyd iterations; the restart with the lowest inertia is
// kept (earliest restart on ties). Euclidean inertia is the sum of squared
// distances, angular inertia the sum of 1 - cos. Empty clusters are re-seeded
// at the point farthest from its center.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, Metric metric,
                    std::uint64_t seed, const KMeansOptions& options = {});

struct ClusteringResult {
  std::vector<int> labels;
  Eigen::MatrixXd embedding;
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd entropy_contributions;
  double entropy_estimate = 0.0;
  std::vector<Eigen::Index> selected_axes;
  std::vector<Eigen::Index> flagged_rows;
  double inertia = 0.0;
  std::uint64_t seed = 0;
  bool degenerate = false;  // some cluster index never used
};

// build_gram -> renyi_entropy -> keca_embed -> angular k-means.
// `components` defaults to k when zero.
ClusteringResult spectral_cluster(const GramMatrix& gram, int k, std::uint64_t seed,
                                  Eigen::Index components = 0);
ClusteringResult spectral_cluster(const Dataset& data, const KernelSpec& spec, int k,
                                  std::uint64_t seed, Eigen::Index components = 0);

// Median pairwise distance in the geometry the kernel sees:
// sqrt(iota(x,x) - 2 Re iota(x,y) + iota(y,y)) over all pairs i < j, raw scalar
// products without an invariance. Falls back to 1 when the median is zero.
double median_bandwidth(const Dataset& data, const std::optional<InvarianceSpec>& invariance);

inline constexpr int kMaxAccuracyClusters = 8;

// max over label permutations of the fraction of matches. Labels must be
// nonnegative; more than 8 distinct indices throws MetricSizeError.
double clustering_accuracy(const std::vector<int>& labels, const std::vector<int>& truth);

}  // namespace invk
