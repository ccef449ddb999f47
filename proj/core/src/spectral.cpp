#include "invk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "invk/errors.hpp"

namespace invk {

namespace {

void require_square_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
  if (!a.allFinite()) throw NumericalError("matrix has non-finite entries");
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw SpecError("matrix is not symmetric");
  }
}

double row_distance(const Eigen::Ref<const Eigen::RowVectorXd>& p,
                    const Eigen::Ref<const Eigen::RowVectorXd>& c, Metric metric) {
  if (metric == Metric::Euclidean) return (p - c).squaredNorm();
  return 1.0 - p.dot(c);
}

struct Assignment {
  std::vector<int> labels;
  std::vector<double> distances;
};

Assignment assign(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                  Metric metric) {
  const Eigen::Index n = points.rows();
  Assignment a;
  a.labels.assign(static_cast<std::size_t>(n), 0);
  a.distances.assign(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = row_distance(points.row(i), centers.row(0), metric);
    int best_c = 0;
    for (Eigen::Index c = 1; c < centers.rows(); ++c) {
      const double d = row_distance(points.row(i), centers.row(c), metric);
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    a.labels[static_cast<std::size_t>(i)] = best_c;
    a.distances[static_cast<std::size_t>(i)] = best;
  }
  return a;
}

Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& points, int k, Metric metric,
                             std::mt19937_64& rng) {
  const Eigen::Index n = points.rows();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::Index> chosen;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto pick_index = [&](Eigen::Index i) {
    chosen.push_back(i);
    used[static_cast<std::size_t>(i)] = true;
  };
  pick_index(std::min<Eigen::Index>(static_cast<Eigen::Index>(unit(rng) * n), n - 1));

  std::vector<double> weight(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    weight[static_cast<std::size_t>(i)] =
        std::max(0.0, row_distance(points.row(i), points.row(chosen[0]), metric));
  }
  while (static_cast<int>(chosen.size()) < k) {
    const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    Eigen::Index next = -1;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double running = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        running += weight[static_cast<std::size_t>(i)];
        if (running > target && weight[static_cast<std::size_t>(i)] > 0.0) {
          next = i;
          break;
        }
      }
      if (next < 0) {
        // Rounding left the target past the running sum; take the last
        // point with positive weight.
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (weight[static_cast<std::size_t>(i)] > 0.0) {
            next = i;
            break;
          }
        }
      }
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!used[static_cast<std::size_t>(i)]) {
          next = i;
          break;
        }
      }
    }
    pick_index(next);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = std::max(0.0, row_distance(points.row(i), points.row(next), metric));
      weight[static_cast<std::size_t>(i)] = std::min(weight[static_cast<std::size_t>(i)], d);
    }
  }

  Eigen::MatrixXd centers(k, points.cols());
  for (int c = 0; c < k; ++c) centers.row(c) = points.row(chosen[static_cast<std::size_t>(c)]);
  return centers;
}

void normalize_rows(Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double norm = m.row(i).norm();
    if (norm > 0.0) m.row(i) /= norm;
  }
}

}  // namespace

GramMatrix build_gram(const Dataset& data, const KernelSpec& spec, unsigned threads) {
  validate(spec);
  validate(data);
  const auto n = static_cast<Eigen::Index>(data.size());
  if (n < 2) throw SpecError("a Gram matrix needs at least two points");

  GramMatrix gram{Eigen::MatrixXd::Zero(n, n), spec};
  std::vector<std::exception_ptr> row_errors(static_cast<std::size_t>(n));

  auto fill_rows = [&](Eigen::Index first, Eigen::Index stride) {
    for (Eigen::Index i = first; i < n; i += stride) {
      Eigen::Index j = i;
      try {
        for (; j < n; ++j) {
          gram.values(i, j) = eval_kernel(spec, data.points[static_cast<std::size_t>(i)],
                                          data.points[static_cast<std::size_t>(j)]);
        }
      } catch (Error& e) {
        e.add_context("gram entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        row_errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<Eigen::Index>(threads, n));
  if (threads <= 1) {
    fill_rows(0, 1);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back(fill_rows, static_cast<Eigen::Index>(t),
                           static_cast<Eigen::Index>(threads));
    }
  }

  for (const auto& err : row_errors) {
    if (err) std::rethrow_exception(err);
  }
  gram.values.triangularView<Eigen::StrictlyLower>() = gram.values.transpose();
  return gram;
}

PsdReport check_psd(const Eigen::MatrixXd& values) {
  require_square_symmetric(values);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(values, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  PsdReport report;
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.tolerance = 1e-8 * std::max(values.trace(), 1.0);
  report.passed = report.min_eigenvalue >= -report.tolerance;
  return report;
}

EigenDecomposition sym_eig(const Eigen::MatrixXd& values) {
  require_square_symmetric(values);
  if (values.rows() > kDenseEigenLimit) {
    throw SpecError("dense eigensolver is limited to " + std::to_string(kDenseEigenLimit) +
                    " rows");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(values);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  const Eigen::Index n = values.rows();
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index lead = 0;
    out.eigenvectors.col(c).cwiseAbs().maxCoeff(&lead);
    if (out.eigenvectors(lead, c) < 0.0) out.eigenvectors.col(c) *= -1.0;
  }
  return out;
}

EntropyDecomposition renyi_entropy(const Eigen::MatrixXd& values) {
  EntropyDecomposition out;
  out.eigen = sym_eig(values);
  const auto n = static_cast<double>(values.rows());
  const Eigen::VectorXd projections = out.eigen.eigenvectors.colwise().sum().transpose();
  out.contributions =
      out.eigen.eigenvalues.cwiseProduct(projections.cwiseAbs2()) / (n * n);
  out.estimate = values.sum() / (n * n);
  return out;
}

KecaEmbedding keca_embed(const EntropyDecomposition& entropy, Eigen::Index components) {
  const Eigen::VectorXd& gamma = entropy.contributions;
  const Eigen::VectorXd& lambda = entropy.eigen.eigenvalues;
  const Eigen::Index n = gamma.size();
  if (components < 1 || components > n) {
    throw SpecError("embedding dimension must lie in [1, " + std::to_string(n) + "]");
  }
  const double lambda_max = lambda.size() > 0 ? lambda.maxCoeff() : 0.0;
  if (!(lambda_max > 0.0) ||
      gamma.maxCoeff() <= 1e-14 * lambda_max / static_cast<double>(n)) {
    throw DegenerateEmbeddingError("all entropy contributions vanish");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (gamma[a] != gamma[b]) return gamma[a] > gamma[b];
    if (lambda[a] != lambda[b]) return lambda[a] > lambda[b];
    return a < b;
  });

  KecaEmbedding out;
  out.selected_axes.assign(order.begin(), order.begin() + components);
  out.embedding.resize(n, components);
  for (Eigen::Index j = 0; j < components; ++j) {
    const Eigen::Index axis = out.selected_axes[static_cast<std::size_t>(j)];
    out.embedding.col(j) =
        std::sqrt(std::max(lambda[axis], 0.0)) * entropy.eigen.eigenvectors.col(axis);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = out.embedding.row(i).norm();
    if (norm < 1e-12) {
      out.flagged_rows.push_back(i);
    } else {
      out.embedding.row(i) /= norm;
    }
  }
  return out;
}

KecaEmbedding keca_embed(const Eigen::MatrixXd& values, Eigen::Index components) {
  return keca_embed(renyi_entropy(values), components);
}

KMeansResult kmeans(const Eigen::MatrixXd& input, int k, Metric metric, std::uint64_t seed,
                    const KMeansOptions& options) {
  const Eigen::Index n = input.rows();
  if (n < 1) throw SpecError("k-means needs at least one point");
  if (k < 1 || k > n) {
    throw SpecError("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  if (!input.allFinite()) throw NumericalError("k-means input has non-finite entries");

  Eigen::MatrixXd points = input;
  if (metric == Metric::Angular) normalize_rows(points);

  std::mt19937_64 rng(seed);
  KMeansResult best;
  bool have_best = false;

  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    Eigen::MatrixXd centers = seed_centers(points, k, metric, rng);
    Assignment current = assign(points, centers, metric);

    for (int iter = 0; iter < options.max_iterations; ++iter) {
      Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
      std::vector<int> counts(static_cast<std::size_t>(k), 0);
      for (Eigen::Index i = 0; i < n; ++i) {
        const int c = current.labels[static_cast<std::size_t>(i)];
        sums.row(c) += points.row(i);
        ++counts[static_cast<std::size_t>(c)];
      }
      for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) {
          // Move the empty center onto the worst-served point of a cluster
          // that can spare it.
          Eigen::Index far = -1;
          double far_d = -1.0;
          for (Eigen::Index i = 0; i < n; ++i) {
            const auto owner = static_cast<std::size_t>(current.labels[static_cast<std::size_t>(i)]);
            if (counts[owner] > 1 && current.distances[static_cast<std::size_t>(i)] > far_d) {
              far_d = current.distances[static_cast<std::size_t>(i)];
              far = i;
            }
          }
          if (far >= 0) {
            --counts[static_cast<std::size_t>(current.labels[static_cast<std::size_t>(far)])];
            sums.row(current.labels[static_cast<std::size_t>(far)]) -= points.row(far);
            current.labels[static_cast<std::size_t>(far)] = c;
            current.distances[static_cast<std::size_t>(far)] = 0.0;
            counts[static_cast<std::size_t>(c)] = 1;
            sums.row(c) = points.row(far);
          }
        }
      }
      for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) continue;
        Eigen::RowVectorXd center = sums.row(c) / counts[static_cast<std::size_t>(c)];
        if (metric == Metric::Angular) {
          const double norm = center.norm();
          if (norm > 0.0) center /= norm;
          else continue;
        }
        centers.row(c) = center;
      }
      Assignment next = assign(points, centers, metric);
      const bool stable = next.labels == current.labels;
      current = std::move(next);
      if (stable) break;
    }

    double inertia = 0.0;
    for (double d : current.distances) inertia += std::max(d, 0.0);
    if (!have_best || inertia < best.inertia) {
      best.labels = current.labels;
      best.inertia = inertia;
      best.centers = centers;
      have_best = true;
    }
  }
  return best;
}

ClusteringResult spectral_cluster(const GramMatrix& gram, int k, std::uint64_t seed,
                                  Eigen::Index components) {
  if (components == 0) components = k;
  EntropyDecomposition entropy = renyi_entropy(gram.values);
  KecaEmbedding embed = keca_embed(entropy, components);
  KMeansResult km = kmeans(embed.embedding, k, Metric::Angular, seed);

  ClusteringResult out;
  out.labels = std::move(km.labels);
  out.inertia = km.inertia;
  out.embedding = std::move(embed.embedding);
  out.selected_axes = std::move(embed.selected_axes);
  out.flagged_rows = std::move(embed.flagged_rows);
  out.eigenvalues = entropy.eigen.eigenvalues;
  out.entropy_contributions = std::move(entropy.contributions);
  out.entropy_estimate = entropy.estimate;
  out.seed = seed;
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int l : out.labels) seen[static_cast<std::size_t>(l)] = true;
  out.degenerate = std::find(seen.begin(), seen.end(), false) != seen.end();
  return out;
}

ClusteringResult spectral_cluster(const Dataset& data, const KernelSpec& spec, int k,
                                  std::uint64_t seed, Eigen::Index components) {
  return spectral_cluster(build_gram(data, spec), k, seed, components);
}

double median_bandwidth(const Dataset& data, const std::optional<InvarianceSpec>& invariance) {
  validate(data);
  if (data.size() < 2) throw SpecError("median heuristic needs at least two points");
  std::vector<double> distances;
  distances.reserve(data.size() * (data.size() - 1) / 2);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = i + 1; j < data.size(); ++j) {
      const ScalarTriple t = invariance ? invariant_triple(*invariance, data.points[i], data.points[j])
                                        : make_triple(data.points[i], data.points[j]);
      distances.push_back(std::sqrt(squared_distance(t)));
    }
  }
  const std::size_t mid = distances.size() / 2;
  std::nth_element(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(mid),
                   distances.end());
  double median = distances[mid];
  if (distances.size() % 2 == 0) {
    const double lower = *std::max_element(distances.begin(),
                                           distances.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  return median > 0.0 ? median : 1.0;
}

double clustering_accuracy(const std::vector<int>& labels, const std::vector<int>& truth) {
  if (labels.size() != truth.size()) {
    throw DimensionError("label vectors differ in length");
  }
  if (labels.empty()) throw SpecError("accuracy of an empty labelling");
  int k = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || truth[i] < 0) throw SpecError("labels must be nonnegative");
    k = std::max({k, labels[i] + 1, truth[i] + 1});
  }
  if (k > kMaxAccuracyClusters) {
    throw MetricSizeError("accuracy by permutation search supports at most " +
                          std::to_string(kMaxAccuracyClusters) + " clusters, got " +
                          std::to_string(k));
  }
  std::vector<long long> confusion(static_cast<std::size_t>(k * k), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++confusion[static_cast<std::size_t>(labels[i] * k + truth[i])];
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  long long best = 0;
  do {
    long long matched = 0;
    for (int l = 0; l < k; ++l) {
      matched += confusion[static_cast<std::size_t>(l * k + perm[static_cast<std::size_t>(l)])];
    }
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

}  // namespace invk
