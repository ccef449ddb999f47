#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "invk/dataset.hpp"

namespace invk {

// Two classes in the plane: class 0 near (1,1) and (-1,-1), class 1 near
// (1,-1) and (-1,1), with isotropic Gaussian jitter of scale `spread`. Arms
// are interleaved, 4 * n_per_arm points in total.
Dataset gen_xor(int n_per_arm, double spread, std::uint64_t seed);

// Two Gaussian blobs centred at separation * p0 and separation * p1 for a
// random orthonormal pair (p0, p1); each point is negated independently with
// probability flip_prob. Labels are the blob, not the flip state. Class 0
// occupies the first n_per_class rows.
Dataset gen_flipped_blobs(int n_per_class, int dim, double separation, double noise,
                          double flip_prob, std::uint64_t seed);

struct LogNormal {
  double mu = 0.0;
  double s = 1.0;
};

struct DirectionsData {
  Dataset data;
  std::vector<Eigen::Vector2d> directions;  // ground-truth unit directions
};

// Sparse-mixture surrogate: x = sign * r * d_c + noise, with c uniform over k
// lines through the origin at angle_offset_deg + 180 c / k degrees and r drawn
// from the log-normal scale law.
DirectionsData gen_directions(int k, int n_points, double angle_offset_deg,
                              LogNormal scale_law, double noise, std::uint64_t seed);

// Rectangular numeric CSV, label column last when has_labels. A first row
// without any numeric cell is taken as a header. Throws FormatError on
// ragged rows and ParseError(line, column) on bad cells, NaN or Inf.
Dataset load_csv(const std::filesystem::path& path, bool has_labels);
Dataset parse_csv(std::string_view text, bool has_labels, std::string_view source = "<memory>");

// Indices of the `count` largest-norm points, ascending index order; equal
// norms prefer the lower index.
std::vector<std::size_t> top_norm_indices(const Dataset& data, std::size_t count);
Dataset top_norm_select(const Dataset& data, std::size_t count);
Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices);

struct MixingEstimate {
  std::vector<Eigen::Vector2d> directions;  // unit, first nonzero coordinate > 0
  std::vector<std::size_t> counts;
  // Present when ground truth is supplied: per estimated direction, the angle
  // (degrees, modulo 180) to its matched ground-truth direction.
  std::optional<std::vector<double>> angle_errors_deg;
  std::optional<std::vector<int>> matched_truth;
};

// Per cluster, the principal axis of the scatter matrix sum x x'. Throws
// DegenerateClusterError for clusters with fewer than two points.
MixingEstimate estimate_mixing(const Dataset& data, const std::vector<int>& labels,
                               const std::vector<Eigen::Vector2d>& truth = {});

// Angle in degrees between the lines spanned by a and b, in [0, 90].
double line_angle_deg(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

}  // namespace invk
