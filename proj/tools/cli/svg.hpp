#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace invk::cli {

// One <circle> per row of `points` (first two columns), coloured by label.
std::string scatter_svg(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                        const std::string& title);

// One <rect> per matrix entry, rows and columns permuted by `order`
// (identity when empty). Grey levels span the matrix's value range.
std::string heatmap_svg(const Eigen::MatrixXd& matrix, const std::vector<std::size_t>& order,
                        const std::string& title);

// Stable ordering of indices by label, for block-structured heatmaps.
std::vector<std::size_t> order_by_label(const std::vector<int>& labels);

}  // namespace invk::cli
