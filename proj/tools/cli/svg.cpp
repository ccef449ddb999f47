#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

namespace invk::cli {

namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(double width, double height, const std::string& title) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) +
         "\" height=\"" + fixed(height) + "\" viewBox=\"0 0 " + fixed(width) + " " +
         fixed(height) + "\">\n";
  out += "<title>" + escape(title) + "</title>\n";
  return out;
}

}  // namespace

std::string scatter_svg(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                        const std::string& title) {
  constexpr double size = 480.0;
  constexpr double margin = 20.0;
  const Eigen::Index n = points.rows();
  const Eigen::Index cols = std::min<Eigen::Index>(points.cols(), 2);

  double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
  if (n > 0 && cols > 0) {
    lo_x = points.col(0).minCoeff();
    hi_x = points.col(0).maxCoeff();
    lo_y = cols > 1 ? points.col(1).minCoeff() : 0.0;
    hi_y = cols > 1 ? points.col(1).maxCoeff() : 0.0;
  }
  // Equal aspect, centred.
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  const double scale = (size - 2.0 * margin) / span;

  std::string out = header(size, size, title);
  out += "<g id=\"points\">\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = cols > 0 ? points(i, 0) : 0.0;
    const double y = cols > 1 ? points(i, 1) : 0.0;
    const double px = size / 2.0 + (x - cx) * scale;
    const double py = size / 2.0 - (y - cy) * scale;
    const int label = static_cast<std::size_t>(i) < labels.size() ? labels[static_cast<std::size_t>(i)] : -1;
    const char* colour = label >= 0 ? kPalette[static_cast<std::size_t>(label) % kPalette.size()]
                                    : "#7f7f7f";
    out += "<circle cx=\"" + fixed(px) + "\" cy=\"" + fixed(py) + "\" r=\"3\" fill=\"" +
           colour + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string heatmap_svg(const Eigen::MatrixXd& matrix, const std::vector<std::size_t>& order,
                        const std::string& title) {
  const auto n = static_cast<std::size_t>(matrix.rows());
  std::vector<std::size_t> perm = order;
  if (perm.empty()) {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
  }
  const double cell = std::max(1.0, 600.0 / static_cast<double>(std::max<std::size_t>(n, 1)));
  const double size = cell * static_cast<double>(n);
  const double lo = n > 0 ? matrix.minCoeff() : 0.0;
  const double hi = n > 0 ? matrix.maxCoeff() : 1.0;
  const double range = hi > lo ? hi - lo : 1.0;

  std::string out = header(size, size, title);
  out += "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  char colour[8];
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double v = matrix(static_cast<Eigen::Index>(perm[r]), static_cast<Eigen::Index>(perm[c]));
      // High kernel values dark.
      const int level = static_cast<int>(255.0 * (1.0 - (v - lo) / range) + 0.5);
      const int g = std::clamp(level, 0, 255);
      std::snprintf(colour, sizeof(colour), "#%02x%02x%02x", g, g, g);
      out += "<rect x=\"" + fixed(static_cast<double>(c) * cell) + "\" y=\"" +
             fixed(static_cast<double>(r) * cell) + "\" width=\"" + fixed(cell) +
             "\" height=\"" + fixed(cell) + "\" fill=\"" + colour + "\"/>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::vector<std::size_t> order_by_label(const std::vector<int>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  return order;
}

}  // namespace invk::cli
