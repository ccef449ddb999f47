#include "invk/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "internal.hpp"
#include "invk/errors.hpp"

namespace invk {

using detail::format_double;

namespace {

DataPoint real_point(std::initializer_list<double> values) {
  return DataPoint::real(std::span<const double>(values.begin(), values.size()));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_finite(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || cell.empty()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

Dataset gen_xor(int n_per_arm, double spread, std::uint64_t seed) {
  if (n_per_arm < 1) throw SpecError("gen_xor needs n_per_arm >= 1");
  if (!(spread > 0.0)) throw SpecError("gen_xor needs spread > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, spread);

  constexpr double arms[4][2] = {{1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}};
  constexpr int arm_class[4] = {0, 0, 1, 1};

  Dataset out;
  out.labels.emplace();
  for (int r = 0; r < n_per_arm; ++r) {
    for (int a = 0; a < 4; ++a) {
      const double x = arms[a][0] + jitter(rng);
      const double y = arms[a][1] + jitter(rng);
      out.points.push_back(real_point({x, y}));
      out.labels->push_back(arm_class[a]);
    }
  }
  out.meta.name = "xor";
  out.meta.params = {{"n_per_arm", std::to_string(n_per_arm)},
                     {"spread", format_double(spread)}};
  out.meta.seed = seed;
  return out;
}

Dataset gen_flipped_blobs(int n_per_class, int dim, double separation, double noise,
                          double flip_prob, std::uint64_t seed) {
  if (n_per_class < 1) throw SpecError("gen_flipped_blobs needs n_per_class >= 1");
  if (dim < 2) throw SpecError("gen_flipped_blobs needs dim >= 2");
  if (!(separation > 0.0)) throw SpecError("gen_flipped_blobs needs separation > 0");
  if (noise < 0.0) throw SpecError("gen_flipped_blobs needs noise >= 0");
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) {
    throw SpecError("flip_prob must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Orthonormal prototypes by Gram-Schmidt on two Gaussian draws.
  Eigen::VectorXd p0(dim), p1(dim);
  for (int i = 0; i < dim; ++i) p0[i] = normal(rng);
  for (int i = 0; i < dim; ++i) p1[i] = normal(rng);
  p0.normalize();
  p1 -= p1.dot(p0) * p0;
  p1.normalize();

  Dataset out;
  out.labels.emplace();
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd& proto = c == 0 ? p0 : p1;
    for (int i = 0; i < n_per_class; ++i) {
      Eigen::VectorXd x = separation * proto;
      for (int d = 0; d < dim; ++d) x[d] += noise * normal(rng);
      if (unit(rng) < flip_prob) x = -x;
      out.points.push_back(DataPoint::real(std::span<const double>(x.data(), x.size())));
      out.labels->push_back(c);
    }
  }
  out.meta.name = "flipped_blobs";
  out.meta.params = {{"n_per_class", std::to_string(n_per_class)},
                     {"dim", std::to_string(dim)},
                     {"separation", format_double(separation)},
                     {"noise", format_double(noise)},
                     {"flip_prob", format_double(flip_prob)}};
  out.meta.seed = seed;
  return out;
}

DirectionsData gen_directions(int k, int n_points, double angle_offset_deg,
                              LogNormal scale_law, double noise, std::uint64_t seed) {
  if (k < 2) throw SpecError("gen_directions needs k >= 2");
  if (n_points < k) throw SpecError("gen_directions needs n_points >= k");
  if (!(scale_law.s >= 0.0)) throw SpecError("log-normal spread must be >= 0");
  if (noise < 0.0) throw SpecError("gen_directions needs noise >= 0");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cluster(0, k - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::lognormal_distribution<double> scale(scale_law.mu, scale_law.s);
  std::normal_distribution<double> normal(0.0, 1.0);

  DirectionsData out;
  for (int c = 0; c < k; ++c) {
    const double deg = angle_offset_deg + 180.0 * c / k;
    const double rad = deg * std::numbers::pi / 180.0;
    out.directions.emplace_back(std::cos(rad), std::sin(rad));
  }
  out.data.labels.emplace();
  for (int i = 0; i < n_points; ++i) {
    const int c = cluster(rng);
    const double sign = unit(rng) < 0.5 ? 1.0 : -1.0;
    const double r = scale(rng);
    const double nx = noise * normal(rng);
    const double ny = noise * normal(rng);
    const Eigen::Vector2d& d = out.directions[static_cast<std::size_t>(c)];
    out.data.points.push_back(real_point({sign * r * d.x() + nx, sign * r * d.y() + ny}));
    out.data.labels->push_back(c);
  }
  out.data.meta.name = "directions";
  out.data.meta.params = {{"k", std::to_string(k)},
                          {"n_points", std::to_string(n_points)},
                          {"angle_offset_deg", format_double(angle_offset_deg)},
                          {"scale_mu", format_double(scale_law.mu)},
                          {"scale_s", format_double(scale_law.s)},
                          {"noise", format_double(noise)}};
  out.data.meta.seed = seed;
  return out;
}

Dataset parse_csv(std::string_view text, bool has_labels, std::string_view source) {
  Dataset out;
  if (has_labels) out.labels.emplace();
  std::size_t columns = 0;
  std::size_t line_no = 0;
  bool first_content = true;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end >= text.size()) break;
      continue;
    }
    const auto cells = split_cells(line);

    if (first_content) {
      first_content = false;
      const bool any_numeric = std::any_of(cells.begin(), cells.end(), [](std::string_view c) {
        return parse_finite(c).has_value();
      });
      if (!any_numeric) {
        columns = cells.size();
        continue;  // header
      }
    }
    if (columns == 0) columns = cells.size();
    if (cells.size() != columns) {
      throw FormatError(line_no, "expected " + std::to_string(columns) + " cells, found " +
                                     std::to_string(cells.size()));
    }
    const std::size_t features = has_labels ? columns - 1 : columns;
    if (features == 0) throw FormatError(line_no, "no feature columns");

    std::vector<double> values(features);
    for (std::size_t c = 0; c < features; ++c) {
      const auto v = parse_finite(cells[c]);
      if (!v) {
        throw ParseError(line_no, c + 1,
                         "not a finite number: '" + std::string(cells[c]) + "'");
      }
      values[c] = *v;
    }
    if (has_labels) {
      const std::string_view cell = cells.back();
      int label = -1;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), label);
      if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || label < 0) {
        throw ParseError(line_no, columns,
                         "label must be a nonnegative integer: '" + std::string(cell) + "'");
      }
      out.labels->push_back(label);
    }
    out.points.push_back(DataPoint::real(values));
    if (end >= text.size()) break;
  }
  if (out.points.empty()) throw FormatError(line_no, "no data rows");

  out.meta.name = std::filesystem::path(source).stem().string();
  out.meta.params = {{"source", std::string(source)}};
  return out;
}

Dataset load_csv(const std::filesystem::path& path, bool has_labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), has_labels, path.string());
}

std::vector<std::size_t> top_norm_indices(const Dataset& data, std::size_t count) {
  if (count > data.size()) {
    throw SpecError("cannot select " + std::to_string(count) + " of " +
                    std::to_string(data.size()) + " points");
  }
  std::vector<double> norms(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) norms[i] = data.points[i].coords.norm();
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices) {
  Dataset out;
  out.meta = data.meta;
  if (data.labels) out.labels.emplace();
  for (std::size_t i : indices) {
    if (i >= data.size()) throw SpecError("subset index out of range");
    out.points.push_back(data.points[i]);
    if (data.labels) out.labels->push_back((*data.labels)[i]);
  }
  return out;
}

Dataset top_norm_select(const Dataset& data, std::size_t count) {
  Dataset out = subset(data, top_norm_indices(data, count));
  out.meta.params["top_norm_count"] = std::to_string(count);
  return out;
}

double line_angle_deg(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double cross = std::abs(a.x() * b.y() - a.y() * b.x());
  const double dot = std::abs(a.dot(b));
  return std::atan2(cross, dot) * 180.0 / std::numbers::pi;
}

MixingEstimate estimate_mixing(const Dataset& data, const std::vector<int>& labels,
                               const std::vector<Eigen::Vector2d>& truth) {
  if (data.dim() != 2 || data.field() != Field::Real) {
    throw DimensionError("mixing estimation expects real two-dimensional data");
  }
  if (labels.size() != data.size()) throw DimensionError("one label per point required");
  int k = 0;
  for (int l : labels) {
    if (l < 0) throw SpecError("labels must be nonnegative");
    k = std::max(k, l + 1);
  }

  std::vector<Eigen::Matrix2d> scatter(static_cast<std::size_t>(k), Eigen::Matrix2d::Zero());
  MixingEstimate out;
  out.counts.assign(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Eigen::Vector2d x = data.points[i].coords.real();
    scatter[static_cast<std::size_t>(labels[i])] += x * x.transpose();
    ++out.counts[static_cast<std::size_t>(labels[i])];
  }
  for (int c = 0; c < k; ++c) {
    if (out.counts[static_cast<std::size_t>(c)] < 2) {
      throw DegenerateClusterError("cluster " + std::to_string(c) + " has " +
                                   std::to_string(out.counts[static_cast<std::size_t>(c)]) +
                                   " points; at least two are needed");
    }
    const Eigen::Matrix2d& s = scatter[static_cast<std::size_t>(c)];
    // Principal axis of a symmetric 2x2 matrix.
    const double theta = 0.5 * std::atan2(2.0 * s(0, 1), s(0, 0) - s(1, 1));
    Eigen::Vector2d d(std::cos(theta), std::sin(theta));
    const bool flip = std::abs(d.x()) > 1e-12 ? d.x() < 0.0 : d.y() < 0.0;
    if (flip) d = -d;
    out.directions.push_back(d);
  }

  if (!truth.empty()) {
    if (truth.size() != out.directions.size()) {
      throw DimensionError("expected " + std::to_string(out.directions.size()) +
                           " ground-truth directions, got " + std::to_string(truth.size()));
    }
    const std::size_t n = truth.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best_perm = perm;
    if (n <= 8) {
      double best = std::numeric_limits<double>::infinity();
      do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          total += line_angle_deg(out.directions[i], truth[static_cast<std::size_t>(perm[i])]);
        }
        if (total < best) {
          best = total;
          best_perm = perm;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t nearest = 0;
        for (std::size_t t = 1; t < n; ++t) {
          if (line_angle_deg(out.directions[i], truth[t]) <
              line_angle_deg(out.directions[i], truth[nearest])) {
            nearest = t;
          }
        }
        best_perm[i] = static_cast<int>(nearest);
      }
    }
    out.matched_truth = best_perm;
    out.angle_errors_deg.emplace();
    for (std::size_t i = 0; i < n; ++i) {
      out.angle_errors_deg->push_back(
          line_angle_deg(out.directions[i], truth[static_cast<std::size_t>(best_perm[i])]));
    }
  }
  return out;
}

Field Dataset::field() const {
  return std::any_of(points.begin(), points.end(),
                     [](const DataPoint& p) { return p.field == Field::Complex; })
             ? Field::Complex
             : Field::Real;
}

int Dataset::label_count() const {
  if (!labels || labels->empty()) return 0;
  return *std::max_element(labels->begin(), labels->end()) + 1;
}

void validate(const Dataset& data) {
  if (data.points.empty()) return;
  const Eigen::Index dim = data.dim();
  const Field field = data.points.front().field;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.points[i].dim() != dim) {
      throw DimensionError("point " + std::to_string(i) + " has dimension " +
                           std::to_string(data.points[i].dim()) + ", expected " +
                           std::to_string(dim));
    }
    if (data.points[i].field != field) {
      throw FieldError("dataset mixes real and complex points");
    }
  }
  if (data.labels) {
    if (data.labels->size() != data.size()) {
      throw DimensionError("label count does not match point count");
    }
    for (int l : *data.labels) {
      if (l < 0) throw SpecError("labels must be nonnegative");
    }
  }
}

}  // namespace invk
