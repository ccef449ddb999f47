#include "invk/io.hpp"

#include <fstream>

#include "internal.hpp"
#include "invk/data.hpp"
#include "invk/errors.hpp"

namespace invk {

std::string format_number(double value) { return detail::format_double(value); }

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_number(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  write_text(path, matrix_to_csv(m));
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  const Dataset rows = load_csv(path, false);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = rows.points[i].coords.real().transpose();
  }
  return m;
}

std::string dataset_to_csv(const Dataset& data) {
  if (data.field() == Field::Complex) {
    throw FieldError("dataset CSV output supports real data only");
  }
  std::string out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Vector& x = data.points[i].coords;
    for (Eigen::Index d = 0; d < x.size(); ++d) {
      if (d > 0) out += ',';
      out += format_number(x[d].real());
    }
    if (data.labels) out += ',' + std::to_string((*data.labels)[i]);
    out += '\n';
  }
  return out;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  write_text(path, dataset_to_csv(data));
}

nlohmann::ordered_json dataset_meta_json(const Dataset& data) {
  nlohmann::ordered_json j;
  j["name"] = data.meta.name;
  j["points"] = data.size();
  j["dim"] = data.dim();
  j["field"] = data.field() == Field::Real ? "real" : "complex";
  j["has_labels"] = data.labels.has_value();
  if (data.labels) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(data.label_count()), 0);
    for (int l : *data.labels) ++counts[static_cast<std::size_t>(l)];
    j["label_counts"] = counts;
  }
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : data.meta.params) params[key] = value;
  j["params"] = params;
  if (data.meta.seed) {
    j["seed"] = *data.meta.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace invk
