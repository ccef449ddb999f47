#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "invk/dataset.hpp"

namespace invk {

// Shortest decimal text that parses back to the identical double.
std::string format_number(double value);

// Row-major full matrix, one row per line.
std::string matrix_to_csv(const Eigen::MatrixXd& m);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

// Real coordinates followed by the label column when labels are present.
// Complex datasets throw FieldError.
std::string dataset_to_csv(const Dataset& data);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

// Sidecar with name, parameters, seed, sizes and label counts.
nlohmann::ordered_json dataset_meta_json(const Dataset& data);

void write_text(const std::filesystem::path& path, const std::string& contents);

}  // namespace invk
