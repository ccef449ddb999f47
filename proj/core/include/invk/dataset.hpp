#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invk/kernels.hpp"

namespace invk {

struct DatasetMeta {
  std::string name;
  // Generator parameters or the source path, rendered as text. Ordered so that
  // serialization is stable.
  std::map<std::string, std::string> params;
  std::optional<std::uint64_t> seed;
};

// N points of one dimension and one field, with optional labels in {0..k-1}.
struct Dataset {
  std::vector<DataPoint> points;
  std::optional<std::vector<int>> labels;
  DatasetMeta meta;

  std::size_t size() const { return points.size(); }
  Eigen::Index dim() const { return points.empty() ? 0 : points.front().dim(); }
  Field field() const;
  int label_count() const;  // max label + 1, or 0 without labels
};

// Checks the shared-dimension, shared-field and label-range invariants.
// Throws DimensionError, FieldError or SpecError.
void validate(const Dataset& data);

}  // namespace invk
