#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "invk/dataset.hpp"
#include "invk/invariance.hpp"

namespace invk::cli {

inline constexpr int kXorPerArm = 50;
inline constexpr double kXorSpread = 0.15;

inline constexpr int kDigitsPerClass = 49;
inline constexpr int kDigitsDim = 256;
inline constexpr double kDigitsSeparation = 6.0;
inline constexpr double kDigitsNoise = 0.1;
inline constexpr double kDigitsFlipProb = 0.5;
inline constexpr double kDigitsSigma = 22.0;

inline constexpr int kFlutesSources = 6;
inline constexpr int kFlutesPoints = 400;
inline constexpr std::size_t kFlutesKeep = 270;
inline constexpr double kFlutesOffsetDeg = 15.0;
inline constexpr double kFlutesNoise = 0.02;
inline constexpr double kFlutesSigma = 0.1;

const std::vector<std::string>& preset_names();

struct ExperimentOverrides {
  std::optional<double> sigma;
  std::optional<int> k;
  std::optional<std::filesystem::path> input;
  bool input_has_labels = true;
};

// Where a bandwidth came from: fixed preset value, --sigma, or median heuristic.
struct KernelChoice {
  KernelSpec spec;
  std::string sigma_source;
};

struct Experiment {
  std::string name;
  Dataset data;
  std::vector<Eigen::Vector2d> truth_directions;  // flutes only
  KernelChoice invariant;
  KernelChoice baseline;
  int k = 2;
};

// Dataset for a preset; throws SpecError listing presets for unknown names.
Dataset preset_dataset(std::string_view name, std::uint64_t seed,
                       std::vector<Eigen::Vector2d>* truth_directions = nullptr);

Experiment make_experiment(std::string_view name, std::uint64_t seed,
                           const ExperimentOverrides& overrides = {});

}  // namespace invk::cli
