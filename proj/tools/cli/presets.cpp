#include "presets.hpp"

#include <algorithm>

#include "invk/data.hpp"
#include "invk/errors.hpp"
#include "invk/spectral.hpp"

namespace invk::cli {

namespace {

std::string joined_presets() {
  std::string out;
  for (const auto& name : preset_names()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

KernelChoice gaussian(const Dataset& data, std::optional<InvarianceSpec> invariance,
                      std::optional<double> fixed, std::optional<double> flag) {
  if (flag) return {{Gaussian{*flag}, std::move(invariance)}, "flag"};
  if (fixed) return {{Gaussian{*fixed}, std::move(invariance)}, "preset"};
  const double sigma = median_bandwidth(data, invariance);
  return {{Gaussian{sigma}, std::move(invariance)}, "median"};
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"xor", "digits", "flutes"};
  return names;
}

Dataset preset_dataset(std::string_view name, std::uint64_t seed,
                       std::vector<Eigen::Vector2d>* truth_directions) {
  if (name == "xor") return gen_xor(kXorPerArm, kXorSpread, seed);
  if (name == "digits") {
    return gen_flipped_blobs(kDigitsPerClass, kDigitsDim, kDigitsSeparation, kDigitsNoise,
                             kDigitsFlipProb, seed);
  }
  if (name == "flutes") {
    DirectionsData raw = gen_directions(kFlutesSources, kFlutesPoints, kFlutesOffsetDeg,
                                        LogNormal{}, kFlutesNoise, seed);
    if (truth_directions) *truth_directions = raw.directions;
    return top_norm_select(raw.data, kFlutesKeep);
  }
  throw SpecError("unknown preset '" + std::string(name) + "' (expected one of: " +
                  joined_presets() + ")");
}

Experiment make_experiment(std::string_view name, std::uint64_t seed,
                           const ExperimentOverrides& overrides) {
  const auto& names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw SpecError("unknown preset '" + std::string(name) + "' (expected one of: " +
                    joined_presets() + ")");
  }
  Experiment exp;
  exp.name = std::string(name);
  if (overrides.input) {
    if (name != "digits") {
      throw SpecError("--input is only supported by the digits preset");
    }
    exp.data = load_csv(*overrides.input, overrides.input_has_labels);
  } else {
    exp.data = preset_dataset(name, seed, &exp.truth_directions);
  }

  const InvarianceSpec sign = InvarianceSpec::sign();
  if (name == "xor") {
    exp.k = 2;
    exp.invariant = gaussian(exp.data, sign, std::nullopt, overrides.sigma);
    exp.baseline = gaussian(exp.data, std::nullopt, std::nullopt, overrides.sigma);
  } else if (name == "digits") {
    exp.k = 2;
    exp.invariant = gaussian(exp.data, sign, kDigitsSigma, overrides.sigma);
    exp.baseline = gaussian(exp.data, std::nullopt, kDigitsSigma, overrides.sigma);
  } else {
    exp.k = kFlutesSources;
    exp.invariant = gaussian(exp.data, InvarianceSpec::projective(), kFlutesSigma, overrides.sigma);
    exp.baseline = gaussian(exp.data, std::nullopt, kFlutesSigma, overrides.sigma);
  }
  if (overrides.k) exp.k = *overrides.k;
  return exp;
}

}  // namespace invk::cli
