#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "invk/dataset.hpp"
#include "invk/kernels.hpp"

namespace invk {

struct InvarianceSpec;

// Z/m acting by the m-th roots of unity. m = 2 is sign invariance.
struct FiniteRotation {
  int m = 2;
};
// R/Z acting on C^n by exp(2 pi i phi).
struct Phase {};
// R acting by exp(alpha), on K^n without the origin.
struct Scale {};
// K\{0} acting by multiplication: projective invariance.
struct ScalePhase {};
// Invariances applied left to right, each stage consuming the triple
// produced by the previous one.
struct Chain {
  std::vector<InvarianceSpec> stages;
};

struct InvarianceSpec {
  std::variant<FiniteRotation, Phase, Scale, ScalePhase, Chain> kind;

  static InvarianceSpec sign() { return {FiniteRotation{2}}; }
  static InvarianceSpec rotation(int m) { return {FiniteRotation{m}}; }
  static InvarianceSpec phase() { return {Phase{}}; }
  static InvarianceSpec scale() { return {Scale{}}; }
  static InvarianceSpec projective() { return {ScalePhase{}}; }
  static InvarianceSpec chain(std::vector<InvarianceSpec> stages) {
    return {Chain{std::move(stages)}};
  }
};

bool operator==(const InvarianceSpec& a, const InvarianceSpec& b);

// Throws SpecError for m < 2, empty chains and nesting deeper than 4.
void validate(const InvarianceSpec& spec);

// Non-fatal diagnostics for chains outside the validated combinations
// (scale with a finite rotation or phase).
std::vector<std::string> chain_warnings(const InvarianceSpec& spec);

// Grammar: sign | rot:m | phase | scale | proj | chain(a,b,...), case
// insensitive, whitespace ignored. Throws ParseError (line 0).
InvarianceSpec parse_invariance(std::string_view text);

// Canonical text; parse_invariance(to_string(s)) == s.
std::string to_string(const InvarianceSpec& spec);

// True when any stage needs nonzero inputs (Scale, ScalePhase).
bool requires_nonzero(const InvarianceSpec& spec);

// Maps a scalar-product triple through the invariant inner kernel(s). `field`
// is the field of the original data; FiniteRotation with m >= 3 on real data
// throws FieldError, zero norms under Scale/ScalePhase throw ZeroVectorError.
ScalarTriple lift_triple(const InvarianceSpec& spec, const ScalarTriple& t,
                         Field field);

// The triple (iota(x,x), iota(x,y), iota(y,y)).
ScalarTriple invariant_triple(const InvarianceSpec& spec, const DataPoint& x,
                              const DataPoint& y);

Scalar invariant_inner(const InvarianceSpec& spec, const DataPoint& x,
                       const DataPoint& y);

// ---------------------------------------------------------------------------
// Kernels built by the invariant kernel trick.

struct KernelSpec {
  BaseKernelSpec base;
  std::optional<InvarianceSpec> invariance;
};

void validate(const KernelSpec& spec);
std::string to_string(const KernelSpec& spec);

// The triple that the base kernel consumes: raw scalar products without an
// invariance, invariant inner kernels otherwise.
ScalarTriple kernel_triple(const KernelSpec& spec, const DataPoint& x,
                           const DataPoint& y);

// k_G(x, y) = f(iota(x,x), iota(x,y), iota(y,y)).
double eval_kernel(const KernelSpec& spec, const DataPoint& x,
                   const DataPoint& y);

// ---------------------------------------------------------------------------
// Group elements and their action.

struct GroupElement;

struct RotationElement {
  int m = 2;
  int residue = 0;  // in {0..m-1}
};
struct PhaseElement {
  double angle = 0.0;  // in [0, 1)
};
struct ScaleElement {
  double log_factor = 0.0;
};
struct ScalePhaseElement {
  Scalar factor{1.0, 0.0};  // nonzero
};
struct ChainElement {
  std::vector<GroupElement> stages;
};

struct GroupElement {
  std::variant<RotationElement, PhaseElement, ScaleElement, ScalePhaseElement,
               ChainElement>
      kind;
};

GroupElement identity_element(const InvarianceSpec& spec);

// g * h, so that apply(compose(g, h), x) == apply(g, apply(h, x)).
// Throws SpecError for elements of different groups.
GroupElement compose(const GroupElement& g, const GroupElement& h);

// Every supported action is multiplication by a nonzero scalar.
Scalar multiplier(const GroupElement& g);

// g.x. Throws FieldError when the multiplier is genuinely complex and x is
// real.
DataPoint apply_group(const GroupElement& g, const DataPoint& x);

// Random element: uniform residues, phase angles uniform on [0,1), scale
// log-factors standard normal. On real data the continuous phase groups are
// restricted to their real subgroup (signs).
GroupElement sample_element(const InvarianceSpec& spec, Field field,
                            std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Explicit quotient maps, used as brute-force oracles for the trick.

struct FeatureArray {
  std::vector<Eigen::Index> shape;
  Vector values;  // row-major flattening of `shape`
};

// x^{(m)} for FiniteRotation (m <= 3, dim <= 8), vv* for Phase, x/|x| for
// Scale, xx*/|x|^2 for ScalePhase; chains compose the maps on the flattened
// features. Throws OracleSizeError beyond the size limits.
FeatureArray quotient_map_oracle(const InvarianceSpec& spec, const DataPoint& x);

// sum_i a_i conj(b_i) over flattened features.
Scalar frobenius_inner(const FeatureArray& a, const FeatureArray& b);

// ---------------------------------------------------------------------------
// Executable invariance predicate.

struct InvarianceReport {
  double max_deviation = 0.0;   // max |k(g.x, h.y) - k(x, y)|
  double max_abs_value = 0.0;   // max |k(x, y)| over the tested pairs
  double relative_deviation = 0.0;
  bool passed = true;
  std::size_t evaluations = 0;
  // Pair achieving the largest deviation.
  std::size_t witness_i = 0;
  std::size_t witness_j = 0;
};

inline constexpr double kInvarianceTolerance = 1e-10;

// For every pair i < j of samples (or the single point with itself) and
// n_group_samples independent draws (g, h), compares k(g.x, h.y) with
// k(x, y). `group` defaults to the kernel's own invariance; without either,
// only the identity is applied. Passes when the largest deviation is at most
// 1e-10 times the largest |k|.
InvarianceReport check_invariance(
    const KernelSpec& kernel, const Dataset& samples, int n_group_samples,
    std::uint64_t seed, const std::optional<InvarianceSpec>& group = std::nullopt);

}  // namespace invk
