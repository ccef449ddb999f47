#include "invk/invariance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "internal.hpp"
#include "invk/errors.hpp"

namespace invk {

using detail::Overloaded;

namespace {

constexpr int kMaxChainDepth = 4;
constexpr int kOracleMaxOrder = 3;
constexpr Eigen::Index kOracleMaxRotationDim = 8;
constexpr Eigen::Index kOracleMaxFeatures = Eigen::Index{1} << 20;

Scalar ipow(Scalar base, int exponent) {
  Scalar result{1.0, 0.0};
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

double ipow(double base, int exponent) {
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

// exp(2 pi i num/den), exact on quarter turns.
Scalar root_of_unity(long long num, long long den) {
  num %= den;
  if (num < 0) num += den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) /
                             static_cast<double>(den));
}

Scalar turn(double angle) {
  double a = angle - std::floor(angle);
  const double quarters = a * 4.0;
  if (quarters == std::floor(quarters)) {
    return root_of_unity(static_cast<long long>(quarters), 4);
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * a);
}

void validate_at_depth(const InvarianceSpec& spec, int depth) {
  std::visit(Overloaded{
                 [](const FiniteRotation& r) {
                   if (r.m < 2) {
                     throw SpecError("rotation order must be >= 2, got " +
                                     std::to_string(r.m));
                   }
                 },
                 [](const Phase&) {},
                 [](const Scale&) {},
                 [](const ScalePhase&) {},
                 [depth](const Chain& c) {
                   if (c.stages.empty()) throw SpecError("empty invariance chain");
                   if (depth >= kMaxChainDepth) {
                     throw SpecError("invariance chains nest at most " +
                                     std::to_string(kMaxChainDepth) + " deep");
                   }
                   for (const auto& s : c.stages) validate_at_depth(s, depth + 1);
                 },
             },
             spec.kind);
}

ScalarTriple lift_stage(const InvarianceSpec& spec, const ScalarTriple& t,
                        Field field) {
  auto require_nonzero = [&t]() {
    if (!(t.sxx > 0.0) || !(t.syy > 0.0)) {
      throw ZeroVectorError("scale invariance is undefined for the zero vector");
    }
  };
  return std::visit(
      Overloaded{
          [&](const FiniteRotation& r) {
            if (field == Field::Real && r.m >= 3) {
              throw FieldError("rot:" + std::to_string(r.m) +
                               " acts on complex coordinates only");
            }
            return ScalarTriple{ipow(t.sxx, r.m), ipow(t.sxy, r.m),
                                ipow(t.syy, r.m)};
          },
          [&](const Phase&) {
            return ScalarTriple{t.sxx * t.sxx, Scalar{std::norm(t.sxy), 0.0},
                                t.syy * t.syy};
          },
          [&](const Scale&) {
            require_nonzero();
            return ScalarTriple{1.0, t.sxy / std::sqrt(t.sxx * t.syy), 1.0};
          },
          [&](const ScalePhase&) {
            require_nonzero();
            return ScalarTriple{1.0, Scalar{std::norm(t.sxy) / (t.sxx * t.syy), 0.0},
                                1.0};
          },
          [&](const Chain& c) {
            ScalarTriple current = t;
            for (const auto& stage : c.stages) {
              current = lift_stage(stage, current, field);
            }
            return current;
          },
      },
      spec.kind);
}

enum class StageKind { Rotation, Phase, Scale, ScalePhase, Chain };

StageKind stage_kind(const InvarianceSpec& s) {
  return static_cast<StageKind>(s.kind.index());
}

void collect_warnings(const InvarianceSpec& spec, std::vector<std::string>& out) {
  const auto* chain = std::get_if<Chain>(&spec.kind);
  if (chain == nullptr) return;
  for (const auto& s : chain->stages) collect_warnings(s, out);
  for (std::size_t i = 0; i + 1 < chain->stages.size(); ++i) {
    const StageKind a = stage_kind(chain->stages[i]);
    const StageKind b = stage_kind(chain->stages[i + 1]);
    auto compatible = [](StageKind p, StageKind q) {
      return p == StageKind::Scale &&
             (q == StageKind::Rotation || q == StageKind::Phase);
    };
    if (!compatible(a, b) && !compatible(b, a)) {
      out.push_back("chain stages '" + to_string(chain->stages[i]) + "' and '" +
                    to_string(chain->stages[i + 1]) +
                    "' are not a validated combination; the quotient may "
                    "collapse distinct orbits");
    }
  }
}

class InvarianceParser {
 public:
  explicit InvarianceParser(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const unsigned char c = static_cast<unsigned char>(text[i]);
      if (std::isspace(c)) continue;
      chars_.push_back(static_cast<char>(std::tolower(c)));
      columns_.push_back(i + 1);
    }
  }

  InvarianceSpec parse() {
    InvarianceSpec spec = parse_item(0);
    if (pos_ != chars_.size()) fail("unexpected trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    const std::size_t column =
        pos_ < columns_.size() ? columns_[pos_]
                               : (columns_.empty() ? 1 : columns_.back() + 1);
    throw ParseError(0, column, "invariance spec: " + message);
  }

  bool accept(char c) {
    if (pos_ < chars_.size() && chars_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string word() {
    std::string out;
    while (pos_ < chars_.size() && std::isalpha(static_cast<unsigned char>(chars_[pos_]))) {
      out.push_back(chars_[pos_++]);
    }
    return out;
  }

  int integer() {
    std::string digits;
    while (pos_ < chars_.size() && std::isdigit(static_cast<unsigned char>(chars_[pos_]))) {
      digits.push_back(chars_[pos_++]);
    }
    if (digits.empty() || digits.size() > 6) fail("expected a rotation order");
    return std::stoi(digits);
  }

  InvarianceSpec parse_item(int depth) {
    const std::size_t start = pos_;
    const std::string name = word();
    if (name == "sign") return InvarianceSpec::sign();
    if (name == "phase") return InvarianceSpec::phase();
    if (name == "scale") return InvarianceSpec::scale();
    if (name == "proj") return InvarianceSpec::projective();
    if (name == "rot") {
      if (!accept(':')) fail("expected ':' after 'rot'");
      const int m = integer();
      if (m < 2) fail("rotation order must be >= 2");
      return InvarianceSpec::rotation(m);
    }
    if (name == "chain") {
      if (depth >= kMaxChainDepth) fail("chains nest at most 4 deep");
      if (!accept('(')) fail("expected '(' after 'chain'");
      Chain chain;
      do {
        chain.stages.push_back(parse_item(depth + 1));
      } while (accept(','));
      if (!accept(')')) fail("expected ')' closing chain");
      return InvarianceSpec{std::move(chain)};
    }
    pos_ = start;
    fail(name.empty() ? "expected an invariance name"
                      : "unknown invariance '" + name + "'");
  }

  std::string chars_;
  std::vector<std::size_t> columns_;
  std::size_t pos_ = 0;
};

Vector rotation_tensor(const Vector& x, int m) {
  const Eigen::Index n = x.size();
  Eigen::Index total = 1;
  for (int i = 0; i < m; ++i) total *= n;
  Vector out(total);
  std::vector<Eigen::Index> index(static_cast<std::size_t>(m), 0);
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Scalar v{1.0, 0.0};
    for (auto i : index) v *= x[i];
    out[flat] = v;
    // Last index varies fastest.
    for (int k = m - 1; k >= 0; --k) {
      auto& idx = index[static_cast<std::size_t>(k)];
      if (++idx < n) break;
      idx = 0;
    }
  }
  return out;
}

FeatureArray outer_self(const Vector& x, double scale) {
  const Eigen::Index n = x.size();
  if (n * n > kOracleMaxFeatures) {
    throw OracleSizeError("outer product oracle exceeds the feature budget");
  }
  FeatureArray f;
  f.shape = {n, n};
  f.values.resize(n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      f.values[i * n + j] = x[i] * std::conj(x[j]) * scale;
    }
  }
  return f;
}

}  // namespace

bool operator==(const InvarianceSpec& a, const InvarianceSpec& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (const auto* ra = std::get_if<FiniteRotation>(&a.kind)) {
    return ra->m == std::get<FiniteRotation>(b.kind).m;
  }
  if (const auto* ca = std::get_if<Chain>(&a.kind)) {
    return ca->stages == std::get<Chain>(b.kind).stages;
  }
  return true;
}

void validate(const InvarianceSpec& spec) { validate_at_depth(spec, 0); }

std::vector<std::string> chain_warnings(const InvarianceSpec& spec) {
  std::vector<std::string> out;
  collect_warnings(spec, out);
  return out;
}

InvarianceSpec parse_invariance(std::string_view text) {
  return InvarianceParser(text).parse();
}

std::string to_string(const InvarianceSpec& spec) {
  return std::visit(Overloaded{
                        [](const FiniteRotation& r) {
                          return r.m == 2 ? std::string("sign")
                                          : "rot:" + std::to_string(r.m);
                        },
                        [](const Phase&) { return std::string("phase"); },
                        [](const Scale&) { return std::string("scale"); },
                        [](const ScalePhase&) { return std::string("proj"); },
                        [](const Chain& c) {
                          std::string out = "chain(";
                          for (std::size_t i = 0; i < c.stages.size(); ++i) {
                            if (i > 0) out += ",";
                            out += to_string(c.stages[i]);
                          }
                          return out + ")";
                        },
                    },
                    spec.kind);
}

bool requires_nonzero(const InvarianceSpec& spec) {
  return std::visit(Overloaded{
                        [](const Scale&) { return true; },
                        [](const ScalePhase&) { return true; },
                        [](const Chain& c) {
                          return std::any_of(c.stages.begin(), c.stages.end(),
                                             [](const InvarianceSpec& s) {
                                               return requires_nonzero(s);
                                             });
                        },
                        [](const auto&) { return false; },
                    },
                    spec.kind);
}

ScalarTriple lift_triple(const InvarianceSpec& spec, const ScalarTriple& t,
                         Field field) {
  return lift_stage(spec, t, field);
}

ScalarTriple invariant_triple(const InvarianceSpec& spec, const DataPoint& x,
                              const DataPoint& y) {
  const Field field = (x.field == Field::Complex || y.field == Field::Complex)
                          ? Field::Complex
                          : Field::Real;
  return lift_stage(spec, make_triple(x, y), field);
}

Scalar invariant_inner(const InvarianceSpec& spec, const DataPoint& x,
                       const DataPoint& y) {
  return invariant_triple(spec, x, y).sxy;
}

void validate(const KernelSpec& spec) {
  validate(spec.base);
  if (spec.invariance) validate(*spec.invariance);
}

std::string to_string(const KernelSpec& spec) {
  std::string out = to_string(spec.base);
  if (spec.invariance) out += "+" + to_string(*spec.invariance);
  return out;
}

ScalarTriple kernel_triple(const KernelSpec& spec, const DataPoint& x,
                           const DataPoint& y) {
  if (spec.invariance) return invariant_triple(*spec.invariance, x, y);
  return make_triple(x, y);
}

double eval_kernel(const KernelSpec& spec, const DataPoint& x,
                   const DataPoint& y) {
  return eval_base(spec.base, kernel_triple(spec, x, y));
}

GroupElement identity_element(const InvarianceSpec& spec) {
  return std::visit(
      Overloaded{
          [](const FiniteRotation& r) { return GroupElement{RotationElement{r.m, 0}}; },
          [](const Phase&) { return GroupElement{PhaseElement{0.0}}; },
          [](const Scale&) { return GroupElement{ScaleElement{0.0}}; },
          [](const ScalePhase&) { return GroupElement{ScalePhaseElement{{1.0, 0.0}}}; },
          [](const Chain& c) {
            ChainElement e;
            for (const auto& s : c.stages) e.stages.push_back(identity_element(s));
            return GroupElement{std::move(e)};
          },
      },
      spec.kind);
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (g.kind.index() != h.kind.index()) {
    throw SpecError("cannot compose elements of different groups");
  }
  return std::visit(
      Overloaded{
          [&](const RotationElement& a) {
            const auto& b = std::get<RotationElement>(h.kind);
            if (a.m != b.m) throw SpecError("rotation orders differ");
            return GroupElement{RotationElement{a.m, (a.residue + b.residue) % a.m}};
          },
          [&](const PhaseElement& a) {
            const double s = a.angle + std::get<PhaseElement>(h.kind).angle;
            return GroupElement{PhaseElement{s - std::floor(s)}};
          },
          [&](const ScaleElement& a) {
            return GroupElement{
                ScaleElement{a.log_factor + std::get<ScaleElement>(h.kind).log_factor}};
          },
          [&](const ScalePhaseElement& a) {
            return GroupElement{
                ScalePhaseElement{a.factor * std::get<ScalePhaseElement>(h.kind).factor}};
          },
          [&](const ChainElement& a) {
            const auto& b = std::get<ChainElement>(h.kind);
            if (a.stages.size() != b.stages.size()) {
              throw SpecError("chain elements have different lengths");
            }
            ChainElement out;
            for (std::size_t i = 0; i < a.stages.size(); ++i) {
              out.stages.push_back(compose(a.stages[i], b.stages[i]));
            }
            return GroupElement{std::move(out)};
          },
      },
      g.kind);
}

Scalar multiplier(const GroupElement& g) {
  return std::visit(
      Overloaded{
          [](const RotationElement& r) { return root_of_unity(r.residue, r.m); },
          [](const PhaseElement& p) { return turn(p.angle); },
          [](const ScaleElement& s) { return Scalar{std::exp(s.log_factor), 0.0}; },
          [](const ScalePhaseElement& s) { return s.factor; },
          [](const ChainElement& c) {
            Scalar out{1.0, 0.0};
            for (const auto& e : c.stages) out *= multiplier(e);
            return out;
          },
      },
      g.kind);
}

DataPoint apply_group(const GroupElement& g, const DataPoint& x) {
  const Scalar factor = multiplier(g);
  if (x.field == Field::Real && factor.imag() != 0.0) {
    throw FieldError("group element acts by a complex factor on real data");
  }
  DataPoint out;
  out.coords = x.coords * factor;
  out.field = x.field;
  return out;
}

GroupElement sample_element(const InvarianceSpec& spec, Field field,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_sign = [&]() { return unit(rng) < 0.5 ? 1.0 : -1.0; };
  return std::visit(
      Overloaded{
          [&](const FiniteRotation& r) {
            std::uniform_int_distribution<int> residue(0, r.m - 1);
            return GroupElement{RotationElement{r.m, residue(rng)}};
          },
          [&](const Phase&) {
            if (field == Field::Real) {
              return GroupElement{PhaseElement{random_sign() > 0 ? 0.0 : 0.5}};
            }
            return GroupElement{PhaseElement{unit(rng)}};
          },
          [&](const Scale&) { return GroupElement{ScaleElement{normal(rng)}}; },
          [&](const ScalePhase&) {
            const double magnitude = std::exp(normal(rng));
            if (field == Field::Real) {
              return GroupElement{ScalePhaseElement{{random_sign() * magnitude, 0.0}}};
            }
            return GroupElement{ScalePhaseElement{magnitude * turn(unit(rng))}};
          },
          [&](const Chain& c) {
            ChainElement e;
            for (const auto& s : c.stages) e.stages.push_back(sample_element(s, field, rng));
            return GroupElement{std::move(e)};
          },
      },
      spec.kind);
}

FeatureArray quotient_map_oracle(const InvarianceSpec& spec, const DataPoint& x) {
  const Eigen::Index n = x.dim();
  auto require_nonzero = [&x]() {
    const double norm = x.coords.norm();
    if (!(norm > 0.0)) {
      throw ZeroVectorError("scale quotient map is undefined for the zero vector");
    }
    return norm;
  };
  return std::visit(
      Overloaded{
          [&](const FiniteRotation& r) {
            if (r.m > kOracleMaxOrder || n > kOracleMaxRotationDim) {
              throw OracleSizeError("tensor oracle supports m <= 3 and dim <= 8, got m=" +
                                    std::to_string(r.m) + ", dim=" + std::to_string(n));
            }
            FeatureArray f;
            f.shape.assign(static_cast<std::size_t>(r.m), n);
            f.values = rotation_tensor(x.coords, r.m);
            return f;
          },
          [&](const Phase&) { return outer_self(x.coords, 1.0); },
          [&](const Scale&) {
            const double norm = require_nonzero();
            FeatureArray f;
            f.shape = {n};
            f.values = x.coords / norm;
            return f;
          },
          [&](const ScalePhase&) {
            const double norm = require_nonzero();
            return outer_self(x.coords, 1.0 / (norm * norm));
          },
          [&](const Chain& c) {
            FeatureArray f;
            f.shape = {n};
            f.values = x.coords;
            for (const auto& stage : c.stages) {
              DataPoint flat{f.values, x.field};
              f = quotient_map_oracle(stage, flat);
            }
            return f;
          },
      },
      spec.kind);
}

Scalar frobenius_inner(const FeatureArray& a, const FeatureArray& b) {
  if (a.values.size() != b.values.size()) {
    throw DimensionError("feature arrays differ in size");
  }
  return b.values.dot(a.values);
}

InvarianceReport check_invariance(const KernelSpec& kernel, const Dataset& samples,
                                  int n_group_samples, std::uint64_t seed,
                                  const std::optional<InvarianceSpec>& group) {
  if (samples.size() == 0) throw SpecError("check_invariance needs samples");
  if (n_group_samples < 1) throw SpecError("n_group_samples must be >= 1");
  validate(kernel);
  const std::optional<InvarianceSpec>& acting = group ? group : kernel.invariance;
  const Field field = samples.field();

  std::mt19937_64 rng(seed);
  InvarianceReport report;
  const std::size_t n = samples.size();

  auto test_pair = [&](std::size_t i, std::size_t j) {
    const DataPoint& x = samples.points[i];
    const DataPoint& y = samples.points[j];
    const double reference = eval_kernel(kernel, x, y);
    report.max_abs_value = std::max(report.max_abs_value, std::abs(reference));
    for (int s = 0; s < n_group_samples; ++s) {
      GroupElement g = acting ? sample_element(*acting, field, rng)
                              : GroupElement{ScaleElement{0.0}};
      GroupElement h = acting ? sample_element(*acting, field, rng)
                              : GroupElement{ScaleElement{0.0}};
      const double moved = eval_kernel(kernel, apply_group(g, x), apply_group(h, y));
      report.max_abs_value = std::max(report.max_abs_value, std::abs(moved));
      const double deviation = std::abs(moved - reference);
      ++report.evaluations;
      if (deviation > report.max_deviation || report.evaluations == 1) {
        report.max_deviation = std::max(report.max_deviation, deviation);
        report.witness_i = i;
        report.witness_j = j;
      }
    }
  };

  if (n == 1) {
    test_pair(0, 0);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) test_pair(i, j);
    }
  }

  report.relative_deviation =
      report.max_abs_value > 0.0 ? report.max_deviation / report.max_abs_value
                                 : report.max_deviation;
  report.passed = report.relative_deviation <= kInvarianceTolerance;
  return report;
}

}  // namespace invk
