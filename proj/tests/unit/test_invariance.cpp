#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "invk/errors.hpp"
#include "invk/invariance.hpp"
#include "oracles.hpp"

using namespace invk;
using oracle::C;
using oracle::Vec;

namespace {

DataPoint rp(std::vector<double> v) { return DataPoint::real(v); }
DataPoint cp(Vec v) { return DataPoint::complex(v); }

Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t dim, bool complex) {
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    d.points.push_back(complex ? cp(oracle::gaussian_complex(rng, dim))
                               : rp(oracle::gaussian_reals(rng, dim)));
  }
  return d;
}

std::vector<BaseKernelSpec> all_bases() {
  return {Linear{}, Gaussian{1.3}, Laplace{0.8}, PolyInhom{2}, PolyHom{3}};
}

}  // namespace

// Text grammar.

TEST(ParseInvariance, SimpleNames) {
  EXPECT_EQ(parse_invariance("sign"), InvarianceSpec::sign());
  EXPECT_EQ(parse_invariance("rot:2"), InvarianceSpec::sign());
  EXPECT_EQ(parse_invariance("rot:5"), InvarianceSpec::rotation(5));
  EXPECT_EQ(parse_invariance("phase"), InvarianceSpec::phase());
  EXPECT_EQ(parse_invariance("scale"), InvarianceSpec::scale());
  EXPECT_EQ(parse_invariance("proj"), InvarianceSpec::projective());
}

TEST(ParseInvariance, CaseAndWhitespaceInsensitive) {
  EXPECT_EQ(parse_invariance("  Chain( SCALE , Sign ) "),
            InvarianceSpec::chain({InvarianceSpec::scale(), InvarianceSpec::sign()}));
  EXPECT_EQ(parse_invariance("ROT : 3"), InvarianceSpec::rotation(3));
}

TEST(ParseInvariance, NestedChains) {
  const auto spec = parse_invariance("chain(chain(scale,phase),rot:3)");
  const auto want = InvarianceSpec::chain(
      {InvarianceSpec::chain({InvarianceSpec::scale(), InvarianceSpec::phase()}),
       InvarianceSpec::rotation(3)});
  EXPECT_EQ(spec, want);
}

TEST(ParseInvariance, RejectsMalformedText) {
  for (const char* bad : {"", "rot", "rot:", "rot:x", "rot:1", "chain()", "chain(scale",
                          "chain(scale,)", "spin", "sign,scale", "scale)"}) {
    EXPECT_THROW(parse_invariance(bad), ParseError) << bad;
  }
}

TEST(ParseInvariance, ParseErrorsAreUsageErrors) {
  try {
    parse_invariance("rot:x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Usage);
    EXPECT_EQ(e.line(), 0u);
    EXPECT_EQ(e.column(), 5u);
  }
}

TEST(ParseInvariance, DepthLimit) {
  EXPECT_NO_THROW(parse_invariance("chain(chain(chain(chain(sign))))"));
  EXPECT_THROW(parse_invariance("chain(chain(chain(chain(chain(sign)))))"), ParseError);
}

TEST(InvarianceText, CanonicalRoundTrip) {
  for (const char* text : {"sign", "rot:3", "phase", "scale", "proj", "chain(scale,sign)",
                           "chain(phase,chain(scale,rot:4))"}) {
    const auto spec = parse_invariance(text);
    EXPECT_EQ(to_string(spec), text);
    EXPECT_EQ(parse_invariance(to_string(spec)), spec);
  }
  EXPECT_EQ(to_string(InvarianceSpec::rotation(2)), "sign");
}

TEST(InvarianceSpecValidate, RejectsBadSpecs) {
  EXPECT_THROW(validate(InvarianceSpec::rotation(1)), SpecError);
  EXPECT_THROW(validate(InvarianceSpec::chain({})), SpecError);
  auto deep = InvarianceSpec::sign();
  for (int i = 0; i < 5; ++i) deep = InvarianceSpec::chain({deep});
  EXPECT_THROW(validate(deep), SpecError);
  EXPECT_NO_THROW(validate(InvarianceSpec::chain({InvarianceSpec::scale(), InvarianceSpec::phase()})));
}

TEST(ChainWarnings, ValidatedPairsAreSilent) {
  EXPECT_TRUE(chain_warnings(parse_invariance("chain(scale,sign)")).empty());
  EXPECT_TRUE(chain_warnings(parse_invariance("chain(rot:3,scale)")).empty());
  EXPECT_TRUE(chain_warnings(parse_invariance("chain(phase,scale)")).empty());
  EXPECT_TRUE(chain_warnings(parse_invariance("proj")).empty());
}

TEST(ChainWarnings, OtherPairsWarn) {
  EXPECT_EQ(chain_warnings(parse_invariance("chain(sign,phase)")).size(), 1u);
  EXPECT_EQ(chain_warnings(parse_invariance("chain(scale,scale)")).size(), 1u);
  EXPECT_EQ(chain_warnings(parse_invariance("chain(proj,sign,scale)")).size(), 1u);
}

// Group actions.

TEST(ApplyGroup, SignFlip) {
  const auto out = apply_group(GroupElement{RotationElement{2, 1}}, rp({1, -2}));
  EXPECT_EQ(out.field, Field::Real);
  EXPECT_EQ(out.coords[0], Scalar(-1.0));
  EXPECT_EQ(out.coords[1], Scalar(2.0));
}

TEST(ApplyGroup, QuarterPhaseTurn) {
  const auto out = apply_group(GroupElement{PhaseElement{0.25}}, cp({1.0, 0.0}));
  EXPECT_EQ(out.coords[0], Scalar(0.0, 1.0));
  EXPECT_EQ(out.coords[1], Scalar(0.0, 0.0));
}

TEST(ApplyGroup, ScaleByThree) {
  const auto out = apply_group(GroupElement{ScaleElement{std::log(3.0)}}, rp({1, 1}));
  EXPECT_NEAR(out.coords[0].real(), 3.0, 1e-15);
  EXPECT_NEAR(out.coords[1].real(), 3.0, 1e-15);
}

TEST(ApplyGroup, ComplexFactorOnRealDataThrows) {
  EXPECT_THROW(apply_group(GroupElement{PhaseElement{0.25}}, rp({1, 0})), FieldError);
  EXPECT_THROW(apply_group(GroupElement{RotationElement{3, 1}}, rp({1, 0})), FieldError);
  EXPECT_NO_THROW(apply_group(GroupElement{PhaseElement{0.5}}, rp({1, 0})));
}

TEST(ApplyGroup, IdentityAndCompositionLaws) {
  std::mt19937_64 rng(3);
  for (const char* text : {"rot:5", "phase", "scale", "proj", "chain(scale,rot:3)"}) {
    const auto spec = parse_invariance(text);
    const auto x = cp(oracle::gaussian_complex(rng, 3));
    const auto id = apply_group(identity_element(spec), x);
    EXPECT_LE((id.coords - x.coords).norm(), 1e-15) << text;
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = sample_element(spec, Field::Complex, rng);
      const auto h = sample_element(spec, Field::Complex, rng);
      const auto lhs = apply_group(g, apply_group(h, x));
      const auto rhs = apply_group(compose(g, h), x);
      EXPECT_LE((lhs.coords - rhs.coords).norm(), 1e-12 * (1 + lhs.coords.norm())) << text;
    }
  }
}

TEST(ApplyGroup, ComposeRejectsMixedGroups) {
  EXPECT_THROW(compose(GroupElement{ScaleElement{1}}, GroupElement{PhaseElement{0.1}}), SpecError);
  EXPECT_THROW(compose(GroupElement{RotationElement{3, 1}}, GroupElement{RotationElement{4, 1}}),
               SpecError);
}

TEST(SampleElement, RangesAndRealSubgroups) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto r = std::get<RotationElement>(sample_element(InvarianceSpec::rotation(5), Field::Complex, rng).kind);
    EXPECT_GE(r.residue, 0);
    EXPECT_LT(r.residue, 5);
    const auto p = std::get<PhaseElement>(sample_element(InvarianceSpec::phase(), Field::Complex, rng).kind);
    EXPECT_GE(p.angle, 0.0);
    EXPECT_LT(p.angle, 1.0);
    const auto pr = std::get<PhaseElement>(sample_element(InvarianceSpec::phase(), Field::Real, rng).kind);
    EXPECT_TRUE(pr.angle == 0.0 || pr.angle == 0.5);
    const auto sp = std::get<ScalePhaseElement>(sample_element(InvarianceSpec::projective(), Field::Real, rng).kind);
    EXPECT_EQ(sp.factor.imag(), 0.0);
    EXPECT_NE(sp.factor.real(), 0.0);
  }
}

// Invariant inner kernels.

TEST(InvariantInner, ScaleOfParallelVectorsIsOne) {
  EXPECT_NEAR(invariant_inner(InvarianceSpec::scale(), rp({0.3, -2, 1}), rp({1.5, -10, 5})).real(),
              1.0, 1e-15);
}

TEST(InvariantInner, SignSquaresInnerProduct) {
  EXPECT_EQ(invariant_inner(InvarianceSpec::sign(), rp({1, 2}), rp({3, 4})), Scalar(121.0));
  // Oracle: <xx', yy'>_F entrywise.
  const Vec fx = oracle::tensor_power({1.0, 2.0}, 2), fy = oracle::tensor_power({3.0, 4.0}, 2);
  EXPECT_EQ(oracle::frobenius(fx, fy), C(121.0));
}

TEST(InvariantInner, PhaseOfOrthogonalInputsIsZero) {
  EXPECT_EQ(invariant_inner(InvarianceSpec::phase(), rp({1, 0}), rp({0, 1})), Scalar(0.0));
}

TEST(InvariantInner, ProjectiveHalf) {
  EXPECT_NEAR(invariant_inner(InvarianceSpec::projective(), rp({1, 0}), rp({1, 1})).real(), 0.5,
              1e-15);
}

TEST(InvariantInner, ZeroVectorUnderScaleThrows) {
  EXPECT_THROW(invariant_inner(InvarianceSpec::scale(), rp({0, 0}), rp({1, 1})), ZeroVectorError);
  EXPECT_THROW(invariant_inner(InvarianceSpec::projective(), rp({1, 1}), rp({0, 0})),
               ZeroVectorError);
  EXPECT_THROW(invariant_inner(parse_invariance("chain(sign,scale)"), rp({0, 0}), rp({1, 1})),
               ZeroVectorError);
  EXPECT_TRUE(requires_nonzero(parse_invariance("chain(sign,scale)")));
  EXPECT_FALSE(requires_nonzero(InvarianceSpec::phase()));
}

TEST(InvariantInner, HigherRotationOnRealDataThrows) {
  EXPECT_THROW(invariant_inner(InvarianceSpec::rotation(3), rp({1, 0}), rp({0, 1})), FieldError);
  EXPECT_NO_THROW(invariant_inner(InvarianceSpec::rotation(3), cp({1.0, 0.0}), cp({0.0, 1.0})));
}

TEST(InvariantInner, RangeBounds) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = cp(oracle::gaussian_complex(rng, 4));
    const auto y = cp(oracle::gaussian_complex(rng, 4));
    const Scalar proj = invariant_inner(InvarianceSpec::projective(), x, y);
    EXPECT_EQ(proj.imag(), 0.0);
    EXPECT_GE(proj.real(), 0.0);
    EXPECT_LE(proj.real(), 1.0 + 1e-15);
    const Scalar phase = invariant_inner(InvarianceSpec::phase(), x, y);
    EXPECT_EQ(phase.imag(), 0.0);
    EXPECT_GE(phase.real(), 0.0);
    for (const char* text : {"rot:3", "phase", "scale", "proj", "chain(scale,phase)"}) {
      const double k = eval_kernel({Gaussian{0.7}, parse_invariance(text)}, x, y);
      EXPECT_GE(k, 0.0) << text;
      EXPECT_LE(k, 1.0) << text;
    }
  }
}

// Kernel evaluation.

TEST(EvalKernel, SignCollapsesNegation) {
  const KernelSpec spec{Gaussian{0.37}, InvarianceSpec::sign()};
  EXPECT_EQ(eval_kernel(spec, rp({1.5, -2, 0.25}), rp({-1.5, 2, -0.25})), 1.0);
}

TEST(EvalKernel, SignGaussianUnitVectors) {
  const KernelSpec spec{Gaussian{1.0}, InvarianceSpec::sign()};
  const double k = eval_kernel(spec, rp({1, 0}), rp({0, 1}));
  EXPECT_NEAR(k, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(k, oracle::sign_gaussian_outer({1, 0}, {0, 1}, 1.0), 1e-15);
}

TEST(EvalKernel, ScaleGaussianClosedForm) {
  const KernelSpec spec{Gaussian{1.0}, InvarianceSpec::scale()};
  EXPECT_NEAR(eval_kernel(spec, rp({1, 0}), rp({1, 1})), std::exp(1.0 / std::sqrt(2.0) - 1.0), 1e-15);
  EXPECT_NEAR(eval_kernel(spec, rp({1, 0}), rp({1, 1})), 0.7461018, 1e-6);
}

TEST(EvalKernel, SignPolynomial) {
  const KernelSpec spec{PolyInhom{2}, InvarianceSpec::sign()};
  EXPECT_EQ(eval_kernel(spec, rp({1, 2}), rp({3, 4})), 14884.0);
}

TEST(EvalKernel, WithoutInvarianceMatchesBase) {
  std::mt19937_64 rng(4);
  for (const auto& base : all_bases()) {
    const auto x = cp(oracle::gaussian_complex(rng, 3));
    const auto y = cp(oracle::gaussian_complex(rng, 3));
    EXPECT_EQ(eval_kernel({base, std::nullopt}, x, y), eval_base(base, make_triple(x, y)));
  }
}

TEST(EvalKernel, PropagatesDimensionErrors) {
  EXPECT_THROW(eval_kernel({Gaussian{1}, InvarianceSpec::sign()}, rp({1}), rp({1, 2})),
               DimensionError);
}

TEST(KernelSpecText, JoinsBaseAndInvariance) {
  EXPECT_EQ(to_string(KernelSpec{Gaussian{22}, InvarianceSpec::sign()}), "gaussian(sigma=22)+sign");
  EXPECT_EQ(to_string(KernelSpec{Linear{}, std::nullopt}), "linear");
  EXPECT_THROW(validate(KernelSpec{Gaussian{-1}, InvarianceSpec::sign()}), SpecError);
}

// Explicit quotient maps.

TEST(QuotientOracle, SignOuterProduct) {
  const auto f = quotient_map_oracle(InvarianceSpec::sign(), rp({1, 2}));
  ASSERT_EQ(f.shape, (std::vector<Eigen::Index>{2, 2}));
  const std::vector<double> want{1, 2, 2, 4};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(f.values[i], Scalar(want[static_cast<std::size_t>(i)]));
}

TEST(QuotientOracle, ScaleNormalizes) {
  const auto f = quotient_map_oracle(InvarianceSpec::scale(), rp({3, 4}));
  EXPECT_NEAR(f.values[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(f.values[1].real(), 0.8, 1e-15);
}

TEST(QuotientOracle, PhaseHermitianOuter) {
  const auto f = quotient_map_oracle(InvarianceSpec::phase(), cp({1.0, C(0, 1)}));
  EXPECT_EQ(f.values[0], Scalar(1, 0));
  EXPECT_EQ(f.values[1], Scalar(0, -1));
  EXPECT_EQ(f.values[2], Scalar(0, 1));
  EXPECT_EQ(f.values[3], Scalar(1, 0));
}

TEST(QuotientOracle, SizeLimits) {
  EXPECT_THROW(quotient_map_oracle(InvarianceSpec::rotation(4), cp({1.0, 2.0})), OracleSizeError);
  EXPECT_THROW(quotient_map_oracle(InvarianceSpec::sign(), rp({1, 2, 3, 4, 5, 6, 7, 8, 9})),
               OracleSizeError);
  EXPECT_THROW(quotient_map_oracle(InvarianceSpec::scale(), rp({0, 0})), ZeroVectorError);
}

TEST(QuotientOracle, TrickEqualsExplicitFeatures) {
  std::mt19937_64 rng(31);
  for (int m = 2; m <= 3; ++m) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (int trial = 0; trial < 5; ++trial) {
        const Vec xs = oracle::gaussian_complex(rng, n), ys = oracle::gaussian_complex(rng, n);
        const auto spec = InvarianceSpec::rotation(m);
        const Scalar trick = invariant_inner(spec, cp(xs), cp(ys));
        const C test_oracle =
            oracle::frobenius(oracle::tensor_power(xs, m), oracle::tensor_power(ys, m));
        const Scalar lib_oracle = frobenius_inner(quotient_map_oracle(spec, cp(xs)),
                                                  quotient_map_oracle(spec, cp(ys)));
        EXPECT_LE(std::abs(trick - test_oracle), 1e-9 * (1 + std::abs(test_oracle)));
        EXPECT_LE(std::abs(lib_oracle - test_oracle), 1e-9 * (1 + std::abs(test_oracle)));
      }
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Vec xs = oracle::gaussian_complex(rng, 5), ys = oracle::gaussian_complex(rng, 5);
    const Scalar phase = invariant_inner(InvarianceSpec::phase(), cp(xs), cp(ys));
    const C phase_oracle = oracle::frobenius(oracle::hermitian_outer(xs), oracle::hermitian_outer(ys));
    EXPECT_LE(std::abs(phase - phase_oracle), 1e-9 * (1 + std::abs(phase_oracle)));
    for (const char* text : {"scale", "proj", "chain(scale,phase)", "chain(sign,scale)"}) {
      const auto spec = parse_invariance(text);
      const Scalar trick = invariant_inner(spec, cp(xs), cp(ys));
      const Scalar features =
          frobenius_inner(quotient_map_oracle(spec, cp(xs)), quotient_map_oracle(spec, cp(ys)));
      EXPECT_LE(std::abs(trick - features), 1e-9 * (1 + std::abs(features))) << text;
    }
  }
}

// Identities and closed forms.

TEST(OuterProductForm, SignGaussianMatchesFrobeniusDistance) {
  std::mt19937_64 rng(41);
  for (double sigma : {0.5, 1.0, 22.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 10);
      const auto x = oracle::gaussian_reals(rng, n), y = oracle::gaussian_reals(rng, n);
      const double got = eval_kernel({Gaussian{sigma}, InvarianceSpec::sign()}, rp(x), rp(y));
      EXPECT_NEAR(got, oracle::sign_gaussian_outer(x, y, sigma), 1e-10);
    }
  }
}

TEST(ClosedForms, EveryGroupAndFamily) {
  std::mt19937_64 rng(43);
  const double sigma = 1.9;
  const int d = 3;
  auto check = [](double got, double want, const char* what) {
    EXPECT_LE(oracle::rel_err(got, want), 1e-12) << what << " got " << got << " want " << want;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x = oracle::gaussian_complex(rng, 3), y = oracle::gaussian_complex(rng, 3);
    const auto rx = oracle::gaussian_reals(rng, 3), ry = oracle::gaussian_reals(rng, 3);
    const Vec xr = oracle::complexify(rx), yr = oracle::complexify(ry);
    for (int m : {2, 3}) {
      const auto s = InvarianceSpec::rotation(m);
      check(eval_kernel({Linear{}, s}, cp(x), cp(y)), oracle::closed::rot_linear(x, y, m), "rotE");
      check(eval_kernel({PolyInhom{d}, s}, cp(x), cp(y)), oracle::closed::rot_poly(x, y, m, d), "rotPi");
      check(eval_kernel({Gaussian{sigma}, s}, cp(x), cp(y)), oracle::closed::rot_gauss(x, y, m, sigma), "rotG");
    }
    check(eval_kernel({Gaussian{sigma}, InvarianceSpec::sign()}, rp(rx), rp(ry)),
          oracle::closed::rot_gauss(xr, yr, 2, sigma), "signG real");
    const auto ph = InvarianceSpec::phase();
    check(eval_kernel({Linear{}, ph}, cp(x), cp(y)), oracle::closed::phase_linear(x, y), "phaseE");
    check(eval_kernel({PolyInhom{d}, ph}, cp(x), cp(y)), oracle::closed::phase_poly(x, y, d), "phasePi");
    check(eval_kernel({Gaussian{sigma}, ph}, cp(x), cp(y)), oracle::closed::phase_gauss(x, y, sigma), "phaseG");
    for (bool complex : {false, true}) {
      const auto px = complex ? cp(x) : rp(rx);
      const auto py = complex ? cp(y) : rp(ry);
      const Vec vx = complex ? x : xr, vy = complex ? y : yr;
      const auto sc = InvarianceSpec::scale();
      check(eval_kernel({Linear{}, sc}, px, py), oracle::closed::scale_linear(vx, vy), "scaleE");
      check(eval_kernel({PolyInhom{d}, sc}, px, py), oracle::closed::scale_poly(vx, vy, d), "scalePi");
      check(eval_kernel({Gaussian{sigma}, sc}, px, py), oracle::closed::scale_gauss(vx, vy, sigma), "scaleG");
      const auto pj = InvarianceSpec::projective();
      check(eval_kernel({Linear{}, pj}, px, py), oracle::closed::proj_linear(vx, vy), "projE");
      check(eval_kernel({PolyInhom{d}, pj}, px, py), oracle::closed::proj_poly(vx, vy, d), "projPi");
      check(eval_kernel({Gaussian{sigma}, pj}, px, py), oracle::closed::proj_gauss(vx, vy, sigma), "projG");
    }
  }
}

TEST(ChainCommutativity, ScaleAndSignMatchProjective) {
  std::mt19937_64 rng(47);
  const auto ab = parse_invariance("chain(scale,sign)");
  const auto ba = parse_invariance("chain(sign,scale)");
  const auto proj = InvarianceSpec::projective();
  for (const auto& base : all_bases()) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = rp(oracle::gaussian_reals(rng, 4)), y = rp(oracle::gaussian_reals(rng, 4));
      const double k1 = eval_kernel({base, ab}, x, y);
      const double k2 = eval_kernel({base, ba}, x, y);
      const double k3 = eval_kernel({base, proj}, x, y);
      EXPECT_LE(std::abs(k1 - k2), 1e-12 * std::max(1.0, std::abs(k3))) << to_string(base);
      EXPECT_LE(std::abs(k1 - k3), 1e-12 * std::max(1.0, std::abs(k3))) << to_string(base);
    }
  }
}

// Executable invariance predicate.

TEST(CheckInvariance, NoInvarianceIdentityHasZeroDeviation) {
  std::mt19937_64 rng(51);
  const auto data = random_dataset(rng, 10, 3, false);
  const auto report = check_invariance({Gaussian{1}, std::nullopt}, data, 4, 0);
  EXPECT_EQ(report.max_deviation, 0.0);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.evaluations, 45u * 4u);
}

TEST(CheckInvariance, SignGaussianPasses) {
  std::mt19937_64 rng(53);
  const auto data = random_dataset(rng, 20, 4, false);
  const auto report = check_invariance({Gaussian{1.5}, InvarianceSpec::sign()}, data, 8, 1);
  EXPECT_TRUE(report.passed);
  EXPECT_LE(report.max_deviation, 1e-10);
}

TEST(CheckInvariance, PlainGaussianFailsAgainstSignGroup) {
  std::mt19937_64 rng(57);
  const auto data = random_dataset(rng, 20, 4, false);
  const auto report =
      check_invariance({Gaussian{1.5}, std::nullopt}, data, 8, 1, InvarianceSpec::sign());
  EXPECT_FALSE(report.passed);
  EXPECT_GT(report.max_deviation, 1e-3);
  EXPECT_LT(report.witness_i, report.witness_j);
}

TEST(CheckInvariance, SinglePointUsesSelfPair) {
  Dataset one;
  one.points.push_back(rp({1, 2}));
  const auto report = check_invariance({Gaussian{1}, InvarianceSpec::sign()}, one, 3, 0);
  EXPECT_EQ(report.evaluations, 3u);
  EXPECT_TRUE(report.passed);
}

TEST(CheckInvariance, RejectsEmptyInputs) {
  EXPECT_THROW(check_invariance({Gaussian{1}, InvarianceSpec::sign()}, Dataset{}, 3, 0), SpecError);
  Dataset one;
  one.points.push_back(rp({1, 2}));
  EXPECT_THROW(check_invariance({Gaussian{1}, InvarianceSpec::sign()}, one, 0, 0), SpecError);
}

TEST(CheckInvariance, AllCombinationsPass) {
  std::mt19937_64 rng(59);
  const auto real = random_dataset(rng, 12, 3, false);
  const auto complex = random_dataset(rng, 12, 3, true);
  for (const auto& base : all_bases()) {
    for (const char* text : {"sign", "scale", "proj", "phase", "chain(scale,sign)"}) {
      const auto r = check_invariance({base, parse_invariance(text)}, real, 6, 2);
      EXPECT_TRUE(r.passed) << to_string(base) << " " << text << " rel " << r.relative_deviation;
    }
    for (const char* text : {"rot:3", "rot:4", "phase", "scale", "proj", "chain(scale,phase)"}) {
      const auto r = check_invariance({base, parse_invariance(text)}, complex, 6, 2);
      EXPECT_TRUE(r.passed) << to_string(base) << " " << text << " rel " << r.relative_deviation;
    }
  }
}
