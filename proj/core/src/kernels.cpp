#include "invk/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "invk/errors.hpp"

namespace invk {

using detail::format_double;
using detail::Overloaded;

DataPoint DataPoint::real(std::span<const double> values) {
  DataPoint p;
  p.coords.resize(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    p.coords[static_cast<Eigen::Index>(i)] = Scalar{values[i], 0.0};
  }
  p.field = Field::Real;
  return p;
}

DataPoint DataPoint::complex(std::span<const Scalar> values) {
  DataPoint p;
  p.coords = Eigen::Map<const Vector>(values.data(),
                                      static_cast<Eigen::Index>(values.size()));
  p.field = Field::Complex;
  return p;
}

void validate(const BaseKernelSpec& spec) {
  std::visit(Overloaded{
                 [](const Linear&) {},
                 [](const Gaussian& g) {
                   if (!(g.sigma > 0.0) || !std::isfinite(g.sigma)) {
                     throw SpecError("gaussian sigma must be positive, got " +
                                     format_double(g.sigma));
                   }
                 },
                 [](const Laplace& l) {
                   if (!(l.sigma > 0.0) || !std::isfinite(l.sigma)) {
                     throw SpecError("laplace sigma must be positive, got " +
                                     format_double(l.sigma));
                   }
                 },
                 [](const PolyInhom& p) {
                   if (p.degree < 1) {
                     throw SpecError("polynomial degree must be >= 1");
                   }
                 },
                 [](const PolyHom& p) {
                   if (p.degree < 1) {
                     throw SpecError("polynomial degree must be >= 1");
                   }
                 },
             },
             spec);
}

bool is_radial(const BaseKernelSpec& spec) {
  return std::holds_alternative<Gaussian>(spec) ||
         std::holds_alternative<Laplace>(spec);
}

std::string to_string(const BaseKernelSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Linear&) { return std::string("linear"); },
          [](const Gaussian& g) {
            return "gaussian(sigma=" + format_double(g.sigma) + ")";
          },
          [](const Laplace& l) {
            return "laplace(sigma=" + format_double(l.sigma) + ")";
          },
          [](const PolyInhom& p) {
            return "poly(degree=" + std::to_string(p.degree) + ")";
          },
          [](const PolyHom& p) {
            return "polyhom(degree=" + std::to_string(p.degree) + ")";
          },
      },
      spec);
}

Scalar inner_product(const DataPoint& x, const DataPoint& y) {
  if (x.dim() != y.dim()) {
    throw DimensionError("dimension mismatch: " + std::to_string(x.dim()) +
                         " vs " + std::to_string(y.dim()));
  }
  if (x.dim() == 0) {
    throw DimensionError("inner product of empty vectors");
  }
  // Eigen's dot conjugates its left operand.
  return y.coords.dot(x.coords);
}

ScalarTriple make_triple(const DataPoint& x, const DataPoint& y) {
  ScalarTriple t;
  t.sxy = inner_product(x, y);
  t.sxx = x.coords.dot(x.coords).real();
  t.syy = y.coords.dot(y.coords).real();
  return t;
}

double squared_distance(const ScalarTriple& t) {
  const double d2 = (t.sxx + t.syy) - 2.0 * t.sxy.real();
  if (d2 >= 0.0) return d2;
  const double eps = 1e-9 * std::max({t.sxx, t.syy, 1.0});
  if (d2 >= -eps) return 0.0;
  throw NegativeDistanceError("derived squared distance " + format_double(d2) +
                              " is below -" + format_double(eps) +
                              "; the triple does not come from a kernel");
}

double eval_base(const BaseKernelSpec& spec, const ScalarTriple& t) {
  return std::visit(
      Overloaded{
          [&](const Linear&) { return t.sxy.real(); },
          [&](const Gaussian& g) {
            return std::exp(-squared_distance(t) / (2.0 * g.sigma * g.sigma));
          },
          [&](const Laplace& l) {
            return std::exp(-std::sqrt(squared_distance(t)) / l.sigma);
          },
          [&](const PolyInhom& p) {
            return std::pow(t.sxy.real() + 1.0, p.degree);
          },
          [&](const PolyHom& p) { return std::pow(t.sxy.real(), p.degree); },
      },
      spec);
}

}  // namespace invk
