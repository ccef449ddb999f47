#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>

#include <Eigen/Core>

namespace invk {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;

enum class Field { Real, Complex };

// A coordinate vector over R or C. Real points store zero imaginary parts;
// the field tag decides which group actions are admissible on them.
struct DataPoint {
  Vector coords;
  Field field = Field::Real;

  static DataPoint real(std::span<const double> values);
  static DataPoint complex(std::span<const Scalar> values);

  Eigen::Index dim() const { return coords.size(); }
};

// (<x,x>, <x,y>, <y,y>). <y,x> is conj(sxy).
struct ScalarTriple {
  double sxx = 0.0;
  Scalar sxy{0.0, 0.0};
  double syy = 0.0;
};

struct Linear {};
struct Gaussian {
  double sigma = 1.0;
};
struct Laplace {
  double sigma = 1.0;
};
struct PolyInhom {
  int degree = 2;
};
struct PolyHom {
  int degree = 2;
};

// A base kernel that is a function of the scalar-product triple alone.
using BaseKernelSpec = std::variant<Linear, Gaussian, Laplace, PolyInhom, PolyHom>;

// Throws SpecError when sigma <= 0 or degree < 1.
void validate(const BaseKernelSpec& spec);

// True for the RBF families, whose Gram diagonal is identically one.
bool is_radial(const BaseKernelSpec& spec);

std::string to_string(const BaseKernelSpec& spec);

// Hermitian inner product sum_i x_i * conj(y_i).
Scalar inner_product(const DataPoint& x, const DataPoint& y);

ScalarTriple make_triple(const DataPoint& x, const DataPoint& y);

// sxx - 2 Re(sxy) + syy, clamped to zero when it is negative by no more than
// 1e-9 * max(sxx, syy, 1). Larger negative values throw NegativeDistanceError.
double squared_distance(const ScalarTriple& t);

// Evaluates the base kernel on Re(sxy). Every family reads only the triple.
double eval_base(const BaseKernelSpec& spec, const ScalarTriple& t);

}  // namespace invk
