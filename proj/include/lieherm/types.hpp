#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lieherm {

using cdouble = std::complex<double>;

/// The imaginary unit, used all over the structure equations.
inline constexpr cdouble iu{0.0, 1.0};

/// Absolute + relative tolerance pair. Comparisons accept a residual r at
/// scale s when r <= abs + rel * s.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  double at_scale(double scale) const { return abs + rel * scale; }
};

/// Boolean verdict together with the residual it was decided on.
struct Verdict {
  bool value = false;
  double residual = 0.0;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two operands live over different complex dimensions.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A frame-rotation matrix failed the unitarity check.
struct NonUnitaryInput : Error {
  using Error::Error;
};

/// Two internal computation routes that must agree did not. This signals an
/// index-convention bug in the library, never bad user input.
struct InternalConventionError : Error {
  using Error::Error;
};

/// Input tensors or vectors have the wrong shape.
struct ShapeMismatch : Error {
  using Error::Error;
};

/// Codimension-2 family data violating its quadratic consistency equations.
struct JacobiViolation : Error {
  JacobiViolation(const std::string& msg, double r1, double r2)
      : Error(msg), residual_eq1(r1), residual_eq2(r2) {}
  double residual_eq1 = 0.0;
  double residual_eq2 = 0.0;
};

/// Operation undefined below a minimal complex dimension.
struct DimensionTooSmall : Error {
  using Error::Error;
};

/// Raw structure constants that match neither supported family pattern.
struct UnsupportedShape : Error {
  using Error::Error;
};

/// A feasible instance failed to deform; must never happen for unimodular
/// family instances and is treated as a hard failure.
struct ConjectureWitnessFailure : Error {
  using Error::Error;
};

/// Malformed instance file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace lieherm
