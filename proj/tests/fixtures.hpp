// Shared fixtures for the test suites. Values that came out of independent
// hand or oracle evaluation are frozen as literals where they are asserted.
#pragma once

#include "lieherm/families.hpp"
#include "lieherm/structure_constants.hpp"

namespace lieherm::testing {

inline StructureConstants abelian(int n) { return StructureConstants::zero(n); }

/// Complex Heisenberg algebra: C^3_{12} = 1 = -C^3_{21}, D = 0.
inline StructureConstants heis3() {
  const int n = 3;
  std::vector<cdouble> c(27), d(27);
  c[(2 * n + 0) * n + 1] = 1.0;   // C^3_{12}
  c[(2 * n + 1) * n + 0] = -1.0;  // C^3_{21}
  return StructureConstants(n, std::move(c), std::move(d));
}

/// n = 2 almost-abelian data (lambda, v2, A22).
inline AlmostAbelianData aa2(double lambda, cdouble v2, cdouble a22) {
  AlmostAbelianData data;
  data.n = 2;
  data.lambda = lambda;
  data.v = Eigen::VectorXcd::Constant(1, v2);
  data.A = Eigen::MatrixXcd::Constant(1, 1, a22);
  return data;
}

/// n = 2 codimension-2 data (lambda, v2, x, y, z).
inline Codim2Data c22(double lambda, cdouble v2, cdouble x, cdouble y, cdouble z) {
  Codim2Data data;
  data.n = 2;
  data.lambda = lambda;
  data.v = Eigen::VectorXcd::Constant(1, v2);
  data.X = Eigen::MatrixXcd::Constant(1, 1, x);
  data.Y = Eigen::MatrixXcd::Constant(1, 1, y);
  data.Z = Eigen::MatrixXcd::Constant(1, 1, z);
  return data;
}

/// The solvable non-Kaehler pluriclosed fixture (lambda=1, X=1, Y=0, Z=1).
inline Codim2Data c2_skt_fixture() { return c22(1.0, 0.0, 1.0, 0.0, 1.0); }

}  // namespace lieherm::testing
