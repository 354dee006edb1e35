#pragma once

#include <map>
#include <optional>
#include <string>

#include "lieherm/hermitian_symplectic.hpp"
#include "lieherm/structure_constants.hpp"
#include "lieherm/types.hpp"

namespace lieherm {

/// Aggregate classification of the invariant metric determined by the frame.
/// astheno_kahler is absent below complex dimension 3, where the condition is
/// not defined. kahler = true always comes with balanced and pluriclosed.
struct MetricReport {
  bool kahler = false;
  bool balanced = false;
  bool pluriclosed = false;
  std::optional<bool> astheno_kahler;
  bool chern_kahler_like = false;
  bool unimodular = false;
  double jacobi = 0.0;
  std::map<std::string, double> residuals;
  std::optional<HSOutcome> hs;
};

/// ||d omega|| <= tol, cross-checked against the torsion norm; the two
/// routes must agree or InternalConventionError is thrown.
Verdict is_kahler(const StructureConstants& sc, const Tolerance& tol = {});

/// ||d(omega^(n-1))|| <= tol, cross-checked against the Gauduchon form.
Verdict is_balanced(const StructureConstants& sc, const Tolerance& tol = {});

/// ||del dbar omega|| <= tol.
Verdict is_pluriclosed(const StructureConstants& sc, const Tolerance& tol = {});

/// ||del dbar (omega^(n-2))|| <= tol; throws DimensionTooSmall for n < 3.
Verdict is_astheno_kahler(const StructureConstants& sc, const Tolerance& tol = {});

MetricReport classify(const StructureConstants& sc, const Tolerance& tol = {},
                      bool with_hs = false);

}  // namespace lieherm
