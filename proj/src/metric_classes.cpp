#include "lieherm/metric_classes.hpp"

#include <cmath>
#include <string>

#include "lieherm/chern.hpp"
#include "lieherm/invariant_forms.hpp"

namespace lieherm {

Verdict is_kahler(const StructureConstants& sc, const Tolerance& tol) {
  require_valid(sc);
  const double gate = tol.at_scale(sc.scale());
  const double domega =
      d(InvariantForm::kahler_form(sc.dim()), sc).max_norm();
  const double torsion = chern_torsion(sc).max_norm();
  const bool via_form = domega <= gate;
  const bool via_torsion = torsion <= gate;
  if (via_form != via_torsion)
    throw InternalConventionError(
        "d omega and torsion routes disagree on the Kaehler test: " +
        std::to_string(domega) + " vs " + std::to_string(torsion));
  return {via_form, domega};
}

Verdict is_balanced(const StructureConstants& sc, const Tolerance& tol) {
  require_valid(sc);
  const int n = sc.dim();
  const double gate = tol.at_scale(std::max(1.0, sc.scale()));
  const double dpow =
      d(power(InvariantForm::kahler_form(n), n - 1), sc).max_norm();
  const double eta = gauduchon_form(sc).cwiseAbs().maxCoeff();
  const bool via_form = dpow <= gate;
  const bool via_eta = eta <= gate;
  if (via_form != via_eta)
    throw InternalConventionError(
        "d(omega^(n-1)) and Gauduchon routes disagree on the balanced test: " +
        std::to_string(dpow) + " vs " + std::to_string(eta));
  return {via_form, dpow};
}

Verdict is_pluriclosed(const StructureConstants& sc, const Tolerance& tol) {
  require_valid(sc);
  const ExteriorDerivative ext(sc);
  const double r =
      ext.del(ext.dbar(InvariantForm::kahler_form(sc.dim()))).max_norm();
  return {r <= tol.at_scale(sc.scale()), r};
}

Verdict is_astheno_kahler(const StructureConstants& sc, const Tolerance& tol) {
  require_valid(sc);
  const int n = sc.dim();
  if (n < 3)
    throw DimensionTooSmall(
        "astheno-Kaehler is only defined for complex dimension >= 3");
  const ExteriorDerivative ext(sc);
  const double r =
      ext.del(ext.dbar(power(InvariantForm::kahler_form(n), n - 2))).max_norm();
  return {r <= tol.at_scale(std::max(1.0, sc.scale())), r};
}

MetricReport classify(const StructureConstants& sc, const Tolerance& tol,
                      bool with_hs) {
  require_valid(sc);
  MetricReport report;
  report.jacobi = jacobi_residual(sc);
  const auto uni = is_unimodular(sc, tol);
  report.unimodular = uni.value;
  report.residuals["unimodular"] = uni.residual;

  const auto kahler = is_kahler(sc, tol);
  report.kahler = kahler.value;
  report.residuals["kahler"] = kahler.residual;

  const auto balanced = is_balanced(sc, tol);
  report.balanced = balanced.value;
  report.residuals["balanced"] = balanced.residual;

  const auto pluriclosed = is_pluriclosed(sc, tol);
  report.pluriclosed = pluriclosed.value;
  report.residuals["pluriclosed"] = pluriclosed.residual;

  if (sc.dim() >= 3) {
    const auto astheno = is_astheno_kahler(sc, tol);
    report.astheno_kahler = astheno.value;
    report.residuals["astheno_kahler"] = astheno.residual;
  }

  const auto ckl = is_chern_kahler_like(sc, tol);
  report.chern_kahler_like = ckl.value;
  report.residuals["chern_kahler_like"] = ckl.residual;

  if (report.kahler && !(report.balanced && report.pluriclosed))
    throw InternalConventionError(
        "Kaehler verdict without balanced and pluriclosed");

  if (with_hs) report.hs = hs_feasibility(sc, tol);
  return report;
}

}  // namespace lieherm
