#include "lieherm/deform.hpp"

#include <cmath>

namespace lieherm {

namespace {

// Minimal-norm least-squares solution of M x = rhs together with the
// residual, for the image-membership tests.
std::pair<Eigen::VectorXcd, double> solve_image(const Eigen::MatrixXcd& m,
                                                const Eigen::VectorXcd& rhs) {
  const Eigen::VectorXcd x = m.completeOrthogonalDecomposition().solve(rhs);
  return {x, (m * x - rhs).norm()};
}

}  // namespace

DeformOutcome aa_kahler_deform(const AlmostAbelianData& data,
                               const Tolerance& tol) {
  const auto pred = aa_predicates(data, tol);
  if (!pred.unimodular.value) return {false, std::nullopt, "non-unimodular"};
  const double scale = std::max(1.0, data.A.cwiseAbs().maxCoeff());
  if (std::abs(data.lambda) > tol.at_scale(scale))
    return {false, std::nullopt, "lambda != 0"};
  if ((data.A + data.A.adjoint()).cwiseAbs().maxCoeff() > tol.at_scale(scale))
    return {false, std::nullopt, "A + A* != 0"};

  // v = -A conj(a); any solution zeroes the deformed v.
  const auto [abar, res] = solve_image(-data.A, data.v);
  if (res > tol.abs * std::max(1.0, data.v.norm()))
    return {false, std::nullopt, "v not in Im(A)"};
  const Eigen::VectorXcd a = abar.conjugate();

  const auto deformed =
      aa_frame_change(data, 1.0, Eigen::VectorXd::Ones(data.n - 1), a);
  const auto dpred = aa_predicates(deformed, tol);
  const auto rebuilt = build_almost_abelian(deformed);
  const auto report = classify(rebuilt, tol, false);
  const double kahler_residual = chern_torsion(rebuilt).max_norm();
  if (!dpred.kahler.value || !report.kahler)
    return {false, std::nullopt, "deformed metric failed the Kaehler check"};
  return {true, DeformationResult{a, deformed, std::nullopt, kahler_residual},
          ""};
}

DeformOutcome c2_kahler_deform(const Codim2Data& data, const Tolerance& tol) {
  const auto pred = c2_predicates(data, tol);
  if (!pred.unimodular.value) return {false, std::nullopt, "non-unimodular"};
  const double scale = std::max(1.0, data.X.cwiseAbs().maxCoeff());
  if (data.lambda > tol.at_scale(scale))
    return {false, std::nullopt, "lambda != 0"};
  if (data.Z.cwiseAbs().maxCoeff() > tol.at_scale(scale))
    return {false, std::nullopt, "Z != 0"};
  if ((data.X - data.Y).cwiseAbs().maxCoeff() > tol.at_scale(scale))
    return {false, std::nullopt, "X != Y"};
  const Eigen::MatrixXcd xs = data.X.adjoint();
  if ((xs * data.X - data.X * xs).cwiseAbs().maxCoeff() >
      tol.at_scale(scale * scale))
    return {false, std::nullopt, "X not normal"};

  const auto [abar, res] = solve_image(-data.X, data.v);
  if (res > tol.abs * std::max(1.0, data.v.norm()))
    return {false, std::nullopt, "v not in Im(X)"};
  const Eigen::VectorXcd a = abar.conjugate();

  const auto deformed =
      c2_frame_change(data, Eigen::VectorXd::Ones(data.n - 1), a);
  const auto dpred = c2_predicates(deformed, tol);
  const auto rebuilt = build_codim2(deformed, tol);
  const auto report = classify(rebuilt, tol, false);
  const double kahler_residual = chern_torsion(rebuilt).max_norm();
  if (!dpred.kahler.value || !report.kahler)
    return {false, std::nullopt, "deformed metric failed the Kaehler check"};
  return {true, DeformationResult{a, std::nullopt, deformed, kahler_residual},
          ""};
}

std::optional<Eigen::VectorXcd> deformation_vector_from_certificate(
    const Eigen::MatrixXcd& S_certificate) {
  const int n = static_cast<int>(S_certificate.rows());
  if (n < 2) return std::nullopt;
  const int m = n - 1;
  // Witness normalization carries twice the closure-normalized coefficients.
  const Eigen::MatrixXcd S = 2.0 * S_certificate;
  const Eigen::VectorXcd u = S.block(1, 0, m, 1);
  const Eigen::MatrixXcd sp = S.block(1, 1, m, m);

  const Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(m, m) - sp * sp.conjugate();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(h);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::VectorXcd abar = lu.solve(sp * u.conjugate() - iu * u);
  return abar.conjugate();
}

FamilyKind detect_family(const StructureConstants& sc,
                         std::optional<AlmostAbelianData>* aa,
                         std::optional<Codim2Data>* c2, const Tolerance& tol) {
  require_valid(sc);
  const int n = sc.dim();
  if (aa) aa->reset();
  if (c2) c2->reset();
  if (n < 2) return FamilyKind::none;
  const int m = n - 1;
  const double gate = tol.at_scale(std::max(1.0, sc.scale()));

  // Candidate family data straight off the tensors.
  const cdouble lam = sc.D(0, 0, 0);
  Eigen::VectorXcd v(m);
  Eigen::MatrixXcd x(m, m), y(m, m), z(m, m);
  for (int i = 0; i < m; ++i) {
    v(i) = sc.D(0, i + 1, 0);
    for (int j = 0; j < m; ++j) {
      x(i, j) = sc.C(j + 1, 0, i + 1);
      y(i, j) = sc.D(j + 1, i + 1, 0);
      z(i, j) = sc.D(0, i + 1, j + 1);
    }
  }

  // Everything outside the codimension-2 pattern must vanish.
  double off = std::abs(lam.imag());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      off = std::max(off, std::abs(sc.C(0, i, j)));  // C^1 = 0
      if (i >= 1 && j >= 1)
        for (int k = 1; k < n; ++k)
          off = std::max(off, std::abs(sc.C(k, i, j)));  // C^k_{ij}, i,j >= 2
    }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 1; k < n; ++k)
        off = std::max(off, std::abs(sc.D(j, i, k)));  // D^j_{ik}, j,k >= 2
  for (int k = 1; k < n; ++k)
    off = std::max(off, std::abs(sc.D(0, 0, k)));  // D^1_{1k}, k >= 2
  for (int j = 1; j < n; ++j)
    off = std::max(off, std::abs(sc.D(j, 0, 0)));  // D^j_{11}, j >= 2
  if (off > gate) return FamilyKind::none;

  // Almost abelian iff X = -A* matches Y = A, i.e. X + Y* = 0.
  if ((x + y.adjoint()).cwiseAbs().maxCoeff() <= gate && z.cwiseAbs().maxCoeff() <= gate) {
    AlmostAbelianData data;
    data.n = n;
    data.lambda = lam.real();
    data.v = v;
    data.A = y;
    if (aa) *aa = data;
    return FamilyKind::almost_abelian;
  }
  if (lam.real() < -gate) return FamilyKind::none;  // normal form needs lambda >= 0
  Codim2Data data;
  data.n = n;
  data.lambda = std::max(0.0, lam.real());
  data.v = v;
  data.X = x;
  data.Y = y;
  data.Z = z;
  const auto [r1, r2] = codim2_consistency_residuals(data);
  if (r1 > gate || r2 > gate) return FamilyKind::none;
  if (c2) *c2 = data;
  return FamilyKind::codim2;
}

namespace {

PipelineReport run_pipeline(FamilyKind family,
                            const std::optional<AlmostAbelianData>& aa,
                            const std::optional<Codim2Data>& c2,
                            const StructureConstants& sc, const Tolerance& tol) {
  PipelineReport report;
  report.family = family;
  report.aa = aa;
  report.c2 = c2;
  report.unimodular = is_unimodular(sc, tol);
  report.jacobi = jacobi_residual(sc);
  report.hs = hs_feasibility(sc, tol);

  if (family == FamilyKind::almost_abelian)
    report.deformation = aa_kahler_deform(*aa, tol);
  else if (family == FamilyKind::codim2)
    report.deformation = c2_kahler_deform(*c2, tol);

  if (report.hs.feasible && report.unimodular.value &&
      report.deformation.has_value() && !report.deformation->deformed)
    throw ConjectureWitnessFailure(
        "feasible unimodular family instance failed to deform: " +
        report.deformation->reason);
  return report;
}

}  // namespace

PipelineReport streets_tian_pipeline(const StructureConstants& sc,
                                     const Tolerance& tol) {
  std::optional<AlmostAbelianData> aa;
  std::optional<Codim2Data> c2;
  const FamilyKind family = detect_family(sc, &aa, &c2, tol);
  return run_pipeline(family, aa, c2, sc, tol);
}

PipelineReport streets_tian_pipeline(const AlmostAbelianData& data,
                                     const Tolerance& tol) {
  return run_pipeline(FamilyKind::almost_abelian, data, std::nullopt,
                      build_almost_abelian(data), tol);
}

PipelineReport streets_tian_pipeline(const Codim2Data& data,
                                     const Tolerance& tol) {
  return run_pipeline(FamilyKind::codim2, std::nullopt, data,
                      build_codim2(data, tol), tol);
}

}  // namespace lieherm
