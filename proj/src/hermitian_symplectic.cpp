#include "lieherm/hermitian_symplectic.hpp"

#include <cmath>
#include <string>

namespace lieherm {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

InvariantForm alpha_from_matrix(int n, const Eigen::MatrixXcd& s) {
  InvariantForm alpha(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k)
        alpha = alpha + InvariantForm::basis_one_form(n, i, false)
                            .wedge(InvariantForm::basis_one_form(n, k, false)) *
                            s(i, k);
  return alpha;
}

}  // namespace

int HSSystem::unknown_index(int i, int k, int n) {
  // Strictly upper-triangular entries enumerated row by row.
  return i * n - i * (i + 1) / 2 + (k - i - 1);
}

HSSystem assemble_hs_system(const StructureConstants& sc) {
  require_valid(sc);
  const int n = sc.dim();
  const auto torsion = chern_torsion(sc);

  const int unknowns = n * (n - 1) / 2;
  const int rows_f1 = n * (n - 1) * (n - 2) / 6;
  const int rows_f2 = n * (n - 1) / 2 * n;

  HSSystem sys;
  sys.n = n;
  sys.M = Eigen::MatrixXcd::Zero(rows_f1 + rows_f2, unknowns);
  sys.b = Eigen::VectorXcd::Zero(rows_f1 + rows_f2);
  sys.rows.reserve(rows_f1 + rows_f2);

  // S is skew-symmetric; contributions of S_{rs} with r > s are routed to the
  // unknown S_{sr} with a sign flip.
  auto scatter = [&](int row, int r, int s, cdouble coeff) {
    if (r == s) return;
    if (r < s)
      sys.M(row, HSSystem::unknown_index(r, s, n)) += coeff;
    else
      sys.M(row, HSSystem::unknown_index(s, r, n)) -= coeff;
  };

  int row = 0;
  // Coefficient of phi_i^phi_j^phi_k (i<j<k) in del alpha:
  //   -2 sum_r ( S_{ri} C^r_{jk} + S_{rj} C^r_{ki} + S_{rk} C^r_{ij} ).
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        for (int r = 0; r < n; ++r) {
          scatter(row, r, i, -2.0 * sc.C(r, j, k));
          scatter(row, r, j, -2.0 * sc.C(r, k, i));
          scatter(row, r, k, -2.0 * sc.C(r, i, j));
        }
        sys.rows.push_back({1, {i, j, k}});
        ++row;
      }
  // Coefficient of phi_i^phi_k^conj(phi_j) (i<k) in dbar alpha + del omega:
  //   2 sum_r ( S_{rk} conj(D^i_{rj}) - S_{ri} conj(D^k_{rj}) )
  //   + sqrt(-1) T^j_{ik}.
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        for (int r = 0; r < n; ++r) {
          scatter(row, r, k, 2.0 * std::conj(sc.D(i, r, j)));
          scatter(row, r, i, -2.0 * std::conj(sc.D(k, r, j)));
        }
        sys.b(row) = -iu * torsion.T(j, i, k);
        sys.rows.push_back({2, {i, k, j}});
        ++row;
      }
  return sys;
}

InvariantForm hs_two_form(const StructureConstants& sc, const Eigen::MatrixXcd& S) {
  const int n = sc.dim();
  const auto alpha = alpha_from_matrix(n, S);
  return alpha + InvariantForm::kahler_form(n) + alpha.conj();
}

HSOutcome hs_feasibility(const StructureConstants& sc, const Tolerance& tol) {
  const int n = sc.dim();
  const auto sys = assemble_hs_system(sc);
  const auto torsion = chern_torsion(sc);

  // Minimal-norm least-squares solution; deterministic for a fixed instance.
  const Eigen::VectorXcd s =
      sys.M.completeOrthogonalDecomposition().solve(sys.b);
  // The system rows are the (3,0)/(2,1) coefficients of d Omega; the (0,3)
  // and (1,2) blocks are their conjugates, hence the sqrt(2).
  const double min_residual = kSqrt2 * (sys.M * s - sys.b).norm();

  HSOutcome out;
  out.min_residual = min_residual;
  const double threshold = tol.abs * std::max(1.0, torsion.max_norm());
  if (min_residual > threshold) {
    out.feasible = false;
    return out;
  }

  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      S(i, k) = s(HSSystem::unknown_index(i, k, n));
      S(k, i) = -S(i, k);
    }

  const auto [system_residual, closure_residual] = verify_certificate(sc, S);
  if (std::abs(system_residual - closure_residual) >
      1e-9 * std::max(1.0, system_residual))
    throw InternalConventionError(
        "hs system and closure residuals disagree: " +
        std::to_string(system_residual) + " vs " +
        std::to_string(closure_residual));
  if (closure_residual > threshold)
    throw InternalConventionError(
        "certificate passed the linear system but fails closure, residual " +
        std::to_string(closure_residual));

  out.feasible = true;
  out.certificate =
      HSCertificate{S, alpha_from_matrix(n, S), system_residual, closure_residual};
  return out;
}

std::pair<double, double> verify_certificate(const StructureConstants& sc,
                                             const Eigen::MatrixXcd& S) {
  const int n = sc.dim();
  if (S.rows() != n || S.cols() != n)
    throw ShapeMismatch("certificate matrix must be n x n");
  if ((S + S.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, S.cwiseAbs().maxCoeff()))
    throw ShapeMismatch("certificate matrix must be skew-symmetric");

  const auto sys = assemble_hs_system(sc);
  Eigen::VectorXcd s(sys.unknown_count());
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      s(HSSystem::unknown_index(i, k, n)) = S(i, k);
  const double system_residual = kSqrt2 * (sys.M * s - sys.b).norm();

  const double closure_residual = d(hs_two_form(sc, S), sc).l2_norm();
  return {system_residual, closure_residual};
}

}  // namespace lieherm
