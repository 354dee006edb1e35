#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lieherm/invariant_forms.hpp"
#include "lieherm/structure_constants.hpp"
#include "lieherm/types.hpp"

namespace lieherm {

/// Certificate that the metric is Hermitian-symplectic: a skew-symmetric S
/// with alpha = sum_{i,k} S_{ik} phi_i ^ phi_k such that
/// Omega = alpha + omega + conj(alpha) is closed. Both residuals measure
/// ||d Omega|| in the coefficient l2 norm; system_residual comes from the
/// assembled linear system, closure_residual from the exterior calculus.
struct HSCertificate {
  Eigen::MatrixXcd S;
  InvariantForm alpha;
  double system_residual = 0.0;
  double closure_residual = 0.0;
};

struct HSRow {
  /// 1: coefficient of phi_i^phi_j^phi_k in del alpha (indices i<j<k);
  /// 2: coefficient of phi_i^phi_k^conj(phi_j) in dbar alpha + del omega
  ///    (i<k, any j).
  int family = 0;
  std::array<int, 3> index{};  // (i,j,k) for family 1, (i,k,j) for family 2
};

/// Complex-linear system M s = b in the strictly upper-triangular entries of
/// S, rows normalized as the canonical (3,0)- and (2,1)-coefficients of
/// d Omega so that system and closure residuals coincide.
struct HSSystem {
  int n = 0;
  Eigen::MatrixXcd M;
  Eigen::VectorXcd b;
  std::vector<HSRow> rows;

  static int unknown_index(int i, int k, int n);  // column of S_{ik}, i<k
  int unknown_count() const { return n * (n - 1) / 2; }
};

HSSystem assemble_hs_system(const StructureConstants& sc);

struct HSOutcome {
  bool feasible = false;
  std::optional<HSCertificate> certificate;
  /// Best achievable ||d Omega|| over all candidate alpha (coefficient l2
  /// norm; unitary-frame invariant).
  double min_residual = 0.0;
};

/// Least-squares feasibility, minimal-norm S on rank-deficient systems.
/// Feasible when min_residual <= tol.abs * max(1, ||T||); an accepted
/// certificate must additionally pass the independent closure check through
/// the exterior calculus, which is authoritative. Disagreement between the
/// two routes throws InternalConventionError.
HSOutcome hs_feasibility(const StructureConstants& sc, const Tolerance& tol = {});

/// Recomputes (system_residual, closure_residual) from scratch for an
/// externally supplied S. Throws ShapeMismatch on wrong dimensions or a
/// non-skew-symmetric S.
std::pair<double, double> verify_certificate(const StructureConstants& sc,
                                             const Eigen::MatrixXcd& S);

/// The closed 2-form candidate alpha + omega + conj(alpha) for a given S.
InvariantForm hs_two_form(const StructureConstants& sc, const Eigen::MatrixXcd& S);

}  // namespace lieherm
