#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "lieherm/structure_constants.hpp"
#include "lieherm/types.hpp"

namespace lieherm {

// Family matrices and vectors carry the coframe indices 2..n of the abelian
// part; they are stored 0..n-2 here. That offset is fixed in the two build
// functions below and nowhere else.

/// Almost-abelian family: the only possibly nonzero structure constants under
/// an admissible frame are
///   D^1_{11} = lambda,  D^1_{i1} = v_i,  D^j_{i1} = A_{ij},
///   C^j_{1i} = -conj(A_{ji}),                      2 <= i,j <= n.
/// Any (lambda, v, A) is consistent; lambda may be any real number.
struct AlmostAbelianData {
  int n = 2;
  double lambda = 0.0;
  Eigen::VectorXcd v;  // length n-1
  Eigen::MatrixXcd A;  // (n-1) x (n-1)
};

/// Codimension-2 family: the only possibly nonzero structure constants are
///   C^j_{1i} = X_{ij},  D^1_{11} = lambda,  D^j_{i1} = Y_{ij},
///   D^1_{ij} = Z_{ij},  D^1_{i1} = v_i,               2 <= i,j <= n,
/// with lambda >= 0 (the phase of e_1 is rotated into that normal form) and
/// the quadratic consistency equations
///   lambda (X* + Y) + [X*, Y] - Z conj(Z) = 0,
///   lambda Z - (Z X^t + Y Z) = 0.
struct Codim2Data {
  int n = 2;
  double lambda = 0.0;
  Eigen::VectorXcd v;
  Eigen::MatrixXcd X, Y, Z;
};

StructureConstants build_almost_abelian(const AlmostAbelianData& data);

/// Entry-max residuals of the two consistency matrix equations.
std::pair<double, double> codim2_consistency_residuals(const Codim2Data& data);

/// Throws JacobiViolation when the consistency equations fail beyond
/// tolerance (quadratic scale).
StructureConstants build_codim2(const Codim2Data& data, const Tolerance& tol = {});

struct AaPredicates {
  Verdict unimodular;  // lambda + tr(A) + conj(tr(A)) = 0
  Verdict kahler;      // v = 0 and A + A* = 0
};
AaPredicates aa_predicates(const AlmostAbelianData& data, const Tolerance& tol = {});

struct C2Predicates {
  Verdict unimodular;            // lambda - tr(X) + tr(Y) = 0
  Verdict kahler;                // v = 0, Z^t = Z, X = Y
  Verdict kahler_unimodular_form;  // lambda = 0, v = 0, Z = 0, X = Y normal
};
C2Predicates c2_predicates(const Codim2Data& data, const Tolerance& tol = {});

/// New-frame structure constants for e~_1 = p e_1 + sum a_k e_k,
/// e~_i = p_i e_i:
///   lambda~ = p lambda,  A~ = p P^-1 A P,
///   v~ = p^2 P^-1 v - p lambda P^-1 conj(a) + p P^-1 A conj(a).
/// Requires p > 0 and P positive diagonal.
AlmostAbelianData aa_frame_change(const AlmostAbelianData& data, double p,
                                  const Eigen::VectorXd& P,
                                  const Eigen::VectorXcd& a);

/// Same with the normalization p_1 = 1:
///   X~ = P X P^-1,  Y~ = P^-1 Y P,  Z~ = P^-1 Z P,
///   v~ = v - lambda conj(a) + P^-1 Y conj(a) + P^-1 Z a.
Codim2Data c2_frame_change(const Codim2Data& data, const Eigen::VectorXd& P,
                           const Eigen::VectorXcd& a);

enum class GenKind { aa_generic, aa_hs, c2_generic, c2_hs, unitary };

/// Deterministic seeded instances at desk scale (2 <= n <= 8).
///   aa_hs / c2_hs: guaranteed Hermitian-symplectic by the witness
///     construction (lambda = 0, skew-Hermitian / normal, v in the image).
///   aa_generic / c2_generic: unimodular and consistent by construction,
///     cycling through sub-families that cover every clause of the
///     feasibility characterizations in both directions.
struct GeneratedInstance {
  GenKind kind;
  std::optional<AlmostAbelianData> aa;
  std::optional<Codim2Data> c2;
  std::optional<Eigen::MatrixXcd> unitary;
};
GeneratedInstance gen_random(GenKind kind, int n, std::uint64_t seed);

/// Seeded Haar-like unitary (QR with positive diagonal phase fix).
Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed);

}  // namespace lieherm
