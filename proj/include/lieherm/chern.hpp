#pragma once

#include <vector>

#include "lieherm/invariant_forms.hpp"
#include "lieherm/structure_constants.hpp"
#include "lieherm/types.hpp"

namespace lieherm {

/// Connection matrix theta of the Chern connection under the unitary frame,
/// nabla e_i = sum_j theta_{ij} e_j. Anti-Hermitian as a matrix of 1-forms:
/// theta_{ij} + conj(theta_{ji}) = 0.
struct ConnectionMatrix {
  int n = 0;
  std::vector<InvariantForm> theta;  // row-major n*n

  const InvariantForm& at(int i, int j) const { return theta[i * n + j]; }
};

/// Chern curvature components R_{i jbar k lbar} = Theta_{kl}(e_i, conj(e_j)).
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int n)
      : n_(n), r_(static_cast<std::size_t>(n) * n * n * n) {}

  int dim() const { return n_; }
  cdouble R(int i, int j, int k, int l) const { return r_[idx(i, j, k, l)]; }
  void set(int i, int j, int k, int l, cdouble v) { r_[idx(i, j, k, l)] = v; }

  double max_norm() const;
  /// Max defect of the conjugate symmetry R_{i jbar k lbar} =
  /// conj(R_{j ibar l kbar}).
  double conjugate_symmetry_defect() const;

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_;
  std::vector<cdouble> r_;
};

/// Chern connection coefficients,
///   theta_{ij} = sum_k ( D^j_{ik} phi_k - conj(D^i_{jk}) conj(phi_k) ).
/// The formula is gated by its two defining properties: (a) theta is
/// anti-Hermitian and (b) d phi_i + sum_j theta_{ji} ^ phi_j is a pure
/// (2,0)-form for every i. A failure beyond tolerance throws
/// InternalConventionError (a library bug, not bad input).
ConnectionMatrix chern_connection(const StructureConstants& sc,
                                  const Tolerance& tol = {});

/// Torsion (2,0)-forms tau_i = d phi_i + sum_j theta_{ji} ^ phi_j. Their
/// canonical coefficients reproduce the Chern torsion components.
std::vector<InvariantForm> torsion_two_forms(const StructureConstants& sc,
                                             const ConnectionMatrix& conn);

/// Theta = d theta - theta ^ theta, with R extracted from the (1,1)-part of
/// each entry. The (2,0)- and (0,2)-parts must vanish for the Chern
/// connection; a defect beyond tolerance throws InternalConventionError.
CurvatureTensor chern_curvature(const StructureConstants& sc,
                                const Tolerance& tol = {});

/// Kaehler-symmetry test R_{i jbar k lbar} = R_{k jbar i lbar} for all
/// indices; residual is the max defect.
Verdict is_chern_kahler_like(const StructureConstants& sc,
                             const Tolerance& tol = {});

/// Max-norm of the difference between sqrt(-1) del dbar omega computed through
/// the exterior calculus and its curvature-side expression
/// sum_i tau_i ^ conj(tau_i) + sum_{i,j} phi_i ^ Theta_{ij} ^ conj(phi_j).
double ddbar_omega_identity_residual(const StructureConstants& sc,
                                     const Tolerance& tol = {});

}  // namespace lieherm
