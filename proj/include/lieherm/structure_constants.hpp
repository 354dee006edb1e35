#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "lieherm/types.hpp"

namespace lieherm {

/// Structure constants of a Lie algebra with Hermitian structure, relative to
/// a unitary frame e_1..e_n of the (1,0)-part:
///
///   C^k_{ij} = <[e_i, e_j], conj(e_k)>,   D^j_{ik} = <[conj(e_j), e_k], e_i>,
///
/// so that [e_i, e_j] = sum_k C^k_{ij} e_k and
/// [e_i, conj(e_j)] = sum_k ( conj(D^i_{kj}) e_k - D^j_{ki} conj(e_k) ).
///
/// Both orientations of C are stored; antisymmetry in the lower pair is an
/// invariant checked by validate(). Values are immutable after construction.
/// Indices are 0-based throughout the in-memory API; file formats are 1-based.
class StructureConstants {
 public:
  /// Takes flat row-major tensors: C[k][i][j] and D[j][i][k], each of size
  /// n^3. No validation happens here; see validate().
  StructureConstants(int n, std::vector<cdouble> c, std::vector<cdouble> d);

  static StructureConstants zero(int n);

  int dim() const { return n_; }

  cdouble C(int k, int i, int j) const { return c_[idx(k, i, j)]; }
  cdouble D(int j, int i, int k) const { return d_[idx(j, i, k)]; }

  const std::vector<cdouble>& c_tensor() const { return c_; }
  const std::vector<cdouble>& d_tensor() const { return d_; }

  /// Largest entry magnitude over both tensors; the scale for relative
  /// tolerance checks.
  double scale() const;

 private:
  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }

  int n_;
  std::vector<cdouble> c_;
  std::vector<cdouble> d_;
};

struct Violation {
  std::string what;
  std::array<int, 3> index;  // (k,i,j) of the offending entry
  double magnitude;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Empty report iff C is exactly antisymmetric in its lower pair and every
/// entry of C and D is finite.
ValidationReport validate(const StructureConstants& sc);

/// Throws std::invalid_argument when validate() reports violations.
void require_valid(const StructureConstants& sc);

/// Max-norm residual of the first Bianchi system over all index 4-tuples;
/// zero exactly when the brackets defined by (C, D) satisfy the Jacobi
/// identity. Three families of identities are scanned:
///   sum_r ( C^r_{ij} C^l_{rk} + C^r_{jk} C^l_{ri} + C^r_{ki} C^l_{rj} )
///   sum_r ( C^r_{ik} D^l_{jr} + D^r_{ji} D^l_{rk} - D^r_{jk} D^l_{ri} )
///   sum_r ( C^r_{ik} conj(D^r_{jl}) - C^j_{rk} conj(D^i_{rl})
///           + C^j_{ri} conj(D^k_{rl}) - D^l_{ri} conj(D^k_{jr})
///           + D^l_{rk} conj(D^i_{jr}) )
double jacobi_residual(const StructureConstants& sc);

/// Unimodularity: sum_r ( C^r_{ri} + D^r_{ri} ) = 0 for every i.
/// The residual is the max over i of the trace sums.
Verdict is_unimodular(const StructureConstants& sc, const Tolerance& tol = {});

/// Chern torsion components T^k_{ij}, antisymmetric in the lower pair.
class TorsionTensor {
 public:
  explicit TorsionTensor(int n) : n_(n), t_(static_cast<std::size_t>(n) * n * n) {}

  int dim() const { return n_; }
  cdouble T(int k, int i, int j) const { return t_[idx(k, i, j)]; }
  void set(int k, int i, int j, cdouble v) { t_[idx(k, i, j)] = v; }

  /// Largest component magnitude.
  double max_norm() const;

 private:
  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }
  int n_;
  std::vector<cdouble> t_;
};

/// T^j_{ik} = -C^j_{ik} - D^j_{ik} + D^j_{ki}.
TorsionTensor chern_torsion(const StructureConstants& sc);

/// Gauduchon torsion 1-form coefficients, eta_i = sum_k T^k_{ki}.
Eigen::VectorXcd gauduchon_form(const StructureConstants& sc);

/// Structure constants of the same brackets in the rotated unitary frame
/// e'_i = sum_j U_{ij} e_j. Throws NonUnitaryInput when ||U U* - I|| exceeds
/// tolerance.
StructureConstants rotate_frame(const StructureConstants& sc,
                                const Eigen::MatrixXcd& u,
                                const Tolerance& tol = {});

}  // namespace lieherm
