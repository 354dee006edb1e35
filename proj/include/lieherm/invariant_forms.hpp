#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lieherm/structure_constants.hpp"
#include "lieherm/types.hpp"

namespace lieherm {

/// Basis term key of a left-invariant complex form: bitmask I over the
/// unbarred coframe phi_1..phi_n and bitmask J over the barred one. The
/// canonical word for (I, J) is phi_{i1}^..^phi_{ip}^conj(phi_{j1})^..,
/// indices ascending, barred factors after unbarred ones.
struct TermKey {
  std::uint32_t bar_i = 0;  // unbarred index set
  std::uint32_t bar_j = 0;  // barred index set
  auto operator<=>(const TermKey&) const = default;
};

/// Left-invariant complex differential form as a sparse coefficient map over
/// canonical basis terms. Mixed-degree formal sums are allowed; bidegree
/// components can be projected out. Immutable in spirit: all operations
/// return new values.
class InvariantForm {
 public:
  explicit InvariantForm(int n);

  static InvariantForm zero(int n) { return InvariantForm(n); }
  /// The scalar constant 1 (empty wedge).
  static InvariantForm one(int n);
  /// phi_i or conj(phi_i); throws std::out_of_range unless 0 <= i < n.
  static InvariantForm basis_one_form(int n, int i, bool conjugated);
  /// omega = sqrt(-1) sum_i phi_i ^ conj(phi_i).
  static InvariantForm kahler_form(int n);

  int dim() const { return n_; }
  const std::map<TermKey, cdouble>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Accumulates c on the canonical term (I, J). Drops entries below the
  /// pruning threshold 1e-14.
  InvariantForm& add_term(std::uint32_t mask_i, std::uint32_t mask_j, cdouble c);
  cdouble coeff(std::uint32_t mask_i, std::uint32_t mask_j) const;

  InvariantForm operator+(const InvariantForm& o) const;
  InvariantForm operator-(const InvariantForm& o) const;
  InvariantForm operator*(cdouble s) const;
  friend InvariantForm operator*(cdouble s, const InvariantForm& f) { return f * s; }

  /// Graded-anticommutative product; throws DimensionMismatch on different n.
  InvariantForm wedge(const InvariantForm& o) const;

  InvariantForm conj() const;

  /// Terms with |I| = p and |J| = q only.
  InvariantForm bidegree_part(int p, int q) const;
  /// Sorted list of (p, q) present among stored terms.
  std::vector<std::pair<int, int>> bidegrees() const;

  double max_norm() const;
  double l2_norm() const;
  bool is_zero(double tol) const { return max_norm() <= tol; }

 private:
  int n_;
  std::map<TermKey, cdouble> terms_;
};

/// k-th wedge power; power(f, 0) is the scalar 1.
InvariantForm power(const InvariantForm& f, int k);

/// Exterior derivative induced by the structure equation
///   d phi_i = -1/2 sum_{j,k} C^i_{jk} phi_j^phi_k
///             - sum_{j,k} conj(D^j_{ik}) phi_j^conj(phi_k),
/// with d conj(phi_i) = conj(d phi_i), extended as an anti-derivation.
/// Precomputes the differentials of the basis one-forms once per instance.
class ExteriorDerivative {
 public:
  explicit ExteriorDerivative(const StructureConstants& sc);

  int dim() const { return n_; }
  const InvariantForm& d_basis(int i, bool conjugated) const;

  InvariantForm d(const InvariantForm& f) const;
  /// Bidegree-raising part (p,q) -> (p+1,q) of d, summed over components.
  InvariantForm del(const InvariantForm& f) const;
  /// Conjugate-raising part (p,q) -> (p,q+1).
  InvariantForm dbar(const InvariantForm& f) const;

 private:
  int n_;
  std::vector<InvariantForm> d_phi_;
  std::vector<InvariantForm> d_phi_bar_;
};

InvariantForm d(const InvariantForm& f, const StructureConstants& sc);
InvariantForm del(const InvariantForm& f, const StructureConstants& sc);
InvariantForm dbar(const InvariantForm& f, const StructureConstants& sc);

}  // namespace lieherm
