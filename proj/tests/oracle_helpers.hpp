// Test-only oracles, deliberately independent of the library's computation
// paths: brackets are reconstructed as vectors over the basis
// (e_1..e_n, conj(e_1)..conj(e_n)), forms are evaluated as alternating
// multilinear maps via determinants, and the exterior derivative is obtained
// from the coordinate-free formula
//   d psi(x_0..x_m) = sum_{a<b} (-1)^(a+b) psi([x_a,x_b], x_0..^a..^b..x_m).
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lieherm/invariant_forms.hpp"
#include "lieherm/structure_constants.hpp"

namespace lieherm::testing {

/// Bracket table of the complexified algebra; index a in [0, n) is e_a and
/// a in [n, 2n) is conj(e_{a-n}). Entries are coordinate vectors in the same
/// basis.
class BracketTable {
 public:
  explicit BracketTable(const StructureConstants& sc) : n_(sc.dim()) {
    const int n = n_;
    table_.assign(4 * static_cast<std::size_t>(n) * n,
                  Eigen::VectorXcd::Zero(2 * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd ee = Eigen::VectorXcd::Zero(2 * n);
        for (int k = 0; k < n; ++k) ee(k) = sc.C(k, i, j);
        set(i, j, ee);
        Eigen::VectorXcd bb = Eigen::VectorXcd::Zero(2 * n);
        for (int k = 0; k < n; ++k) bb(n + k) = std::conj(sc.C(k, i, j));
        set(n + i, n + j, bb);
        Eigen::VectorXcd eb = Eigen::VectorXcd::Zero(2 * n);
        for (int k = 0; k < n; ++k) {
          eb(k) = std::conj(sc.D(i, k, j));
          eb(n + k) = -sc.D(j, k, i);
        }
        set(i, n + j, eb);
        set(n + j, i, -eb);
      }
  }

  int dim() const { return n_; }

  /// Bracket of two coordinate vectors by bilinearity.
  Eigen::VectorXcd bracket(const Eigen::VectorXcd& x,
                           const Eigen::VectorXcd& y) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n_);
    for (int a = 0; a < 2 * n_; ++a) {
      if (x(a) == cdouble{0.0}) continue;
      for (int b = 0; b < 2 * n_; ++b)
        if (y(b) != cdouble{0.0}) out += x(a) * y(b) * at(a, b);
    }
    return out;
  }

  Eigen::VectorXcd basis_vector(int a) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n_);
    v(a) = 1.0;
    return v;
  }

  /// Max Jacobi defect over basis triples, computed directly on brackets.
  double jacobi_defect() const {
    double worst = 0.0;
    for (int a = 0; a < 2 * n_; ++a)
      for (int b = a + 1; b < 2 * n_; ++b)
        for (int c = b + 1; c < 2 * n_; ++c) {
          const auto va = basis_vector(a), vb = basis_vector(b),
                     vc = basis_vector(c);
          const Eigen::VectorXcd j = bracket(bracket(va, vb), vc) +
                                     bracket(bracket(vb, vc), va) +
                                     bracket(bracket(vc, va), vb);
          worst = std::max(worst, j.cwiseAbs().maxCoeff());
        }
    return worst;
  }

 private:
  void set(int a, int b, const Eigen::VectorXcd& v) {
    table_[static_cast<std::size_t>(a) * 2 * n_ + b] = v;
    table_[static_cast<std::size_t>(b) * 2 * n_ + a] = -v;
  }
  const Eigen::VectorXcd& at(int a, int b) const {
    return table_[static_cast<std::size_t>(a) * 2 * n_ + b];
  }

  int n_;
  std::vector<Eigen::VectorXcd> table_;
};

/// Evaluates an invariant form on coordinate vectors (alternating
/// multilinear, determinant convention without 1/p! factors).
inline cdouble evaluate_form(const InvariantForm& form,
                             const std::vector<Eigen::VectorXcd>& args) {
  const int n = form.dim();
  cdouble total = 0.0;
  for (const auto& [key, coeff] : form.terms()) {
    std::vector<int> slots;  // coordinate picked by each 1-form factor
    for (int i = 0; i < n; ++i)
      if (key.bar_i & (1u << i)) slots.push_back(i);
    for (int j = 0; j < n; ++j)
      if (key.bar_j & (1u << j)) slots.push_back(n + j);
    if (slots.size() != args.size()) continue;
    if (slots.empty()) {
      total += coeff;
      continue;
    }
    Eigen::MatrixXcd m(slots.size(), slots.size());
    for (std::size_t r = 0; r < slots.size(); ++r)
      for (std::size_t c = 0; c < slots.size(); ++c)
        m(r, c) = args[c](slots[r]);
    total += coeff * m.determinant();
  }
  return total;
}

/// Coordinate-free exterior derivative, evaluated on one tuple of basis
/// indices (each in [0, 2n)).
inline cdouble ce_differential_on(const BracketTable& brackets,
                                  const InvariantForm& form,
                                  const std::vector<int>& tuple) {
  cdouble total = 0.0;
  for (std::size_t a = 0; a < tuple.size(); ++a)
    for (std::size_t b = a + 1; b < tuple.size(); ++b) {
      std::vector<Eigen::VectorXcd> args;
      args.push_back(brackets.bracket(brackets.basis_vector(tuple[a]),
                                      brackets.basis_vector(tuple[b])));
      for (std::size_t c = 0; c < tuple.size(); ++c)
        if (c != a && c != b) args.push_back(brackets.basis_vector(tuple[c]));
      const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;  // (-1)^(a+b)
      total += sign * evaluate_form(form, args);
    }
  return total;
}

/// Max deviation between a claimed differential `df` and the coordinate-free
/// one of `f`, over all ascending basis tuples of the matching degree.
inline double ce_differential_defect(const StructureConstants& sc,
                                     const InvariantForm& f,
                                     const InvariantForm& df, int degree) {
  const BracketTable brackets(sc);
  const int dim2 = 2 * sc.dim();
  double worst = 0.0;
  std::vector<int> tuple(degree + 1);
  // Iterate ascending tuples of length degree+1 out of dim2 indices.
  std::vector<int> idx(degree + 1);
  for (int i = 0; i <= degree; ++i) idx[i] = i;
  if (degree + 1 > dim2) return 0.0;
  while (true) {
    std::vector<Eigen::VectorXcd> args;
    for (int t : idx) args.push_back(brackets.basis_vector(t));
    const cdouble lhs = evaluate_form(df, args);
    const cdouble rhs = ce_differential_on(brackets, f, idx);
    worst = std::max(worst, std::abs(lhs - rhs));
    int pos = degree;
    while (pos >= 0 && idx[pos] == dim2 - (degree + 1) + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int q = pos + 1; q <= degree; ++q) idx[q] = idx[q - 1] + 1;
  }
  return worst;
}

/// Structure constants re-read from the brackets after an arbitrary
/// invertible change of frame e~_i = sum_j M_{ij} e_j (the new frame is
/// declared unitary, which defines the transformed metric). Returns the pair
/// and the internal consistency defect between the two reads of D.
struct TransformedConstants {
  StructureConstants sc;
  double consistency_defect;
};

inline TransformedConstants transform_frame_oracle(const StructureConstants& sc,
                                                   const Eigen::MatrixXcd& m) {
  const int n = sc.dim();
  const BracketTable brackets(sc);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  t.block(0, 0, n, n) = m;
  t.block(n, n, n, n) = m.conjugate();
  const Eigen::MatrixXcd to_new = t.transpose().inverse();

  auto new_basis = [&](int a) { return Eigen::VectorXcd(t.row(a).transpose()); };

  const auto sz = static_cast<std::size_t>(n) * n * n;
  std::vector<cdouble> c(sz), d(sz);
  auto flat = [n](int a, int b, int cc) {
    return (static_cast<std::size_t>(a) * n + b) * n + cc;
  };
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXcd ee =
          to_new * brackets.bracket(new_basis(i), new_basis(j));
      for (int k = 0; k < n; ++k) c[flat(k, i, j)] = ee(k);
      defect = std::max(defect, ee.tail(n).cwiseAbs().maxCoeff());

      const Eigen::VectorXcd eb =
          to_new * brackets.bracket(new_basis(i), new_basis(n + j));
      for (int k = 0; k < n; ++k) d[flat(j, k, i)] = -eb(n + k);
      // e-part must read back as conj(D^i_{kj}); checked after the fill.
    }
  StructureConstants out(n, std::move(c), std::move(d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXcd eb =
          brackets.bracket(new_basis(i), new_basis(n + j));
      const Eigen::VectorXcd y = to_new * eb;
      for (int k = 0; k < n; ++k)
        defect = std::max(defect,
                          std::abs(y(k) - std::conj(out.D(i, k, j))));
    }
  return {out, defect};
}

}  // namespace lieherm::testing
