#include "lieherm/chern.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace lieherm {

double CurvatureTensor::max_norm() const {
  double s = 0.0;
  for (const auto& z : r_) s = std::max(s, std::abs(z));
  return s;
}

double CurvatureTensor::conjugate_symmetry_defect() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l)
          s = std::max(s, std::abs(R(i, j, k, l) - std::conj(R(j, i, l, k))));
  return s;
}

ConnectionMatrix chern_connection(const StructureConstants& sc,
                                  const Tolerance& tol) {
  require_valid(sc);
  const int n = sc.dim();
  ConnectionMatrix conn{n, {}};
  conn.theta.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      InvariantForm th(n);
      for (int k = 0; k < n; ++k) {
        th.add_term(1u << k, 0, sc.D(j, i, k));
        th.add_term(0, 1u << k, -std::conj(sc.D(i, j, k)));
      }
      conn.theta.push_back(th);
    }

  const double gate = tol.at_scale(sc.scale());
  // (a) metric compatibility: theta + theta^* = 0.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double defect = (conn.at(i, j) + conn.at(j, i).conj()).max_norm();
      if (defect > gate)
        throw InternalConventionError(
            "chern connection is not anti-Hermitian, defect " +
            std::to_string(defect));
    }
  // (b) torsion is (2,0): d phi_i + sum_j theta_{ji} ^ phi_j has no other part.
  const ExteriorDerivative ext(sc);
  for (int i = 0; i < n; ++i) {
    InvariantForm tau = ext.d_basis(i, false);
    for (int j = 0; j < n; ++j)
      tau = tau + conn.at(j, i).wedge(InvariantForm::basis_one_form(n, j, false));
    const double defect = (tau - tau.bidegree_part(2, 0)).max_norm();
    if (defect > gate)
      throw InternalConventionError(
          "chern torsion has a non-(2,0) part, defect " + std::to_string(defect));
  }
  return conn;
}

std::vector<InvariantForm> torsion_two_forms(const StructureConstants& sc,
                                             const ConnectionMatrix& conn) {
  const int n = sc.dim();
  const ExteriorDerivative ext(sc);
  std::vector<InvariantForm> tau;
  tau.reserve(n);
  for (int i = 0; i < n; ++i) {
    InvariantForm t = ext.d_basis(i, false);
    for (int j = 0; j < n; ++j)
      t = t + conn.at(j, i).wedge(InvariantForm::basis_one_form(n, j, false));
    tau.push_back(t.bidegree_part(2, 0));
  }
  return tau;
}

CurvatureTensor chern_curvature(const StructureConstants& sc,
                                const Tolerance& tol) {
  const int n = sc.dim();
  const auto conn = chern_connection(sc, tol);
  const ExteriorDerivative ext(sc);
  CurvatureTensor curv(n);
  const double gate = tol.at_scale(std::max(1.0, sc.scale() * sc.scale()));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      InvariantForm big_theta = ext.d(conn.at(k, l));
      for (int m = 0; m < n; ++m)
        big_theta = big_theta - conn.at(k, m).wedge(conn.at(m, l));
      const double off =
          (big_theta - big_theta.bidegree_part(1, 1)).max_norm();
      if (off > gate)
        throw InternalConventionError(
            "chern curvature has a non-(1,1) part, defect " + std::to_string(off));
      const InvariantForm pure = big_theta.bidegree_part(1, 1);
      for (const auto& [key, c] : pure.terms()) {
        const int i = std::countr_zero(key.bar_i);
        const int j = std::countr_zero(key.bar_j);
        curv.set(i, j, k, l, c);
      }
    }
  return curv;
}

Verdict is_chern_kahler_like(const StructureConstants& sc, const Tolerance& tol) {
  const auto curv = chern_curvature(sc, tol);
  const int n = sc.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst,
                           std::abs(curv.R(i, j, k, l) - curv.R(k, j, i, l)));
  const double scale = std::max(1.0, curv.max_norm());
  return {worst <= tol.at_scale(scale), worst};
}

double ddbar_omega_identity_residual(const StructureConstants& sc,
                                     const Tolerance& tol) {
  const int n = sc.dim();
  const auto conn = chern_connection(sc, tol);
  const auto tau = torsion_two_forms(sc, conn);
  const ExteriorDerivative ext(sc);

  const auto omega = InvariantForm::kahler_form(n);
  const InvariantForm lhs = ext.del(ext.dbar(omega)) * iu;

  InvariantForm rhs(n);
  for (int i = 0; i < n; ++i) rhs = rhs + tau[i].wedge(tau[i].conj());
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      InvariantForm big_theta = ext.d(conn.at(k, l));
      for (int m = 0; m < n; ++m)
        big_theta = big_theta - conn.at(k, m).wedge(conn.at(m, l));
      rhs = rhs + InvariantForm::basis_one_form(n, k, false)
                      .wedge(big_theta)
                      .wedge(InvariantForm::basis_one_form(n, l, true));
    }
  return (lhs - rhs).max_norm();
}

}  // namespace lieherm
