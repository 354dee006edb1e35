#include "lieherm/structure_constants.hpp"

#include <cmath>
#include <sstream>

namespace lieherm {

StructureConstants::StructureConstants(int n, std::vector<cdouble> c,
                                       std::vector<cdouble> d)
    : n_(n), c_(std::move(c)), d_(std::move(d)) {
  if (n <= 0) throw ShapeMismatch("complex dimension must be positive");
  const auto want = static_cast<std::size_t>(n) * n * n;
  if (c_.size() != want || d_.size() != want)
    throw ShapeMismatch("structure constant tensors must have n^3 entries");
}

StructureConstants StructureConstants::zero(int n) {
  const auto sz = static_cast<std::size_t>(n) * n * n;
  return StructureConstants(n, std::vector<cdouble>(sz), std::vector<cdouble>(sz));
}

double StructureConstants::scale() const {
  double s = 0.0;
  for (const auto& z : c_) s = std::max(s, std::abs(z));
  for (const auto& z : d_) s = std::max(s, std::abs(z));
  return s;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.what << " at (" << v.index[0] + 1 << "," << v.index[1] + 1 << ","
       << v.index[2] + 1 << "), |.| = " << v.magnitude << "\n";
  }
  return os.str();
}

ValidationReport validate(const StructureConstants& sc) {
  ValidationReport report;
  const int n = sc.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cdouble cv = sc.C(k, i, j);
        if (!std::isfinite(cv.real()) || !std::isfinite(cv.imag()))
          report.violations.push_back({"non-finite C entry", {k, i, j}, 0.0});
        const cdouble dv = sc.D(k, i, j);
        if (!std::isfinite(dv.real()) || !std::isfinite(dv.imag()))
          report.violations.push_back({"non-finite D entry", {k, i, j}, 0.0});
        if (i < j) {
          const double asym = std::abs(cv + sc.C(k, j, i));
          if (asym != 0.0)
            report.violations.push_back(
                {"C not antisymmetric in lower pair", {k, i, j}, asym});
        } else if (i == j && std::abs(cv) != 0.0) {
          report.violations.push_back(
              {"C nonzero on repeated lower index", {k, i, j}, std::abs(cv)});
        }
      }
  return report;
}

void require_valid(const StructureConstants& sc) {
  const auto report = validate(sc);
  if (!report.ok())
    throw std::invalid_argument("invalid structure constants:\n" + report.to_string());
}

double jacobi_residual(const StructureConstants& sc) {
  require_valid(sc);
  const int n = sc.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cdouble e1 = 0, e2 = 0, e3 = 0;
          for (int r = 0; r < n; ++r) {
            e1 += sc.C(r, i, j) * sc.C(l, r, k) + sc.C(r, j, k) * sc.C(l, r, i) +
                  sc.C(r, k, i) * sc.C(l, r, j);
            e2 += sc.C(r, i, k) * sc.D(l, j, r) + sc.D(r, j, i) * sc.D(l, r, k) -
                  sc.D(r, j, k) * sc.D(l, r, i);
            e3 += sc.C(r, i, k) * std::conj(sc.D(r, j, l)) -
                  sc.C(j, r, k) * std::conj(sc.D(i, r, l)) +
                  sc.C(j, r, i) * std::conj(sc.D(k, r, l)) -
                  sc.D(l, r, i) * std::conj(sc.D(k, j, r)) +
                  sc.D(l, r, k) * std::conj(sc.D(i, j, r));
          }
          worst = std::max({worst, std::abs(e1), std::abs(e2), std::abs(e3)});
        }
  return worst;
}

Verdict is_unimodular(const StructureConstants& sc, const Tolerance& tol) {
  require_valid(sc);
  const int n = sc.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    cdouble trace = 0;
    for (int r = 0; r < n; ++r) trace += sc.C(r, r, i) + sc.D(r, r, i);
    worst = std::max(worst, std::abs(trace));
  }
  return {worst <= tol.at_scale(sc.scale()), worst};
}

double TorsionTensor::max_norm() const {
  double s = 0.0;
  for (const auto& z : t_) s = std::max(s, std::abs(z));
  return s;
}

TorsionTensor chern_torsion(const StructureConstants& sc) {
  require_valid(sc);
  const int n = sc.dim();
  TorsionTensor t(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t.set(k, i, j, -sc.C(k, i, j) - sc.D(k, i, j) + sc.D(k, j, i));
  return t;
}

Eigen::VectorXcd gauduchon_form(const StructureConstants& sc) {
  const auto t = chern_torsion(sc);
  const int n = sc.dim();
  Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) eta(i) += t.T(k, k, i);
  return eta;
}

StructureConstants rotate_frame(const StructureConstants& sc,
                                const Eigen::MatrixXcd& u, const Tolerance& tol) {
  require_valid(sc);
  const int n = sc.dim();
  if (u.rows() != n || u.cols() != n)
    throw ShapeMismatch("frame rotation matrix must be n x n");
  const double defect =
      (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > tol.at_scale(1.0))
    throw NonUnitaryInput("frame matrix is not unitary, defect " +
                          std::to_string(defect));

  // C'^k_{ij} = sum U_{ia} U_{jb} conj(U_{kc}) C^c_{ab},
  // D'^j_{ik} = sum U_{ia} conj(U_{jb}) U_{kc} D^b_{ac}.
  const auto sz = static_cast<std::size_t>(n) * n * n;
  std::vector<cdouble> nc(sz), nd(sz);
  auto at = [n](std::vector<cdouble>& v, int a, int b, int c) -> cdouble& {
    return v[(static_cast<std::size_t>(a) * n + b) * n + c];
  };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cdouble cc = 0, dd = 0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            cdouble cab = 0, dab = 0;
            for (int c = 0; c < n; ++c) {
              cab += std::conj(u(k, c)) * sc.C(c, a, b);
              dab += u(k, c) * sc.D(b, a, c);
            }
            cc += u(i, a) * u(j, b) * cab;
            dd += u(i, a) * std::conj(u(j, b)) * dab;
          }
        at(nc, k, i, j) = cc;       // C'^k_{ij}
        at(nd, j, i, k) = dd;       // D'^j_{ik}, layout D[j][i][k]
      }
  // Exact antisymmetrization: the two orientations are computed by separate
  // floating-point sums and may differ at roundoff.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      at(nc, k, i, i) = 0.0;
      for (int j = i + 1; j < n; ++j) {
        const cdouble v = 0.5 * (at(nc, k, i, j) - at(nc, k, j, i));
        at(nc, k, i, j) = v;
        at(nc, k, j, i) = -v;
      }
    }
  return StructureConstants(n, std::move(nc), std::move(nd));
}

}  // namespace lieherm
