#include "lieherm/families.hpp"

#include <cmath>
#include <random>
#include <string>

namespace lieherm {

namespace {

void check_aa_shapes(const AlmostAbelianData& data) {
  if (data.n < 2) throw ShapeMismatch("almost-abelian family needs n >= 2");
  const int m = data.n - 1;
  if (data.v.size() != m) throw ShapeMismatch("v must have length n-1");
  if (data.A.rows() != m || data.A.cols() != m)
    throw ShapeMismatch("A must be (n-1) x (n-1)");
  if (!std::isfinite(data.lambda)) throw ShapeMismatch("lambda must be finite");
}

void check_c2_shapes(const Codim2Data& data) {
  if (data.n < 2) throw ShapeMismatch("codimension-2 family needs n >= 2");
  const int m = data.n - 1;
  if (data.v.size() != m) throw ShapeMismatch("v must have length n-1");
  for (const auto* mat : {&data.X, &data.Y, &data.Z})
    if (mat->rows() != m || mat->cols() != m)
      throw ShapeMismatch("X, Y, Z must be (n-1) x (n-1)");
  if (!std::isfinite(data.lambda) || data.lambda < 0.0)
    throw ShapeMismatch("lambda must be finite and >= 0 in this family");
}

// Uniform doubles in [-1, 1] from explicit 53-bit draws, so streams are
// reproducible across standard-library implementations.
struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform() {
    return 2.0 * ((eng() >> 11) * 0x1.0p-53) - 1.0;
  }
  cdouble complex_unit_box() { return {uniform(), uniform()}; }
  Eigen::VectorXcd cvector(int m) {
    Eigen::VectorXcd v(m);
    for (int i = 0; i < m; ++i) v(i) = complex_unit_box();
    return v;
  }
  Eigen::MatrixXcd cmatrix(int r, int c) {
    Eigen::MatrixXcd mat(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) mat(i, j) = complex_unit_box();
    return mat;
  }
  std::mt19937_64 eng;
};

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  const Eigen::MatrixXcd g = rng.cmatrix(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const cdouble rd = r(i, i);
    const cdouble phase = std::abs(rd) > 0 ? rd / std::abs(rd) : cdouble{1.0};
    q.col(i) *= phase;
  }
  return q;
}

}  // namespace

StructureConstants build_almost_abelian(const AlmostAbelianData& data) {
  check_aa_shapes(data);
  const int n = data.n;
  const int m = n - 1;
  const auto sz = static_cast<std::size_t>(n) * n * n;
  std::vector<cdouble> c(sz), d(sz);
  auto cset = [&](int k, int i, int j, cdouble val) {
    c[(static_cast<std::size_t>(k) * n + i) * n + j] = val;
    c[(static_cast<std::size_t>(k) * n + j) * n + i] = -val;
  };
  auto dset = [&](int j, int i, int k, cdouble val) {
    d[(static_cast<std::size_t>(j) * n + i) * n + k] = val;
  };
  dset(0, 0, 0, data.lambda);
  for (int i = 0; i < m; ++i) {
    dset(0, i + 1, 0, data.v(i));
    for (int j = 0; j < m; ++j) dset(j + 1, i + 1, 0, data.A(i, j));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      cset(j + 1, 0, i + 1, -std::conj(data.A(j, i)));
  return StructureConstants(n, std::move(c), std::move(d));
}

std::pair<double, double> codim2_consistency_residuals(const Codim2Data& data) {
  check_c2_shapes(data);
  const Eigen::MatrixXcd xs = data.X.adjoint();
  const Eigen::MatrixXcd eq1 = data.lambda * (xs + data.Y) +
                               (xs * data.Y - data.Y * xs) -
                               data.Z * data.Z.conjugate();
  const Eigen::MatrixXcd eq2 = data.lambda * data.Z -
                               (data.Z * data.X.transpose() + data.Y * data.Z);
  return {eq1.cwiseAbs().maxCoeff(), eq2.cwiseAbs().maxCoeff()};
}

StructureConstants build_codim2(const Codim2Data& data, const Tolerance& tol) {
  check_c2_shapes(data);
  const auto [r1, r2] = codim2_consistency_residuals(data);
  const double entry_scale =
      std::max({1.0, data.X.cwiseAbs().maxCoeff(), data.Y.cwiseAbs().maxCoeff(),
                data.Z.cwiseAbs().maxCoeff(), data.lambda});
  const double gate = tol.at_scale(entry_scale * entry_scale);
  if (r1 > gate || r2 > gate)
    throw JacobiViolation("codimension-2 data violates the consistency equations",
                          r1, r2);

  const int n = data.n;
  const int m = n - 1;
  const auto sz = static_cast<std::size_t>(n) * n * n;
  std::vector<cdouble> c(sz), d(sz);
  auto cset = [&](int k, int i, int j, cdouble val) {
    c[(static_cast<std::size_t>(k) * n + i) * n + j] = val;
    c[(static_cast<std::size_t>(k) * n + j) * n + i] = -val;
  };
  auto dset = [&](int j, int i, int k, cdouble val) {
    d[(static_cast<std::size_t>(j) * n + i) * n + k] = val;
  };
  dset(0, 0, 0, data.lambda);
  for (int i = 0; i < m; ++i) {
    dset(0, i + 1, 0, data.v(i));
    for (int j = 0; j < m; ++j) {
      cset(j + 1, 0, i + 1, data.X(i, j));
      dset(j + 1, i + 1, 0, data.Y(i, j));
      dset(0, i + 1, j + 1, data.Z(i, j));
    }
  }
  return StructureConstants(n, std::move(c), std::move(d));
}

AaPredicates aa_predicates(const AlmostAbelianData& data, const Tolerance& tol) {
  check_aa_shapes(data);
  const double scale = std::max(
      {1.0, std::abs(data.lambda), data.A.cwiseAbs().maxCoeff(),
       data.v.size() > 0 ? data.v.cwiseAbs().maxCoeff() : 0.0});
  const double uni_res =
      std::abs(data.lambda + 2.0 * data.A.trace().real());
  const double kah_res =
      std::max((data.A + data.A.adjoint()).cwiseAbs().maxCoeff(),
               data.v.cwiseAbs().maxCoeff());
  return {{uni_res <= tol.at_scale(scale), uni_res},
          {kah_res <= tol.at_scale(scale), kah_res}};
}

C2Predicates c2_predicates(const Codim2Data& data, const Tolerance& tol) {
  check_c2_shapes(data);
  const double scale =
      std::max({1.0, data.lambda, data.X.cwiseAbs().maxCoeff(),
                data.Y.cwiseAbs().maxCoeff(), data.Z.cwiseAbs().maxCoeff(),
                data.v.size() > 0 ? data.v.cwiseAbs().maxCoeff() : 0.0});
  const double gate = tol.at_scale(scale);

  const double uni_res =
      std::abs(cdouble{data.lambda} - data.X.trace() + data.Y.trace());
  const double kah_res = std::max(
      {data.v.cwiseAbs().maxCoeff(),
       (data.Z - data.Z.transpose()).cwiseAbs().maxCoeff(),
       (data.X - data.Y).cwiseAbs().maxCoeff()});
  const Eigen::MatrixXcd xs = data.X.adjoint();
  const double normal_res = (xs * data.X - data.X * xs).cwiseAbs().maxCoeff();
  const double kuf_res =
      std::max({data.lambda, data.v.cwiseAbs().maxCoeff(),
                data.Z.cwiseAbs().maxCoeff(),
                (data.X - data.Y).cwiseAbs().maxCoeff(), normal_res});
  return {{uni_res <= gate, uni_res},
          {kah_res <= gate, kah_res},
          {kuf_res <= tol.at_scale(scale * scale), kuf_res}};
}

AlmostAbelianData aa_frame_change(const AlmostAbelianData& data, double p,
                                  const Eigen::VectorXd& P,
                                  const Eigen::VectorXcd& a) {
  check_aa_shapes(data);
  const int m = data.n - 1;
  if (P.size() != m || a.size() != m)
    throw ShapeMismatch("frame change needs P and a of length n-1");
  if (p <= 0.0 || (P.array() <= 0.0).any())
    throw std::invalid_argument("frame scalings must be positive");
  const Eigen::MatrixXcd pmat = P.cast<cdouble>().asDiagonal();
  const Eigen::MatrixXcd pinv = P.cwiseInverse().cast<cdouble>().asDiagonal();
  AlmostAbelianData out;
  out.n = data.n;
  out.lambda = p * data.lambda;
  out.A = p * pinv * data.A * pmat;
  out.v = p * p * pinv * data.v - p * data.lambda * (pinv * a.conjugate()) +
          p * pinv * (data.A * a.conjugate());
  return out;
}

Codim2Data c2_frame_change(const Codim2Data& data, const Eigen::VectorXd& P,
                           const Eigen::VectorXcd& a) {
  check_c2_shapes(data);
  const int m = data.n - 1;
  if (P.size() != m || a.size() != m)
    throw ShapeMismatch("frame change needs P and a of length n-1");
  if ((P.array() <= 0.0).any())
    throw std::invalid_argument("frame scalings must be positive");
  const Eigen::MatrixXcd pmat = P.cast<cdouble>().asDiagonal();
  const Eigen::MatrixXcd pinv = P.cwiseInverse().cast<cdouble>().asDiagonal();
  Codim2Data out;
  out.n = data.n;
  out.lambda = data.lambda;
  out.X = pmat * data.X * pinv;
  out.Y = pinv * data.Y * pmat;
  out.Z = pinv * data.Z * pmat;
  // P^-1 applies to the whole bracket: the transformed coframe rescales the
  // phi_1 ^ conj(phi_1) coefficient of every d phi~_i uniformly (checked
  // against bracket reconstruction in the tests).
  out.v = pinv * (data.v - data.lambda * a.conjugate() +
                  data.Y * a.conjugate() + data.Z * a);
  return out;
}

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return haar_unitary(n, rng);
}

namespace {

// Block skew-Hermitian matrix with an explicit zero tail of `zeros` rows and
// columns; the image is then a proper subspace.
Eigen::MatrixXcd skew_hermitian(int m, int zeros, Rng& rng) {
  Eigen::MatrixXcd g = rng.cmatrix(m, m);
  Eigen::MatrixXcd a = g - g.adjoint();
  for (int i = m - zeros; i < m; ++i) {
    a.row(i).setZero();
    a.col(i).setZero();
  }
  return a;
}

// Normal matrix U diag(c) U* with the last `zeros` eigenvalues set to zero
// and the rest bounded away from zero.
Eigen::MatrixXcd normal_matrix(int m, int zeros, Rng& rng,
                               Eigen::MatrixXcd* basis = nullptr) {
  const Eigen::MatrixXcd u = haar_unitary(m, rng);
  Eigen::VectorXcd c(m);
  for (int i = 0; i < m; ++i) {
    const double angle = 3.141592653589793 * rng.uniform();
    const double radius = 0.75 + 0.5 * std::abs(rng.uniform());
    c(i) = std::polar(radius, angle);
  }
  for (int i = m - zeros; i < m; ++i) c(i) = 0.0;
  if (basis) *basis = u;
  return u * c.asDiagonal() * u.adjoint();
}

AlmostAbelianData gen_aa_hs(int n, Rng& rng) {
  const int m = n - 1;
  AlmostAbelianData data;
  data.n = n;
  data.lambda = 0.0;
  const int zeros = (rng.eng() % 2 == 0 && m > 1) ? 1 : 0;
  data.A = skew_hermitian(m, zeros, rng);
  data.v = -(data.A * rng.cvector(m).conjugate());
  return data;
}

AlmostAbelianData gen_aa_generic(int n, Rng& rng, std::uint64_t which) {
  const int m = n - 1;
  AlmostAbelianData data;
  data.n = n;
  switch (which % 4) {
    case 0: {  // generic A, unimodular via lambda
      data.A = rng.cmatrix(m, m);
      data.lambda = -2.0 * data.A.trace().real();
      data.v = rng.cvector(m);
      break;
    }
    case 1: {  // skew-Hermitian A, free v (in the image when A is invertible)
      data.A = skew_hermitian(m, 0, rng);
      data.lambda = 0.0;
      data.v = (rng.eng() % 2 == 0) ? rng.cvector(m)
                                    : Eigen::VectorXcd::Zero(m).eval();
      break;
    }
    case 2: {  // singular skew-Hermitian A, v pushed off the image
      data.A = skew_hermitian(m, 1, rng);
      data.lambda = 0.0;
      data.v = -(data.A * rng.cvector(m).conjugate());
      data.v(m - 1) += cdouble{0.5 + 0.4 * std::abs(rng.uniform()), 0.0};
      break;
    }
    default: {  // singular skew-Hermitian A, v inside the image
      data.A = skew_hermitian(m, 1, rng);
      data.lambda = 0.0;
      data.v = -(data.A * rng.cvector(m).conjugate());
      break;
    }
  }
  return data;
}

Codim2Data gen_c2_hs(int n, Rng& rng) {
  const int m = n - 1;
  Codim2Data data;
  data.n = n;
  data.lambda = 0.0;
  const int zeros = (rng.eng() % 2 == 0 && m > 1) ? 1 : 0;
  data.X = normal_matrix(m, zeros, rng);
  data.Y = data.X;
  data.Z = Eigen::MatrixXcd::Zero(m, m);
  data.v = -(data.X * rng.cvector(m).conjugate());
  return data;
}

Codim2Data gen_c2_generic(int n, Rng& rng, std::uint64_t which) {
  const int m = n - 1;
  Codim2Data data;
  data.n = n;
  data.v = rng.cvector(m);
  data.Z = Eigen::MatrixXcd::Zero(m, m);
  int kind = static_cast<int>(which % 5);
  if (m < 2 && (kind == 3 || kind == 4)) kind -= 3;
  switch (kind) {
    case 0: {  // lambda > 0, diagonal real X with Y = -X
      Eigen::VectorXd x(m);
      for (int i = 0; i < m; ++i) x(i) = rng.uniform();
      if (x.sum() < 0.2) x(0) += 0.5 - x.sum();
      data.lambda = 2.0 * x.sum();
      data.X = x.cast<cdouble>().asDiagonal();
      data.Y = -data.X;
      break;
    }
    case 1: {  // feasible kind: X = Y normal invertible
      data.lambda = 0.0;
      data.X = normal_matrix(m, 0, rng);
      data.Y = data.X;
      if (rng.eng() % 2 == 0) data.v.setZero();  // Kaehler subcase
      break;
    }
    case 2: {  // X = Y normal singular, v off the image
      data.lambda = 0.0;
      Eigen::MatrixXcd u;
      data.X = normal_matrix(m, 1, rng, &u);
      data.Y = data.X;
      data.v = -(data.X * rng.cvector(m).conjugate()) +
               u.col(m - 1) * cdouble{0.5 + 0.4 * std::abs(rng.uniform()), 0.0};
      break;
    }
    case 3: {  // X != Y, commuting diagonals with equal traces
      data.lambda = 0.0;
      Eigen::VectorXcd c = rng.cvector(m);
      Eigen::VectorXcd w = rng.cvector(m);
      w(m - 1) -= w.sum();  // trace-free shift
      if (w.cwiseAbs().maxCoeff() < 0.1) w(0) += 1.0, w(m - 1) -= 1.0;
      data.X = c.asDiagonal();
      data.Y = (c + w).asDiagonal();
      break;
    }
    default: {  // Z != 0 with X = Y = 0 and Z conj(Z) = 0
      data.lambda = 0.0;
      data.X = Eigen::MatrixXcd::Zero(m, m);
      data.Y = Eigen::MatrixXcd::Zero(m, m);
      for (int j = 1; j < m; ++j)
        data.Z(0, j) = rng.complex_unit_box() + cdouble{0.5, 0.0};
      break;
    }
  }
  return data;
}

}  // namespace

GeneratedInstance gen_random(GenKind kind, int n, std::uint64_t seed) {
  if (n < 2 || n > 8)
    throw std::out_of_range("instance generation is limited to 2 <= n <= 8");
  // Fold kind and dimension into the stream so nearby seeds stay independent.
  Rng rng(seed * 0x2545f4914f6cdd1dULL + static_cast<std::uint64_t>(kind) * 977 +
          static_cast<std::uint64_t>(n));
  GeneratedInstance out;
  out.kind = kind;
  switch (kind) {
    case GenKind::aa_hs:
      out.aa = gen_aa_hs(n, rng);
      break;
    case GenKind::aa_generic:
      out.aa = gen_aa_generic(n, rng, seed);
      break;
    case GenKind::c2_hs:
      out.c2 = gen_c2_hs(n, rng);
      break;
    case GenKind::c2_generic:
      out.c2 = gen_c2_generic(n, rng, seed);
      break;
    case GenKind::unitary:
      out.unitary = haar_unitary(n, rng);
      break;
  }
  return out;
}

}  // namespace lieherm
