#include "qsatom/linalg.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace qsatom {

MatrixExp matrix_exp(const Mat3c& a) {
  Eigen::ComplexEigenSolver<Mat3c> es(a);
  if (es.info() == Eigen::Success) {
    const Mat3c& v = es.eigenvectors();
    Eigen::JacobiSVD<Mat3c> svd(v);
    const auto& sv = svd.singularValues();
    const double smin = sv(2);
    const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    // A repeated eigenvalue splits by ~sqrt(eps) under rounding, which can keep
    // the computed basis just inside the condition limit.
    const Vec3c lam = es.eigenvalues();
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    const double gap = std::min({std::abs(lam(0) - lam(1)), std::abs(lam(0) - lam(2)),
                                 std::abs(lam(1) - lam(2))});
    if (cond <= eigvec_condition_limit && gap > eigenvalue_cluster_tolerance * scale) {
      const Vec3c ex = es.eigenvalues().array().exp();
      // v diag(e^lambda) v^{-1}; v is well conditioned here.
      const Mat3c value = v * ex.asDiagonal() * v.partialPivLu().inverse();
      return {value, ExpRoute::eigendecomposition};
    }
  }
  return {a.exp(), ExpRoute::pade};
}

std::array<std::complex<double>, 4> characteristic_polynomial(const Mat3c& a) {
  const auto tr = a.trace();
  // Sum of principal 2x2 minors.
  const auto m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                  a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const auto det = a.determinant();
  return {-det, m2, -tr, {1.0, 0.0}};
}

std::complex<double> cubic_discriminant(const std::array<std::complex<double>, 4>& c) {
  const auto d = c[0], cc = c[1], b = c[2], aa = c[3];
  return 18.0 * aa * b * cc * d - 4.0 * b * b * b * d + b * b * cc * cc - 4.0 * aa * cc * cc * cc -
         27.0 * aa * aa * d * d;
}

double spectral_abscissa_min(const Mat3c& a) {
  Eigen::ComplexEigenSolver<Mat3c> es(a, false);
  const auto ev = es.eigenvalues();
  return std::min({ev(0).real(), ev(1).real(), ev(2).real()});
}

}  // namespace qsatom
