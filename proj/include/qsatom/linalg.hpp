#pragma once

// Small dense complex linear algebra shared by the dynamics and spectrum code.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qsatom {

using Mat3c = Eigen::Matrix3cd;
using Vec3c = Eigen::Vector3cd;

enum class ExpRoute { eigendecomposition, pade };

struct MatrixExp {
  Mat3c value;
  ExpRoute route;
};

/// Eigenvector condition number above which exp() leaves the
/// eigendecomposition route for scaling-and-squaring Pade.
inline constexpr double eigvec_condition_limit = 1e8;
/// Relative eigenvalue separation below which the spectrum is treated as
/// repeated and exp() also takes the Pade route.
inline constexpr double eigenvalue_cluster_tolerance = 1e-6;

/// exp(a). Eigendecomposition when the eigenvector basis is well conditioned,
/// scaling-and-squaring Pade otherwise (defective or nearly defective a).
MatrixExp matrix_exp(const Mat3c& a);

/// Coefficients {c0, c1, c2, c3} of det(lambda - a) = c3 l^3 + c2 l^2 + c1 l + c0.
std::array<std::complex<double>, 4> characteristic_polynomial(const Mat3c& a);

/// Discriminant of a cubic given by characteristic_polynomial() coefficients.
/// For real coefficients: > 0 three distinct real roots, < 0 one real root
/// and a complex-conjugate pair, == 0 a repeated root.
std::complex<double> cubic_discriminant(const std::array<std::complex<double>, 4>& c);

/// min Re(lambda) over the eigenvalues of a.
double spectral_abscissa_min(const Mat3c& a);

}  // namespace qsatom
