#pragma once

// One-dimensional quadrature used by the verification paths.

#include <functional>
#include <vector>

namespace qsatom {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = true;
  long evaluations = 0;
};

/// Adaptive Simpson on [a, b]. Stops a branch when its Richardson error is
/// below max(abs_tol, rel_tol * |whole|) scaled to the branch width.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double abs_tol = 1e-12, double rel_tol = 1e-10, int max_depth = 50);

/// Integral over the real line of a function decaying at least like 1/x^2.
/// The core [-half_width, half_width] is split into panels and integrated by
/// adaptive Simpson; the tails are mapped to (0, 1] by x = half_width / t.
QuadResult integrate_real_line(const std::function<double(double)>& f, double half_width,
                               double abs_tol = 1e-12, double rel_tol = 1e-10);

/// Core half-width used for spectra: max(200, 10 eta + 10 |ztilde|).
double spectrum_window(double eta, double ztilde);

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
double gauss_legendre_integrate(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace qsatom
