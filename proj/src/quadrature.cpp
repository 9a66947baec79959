#include "qsatom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsatom/model.hpp"

namespace qsatom {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double abs_tol;
  int max_depth;
  long evaluations = 0;
  bool converged = true;
  double error = 0.0;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= max_depth || m - a <= 0.0) {
      if (std::abs(delta) > 15.0 * tol) converged = false;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double abs_tol, double rel_tol, int max_depth) {
  if (!(b > a)) return {};
  SimpsonState st{f, abs_tol, max_depth};
  const double fa = st.eval(a);
  const double fb = st.eval(b);
  const double m = 0.5 * (a + b);
  const double fm = st.eval(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

  // Estimate the magnitude on a coarse grid so the relative target is meaningful.
  double scale = std::abs(whole);
  {
    const int n = 16;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::abs(st.eval(a + (i + 0.5) * (b - a) / n));
    scale = std::max(scale, acc * (b - a) / n);
  }
  const double tol = std::max(abs_tol, rel_tol * scale);
  const double value = st.recurse(a, b, fa, fm, fb, whole, tol, 0);
  return {value, st.error, st.converged, st.evaluations};
}

QuadResult integrate_real_line(const std::function<double(double)>& f, double half_width,
                               double abs_tol, double rel_tol) {
  if (!(half_width > 0.0)) throw std::invalid_argument("integrate_real_line: half_width <= 0");
  QuadResult total;
  auto add = [&total](const QuadResult& r) {
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
    total.evaluations += r.evaluations;
  };

  // Panels of width ~1 keep narrow lines from being stepped over.
  const int panels = std::max(64, static_cast<int>(std::ceil(2.0 * half_width)));
  const double h = 2.0 * half_width / panels;
  for (int i = 0; i < panels; ++i) {
    const double a = -half_width + i * h;
    add(adaptive_simpson(f, a, a + h, abs_tol / panels, rel_tol));
  }

  // x = +-X / t, dx = X / t^2 dt.
  const double tmin = 1e-8;
  auto tail = [&f, half_width](double t, double sign) {
    const double x = sign * half_width / t;
    return f(x) * half_width / (t * t);
  };
  add(adaptive_simpson([&](double t) { return tail(t, 1.0); }, tmin, 1.0, abs_tol, rel_tol));
  add(adaptive_simpson([&](double t) { return tail(t, -1.0); }, tmin, 1.0, abs_tol, rel_tol));
  return total;
}

double spectrum_window(double eta, double ztilde) {
  return std::max(200.0, 10.0 * eta + 10.0 * std::abs(ztilde));
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

double gauss_legendre_integrate(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussLegendre gl = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return half * acc;
}

}  // namespace qsatom
