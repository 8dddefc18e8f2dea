// Test-only oracles, independent of the library's computational paths:
// the library computes K, E and the amplitude by AGM and the splitting
// integrals by Gauss-Kronrod; the checks here integrate by adaptive
// Simpson instead.

#ifndef DRIFT_TESTS_ORACLES_HPP
#define DRIFT_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

inline double simpson_panel(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m,
                            double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double fa, double b, double fb, double m, double fm,
                          double whole, double tol, double floor, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_panel(f, a, fa, m, fm, lm, flm);
  double right = simpson_panel(f, m, fm, b, fb, rm, frm);
  if (depth <= 0) throw std::runtime_error("simpson: depth exhausted");
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  // The per-panel tolerance halves on the way down but stays above the
  // rounding scale of the whole integral, otherwise near-singular
  // integrands make the subdivision combinatorial.
  double child = std::max(0.5 * tol, floor);
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, child, floor,
                     depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, child, floor,
                     depth - 1);
}

/// Adaptive Simpson integration to absolute tolerance.
inline double integrate_simpson(const std::function<double(double)>& f,
                                double a, double b, double tol = 1e-12) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson_panel(f, a, fa, b, fb, m, fm);
  double floor = std::max(1e-15, 4e-16 * std::abs(whole));
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, floor, 60);
}

/// Legendre incomplete integral of the first kind by quadrature.
inline double legendre_F(double phi, double k, double tol = 1e-13) {
  return integrate_simpson(
      [k](double x) {
        double s = std::sin(x);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
      },
      0.0, phi, tol);
}

/// Legendre incomplete integral of the second kind by quadrature.
inline double legendre_E(double phi, double k, double tol = 1e-13) {
  return integrate_simpson(
      [k](double x) {
        double s = std::sin(x);
        return std::sqrt(1.0 - k * k * s * s);
      },
      0.0, phi, tol);
}

}  // namespace oracles

#endif
