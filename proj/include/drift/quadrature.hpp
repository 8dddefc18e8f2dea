#ifndef DRIFT_QUADRATURE_HPP
#define DRIFT_QUADRATURE_HPP

#include <functional>

namespace drift {

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to the
/// requested absolute tolerance.  Throws std::runtime_error if the
/// subdivision budget is exhausted before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

}  // namespace drift

#endif
