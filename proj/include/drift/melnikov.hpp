#ifndef DRIFT_MELNIKOV_HPP
#define DRIFT_MELNIKOV_HPP

#include <span>
#include <utility>

#include "drift/pendulum.hpp"

namespace drift {

/// Classical Melnikov function M(omega) = 2 pi omega / sinh(omega pi / 2),
/// extended to omega = 0 by its limit value 4.
double melnikov_M(double omega);

enum class Side { plus, minus };

struct GammaTheta {
  double gamma = 0;
  double theta = 0;
};

/// Half-window splitting integrals
///   Gamma = 2 int cn^2(t/k, k) cos(omega t) dt,
///   Theta = 2 int cn^2(t/k, k) sin(omega t) dt
/// over [0, T-] (plus) or [-T-, 0] (minus), T- the half transit.
GammaTheta gamma_theta(double omega, const PendulumOrbit& orbit, Side side);

/// Closed form of int_{-kK}^{kK} cn^2(t/k, k) cos(omega t) dt:
/// pi omega / sinh(omega k K'(k)) plus the off-separatrix remainder R(k).
double extended_melnikov_closed_form(double omega, const EllipticModulus& m);
double extended_melnikov_remainder(double omega, const EllipticModulus& m);

struct ActionExpansion {
  double f0 = 0;  // unperturbed action of the chain
  double f1 = 0;  // first-order coefficient of mu
};

/// First-order expansion of the action function over a consistent chain
/// of segments (shared junction times and angles).  Diagnostic only: the
/// optimizer minimizes the exact discretized action.
ActionExpansion action_first_order(std::span<const SegmentBoundary> chain);

}  // namespace drift

#endif
