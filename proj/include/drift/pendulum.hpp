#ifndef DRIFT_PENDULUM_HPP
#define DRIFT_PENDULUM_HPP

#include "drift/elliptic.hpp"

namespace drift {

/// One full rotation of the unperturbed pendulum: the modulus is pinned
/// by the half transit time k K(k), the energy by h = 1/k^2 - 1.
struct PendulumOrbit {
  EllipticModulus modulus;
  double half_transit = 0;
  double energy = 0;
};

/// Boundary data of one transition segment.  The pendulum angle runs
/// from (2i-3)pi to (2i-1)pi; the rotator angle interpolates Q_lo, Q_hi
/// at mean frequency omega.
struct SegmentBoundary {
  int index = 1;
  double t_lo = 0, t_hi = 0;
  double Q_lo = 0, Q_hi = 0;

  double delta() const { return t_hi - t_lo; }
  double omega() const { return (Q_hi - Q_lo) / (t_hi - t_lo); }
  double q_lo() const;  // (2i-3)pi
  double q_hi() const;  // (2i-1)pi
};

SegmentBoundary make_segment(int index, double t_lo, double t_hi, double Q_lo,
                             double Q_hi);

/// Inverts half = k K(k); the left side is strictly increasing, so the
/// root is unique for any half > 0.
EllipticModulus modulus_from_half_transit(double half);

PendulumOrbit orbit_for_segment(const SegmentBoundary& seg);

/// Rotating solution through the segment's boundary conditions,
/// q0(t) = (2i-3)pi + 2 am(k^-1 (t - t_lo), k).
double unperturbed_q(double t, const SegmentBoundary& seg,
                     const PendulumOrbit& orbit);

/// dq0/dt = (2/k) dn(k^-1 (t - t_lo), k).
double unperturbed_q_dot(double t, const SegmentBoundary& seg,
                         const PendulumOrbit& orbit);

/// Linear interpolant of the rotator angle.
double unperturbed_Q(double t, const SegmentBoundary& seg);

/// Forward-difference discrete Lagrangian of the full model at epsilon = 1:
/// Qd^2/2 + qd^2/2 + (1 - cos q)(1 - mu (cos Q + cos t)).
double discrete_lagrangian(double q_k, double q_k1, double Q_k, double Q_k1,
                           double t_k, double h, double mu);

}  // namespace drift

#endif
