#include "drift/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace drift {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double SegmentBoundary::q_lo() const { return (2 * index - 3) * kPi; }
double SegmentBoundary::q_hi() const { return (2 * index - 1) * kPi; }

SegmentBoundary make_segment(int index, double t_lo, double t_hi, double Q_lo,
                             double Q_hi) {
  if (!(t_hi > t_lo))
    throw std::invalid_argument("make_segment: t_hi must exceed t_lo");
  return {index, t_lo, t_hi, Q_lo, Q_hi};
}

EllipticModulus modulus_from_half_transit(double half) {
  if (!(half > 0.0))
    throw std::domain_error("modulus_from_half_transit: half transit <= 0");
  // Solve k K(k) = half in t = log(kprime).  On that scale
  // d(k K)/dt = -E(k)/k, so a safeguarded Newton iteration is nearly
  // exact: for large half, k K ~ k (log 4 - t).
  double t = half > 1.6 ? std::log(4.0) - half
                        : 0.5 * std::log1p(-std::pow(
                                    std::min(0.97, 2.0 * half / kPi), 2));
  double lo = -std::numeric_limits<double>::infinity();  // f > 0 side
  double hi = 0.0;                                       // f < 0 side (k'->1)
  EllipticModulus m;
  for (int iter = 0; iter < 200; ++iter) {
    m = modulus_from_kprime(std::exp(t));
    double f = m.k * m.big_k - half;
    if (std::abs(f) <= 1e-13 * std::max(1.0, half)) return m;
    if (f > 0.0)
      lo = t;
    else
      hi = t;
    double slope = -m.big_e / std::max(m.k, 1e-12);
    double next = t - f / slope;
    if (!(next > lo) || !(next < hi)) {
      next = std::isinf(lo) ? t - 1.0 : 0.5 * (lo + hi);
    }
    t = next;
  }
  throw std::runtime_error("modulus_from_half_transit: no convergence");
}

PendulumOrbit orbit_for_segment(const SegmentBoundary& seg) {
  PendulumOrbit orbit;
  orbit.half_transit = 0.5 * seg.delta();
  orbit.modulus = modulus_from_half_transit(orbit.half_transit);
  double k = orbit.modulus.k;
  orbit.energy = (orbit.modulus.kprime * orbit.modulus.kprime) / (k * k);
  return orbit;
}

double unperturbed_q(double t, const SegmentBoundary& seg,
                     const PendulumOrbit& orbit) {
  double u = (t - seg.t_lo) / orbit.modulus.k;
  return seg.q_lo() + 2.0 * jacobi_am(u, orbit.modulus);
}

double unperturbed_q_dot(double t, const SegmentBoundary& seg,
                         const PendulumOrbit& orbit) {
  double u = (t - seg.t_lo) / orbit.modulus.k;
  return 2.0 / orbit.modulus.k * jacobi_sn_cn_dn(u, orbit.modulus).dn;
}

double unperturbed_Q(double t, const SegmentBoundary& seg) {
  return seg.Q_lo + seg.omega() * (t - seg.t_lo);
}

double discrete_lagrangian(double q_k, double q_k1, double Q_k, double Q_k1,
                           double t_k, double h, double mu) {
  if (!(h > 0.0)) throw std::invalid_argument("discrete_lagrangian: h <= 0");
  double qd = (q_k1 - q_k) / h;
  double Qd = (Q_k1 - Q_k) / h;
  return 0.5 * (qd * qd + Qd * Qd) +
         (1.0 - std::cos(q_k)) * (1.0 - mu * (std::cos(Q_k) + std::cos(t_k)));
}

}  // namespace drift
