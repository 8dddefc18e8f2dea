#include "drift/melnikov.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "drift/quadrature.hpp"

namespace drift {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kJunctionTol = 1e-9;
}  // namespace

double melnikov_M(double omega) {
  if (omega < 0.0) throw std::domain_error("melnikov_M: omega < 0");
  double x = 0.5 * kPi * omega;
  if (x < 1e-8) return 4.0 / (1.0 + x * x / 6.0);
  return 2.0 * kPi * omega / std::sinh(x);
}

GammaTheta gamma_theta(double omega, const PendulumOrbit& orbit, Side side) {
  const EllipticModulus& m = orbit.modulus;
  double half = orbit.half_transit;
  double a = side == Side::plus ? 0.0 : -half;
  double b = side == Side::plus ? half : 0.0;
  auto cn2 = [&](double t) {
    double c = jacobi_sn_cn_dn(t / m.k, m).cn;
    return c * c;
  };
  // Seed the adaptive rule with subintervals no longer than a half period
  // of the oscillatory factor.
  double chunk = kPi / std::max(1.0, std::abs(omega));
  int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / chunk)));
  GammaTheta out;
  for (int p = 0; p < pieces; ++p) {
    double lo = a + (b - a) * p / pieces;
    double hi = a + (b - a) * (p + 1) / pieces;
    out.gamma += integrate(
        [&](double t) { return cn2(t) * std::cos(omega * t); }, lo, hi, 1e-12);
    out.theta += integrate(
        [&](double t) { return cn2(t) * std::sin(omega * t); }, lo, hi, 1e-12);
  }
  out.gamma *= 2.0;
  out.theta *= 2.0;
  return out;
}

double extended_melnikov_remainder(double omega, const EllipticModulus& m) {
  if (!(omega > 0.0))
    throw std::domain_error("extended_melnikov_remainder: omega <= 0");
  if (!(m.k > 0.0) || m.k >= 1.0)
    throw std::domain_error("extended_melnikov_remainder: k outside (0, 1)");
  double kp = m.kprime;
  double kKp = m.k * m.big_k_prime;
  double prefactor = -kp * kp * 4.0 * m.k * m.big_k_prime *
                     std::sin(omega * m.k * m.big_k) /
                     (1.0 - std::exp(-2.0 * omega * kKp));
  double integral = integrate(
      [&](double s) {
        SnCnDn trio = jacobi_sn_cn_dn(2.0 * s * m.big_k_prime, kp);
        double sd = trio.sn / trio.dn;
        return sd * sd * std::exp(-2.0 * omega * s * kKp);
      },
      0.0, 1.0, 1e-12);
  return prefactor * integral;
}

double extended_melnikov_closed_form(double omega, const EllipticModulus& m) {
  if (!(omega > 0.0))
    throw std::domain_error("extended_melnikov_closed_form: omega <= 0");
  return kPi * omega / std::sinh(omega * m.k * m.big_k_prime) +
         extended_melnikov_remainder(omega, m);
}

ActionExpansion action_first_order(std::span<const SegmentBoundary> chain) {
  if (chain.empty())
    throw std::invalid_argument("action_first_order: empty chain");
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    if (std::abs(chain[j].t_hi - chain[j + 1].t_lo) > kJunctionTol ||
        std::abs(chain[j].Q_hi - chain[j + 1].Q_lo) > kJunctionTol ||
        chain[j + 1].index != chain[j].index + 1)
      throw std::invalid_argument("action_first_order: inconsistent junctions");
  }

  ActionExpansion out;
  struct SegmentIntegrals {
    GammaTheta plus_w, plus_1, minus_w, minus_1;
  };
  std::vector<SegmentIntegrals> gt(chain.size());
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const SegmentBoundary& seg = chain[j];
    PendulumOrbit orbit = orbit_for_segment(seg);
    const EllipticModulus& m = orbit.modulus;
    double w = seg.omega();
    // Unperturbed action of one full rotation plus the rotator term.
    out.f0 += 4.0 / m.k * (2.0 * m.big_e - m.kprime * m.kprime * m.big_k) +
              w * w * orbit.half_transit;
    gt[j].plus_w = gamma_theta(w, orbit, Side::plus);
    gt[j].plus_1 = gamma_theta(1.0, orbit, Side::plus);
    gt[j].minus_w = gamma_theta(w, orbit, Side::minus);
    gt[j].minus_1 = gamma_theta(1.0, orbit, Side::minus);
  }

  const SegmentBoundary& first = chain.front();
  const SegmentBoundary& last = chain.back();
  out.f1 = -gt.front().plus_w.gamma * std::cos(first.Q_lo) -
           gt.front().plus_1.gamma * std::cos(first.t_lo) +
           gt.front().plus_w.theta * std::sin(first.Q_lo) +
           gt.front().plus_1.theta * std::sin(first.t_lo);
  for (std::size_t j = 1; j < chain.size(); ++j) {
    // Junction shared by segments j-1 (left) and j (right).
    double T = chain[j].t_lo;
    double Q = chain[j].Q_lo;
    out.f1 -= (gt[j - 1].minus_w.gamma + gt[j].plus_w.gamma) * std::cos(Q) +
              (gt[j - 1].minus_1.gamma + gt[j].plus_1.gamma) * std::cos(T) -
              (gt[j - 1].minus_w.theta + gt[j].plus_w.theta) * std::sin(Q) -
              (gt[j - 1].minus_1.theta + gt[j].plus_1.theta) * std::sin(T);
  }
  out.f1 += -gt.back().minus_w.gamma * std::cos(last.Q_hi) -
            gt.back().minus_1.gamma * std::cos(last.t_hi) +
            gt.back().minus_w.theta * std::sin(last.Q_hi) +
            gt.back().minus_1.theta * std::sin(last.t_hi);
  return out;
}

}  // namespace drift
