#include "drift/melnikov.hpp"

#include <cmath>

#include <doctest.h>

#include "oracles.hpp"

using namespace drift;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("classical Melnikov function") {
  CHECK(melnikov_M(1.0) ==
        doctest::Approx(2.0 * kPi / std::sinh(kPi / 2)).epsilon(1e-15));
  CHECK(std::abs(melnikov_M(1.0) - 2.73) <= 0.01);
  CHECK(melnikov_M(0.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(melnikov_M(1e-12) == doctest::Approx(4.0).epsilon(1e-12));
  // Quadrature oracle: the separatrix kick integral of 2 sech^2 t
  // (that is, 1 - cos q along the separatrix), truncated tails ~ e^-80.
  double oracle = oracles::integrate_simpson(
      [](double t) {
        double s = 1.0 / std::cosh(t);
        return 2.0 * s * s * std::cos(2.0 * t);
      },
      -40.0, 40.0, 1e-13);
  CHECK(melnikov_M(2.0) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(melnikov_M(2.0) == doctest::Approx(1.0881162199).epsilon(1e-9));
  CHECK_THROWS_AS(melnikov_M(-0.5), std::domain_error);
}

TEST_CASE("Melnikov derivative bounds on (0, 1]") {
  double h = 1e-5, worst1 = 0.0, worst2 = 0.0;
  for (double omega = 0.005; omega <= 1.0; omega += 0.0037) {
    double d1 = (melnikov_M(omega + h) - melnikov_M(omega - h)) / (2 * h);
    double d2 = (melnikov_M(omega + h) - 2 * melnikov_M(omega) +
                 melnikov_M(omega - h)) /
                (h * h);
    worst1 = std::max(worst1, std::abs(d1));
    worst2 = std::max(worst2, std::abs(d2));
  }
  CHECK(worst1 <= 4.0);
  CHECK(worst2 <= 3.5);
}

TEST_CASE("splitting integrals: parity and the omega = 0 antiderivative") {
  SegmentBoundary seg = make_segment(1, 0.0, 9.0, 0.0, 0.885 * 9.0);
  PendulumOrbit orbit = orbit_for_segment(seg);
  const EllipticModulus& m = orbit.modulus;

  GammaTheta plus0 = gamma_theta(0.0, orbit, Side::plus);
  double antiderivative =
      2.0 / m.k * (m.big_e - m.kprime * m.kprime * m.big_k);
  CHECK(std::abs(plus0.gamma - antiderivative) <= 1e-10);
  CHECK(std::abs(plus0.theta) <= 1e-12);

  for (double omega : {0.4, 1.0}) {
    GammaTheta plus = gamma_theta(omega, orbit, Side::plus);
    GammaTheta minus = gamma_theta(omega, orbit, Side::minus);
    CHECK(plus.gamma == doctest::Approx(minus.gamma).epsilon(1e-12));
    CHECK(plus.theta + minus.theta == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("extended Melnikov identity") {
  for (double omega : {0.5, 0.885, 1.0}) {
    for (double k : {0.9, 0.99, 0.999}) {
      EllipticModulus m = modulus_from_k(k);
      double closed = extended_melnikov_closed_form(omega, m);
      double lhs = oracles::integrate_simpson(
          [&](double t) {
            double c = jacobi_sn_cn_dn(t / m.k, m).cn;
            return c * c * std::cos(omega * t);
          },
          -m.k * m.big_k, m.k * m.big_k, 1e-13);
      CHECK(std::abs(closed - lhs) <= 1e-8);
    }
  }
  // Doubled half-side sums reproduce the identity as well.
  EllipticModulus m = modulus_from_k(0.999);
  SegmentBoundary seg =
      make_segment(1, 0.0, 2.0 * m.k * m.big_k, 0.0, 1.0 * 2.0 * m.k * m.big_k);
  PendulumOrbit orbit = orbit_for_segment(seg);
  GammaTheta plus = gamma_theta(1.0, orbit, Side::plus);
  GammaTheta minus = gamma_theta(1.0, orbit, Side::minus);
  CHECK(plus.gamma + minus.gamma ==
        doctest::Approx(2.0 * extended_melnikov_closed_form(1.0, m))
            .epsilon(1e-6));
}

TEST_CASE("remainder dies off at the separatrix") {
  double omega = 0.885;
  double prev = 1e300;
  for (int j = 2; j <= 8; ++j) {
    EllipticModulus m = modulus_from_k(1.0 - std::pow(10.0, -j));
    double gap =
        std::abs(2.0 * extended_melnikov_closed_form(omega, m) -
                 melnikov_M(omega));
    CHECK(gap <= prev);
    prev = gap;
  }
  CHECK(prev <= 1e-5);
}

TEST_CASE("first-order action expansion") {
  // Inconsistent junctions are rejected.
  std::vector<SegmentBoundary> broken = {make_segment(1, 0.0, 10.0, 0.0, 5.0),
                                         make_segment(2, 10.5, 20.0, 5.0, 9.0)};
  CHECK_THROWS_AS(action_first_order(broken), std::invalid_argument);

  // F0 equals the quadrature of the unperturbed Lagrangian.
  std::vector<SegmentBoundary> chain;
  double om = 0.505, gap = 4 * kPi;
  for (int i = 1; i <= 3; ++i)
    chain.push_back(make_segment(i, (i - 1) * gap, i * gap, om * (i - 1) * gap,
                                 om * i * gap));
  ActionExpansion ax = action_first_order(chain);
  double f0_quad = 0.0;
  for (const SegmentBoundary& seg : chain) {
    PendulumOrbit orbit = orbit_for_segment(seg);
    f0_quad += oracles::integrate_simpson(
        [&](double t) {
          double qd = unperturbed_q_dot(t, seg, orbit);
          double q = unperturbed_q(t, seg, orbit);
          return 0.5 * qd * qd + (1.0 - std::cos(q)) +
                 0.5 * seg.omega() * seg.omega();
        },
        seg.t_lo, seg.t_hi, 1e-12);
  }
  CHECK(ax.f0 == doctest::Approx(f0_quad).epsilon(1e-12));

  // Near the separatrix one rotation costs 8 plus the rotator term.
  EllipticModulus m = modulus_from_k(0.999);
  double half = m.k * m.big_k;
  std::vector<SegmentBoundary> single = {
      make_segment(1, 0.0, 2.0 * half, 0.0, 0.4 * 2.0 * half)};
  ActionExpansion ax1 = action_first_order(single);
  CHECK(std::abs(ax1.f0 - (8.0 + 0.4 * 0.4 * half)) <= 0.05);

  // Junction angles at multiples of 2 pi with equal moduli: the Theta
  // parts cancel pairwise, leaving a pure Gamma * cos combination; the
  // expansion must then be symmetric under time reflection about the
  // chain midpoint, which swaps the two boundary contributions.
  double twopi_rate = 2.0 * kPi / gap;
  std::vector<SegmentBoundary> aligned;
  for (int i = 1; i <= 2; ++i)
    aligned.push_back(make_segment(i, (i - 1) * gap, i * gap,
                                   twopi_rate * (i - 1) * gap,
                                   twopi_rate * i * gap));
  SegmentBoundary seg = aligned[0];
  PendulumOrbit orbit = orbit_for_segment(seg);
  GammaTheta gw = gamma_theta(twopi_rate, orbit, Side::plus);
  GammaTheta g1 = gamma_theta(1.0, orbit, Side::plus);
  // Assemble the expected value with Theta terms dropped.
  double expected = -2.0 * gw.gamma - 2.0 * g1.gamma          // ends
                    - 2.0 * gw.gamma * std::cos(aligned[0].Q_hi)
                    - 2.0 * g1.gamma * std::cos(aligned[0].t_hi);
  ActionExpansion ax2 = action_first_order(aligned);
  CHECK(ax2.f1 == doctest::Approx(expected).epsilon(1e-9));
}
