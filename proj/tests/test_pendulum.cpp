#include "drift/pendulum.hpp"

#include <cmath>

#include <doctest.h>

#include "drift/bvp.hpp"
#include "oracles.hpp"

using namespace drift;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("half transit inversion round trips") {
  for (double k : {0.2, 0.9, 0.99}) {
    double half = k * complete_K(k);
    EllipticModulus m = modulus_from_half_transit(half);
    CHECK(m.k == doctest::Approx(k).epsilon(1e-12));
    CHECK(std::abs(m.k * m.big_k - half) <= 1e-12);
  }
  // Long transits: the complementary modulus still carries precision.
  for (double half : {8.3157, 25.0, 45.0}) {
    EllipticModulus m = modulus_from_half_transit(half);
    CHECK(std::abs(m.k * m.big_k - half) <= 1e-12 * half);
    CHECK(m.kprime > 0.0);
  }
  // Small-half asymptote k K(k) ~ k pi / 2.
  EllipticModulus m = modulus_from_half_transit(1e-3);
  CHECK(m.k == doctest::Approx(2e-3 / kPi).epsilon(1e-5));
  CHECK_THROWS_AS(modulus_from_half_transit(0.0), std::domain_error);
}

TEST_CASE("orbit invariants") {
  SegmentBoundary seg = make_segment(2, 1.0, 1.0 + 4 * kPi, 3.0, 8.0);
  PendulumOrbit orbit = orbit_for_segment(seg);
  CHECK(orbit.half_transit == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(std::abs(orbit.modulus.k * orbit.modulus.big_k - orbit.half_transit) <=
        1e-12);
  double k = orbit.modulus.k;
  CHECK(orbit.energy == doctest::Approx(1.0 / (k * k) - 1.0).epsilon(1e-12));
  CHECK(orbit.energy > 0.0);
}

TEST_CASE("unperturbed pendulum hits the boundary conditions") {
  for (int i : {1, 3}) {
    SegmentBoundary seg = make_segment(i, 2.0, 2.0 + 11.0, 0.5, 6.0);
    PendulumOrbit orbit = orbit_for_segment(seg);
    CHECK(unperturbed_q(seg.t_lo, seg, orbit) ==
          doctest::Approx((2 * i - 3) * kPi).epsilon(1e-13));
    CHECK(unperturbed_q(0.5 * (seg.t_lo + seg.t_hi), seg, orbit) ==
          doctest::Approx((2 * i - 2) * kPi).epsilon(1e-13));
    CHECK(unperturbed_q(seg.t_hi, seg, orbit) ==
          doctest::Approx((2 * i - 1) * kPi).epsilon(1e-13));
    // Monotone rotation.
    double prev = unperturbed_q(seg.t_lo, seg, orbit);
    for (double s = 0.05; s <= 1.0; s += 0.05) {
      double q = unperturbed_q(seg.t_lo + s * seg.delta(), seg, orbit);
      CHECK(q > prev);
      prev = q;
    }
  }
}

TEST_CASE("unperturbed q solves the pendulum equation") {
  SegmentBoundary seg = make_segment(1, 0.0, 10.5, 0.0, 5.0);
  PendulumOrbit orbit = orbit_for_segment(seg);
  double h = 1e-4;
  for (double t : {1.3, 5.25, 8.9}) {
    double qpp = (unperturbed_q(t + h, seg, orbit) -
                  2.0 * unperturbed_q(t, seg, orbit) +
                  unperturbed_q(t - h, seg, orbit)) /
                 (h * h);
    CHECK(qpp == doctest::Approx(std::sin(unperturbed_q(t, seg, orbit)))
                     .epsilon(1e-5));
  }
  // Energy along the orbit: qdot^2/2 - (1 - cos q) constant = 2h.
  double e0 = 2.0 * orbit.energy;
  for (double t : {0.7, 3.3, 7.7}) {
    double qd = unperturbed_q_dot(t, seg, orbit);
    double q = unperturbed_q(t, seg, orbit);
    CHECK(0.5 * qd * qd - (1.0 - std::cos(q)) ==
          doctest::Approx(e0).epsilon(1e-12));
  }
}

TEST_CASE("sampled rotation satisfies the discrete scheme to O(h^2)") {
  SegmentBoundary seg = make_segment(1, 0.0, 4 * kPi, 0.0, 0.885 * 4 * kPi);
  SegmentGrid grid = make_grid(seg.delta(), 0.01);
  CorrectionPair zero{std::vector<double>(grid.n_tilde, 0.0),
                      std::vector<double>(grid.n_tilde, 0.0)};
  std::vector<double> psi = residual(zero, seg, grid, 0.0);
  double worst = 0.0;
  for (double p : psi) worst = std::max(worst, std::abs(p));
  CHECK(worst <= 1e-2 * grid.h_tilde * grid.h_tilde);
  CHECK(worst > 0.0);  // the sampled solution is not a discrete solution
}

TEST_CASE("linear rotator interpolant") {
  SegmentBoundary seg = make_segment(1, 2.0, 12.0, 1.5, 9.5);
  CHECK(unperturbed_Q(2.0, seg) == 1.5);
  CHECK(unperturbed_Q(12.0, seg) == doctest::Approx(9.5).epsilon(1e-15));
  CHECK(unperturbed_Q(7.0, seg) == doctest::Approx(5.5).epsilon(1e-15));
}

TEST_CASE("discrete Lagrangian values") {
  CHECK(discrete_lagrangian(0, 0, 0, 0, 0.3, 0.1, 0.0) == 0.0);
  double h = 0.05, t = 0.9, mu = 1e-3;
  CHECK(discrete_lagrangian(kPi, kPi, 0.0, h, t, h, mu) ==
        doctest::Approx(0.5 + 2.0 - 2.0 * mu * (1.0 + std::cos(t)))
            .epsilon(1e-14));
  // q = 0 kills the potential factor regardless of mu.
  CHECK(discrete_lagrangian(0.0, h, 4.2, 4.2, t, h, 0.77) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(discrete_lagrangian(0, 0, 0, 0, 0, -0.1, 0),
                  std::invalid_argument);
}
