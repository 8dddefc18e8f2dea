#ifndef DRIFT_CHAIN_HPP
#define DRIFT_CHAIN_HPP

#include <utility>
#include <vector>

namespace drift {

/// Method-wide constants; alpha_step is the Nesterov step size.
struct MethodConstants {
  static constexpr double C = 1.0 / 20.0;
  static constexpr double delta = 0.78539816339744830962;        // pi/4
  static constexpr double mu_bar = 1e-5;
  static constexpr double alpha_tilde = 2.35619449019234492885;  // 3 pi/4
  static constexpr double h_max = 0.01;
  static constexpr double alpha_step = 0.5;
};

/// m(x) := (x + pi) mod 2 pi - pi, valued in [-pi, pi].
double wrap_m(double x);

struct Rational {
  int num = 0;
  int den = 1;
  double value() const { return static_cast<double>(num) / den; }
};

/// Farey fractions of order 4 in increasing order: 0, 1/4, 1/3, 1/2,
/// 2/3, 3/4, 1.
std::vector<Rational> farey4();

/// Resonance margin: frequencies closer than epsilon0 to a Farey point
/// force transition times too long for the certified solver threshold.
double epsilon0(double mu);

struct DriftWindow {
  double lo = 0, hi = 0;
  Rational farey_lo, farey_hi;
  bool contains(double omega) const { return omega > lo && omega < hi; }
};

/// The nonempty intervals (f_m + eps0, f_{m+1} - eps0) between
/// consecutive Farey points; pairwise disjoint subsets of (0, 1).
std::vector<DriftWindow> admissible_windows(double mu);

/// N = 4 + 2 ceil((omega_f - omega_i) / (2 C mu)); always even, >= 6.
/// Both frequencies must lie in one admissible window.
int transition_count(double omega_i, double omega_f, double mu);

/// Arithmetic progression from omega_i to omega_f with N - 2 steps.
std::vector<double> frequency_chain(double omega_i, double omega_f, int n);

struct TransitionSkeleton {
  int n = 0;                   // number of transitions (even, >= 6)
  std::vector<double> omegas;  // N - 1 chain frequencies
  std::vector<double> t0;      // N + 1 anchor times, t0[0] = 0
  std::vector<double> q0;      // N + 1 anchor angles, q0[0] = 0
  double mu = 0;
};

/// Inductive anchor construction: each T_{i+1} is the first admissible
/// multiple-of-2pi reflection 2 pi n - T_i with the rotator angle landing
/// inside the pi/4 box.
TransitionSkeleton build_skeleton(const std::vector<double>& omegas, double mu);

/// (T-, T+) = ((3/4) log(320/mu), pi log(640/mu)): per-transition time
/// window implied by the admissible moduli.
std::pair<double, double> time_bounds(double mu);

}  // namespace drift

#endif
