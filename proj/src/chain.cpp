#include "drift/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "drift/elliptic.hpp"

namespace drift {

namespace {
constexpr double kPi = 3.14159265358979323846;

double k0_big_k0(double mu) {
  // k0 = (1 + C mu)^{-1/2}; carry the complementary modulus exactly.
  double c_mu = MethodConstants::C * mu;
  double kprime0 = std::sqrt(c_mu / (1.0 + c_mu));
  EllipticModulus m = modulus_from_kprime(kprime0);
  return m.k * m.big_k;
}
}  // namespace

double wrap_m(double x) {
  double m = std::fmod(x + kPi, 2.0 * kPi);
  if (m < 0.0) m += 2.0 * kPi;
  return m - kPi;
}

std::vector<Rational> farey4() {
  return {{0, 1}, {1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}, {1, 1}};
}

double epsilon0(double mu) {
  if (!(mu > 0.0)) throw std::domain_error("epsilon0: mu <= 0");
  double at = MethodConstants::alpha_tilde;
  return 8.0 * kPi / at /
         std::sqrt(std::sqrt(9.0 * at * at + 4.0 * kPi * kPi / mu) - 3.0);
}

std::vector<DriftWindow> admissible_windows(double mu) {
  double eps0 = epsilon0(mu);
  std::vector<Rational> farey = farey4();
  std::vector<DriftWindow> windows;
  for (std::size_t m = 0; m + 1 < farey.size(); ++m) {
    double lo = farey[m].value() + eps0;
    double hi = farey[m + 1].value() - eps0;
    if (hi > lo) windows.push_back({lo, hi, farey[m], farey[m + 1]});
  }
  return windows;
}

int transition_count(double omega_i, double omega_f, double mu) {
  if (!(omega_i < omega_f))
    throw std::invalid_argument("transition_count: need omega_i < omega_f");
  bool same_window = false;
  for (const DriftWindow& w : admissible_windows(mu))
    same_window |= w.contains(omega_i) && w.contains(omega_f);
  if (!same_window)
    throw std::invalid_argument(
        "transition_count: frequencies not inside one admissible window");
  double steps = (omega_f - omega_i) / (2.0 * MethodConstants::C * mu);
  return 4 + 2 * static_cast<int>(std::ceil(steps));
}

std::vector<double> frequency_chain(double omega_i, double omega_f, int n) {
  if (n < 6 || n % 2 != 0)
    throw std::invalid_argument("frequency_chain: n must be even and >= 6");
  std::vector<double> omegas(n - 1);
  for (int i = 1; i <= n - 1; ++i)
    omegas[i - 1] = omega_i + (omega_f - omega_i) * (i - 1) / (n - 2);
  return omegas;
}

TransitionSkeleton build_skeleton(const std::vector<double>& omegas,
                                  double mu) {
  if (!(mu > 0.0) || mu > MethodConstants::mu_bar)
    throw std::domain_error("build_skeleton: mu outside (0, mu_bar]");
  int n = static_cast<int>(omegas.size()) + 1;
  TransitionSkeleton skel;
  skel.n = n;
  skel.omegas = omegas;
  skel.mu = mu;
  skel.t0.assign(n + 1, 0.0);
  skel.q0.assign(n + 1, 0.0);

  double wait_floor = k0_big_k0(mu);
  long cap = 10 * static_cast<long>(std::ceil(2.0 * kPi / epsilon0(mu)));
  for (int i = 1; i <= n; ++i) {
    double w = omegas[std::min(i, n - 1) - 1];
    double t_i = skel.t0[i - 1];
    double q_i = skel.q0[i - 1];
    long n_star = 1 + static_cast<long>(
                          std::ceil(1.0 / 6.0 + (t_i + wait_floor) / kPi));
    bool found = false;
    for (long c = n_star; c < n_star + cap; ++c) {
      double t_next = 2.0 * kPi * c - t_i;
      double q_next = q_i + w * (t_next - t_i);
      if (std::abs(wrap_m(q_next)) < kPi / 4.0) {
        skel.t0[i] = t_next;
        skel.q0[i] = q_next;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error(
          "build_skeleton: no admissible anchor below the search cap "
          "(frequency too close to a resonance)");
  }
  return skel;
}

std::pair<double, double> time_bounds(double mu) {
  if (!(mu > 0.0)) throw std::domain_error("time_bounds: mu <= 0");
  return {0.75 * std::log(320.0 / mu), kPi * std::log(640.0 / mu)};
}

}  // namespace drift
