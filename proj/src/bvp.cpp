#include "drift/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "drift/chain.hpp"

namespace drift {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sup_norm(const std::vector<double>& x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

std::string short_float(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}
}  // namespace

SegmentGrid make_grid(double delta, double h_max) {
  if (!(delta >= 3.0 * kPi - 1e-12))
    throw std::domain_error("make_grid: segment shorter than 3 pi");
  if (!(h_max > 0.0)) throw std::domain_error("make_grid: h_max <= 0");
  auto intervals = static_cast<std::size_t>(std::ceil(delta / h_max - 1e-12));
  return {intervals - 1, delta / static_cast<double>(intervals)};
}

Thresholds thresholds(double delta) {
  if (!(delta >= 3.0 * kPi - 1e-12))
    throw std::domain_error("thresholds: segment shorter than 3 pi");
  double at = MethodConstants::alpha_tilde;
  double d2 = delta * delta;
  double denom = 8.0 * d2 + 3.0 * at * at;
  return {at * at * kPi * kPi / (8.0 * d2 * denom), kPi * kPi / denom};
}

SampledSegment sample_segment(const SegmentBoundary& seg,
                              const SegmentGrid& grid) {
  SampledSegment s;
  s.boundary = seg;
  s.grid = grid;
  PendulumOrbit orbit = orbit_for_segment(seg);
  std::size_t n = grid.n_tilde;
  s.t.resize(n + 2);
  s.q0.resize(n + 2);
  s.Q0.resize(n + 2);
  for (std::size_t k = 0; k <= n + 1; ++k) {
    double t = seg.t_lo + grid.h_tilde * static_cast<double>(k);
    s.t[k] = t;
    s.q0[k] = unperturbed_q(t, seg, orbit);
    s.Q0[k] = unperturbed_Q(t, seg);
  }
  // Pin the boundary entries so inversion residue cannot leak into the
  // boundary conditions.
  s.t[n + 1] = seg.t_hi;
  s.q0[0] = seg.q_lo();
  s.q0[n + 1] = seg.q_hi();
  s.Q0[0] = seg.Q_lo;
  s.Q0[n + 1] = seg.Q_hi;
  return s;
}

std::vector<double> residual(const CorrectionPair& pair,
                             const SampledSegment& s, double mu) {
  std::size_t n = s.grid.n_tilde;
  double h2 = s.grid.h_tilde * s.grid.h_tilde;
  std::vector<double> psi(2 * n);
  auto q_at = [&](std::size_t k) {
    return k == 0 || k == n + 1 ? s.q0[k] : s.q0[k] + pair.v[k - 1];
  };
  auto Q_at = [&](std::size_t k) {
    return k == 0 || k == n + 1 ? s.Q0[k] : s.Q0[k] + pair.w[k - 1];
  };
  for (std::size_t k = 1; k <= n; ++k) {
    double qk = q_at(k), Qk = Q_at(k);
    psi[k - 1] = 2.0 * qk - q_at(k - 1) - q_at(k + 1) +
                 h2 * std::sin(qk) *
                     (1.0 - mu * (std::cos(Qk) + std::cos(s.t[k])));
    psi[n + k - 1] = 2.0 * Qk - Q_at(k - 1) - Q_at(k + 1) +
                     h2 * mu * std::sin(Qk) * (1.0 - std::cos(qk));
  }
  return psi;
}

std::vector<double> residual(const CorrectionPair& pair,
                             const SegmentBoundary& seg,
                             const SegmentGrid& grid, double mu) {
  return residual(pair, sample_segment(seg, grid), mu);
}

J0Factorization::J0Factorization(const SampledSegment& s) {
  std::size_t n = s.grid.n_tilde;
  double h2 = s.grid.h_tilde * s.grid.h_tilde;
  diag_v_.resize(n);
  diag_w_.resize(n);
  // LDL^T pivots for tridiag(-1, d, -1): p_1 = d_1, p_k = d_k - 1/p_{k-1}.
  for (std::size_t k = 0; k < n; ++k) {
    double dv = 2.0 + h2 * std::cos(s.q0[k + 1]);
    double dw = 2.0;
    diag_v_[k] = k == 0 ? dv : dv - 1.0 / diag_v_[k - 1];
    diag_w_[k] = k == 0 ? dw : dw - 1.0 / diag_w_[k - 1];
  }
}

void J0Factorization::solve_in_place(std::vector<double>& rhs) const {
  std::size_t n = diag_v_.size();
  auto sweep = [n](const std::vector<double>& piv, double* x) {
    for (std::size_t k = 1; k < n; ++k) x[k] += x[k - 1] / piv[k - 1];
    x[n - 1] /= piv[n - 1];
    for (std::size_t k = n - 1; k-- > 0;)
      x[k] = (x[k] + x[k + 1]) / piv[k];
  };
  sweep(diag_v_, rhs.data());
  sweep(diag_w_, rhs.data() + n);
}

J0Factorization j0_factorize(const SegmentBoundary& seg,
                             const SegmentGrid& grid) {
  return J0Factorization(sample_segment(seg, grid));
}

SegmentSolution quasi_newton_solve(const SegmentBoundary& seg,
                                   const SegmentGrid& grid, double mu,
                                   double tol, int max_iterations) {
  Thresholds thr = thresholds(seg.delta());
  if (mu > thr.mu0)
    throw BvpError(BvpError::Kind::threshold,
                   "quasi_newton_solve: mu " + short_float(mu) +
                       " exceeds the certified threshold mu0 " +
                       short_float(thr.mu0));

  SampledSegment s = sample_segment(seg, grid);
  J0Factorization j0(s);
  std::size_t n = grid.n_tilde;
  CorrectionPair pair{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};

  std::vector<double> step_norms;
  double step_norm = 0.0;
  double prev_step = std::numeric_limits<double>::infinity();
  double res_norm = 0.0;
  int iter = 0;
  for (;; ++iter) {
    if (iter >= max_iterations)
      throw BvpError(BvpError::Kind::iteration_cap,
                     "quasi_newton_solve: no convergence within " +
                         std::to_string(max_iterations) + " iterations");
    std::vector<double> psi = residual(pair, s, mu);
    res_norm = sup_norm(psi);
    if (iter > 0 && res_norm <= tol) {
      // Certified steps contract by 1/2 per iteration; once they stop
      // shrinking the iteration is orbiting the fixed point at rounding
      // level and there is nothing left to gain.
      bool at_rounding_floor = iter >= 2 && step_norm >= prev_step;
      if (step_norm <= tol || at_rounding_floor) break;
    }
    j0.solve_in_place(psi);
    prev_step = step_norm;
    step_norm = sup_norm(psi);
    step_norms.push_back(step_norm);
    for (std::size_t k = 0; k < n; ++k) {
      pair.v[k] -= psi[k];
      pair.w[k] -= psi[n + k];
    }
    double vn = sup_norm(pair.v), wn = sup_norm(pair.w);
    if (vn > thr.r0 || wn > thr.r0)
      throw BvpError(BvpError::Kind::trust_region,
                     "quasi_newton_solve: iterate left the trust ball Y_r0");
  }

  SegmentSolution sol;
  sol.q.resize(n + 2);
  sol.Q.resize(n + 2);
  for (std::size_t k = 0; k <= n + 1; ++k) {
    bool interior = k >= 1 && k <= n;
    sol.q[k] = s.q0[k] + (interior ? pair.v[k - 1] : 0.0);
    sol.Q[k] = s.Q0[k] + (interior ? pair.w[k - 1] : 0.0);
  }
  double h = grid.h_tilde;
  sol.qdot_a = (sol.q[1] - sol.q[0]) / h;
  sol.qdot_b = (sol.q[n + 1] - sol.q[n]) / h;
  sol.Qdot_a = (sol.Q[1] - sol.Q[0]) / h;
  sol.Qdot_b = (sol.Q[n + 1] - sol.Q[n]) / h;
  sol.residual_norm = res_norm;
  sol.iterations = iter;
  sol.step_norms = std::move(step_norms);
  sol.v_norm = sup_norm(pair.v);
  sol.w_norm = sup_norm(pair.w);
  double action = 0.0;
  for (std::size_t k = 0; k <= n; ++k)
    action += discrete_lagrangian(sol.q[k], sol.q[k + 1], sol.Q[k],
                                  sol.Q[k + 1], s.t[k], h, mu);
  sol.action_value = action * h;
  return sol;
}

double smallest_eigenvalue_tridiag(const std::vector<double>& diag,
                                   double off) {
  if (diag.empty())
    throw std::invalid_argument("smallest_eigenvalue_tridiag: empty matrix");
  // Sturm count: the number of negative pivots of (A - x I) equals the
  // number of eigenvalues below x.  A zero pivot is treated as an
  // infinitesimally negative one.
  auto count_below = [&](double x) {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t k = 0; k < diag.size(); ++k) {
      d = diag[k] - x - (k == 0 ? 0.0 : off * off / d);
      if (d == 0.0) d = -1e-300;
      if (d < 0.0) ++count;
    }
    return count;
  };
  // Gershgorin bracket.
  double lo = *std::min_element(diag.begin(), diag.end()) - 2.0 * std::abs(off);
  double hi = *std::max_element(diag.begin(), diag.end()) + 2.0 * std::abs(off);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi));
       ++i) {
    double mid = 0.5 * (lo + hi);
    if (count_below(mid) == 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double min_eigen_check(const SegmentBoundary& seg, const SegmentGrid& grid) {
  SampledSegment s = sample_segment(seg, grid);
  std::size_t n = grid.n_tilde;
  double h2 = grid.h_tilde * grid.h_tilde;
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k)
    diag[k] = 2.0 + h2 * std::cos(s.q0[k + 1]);
  double lambda = smallest_eigenvalue_tridiag(diag, -1.0);
  double at_over_delta = MethodConstants::alpha_tilde / seg.delta();
  double bound = at_over_delta * at_over_delta * h2;
  if (lambda < bound)
    throw std::runtime_error(
        "min_eigen_check: smallest eigenvalue below the certified bound");
  return lambda;
}

}  // namespace drift
