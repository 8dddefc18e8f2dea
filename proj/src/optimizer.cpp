#include "drift/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drift {

namespace {
constexpr double kPi = 3.14159265358979323846;

double l2_norm(std::span<const double> x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}
}  // namespace

double UpperPoint::T(int i) const {
  if (i == 1) return t_first;
  if (i == n_transitions + 1) return t_last;
  return z[2 * (i - 2)];
}

double UpperPoint::Q(int i) const {
  if (i == 1) return Q_first;
  if (i == n_transitions + 1) return Q_last;
  return z[2 * (i - 2) + 1];
}

void UpperPoint::set_T(int i, double value) { z[2 * (i - 2)] = value; }
void UpperPoint::set_Q(int i, double value) { z[2 * (i - 2) + 1] = value; }

UpperPoint anchors_of(const TransitionSkeleton& skeleton) {
  UpperPoint p;
  p.n_transitions = skeleton.n;
  p.t_first = skeleton.t0.front();
  p.Q_first = skeleton.q0.front();
  p.t_last = skeleton.t0.back();
  p.Q_last = skeleton.q0.back();
  p.z.resize(2 * (skeleton.n - 1));
  for (int i = 2; i <= skeleton.n; ++i) {
    p.z[2 * (i - 2)] = skeleton.t0[i - 1];
    p.z[2 * (i - 2) + 1] = skeleton.q0[i - 1];
  }
  return p;
}

SegmentBoundary ChainProblem::segment(const UpperPoint& z, int i) const {
  return make_segment(i, z.T(i), z.T(i + 1), z.Q(i), z.Q(i + 1));
}

SegmentGrid ChainProblem::grid(const UpperPoint& z, int i) const {
  std::size_t n = n_tilde[i - 1];
  double delta = z.T(i + 1) - z.T(i);
  return {n, delta / static_cast<double>(n + 1)};
}

ChainProblem make_problem(const TransitionSkeleton& skeleton, double mu,
                          double bvp_tol, ExecMode mode, double h_max) {
  ChainProblem problem;
  problem.skeleton = skeleton;
  problem.mu = mu;
  problem.bvp_tol = bvp_tol;
  problem.mode = mode;
  problem.n_tilde.resize(skeleton.n);
  for (int i = 1; i <= skeleton.n; ++i) {
    double anchor_delta = skeleton.t0[i] - skeleton.t0[i - 1];
    // Junctions roam at most delta = pi/4 each way, so size the frozen
    // grid for the widest possible segment to keep h <= h_max.
    problem.n_tilde[i - 1] =
        make_grid(anchor_delta + kPi / 2.0, h_max).n_tilde;
  }
  return problem;
}

std::vector<SegmentSolution> solve_segments(const ChainProblem& problem,
                                            const UpperPoint& z) {
  int n = problem.skeleton.n;
  std::vector<SegmentSolution> solutions(n);
  std::vector<std::optional<BvpError>> failures(n);

  auto solve_one = [&](int idx) {
    int i = idx + 1;
    try {
      solutions[idx] =
          quasi_newton_solve(problem.segment(z, i), problem.grid(z, i),
                             problem.mu, problem.bvp_tol,
                             problem.max_bvp_iterations);
    } catch (const BvpError& err) {
      failures[idx] = err;
    } catch (const std::exception& err) {
      // Nothing may escape the parallel region.
      failures[idx] = BvpError(BvpError::Kind::invalid, err.what());
    }
  };

  if (problem.mode == ExecMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < n; ++idx) solve_one(idx);
#else
    for (int idx = 0; idx < n; ++idx) solve_one(idx);
#endif
  } else {
    for (int idx = 0; idx < n; ++idx) solve_one(idx);
  }

  for (int idx = 0; idx < n; ++idx) {
    if (failures[idx]) {
      BvpError err(failures[idx]->kind,
                   "segment " + std::to_string(idx + 1) + ": " +
                       failures[idx]->what());
      err.segment = idx + 1;
      throw err;
    }
  }
  return solutions;
}

GradientEval evaluate_gradient(const UpperPoint& z,
                               const ChainProblem& problem) {
  GradientEval eval;
  eval.solutions = solve_segments(problem, z);
  int n = problem.skeleton.n;
  eval.gradient.resize(2 * (n - 1));
  for (int i = 2; i <= n; ++i) {
    const SegmentSolution& left = eval.solutions[i - 2];
    const SegmentSolution& right = eval.solutions[i - 1];
    double dT = 0.5 * (right.qdot_a * right.qdot_a - left.qdot_b * left.qdot_b) +
                0.5 * (right.Qdot_a * right.Qdot_a - left.Qdot_b * left.Qdot_b);
    double dQ = left.Qdot_b - right.Qdot_a;
    eval.gradient[2 * (i - 2)] = dT;
    eval.gradient[2 * (i - 2) + 1] = dQ;
  }
  return eval;
}

double evaluate_action(std::span<const SegmentSolution> solutions) {
  double total = 0.0;
  for (const SegmentSolution& s : solutions) total += s.action_value;
  return total;
}

void nesterov_step(NesterovState& state, std::span<const double> gradient) {
  std::size_t dim = state.z.size();
  std::vector<double> w_next(dim);
  double momentum =
      static_cast<double>(state.r + 1) / static_cast<double>(state.r + 2);
  for (std::size_t j = 0; j < dim; ++j)
    w_next[j] = state.z[j] - state.alpha * gradient[j];
  for (std::size_t j = 0; j < dim; ++j)
    state.z[j] = w_next[j] + momentum * (w_next[j] - state.w[j]);
  state.w = std::move(w_next);
  ++state.r;
}

std::vector<double> rotator_speeds(const SegmentSolution& sol, double h) {
  std::vector<double> speeds(sol.Q.size() - 1);
  for (std::size_t k = 0; k + 1 < sol.Q.size(); ++k)
    speeds[k] = (sol.Q[k + 1] - sol.Q[k]) / h;
  return speeds;
}

namespace {

// Best interior match of the discrete rotator speed against omega on one
// segment; node index restricted to [2, n_tilde - 1].
std::pair<std::size_t, double> best_speed_match(const SegmentSolution& sol,
                                                double h, double omega) {
  std::vector<double> speeds = rotator_speeds(sol, h);
  std::size_t n = sol.Q.size() - 2;  // interior node count
  if (n < 3)
    throw std::invalid_argument("best_speed_match: segment grid too coarse");
  std::size_t best = 2;
  double best_dev = std::abs(speeds[2] - omega);
  for (std::size_t k = 3; k <= n - 1; ++k) {
    double dev = std::abs(speeds[k] - omega);
    if (dev < best_dev) {
      best = k;
      best_dev = dev;
    }
  }
  return {best, best_dev};
}

bool inside_boxes(const UpperPoint& z, const TransitionSkeleton& skel,
                  double half_side, std::string* who) {
  for (int i = 2; i <= skel.n; ++i) {
    double dT = std::abs(wrap_m(z.T(i) - skel.t0[i - 1]));
    double dQ = std::abs(wrap_m(z.Q(i) - skel.q0[i - 1]));
    if (dT > half_side || dQ > half_side) {
      if (who)
        *who = "junction " + std::to_string(i) +
               (dT > half_side ? " time" : " angle") +
               " left its certification box";
      return false;
    }
  }
  return true;
}

}  // namespace

DriftResult run(const TransitionSkeleton& skeleton, double mu, double eps,
                int max_steps, const RunOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("run: eps <= 0");
  ChainProblem problem = make_problem(skeleton, mu, options.bvp_tol,
                                      options.mode, options.h_max);

  UpperPoint z = anchors_of(skeleton);
  NesterovState state;
  state.z = z.z;
  state.w = z.z;
  state.alpha = options.alpha;

  DriftResult result;
  result.t_drift = skeleton.t0.back() - skeleton.t0.front();

  std::vector<SegmentSolution> solutions;
  while (true) {
    z.z = state.z;
    auto start = std::chrono::steady_clock::now();
    GradientEval eval = evaluate_gradient(z, problem);
    result.bvp_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    result.bvp_solves += skeleton.n;
    solutions = std::move(eval.solutions);

    double gnorm = l2_norm(eval.gradient);
    state.grad_norm_history.push_back(gnorm);
    state.action_history.push_back(evaluate_action(solutions));
    result.grad_norm = gnorm;

    std::string who;
    if (!inside_boxes(z, skeleton, options.box_half_side, &who)) {
      result.status = RunStatus::box_violation;
      result.failure_reason = who;
      break;
    }
    if (gnorm <= eps) {
      result.status = RunStatus::converged;
      result.converged = true;
      break;
    }
    if (state.r >= max_steps) {
      result.status = RunStatus::step_cap;
      break;
    }
    nesterov_step(state, eval.gradient);
  }

  result.steps = state.r;
  result.final_point = z;
  result.solutions = std::move(solutions);
  result.grad_norm_history = std::move(state.grad_norm_history);
  result.action_history = std::move(state.action_history);

  if (!result.solutions.empty()) {
    double h_first = problem.grid(z, 1).h_tilde;
    double h_last = problem.grid(z, skeleton.n).h_tilde;
    auto front = best_speed_match(result.solutions.front(), h_first,
                                  skeleton.omegas.front());
    auto back = best_speed_match(result.solutions.back(), h_last,
                                 skeleton.omegas.back());
    result.shadow_start = front.first;
    result.shadow_end = back.first;
    std::vector<double> speeds_first =
        rotator_speeds(result.solutions.front(), h_first);
    std::vector<double> speeds_last =
        rotator_speeds(result.solutions.back(), h_last);
    result.drift_gap =
        std::abs(speeds_last[back.first] - speeds_first[front.first]);
  }
  return result;
}

ShadowCheck shadow_check(const DriftResult& result, double omega_i,
                         double omega_f, double mu, double slack) {
  if (result.solutions.empty())
    throw std::invalid_argument("shadow_check: result has no solutions");
  const UpperPoint& z = result.final_point;
  int n = z.n_transitions;
  const SegmentSolution& first = result.solutions.front();
  const SegmentSolution& last = result.solutions.back();
  double h_first =
      (z.T(2) - z.T(1)) / static_cast<double>(first.Q.size() - 1);
  double h_last =
      (z.T(n + 1) - z.T(n)) / static_cast<double>(last.Q.size() - 1);
  auto front = best_speed_match(first, h_first, omega_i);
  auto back = best_speed_match(last, h_last, omega_f);

  ShadowCheck check;
  check.index_start = front.first;
  check.index_end = back.first;
  check.deviation_start = front.second;
  check.deviation_end = back.second;
  check.bound = 4.0 * MethodConstants::delta / time_bounds(mu).first +
                kPi * mu + slack;
  check.pass = std::max(front.second, back.second) <= check.bound;
  return check;
}

}  // namespace drift
