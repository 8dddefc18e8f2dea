#ifndef DRIFT_OPTIMIZER_HPP
#define DRIFT_OPTIMIZER_HPP

#include <span>
#include <string>
#include <vector>

#include "drift/bvp.hpp"
#include "drift/chain.hpp"
#include "drift/pendulum.hpp"

namespace drift {

/// How the per-step batch of independent segment problems is executed.
/// Results are bit-identical across modes and thread counts; the serial
/// path is the reference the parallel kernel is tested against.
enum class ExecMode { serial, parallel };

/// Outer variable Z = (T_2, Q_2, ..., T_N, Q_N); the chain endpoints
/// stay fixed.
struct UpperPoint {
  std::vector<double> z;
  double t_first = 0, Q_first = 0, t_last = 0, Q_last = 0;
  int n_transitions = 0;

  double T(int i) const;  // junction time, i = 1 .. N+1
  double Q(int i) const;  // junction angle
  void set_T(int i, double value);
  void set_Q(int i, double value);
};

UpperPoint anchors_of(const TransitionSkeleton& skeleton);

/// Immutable per-run description of the chain: anchors, frozen interior
/// node counts (so the action is smooth in Z), and solver settings.
struct ChainProblem {
  TransitionSkeleton skeleton;
  std::vector<std::size_t> n_tilde;  // frozen per segment
  double mu = 0;
  double bvp_tol = 1e-11;
  ExecMode mode = ExecMode::parallel;
  int max_bvp_iterations = 200;

  SegmentBoundary segment(const UpperPoint& z, int i) const;  // i = 1 .. N
  SegmentGrid grid(const UpperPoint& z, int i) const;
};

ChainProblem make_problem(const TransitionSkeleton& skeleton, double mu,
                          double bvp_tol = 1e-11,
                          ExecMode mode = ExecMode::parallel,
                          double h_max = MethodConstants::h_max);

/// Solves the N independent boundary value problems of one outer step.
/// Throws the first failing segment's BvpError with the index attached.
std::vector<SegmentSolution> solve_segments(const ChainProblem& problem,
                                            const UpperPoint& z);

struct GradientEval {
  std::vector<double> gradient;  // layout matches UpperPoint::z
  std::vector<SegmentSolution> solutions;
};

/// Exact junction-derivative gradient assembled from the solved
/// segments:
///   dF/dT_i = (qdot_r^2 - qdot_l^2)/2 + (Qdot_r^2 - Qdot_l^2)/2,
///   dF/dQ_i = Qdot_l - Qdot_r,
/// one-sided discrete derivatives on each side of junction i.
GradientEval evaluate_gradient(const UpperPoint& z, const ChainProblem& problem);

/// Total discretized action: sum of the per-segment rectangle sums.
double evaluate_action(std::span<const SegmentSolution> solutions);

struct NesterovState {
  std::vector<double> z, w;
  int r = 0;
  double alpha = MethodConstants::alpha_step;
  std::vector<double> grad_norm_history;
  std::vector<double> action_history;
};

/// One accelerated step:
///   W_{r+1} = Z_r - alpha grad,  Z_{r+1} = W_{r+1} + (r+1)/(r+2) (W_{r+1} - W_r).
void nesterov_step(NesterovState& state, std::span<const double> gradient);

enum class RunStatus { converged, step_cap, box_violation, solver_failure };

struct DriftResult {
  RunStatus status = RunStatus::step_cap;
  bool converged = false;
  int steps = 0;
  UpperPoint final_point;
  std::vector<SegmentSolution> solutions;   // at final_point
  std::vector<double> grad_norm_history;
  std::vector<double> action_history;
  double grad_norm = 0;
  double t_drift = 0;                       // T_{N+1} - T_1
  std::size_t shadow_start = 0, shadow_end = 0;  // interior node indices
  double drift_gap = 0;  // |Qdot at shadow_end - Qdot at shadow_start|
  double bvp_seconds = 0;
  long bvp_solves = 0;
  std::string failure_reason;
};

struct RunOptions {
  double bvp_tol = 1e-11;
  ExecMode mode = ExecMode::parallel;
  double alpha = MethodConstants::alpha_step;
  double box_half_side = MethodConstants::delta;
  double h_max = MethodConstants::h_max;
};

/// Outer minimization (accelerated gradient from the skeleton anchors)
/// with box monitoring and drift statistics.
DriftResult run(const TransitionSkeleton& skeleton, double mu, double eps,
                int max_steps, const RunOptions& options = {});

struct ShadowCheck {
  bool pass = false;
  double deviation_start = 0, deviation_end = 0;
  double bound = 0;
  std::size_t index_start = 0, index_end = 0;
};

/// Locates the interior nodes of the first and last segments where the
/// discrete rotator speed best matches omega_i / omega_f and compares
/// the deviations with the drift certificate bound 4 delta / T-(mu) + pi mu.
ShadowCheck shadow_check(const DriftResult& result, double omega_i,
                         double omega_f, double mu, double slack = 0.0);

/// Discrete rotator speeds (forward differences) of one solved segment.
std::vector<double> rotator_speeds(const SegmentSolution& sol, double h);

}  // namespace drift

#endif
