// Command line front end: builds the admissible windows, the frequency
// chain and the anchor skeleton, runs the two-layer minimization and
// writes the trajectory and report files.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "drift/chain.hpp"
#include "drift/config.hpp"
#include "drift/optimizer.hpp"
#include "drift/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

// Exit codes: 0 ok, 2 bad config, 3 window violation, 4 mu threshold,
// 5 solver divergence, 6 step cap.
enum ExitCode {
  kOk = 0,
  kBadConfig = 2,
  kWindowViolation = 3,
  kMuThreshold = 4,
  kSolverDivergence = 5,
  kStepCap = 6
};

int run_main(const drift::RunConfig& config) {
  using namespace drift;

  if (auto complaint = validate(config)) {
    std::fprintf(stderr, "invalid configuration: %s\n", complaint->c_str());
    return kBadConfig;
  }

  std::vector<DriftWindow> windows = admissible_windows(config.mu);
  const DriftWindow* window = nullptr;
  for (const DriftWindow& w : windows)
    if (w.contains(config.omega_i) && w.contains(config.omega_f)) window = &w;
  if (!window) {
    std::fprintf(stderr,
                 "window violation: omega_i = %.9g and omega_f = %.9g do not "
                 "lie inside one admissible window (eps0 = %.6g); admissible "
                 "frequencies must stay eps0 away from every Farey fraction "
                 "of order 4\n",
                 config.omega_i, config.omega_f, epsilon0(config.mu));
    for (const DriftWindow& w : windows)
      std::fprintf(stderr, "  window (%d/%d + eps0, %d/%d - eps0) = (%.9g, %.9g)\n",
                   w.farey_lo.num, w.farey_lo.den, w.farey_hi.num,
                   w.farey_hi.den, w.lo, w.hi);
    return kWindowViolation;
  }

  int n_formula = transition_count(config.omega_i, config.omega_f, config.mu);
  int n = config.n_override.value_or(n_formula);
  std::vector<double> omegas =
      frequency_chain(config.omega_i, config.omega_f, n);
  TransitionSkeleton skeleton = build_skeleton(omegas, config.mu);

  double mu0_min = 1.0;
  for (int i = 1; i <= skeleton.n; ++i)
    mu0_min = std::min(
        mu0_min, thresholds(skeleton.t0[i] - skeleton.t0[i - 1]).mu0);
  if (config.mu > mu0_min) {
    std::fprintf(stderr,
                 "threshold violation: mu = %.6g exceeds mu0 = %.6g for the "
                 "longest transition; the frozen-Jacobian contraction is "
                 "certified only below mu0\n",
                 config.mu, mu0_min);
    return kMuThreshold;
  }

  if (config.threads > 0) {
#ifdef _OPENMP
    omp_set_num_threads(config.threads);
#endif
  }
  RunOptions options;
  options.bvp_tol = config.bvp_tol;
  options.alpha = config.alpha;
  options.h_max = config.h_max;
  options.mode =
      config.threads == 1 ? ExecMode::serial : ExecMode::parallel;

  auto start = std::chrono::steady_clock::now();
  DriftResult result;
  try {
    result = run(skeleton, config.mu, config.eps, config.max_steps, options);
  } catch (const BvpError& err) {
    std::fprintf(stderr, "segment solver failure: %s\n", err.what());
    return err.kind == BvpError::Kind::threshold ? kMuThreshold
                                                 : kSolverDivergence;
  }
  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  RunReport report = build_report(result, skeleton, config.mu, wall,
                                  n_formula, config.n_override.has_value());
  report.deterministic = config.deterministic;
  if (!config.trajectory_path.empty())
    emit_trajectory(result, config.trajectory_path);
  if (!config.report_path.empty()) emit_report(report, config.report_path);

  std::printf("N = %d (formula %d)%s\n", skeleton.n, n_formula,
              config.n_override ? ", overridden" : "");
  std::printf("T_d = %.6g, T_d/N = %.6g (bounds %.6g .. %.6g)\n",
              report.t_drift, report.t_drift_per_n, report.t_minus,
              report.t_plus);
  std::printf("steps = %d, |grad| = %.3e\n", result.steps, result.grad_norm);
  std::printf("shadow deviations = %.3e / %.3e (bound %.3e)\n",
              report.shadow.deviation_start, report.shadow.deviation_end,
              report.shadow.bound);
  if (!config.deterministic)
    std::printf("wall time = %.3f s (%.3f ms per BVP)\n", wall,
                report.wall_time_per_bvp_ms);

  switch (result.status) {
    case RunStatus::converged:
      return kOk;
    case RunStatus::box_violation:
      std::fprintf(stderr, "diverged: %s\n", result.failure_reason.c_str());
      return kSolverDivergence;
    case RunStatus::step_cap:
      std::fprintf(stderr, "step cap reached with |grad| = %.3e > eps\n",
                   result.grad_norm);
      return kStepCap;
    default:
      return kSolverDivergence;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructs drifting trajectories of the forced pendulum-"
               "rotator by two-layer action minimization"};
  std::string config_path;
  drift::RunConfig config;

  app.add_option("-c,--config", config_path, "key = value configuration file");
  auto* mu = app.add_option("--mu", config.mu, "perturbation size");
  auto* wi = app.add_option("--omega-i", config.omega_i, "initial frequency");
  auto* wf = app.add_option("--omega-f", config.omega_f, "final frequency");
  auto* eps = app.add_option("--eps", config.eps, "outer gradient tolerance");
  auto* btol = app.add_option("--bvp-tol", config.bvp_tol, "inner tolerance");
  auto* hmax = app.add_option("--h-max", config.h_max, "grid step bound");
  auto* alpha = app.add_option("--alpha", config.alpha, "outer step size");
  auto* steps = app.add_option("--max-steps", config.max_steps, "outer step cap");
  int n_override_value = 0;
  auto* nover = app.add_option("--n-override", n_override_value,
                               "override the transition count");
  auto* out = app.add_option("--out", config.trajectory_path, "trajectory file");
  auto* rep = app.add_option("--report", config.report_path, "report file");
  auto* thr = app.add_option("--threads", config.threads,
                             "segment solver threads (0 = machine, 1 = serial)");
  auto* det = app.add_flag("--deterministic", config.deterministic,
                           "byte-stable outputs (zeroed wall times)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kBadConfig;
  }

  try {
    // File first, then reapply whatever was given on the command line.
    if (!config_path.empty()) {
      drift::RunConfig file_config;
      drift::apply_config_file(file_config, config_path);
      if (!*mu) config.mu = file_config.mu;
      if (!*wi) config.omega_i = file_config.omega_i;
      if (!*wf) config.omega_f = file_config.omega_f;
      if (!*eps) config.eps = file_config.eps;
      if (!*btol) config.bvp_tol = file_config.bvp_tol;
      if (!*hmax) config.h_max = file_config.h_max;
      if (!*alpha) config.alpha = file_config.alpha;
      if (!*steps) config.max_steps = file_config.max_steps;
      if (!*nover) config.n_override = file_config.n_override;
      if (!*out) config.trajectory_path = file_config.trajectory_path;
      if (!*rep) config.report_path = file_config.report_path;
      if (!*thr) config.threads = file_config.threads;
      if (!*det) config.deterministic = file_config.deterministic;
    }
    if (*nover) config.n_override = n_override_value;
    return run_main(config);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kBadConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSolverDivergence;
  }
}
