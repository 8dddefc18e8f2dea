#include "drift/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace drift {

namespace {

// Shortest representation that round-trips a double, stable across runs.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct File {
  explicit File(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  }
  ~File() {
    if (f) std::fclose(f);
  }
  void line(const std::string& s) {
    if (std::fputs((s + "\n").c_str(), f) < 0)
      throw std::runtime_error("write failure");
  }
  FILE* f;
};

}  // namespace

RunReport build_report(const DriftResult& result,
                       const TransitionSkeleton& skeleton, double mu,
                       double wall_time_s, int n_formula, bool overridden) {
  RunReport report;
  report.n_transitions = skeleton.n;
  report.t_drift = result.t_drift;
  report.t_drift_per_n = result.t_drift / skeleton.n;
  report.nesterov_steps = result.steps;
  report.wall_time_s = wall_time_s;
  report.wall_time_per_bvp_ms =
      result.bvp_solves > 0
          ? 1000.0 * result.bvp_seconds / static_cast<double>(result.bvp_solves)
          : 0.0;
  report.shadow = shadow_check(result, skeleton.omegas.front(),
                               skeleton.omegas.back(), mu);
  report.eps0 = epsilon0(mu);
  auto bounds = time_bounds(mu);
  report.t_minus = bounds.first;
  report.t_plus = bounds.second;
  report.mu0_min = 1.0;
  report.r0_max = 0.0;
  for (int i = 1; i <= skeleton.n; ++i) {
    Thresholds thr = thresholds(skeleton.t0[i] - skeleton.t0[i - 1]);
    report.mu0_min = std::min(report.mu0_min, thr.mu0);
    report.r0_max = std::max(report.r0_max, thr.r0);
  }
  report.n_formula = n_formula;
  report.n_overridden = overridden;
  report.grad_norm_history = result.grad_norm_history;
  return report;
}

void emit_trajectory(const DriftResult& result, const std::string& path) {
  File out(path);
  out.line("# t segment q Q Qdot junction");
  const UpperPoint& z = result.final_point;
  int n = z.n_transitions;
  for (int i = 1; i <= n; ++i) {
    const SegmentSolution& sol = result.solutions[i - 1];
    std::size_t nodes = sol.q.size();  // n_tilde + 2
    double h = (z.T(i + 1) - z.T(i)) / static_cast<double>(nodes - 1);
    std::vector<double> speeds = rotator_speeds(sol, h);
    // Left boundary row; interior junctions also closed the previous
    // segment, so each appears once per adjacent segment.
    for (std::size_t k = 0; k + 1 < nodes; ++k) {
      double t = z.T(i) + h * static_cast<double>(k);
      bool junction = k == 0;
      out.line(fmt(t) + " " + std::to_string(i) + " " + fmt(sol.q[k]) + " " +
               fmt(sol.Q[k]) + " " + fmt(speeds[k]) + " " +
               (junction ? "1" : "0"));
    }
    // Right boundary row with the backward one-sided speed.
    double t_hi = z.T(i + 1);
    double back_speed = (sol.Q[nodes - 1] - sol.Q[nodes - 2]) / h;
    out.line(fmt(t_hi) + " " + std::to_string(i) + " " +
             fmt(sol.q[nodes - 1]) + " " + fmt(sol.Q[nodes - 1]) + " " +
             fmt(back_speed) + " 1");
  }
}

void emit_report(const RunReport& report, const std::string& path) {
  File out(path);
  bool det = report.deterministic;
  out.line("n_transitions = " + std::to_string(report.n_transitions));
  out.line("n_formula = " + std::to_string(report.n_formula));
  out.line("n_overridden = " + std::string(report.n_overridden ? "1" : "0"));
  out.line("t_drift = " + fmt(report.t_drift));
  out.line("t_drift_per_n = " + fmt(report.t_drift_per_n));
  out.line("nesterov_steps = " + std::to_string(report.nesterov_steps));
  out.line("wall_time_s = " + fmt(det ? 0.0 : report.wall_time_s));
  out.line("wall_time_per_bvp_ms = " +
           fmt(det ? 0.0 : report.wall_time_per_bvp_ms));
  out.line("shadow_index_start = " + std::to_string(report.shadow.index_start));
  out.line("shadow_index_end = " + std::to_string(report.shadow.index_end));
  out.line("shadow_dev_start = " + fmt(report.shadow.deviation_start));
  out.line("shadow_dev_end = " + fmt(report.shadow.deviation_end));
  out.line("shadow_bound = " + fmt(report.shadow.bound));
  out.line("eps0 = " + fmt(report.eps0));
  out.line("t_minus = " + fmt(report.t_minus));
  out.line("t_plus = " + fmt(report.t_plus));
  out.line("mu0_min = " + fmt(report.mu0_min));
  out.line("r0_max = " + fmt(report.r0_max));
  std::string hist = "grad_norm_history = [";
  for (std::size_t i = 0; i < report.grad_norm_history.size(); ++i) {
    if (i) hist += ", ";
    hist += fmt(report.grad_norm_history[i]);
  }
  out.line(hist + "]");
}

}  // namespace drift
