#ifndef DRIFT_REPORT_HPP
#define DRIFT_REPORT_HPP

#include <string>
#include <vector>

#include "drift/optimizer.hpp"

namespace drift {

/// Everything the report file carries; see README for the key names.
struct RunReport {
  int n_transitions = 0;
  double t_drift = 0;
  double t_drift_per_n = 0;
  int nesterov_steps = 0;
  double wall_time_s = 0;
  double wall_time_per_bvp_ms = 0;
  ShadowCheck shadow;
  double eps0 = 0;
  double t_minus = 0, t_plus = 0;
  double mu0_min = 0;
  double r0_max = 0;
  int n_formula = 0;  // transition count from the spacing rule
  bool n_overridden = false;
  std::vector<double> grad_norm_history;
  bool deterministic = false;  // suppress wall-clock fields
};

RunReport build_report(const DriftResult& result,
                       const TransitionSkeleton& skeleton, double mu,
                       double wall_time_s, int n_formula, bool overridden);

/// Columnar text trajectory: t, segment, q, Q, Qdot, junction flag.
/// Interior junctions appear once per adjacent segment with that
/// segment's one-sided speed.
void emit_trajectory(const DriftResult& result, const std::string& path);

/// Flat key = value report; histories as bracketed lists.
void emit_report(const RunReport& report, const std::string& path);

}  // namespace drift

#endif
