#ifndef DRIFT_BVP_HPP
#define DRIFT_BVP_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "drift/pendulum.hpp"

namespace drift {

/// Uniform interior grid of one segment: (n_tilde + 1) h_tilde = delta.
struct SegmentGrid {
  std::size_t n_tilde = 0;
  double h_tilde = 0;
};

/// Smallest interior node count with h_tilde <= h_max; delta >= 3 pi.
SegmentGrid make_grid(double delta, double h_max);

/// Certified-regime thresholds for a segment of length delta.
struct Thresholds {
  double mu0 = 0;  // largest admissible perturbation size
  double r0 = 0;   // trust ball radius for the corrections
};
Thresholds thresholds(double delta);

/// Corrections to the unperturbed samples at the interior nodes.
struct CorrectionPair {
  std::vector<double> v, w;
};

struct SegmentSolution {
  std::vector<double> q, Q;  // n_tilde + 2 values, boundaries included
  double qdot_a = 0, qdot_b = 0;  // one-sided discrete derivatives
  double Qdot_a = 0, Qdot_b = 0;
  double residual_norm = 0;
  int iterations = 0;
  double action_value = 0;
  double v_norm = 0, w_norm = 0;        // final correction sup norms
  std::vector<double> step_norms;       // quasi-Newton step history
};

class BvpError : public std::runtime_error {
 public:
  enum class Kind { threshold, trust_region, iteration_cap, invalid };
  BvpError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  Kind kind;
  int segment = -1;  // attached by callers that solve many segments
};

/// Unperturbed samples on the grid, boundary values pinned exactly.
struct SampledSegment {
  std::vector<double> t, q0, Q0;  // n_tilde + 2 entries each
  SegmentBoundary boundary;
  SegmentGrid grid;
};
SampledSegment sample_segment(const SegmentBoundary& seg,
                              const SegmentGrid& grid);

/// Discrete Euler-Lagrange residual at q = q0 + v, Q = Q0 + w; 2 n_tilde
/// entries, q block first.  Boundary nodes enter rows 1 and n_tilde
/// through the fixed boundary values.
std::vector<double> residual(const CorrectionPair& pair,
                             const SampledSegment& sampled, double mu);
std::vector<double> residual(const CorrectionPair& pair,
                             const SegmentBoundary& seg,
                             const SegmentGrid& grid, double mu);

/// Frozen Jacobian blockdiag(T + h^2 diag(cos q0), T), factored once per
/// segment; solves by two independent tridiagonal eliminations.
class J0Factorization {
 public:
  J0Factorization(const SampledSegment& sampled);
  // Overwrites rhs (q block first, then Q block) with the solution.
  void solve_in_place(std::vector<double>& rhs) const;
  std::size_t size() const { return diag_v_.size(); }

 private:
  std::vector<double> diag_v_, diag_w_;  // factored pivots
};
J0Factorization j0_factorize(const SegmentBoundary& seg,
                             const SegmentGrid& grid);

/// Quasi-Newton iteration with the frozen Jacobian, started from
/// (v, w) = (0, 0).  Iterates must stay inside the trust ball Y_r0 and
/// mu must not exceed mu0(delta); violations throw BvpError.
SegmentSolution quasi_newton_solve(const SegmentBoundary& seg,
                                   const SegmentGrid& grid, double mu,
                                   double tol, int max_iterations = 200);

/// Smallest eigenvalue of a symmetric tridiagonal matrix with constant
/// off-diagonal, located by Sturm-count bisection.
double smallest_eigenvalue_tridiag(const std::vector<double>& diag,
                                   double off);

/// Sturm-bisection smallest eigenvalue of the v block; throws if the
/// certified lower bound (alpha_tilde / delta)^2 h^2 fails.
double min_eigen_check(const SegmentBoundary& seg, const SegmentGrid& grid);

}  // namespace drift

#endif
