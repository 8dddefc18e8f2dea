// Benchmark of the per-step segment batch: OpenMP parallel map against
// the serial reference path, with a bitwise equality check between the
// two.  One gradient evaluation solves every boundary value problem of
// the chain once, which is the dominant cost of an outer step.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "drift/chain.hpp"
#include "drift/optimizer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

bool bitwise_equal(const std::vector<drift::SegmentSolution>& a,
                   const std::vector<drift::SegmentSolution>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].q.size() != b[i].q.size()) return false;
    if (std::memcmp(a[i].q.data(), b[i].q.data(),
                    a[i].q.size() * sizeof(double)) != 0 ||
        std::memcmp(a[i].Q.data(), b[i].Q.data(),
                    a[i].Q.size() * sizeof(double)) != 0)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace drift;
  int n = argc > 1 ? std::atoi(argv[1]) : 24;
  int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  if (n < 6 || n % 2) {
    std::fprintf(stderr, "usage: segment_bench [even N >= 6] [repeats]\n");
    return 2;
  }

  double mu = 1.5e-9;
  double omega_i = 0.884;
  double omega_f = omega_i + (n - 2) * MethodConstants::C * mu;
  TransitionSkeleton skeleton =
      build_skeleton(frequency_chain(omega_i, omega_f, n), mu);
  UpperPoint z = anchors_of(skeleton);

  ChainProblem serial = make_problem(skeleton, mu, 1e-11, ExecMode::serial);
  ChainProblem parallel =
      make_problem(skeleton, mu, 1e-11, ExecMode::parallel);

  std::size_t total_nodes = 0;
  for (std::size_t nt : serial.n_tilde) total_nodes += nt;
  std::printf("chain: N = %d segments, %zu interior nodes total\n", n,
              total_nodes);
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: OpenMP not enabled in this build\n");
#endif

  std::vector<SegmentSolution> ref = solve_segments(serial, z);
  double best_serial = 1e300, best_parallel = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<SegmentSolution> s = solve_segments(serial, z);
    best_serial = std::min(best_serial, seconds_since(t0));

    t0 = std::chrono::steady_clock::now();
    std::vector<SegmentSolution> p = solve_segments(parallel, z);
    best_parallel = std::min(best_parallel, seconds_since(t0));

    if (!bitwise_equal(ref, s) || !bitwise_equal(ref, p)) {
      std::fprintf(stderr, "FAIL: serial and parallel results differ\n");
      return 1;
    }
  }

  std::printf("serial    : %8.3f ms (%.3f ms per BVP)\n", 1e3 * best_serial,
              1e3 * best_serial / n);
  std::printf("parallel  : %8.3f ms (%.3f ms per BVP)\n", 1e3 * best_parallel,
              1e3 * best_parallel / n);
  std::printf("speedup   : %.2fx, results bit-identical\n",
              best_serial / best_parallel);
  return 0;
}
