// Compares the OpenMP trial loop against the serial reference and checks
// they agree bitwise. Usage: bench_aggregate [n] [N] [trials] [seed]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "facetlab/extremal.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same(const ftl::StatMoments& a, const ftl::StatMoments& b) {
  return std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0 &&
         std::memcmp(&a.stderr_, &b.stderr_, sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  const long N = argc > 2 ? std::atol(argv[2]) : 400;
  const long trials = argc > 3 ? std::atol(argv[3]) : 500;
  const std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 42;

  auto t0 = std::chrono::steady_clock::now();
  const ftl::AggregateStat serial = ftl::aggregate_serial(seed, n, N, trials);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const ftl::AggregateStat parallel = ftl::aggregate(seed, n, N, trials);
  const double t_parallel = seconds_since(t0);

  int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
  {
#pragma omp single
    threads = omp_get_num_threads();
  }
#endif

  const bool identical = same(serial.min_facet, parallel.min_facet) &&
                         same(serial.max_facet, parallel.max_facet) &&
                         same(serial.max_cap_height, parallel.max_cap_height);
  std::printf("n=%d N=%ld trials=%ld threads=%d\n", n, N, trials, threads);
  std::printf("serial:   %.3f s  (%.3f ms/trial)\n", t_serial, 1e3 * t_serial / trials);
  std::printf("parallel: %.3f s  (speedup %.2fx)\n", t_parallel, t_serial / t_parallel);
  std::printf("results identical: %s\n", identical ? "yes" : "NO");
  std::printf("mean min_facet = %.9g  mean max_facet = %.9g\n", serial.min_facet.mean,
              serial.max_facet.mean);
  return identical ? 0 : 1;
}
