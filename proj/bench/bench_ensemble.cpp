// Serial reference vs OpenMP ensemble sampler on the same workload. Both must
// return identical positions; the run aborts otherwise.
#include <fmt/core.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <omp.h>

#include "rwcre/alpha.hpp"
#include "rwcre/cooling.hpp"
#include "rwcre/engine.hpp"

using namespace rwcre;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ensemble sampler benchmark"};
  std::int64_t n = 100'000;
  std::int64_t M = 2000;
  int workers = omp_get_max_threads();
  app.add_option("-n", n, "walk length");
  app.add_option("-M", M, "ensemble size");
  app.add_option("--workers", workers, "OpenMP threads");
  CLI11_PARSE(app, argc, argv);

  const auto alpha = AlphaSpec::two_point(1.0 / 3.0, 0.5, 2.0 / 3.0);
  const auto rule = CoolingRule::polynomial(1.0, 2.0);

  EnsembleResult serial, parallel;
  const double ts = seconds([&] { serial = sample_ensemble_serial(alpha, rule, n, M, 1); });
  const double tp = seconds([&] { parallel = sample_ensemble(alpha, rule, n, M, 1, workers); });
  if (serial.positions != parallel.positions) {
    fmt::print(stderr, "serial and parallel ensembles differ\n");
    return EXIT_FAILURE;
  }
  const double steps = static_cast<double>(n) * static_cast<double>(M);
  fmt::print("n={} M={} workers={}\n", n, M, workers);
  fmt::print("serial   {:8.3f} s  {:6.2f} ns/step\n", ts, 1e9 * ts / steps);
  fmt::print("parallel {:8.3f} s  {:6.2f} ns/step  speedup {:.2f}x\n", tp, 1e9 * tp / steps, ts / tp);
  return EXIT_SUCCESS;
}
