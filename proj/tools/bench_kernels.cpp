// Benchmarks the OpenMP kernels against their serial reference
// implementations and checks that both produce identical results: exact load
// counting, brute-force edge expansion, and the spectral power iteration.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "ncc/cluster.hpp"
#include "ncc/expansion.hpp"
#include "ncc/graph_builders.hpp"
#include "ncc/routing.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  double best = 0;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (r == 0 || ms < best) best = ms;
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              equal ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel benchmark"};
  int phi_m = 5, brute_m = 3, spectral_m = 7, repeats = 3, threads = 0;
  app.add_option("--phi-m", phi_m, "dimension for the load-count kernel");
  app.add_option("--brute-m", brute_m, "CCC dimension for the brute-force kernel");
  app.add_option("--spectral-m", spectral_m, "dimension for the power-iteration kernel");
  app.add_option("--repeats", repeats, "timed repetitions (best is reported)");
  app.add_option("--threads", threads, "worker threads");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled at build time; both columns run serially.\n\n");
#endif
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const auto g = ncc::build_cg_doubleprime(phi_m, ncc::double_fan_strategy(phi_m));
    ncc::PhiTable serial, parallel;
    const double ts = time_ms([&] { serial = ncc::phi_exact_serial(g); }, repeats);
    const double tp = time_ms([&] { parallel = ncc::phi_exact(g); }, repeats);
    row(("phi exact (m=" + std::to_string(phi_m) + ")").c_str(), ts, tp,
        serial.counts == parallel.counts && serial.total_steps == parallel.total_steps);
  }

  {
    const auto g = ncc::build_ccc(brute_m);
    ncc::ExpansionResult serial, parallel;
    const double ts = time_ms([&] { serial = ncc::expansion_bruteforce_serial(g); }, repeats);
    const double tp = time_ms([&] { parallel = ncc::expansion_bruteforce(g); }, repeats);
    row(("bruteforce (ccc m=" + std::to_string(brute_m) + ")").c_str(), ts, tp,
        serial.value == parallel.value && serial.witness == parallel.witness);
  }

  {
    const auto g = ncc::build_cg_doubleprime(spectral_m, ncc::double_fan_strategy(spectral_m));
    ncc::CheegerOptions serial_opts, parallel_opts;
    serial_opts.parallel = false;
    ncc::CheegerResult serial, parallel;
    const double ts = time_ms([&] { serial = ncc::cheeger_lower(g, serial_opts); }, repeats);
    const double tp = time_ms([&] { parallel = ncc::cheeger_lower(g, parallel_opts); }, repeats);
    row(("power iteration (m=" + std::to_string(spectral_m) + ")").c_str(), ts, tp,
        serial.lambda2 == parallel.lambda2 && serial.iterations == parallel.iterations);
  }

  return 0;
}
