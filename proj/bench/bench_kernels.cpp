#include <benchmark/benchmark.h>

#include "gcl/exec.hpp"
#include "gcl/suites.hpp"

#ifndef GCL_DATA_DIR
#define GCL_DATA_DIR "data"
#endif

using namespace gcl;

static const Scenario& nct3() {
  static Scenario s = load_scenario(GCL_DATA_DIR "/nct3.json");
  return s;
}

static const Scenario& t1z2() {
  static Scenario s = load_scenario(GCL_DATA_DIR "/t1z2.json");
  return s;
}

// arg 0: jobs (1 = serial reference loop)
static void BM_theta_compat(benchmark::State& st) {
  const Scenario& s = nct3();
  for (auto _ : st) {
    Window w = theta3_window(s.md, s.d, 3);
    auto r = check_compatible(w, s.md, (int)st.range(0));
    benchmark::DoNotOptimize(r.checks);
  }
}
BENCHMARK(BM_theta_compat)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_vartheta_compat(benchmark::State& st) {
  const Scenario& s = t1z2();
  for (auto _ : st) {
    auto r = check_vartheta_compatible(s.md, s.d, 3, (int)st.range(0));
    benchmark::DoNotOptimize(r.checks);
  }
}
BENCHMARK(BM_vartheta_compat)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_chain_grid(benchmark::State& st) {
  const Scenario& s = nct3();
  SuiteOptions o = options_for(s);
  o.jobs = (int)st.range(0);
  for (auto _ : st) {
    Report r = jlo_suite(s, o);
    benchmark::DoNotOptimize(r.checks.size());
  }
}
BENCHMARK(BM_chain_grid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
