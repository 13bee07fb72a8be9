// Serial vs OpenMP kernels, and the semi-naive loop vs the naive reference.

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "gddp/cli.hpp"
#include "gddp/engine.hpp"
#include "gddp/numeric.hpp"

using namespace gddp;

namespace {

Problem load(const std::string& rel) {
  const std::string path = std::string(GDDP_SOURCE_DIR) + "/" + rel;
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), *format_for_path(path));
}

const RuleSet& rules() {
  static const RuleSet r = load_rules(std::string(GDDP_SOURCE_DIR) + "/rules/gdd.rules");
  return r;
}

const Limits kLimits{200000, 10000, 60.0};

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void BM_Saturate(benchmark::State& state) {
  const Problem p = load("problems/p3.gdd");
  const auto init = initial_facts(p);
  EngineOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) {
    auto sat = saturate_facts(init, rules(), kLimits, opts);
    benchmark::DoNotOptimize(sat.factbase.size());
  }
}
BENCHMARK(BM_Saturate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SaturateNaive(benchmark::State& state) {
  const Problem p = load("problems/p3.gdd");
  const auto init = initial_facts(p);
  for (auto _ : state) {
    auto sat = saturate_naive(init, rules(), kLimits);
    benchmark::DoNotOptimize(sat.factbase.size());
  }
}
BENCHMARK(BM_SaturateNaive)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const Problem p = load("problems/p3.gdd");
  const auto sat = saturate(p, rules(), kLimits);
  std::vector<Fact> facts;
  for (FactId id = 0; id < sat.factbase.size(); ++id) facts.push_back(sat.factbase.fact(id));
  for (auto _ : state) {
    auto r = soundness_sweep(p, facts, {}, 0, 100, exec_of(state));
    benchmark::DoNotOptimize(r.violations.size());
  }
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Check(benchmark::State& state) {
  const Problem p = load("problems/p1.gdd");
  for (auto _ : state) {
    auto r = check_conjecture(p, 100, 0, exec_of(state));
    benchmark::DoNotOptimize(r.goal_holds);
  }
}
BENCHMARK(BM_Check)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
