#include <benchmark/benchmark.h>

#include "cdr/brst.hpp"
#include "cdr/cli/input.hpp"
#include "cdr/fields.hpp"
#include "cdr/genus.hpp"

using namespace cdr;

static void BM_CyclotomicMul(benchmark::State& state) {
  const auto a = Cyclotomic::zeta(12, 1) + Cyclotomic(Rational(3, 7));
  const auto b = Cyclotomic::zeta(12, 5) - Cyclotomic::zeta(12, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicMul);

static void BM_FiberProduct(benchmark::State& state) {
  const Rational q(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(product_expand(untwisted_fiber_factors(2, q), q));
}
BENCHMARK(BM_FiberProduct)->Arg(2)->Arg(4);

static void BM_Basis(benchmark::State& state) {
  for (auto _ : state) {
    const FockModule m(TwistData::parse("1,2/3"));
    benchmark::DoNotOptimize(m.basis_up_to(Rational(state.range(0))));
  }
}
BENCHMARK(BM_Basis)->Arg(1)->Arg(2);

static void BM_FieldModeMatrix(benchmark::State& state) {
  const auto f = standard_fields(2);
  for (auto _ : state) {
    const FockModule m(TwistData::identity(2));
    benchmark::DoNotOptimize(field_mode_operator(f.L, Rational(-1), m, Rational(2)));
  }
}
BENCHMARK(BM_FieldModeMatrix);

static void BM_Cohomology(benchmark::State& state) {
  for (auto _ : state) {
    const FockModule m(TwistData::parse("0,1/2"));
    benchmark::DoNotOptimize(cohomology_table(m, Rational(3, 2)));
  }
}
BENCHMARK(BM_Cohomology)->Unit(benchmark::kMillisecond);

static void BM_GenusP1Z2(benchmark::State& state) {
  const auto in = cli::parse_orbifold_input(CDR_DATA_DIR "/p1_z2.json");
  for (auto _ : state) benchmark::DoNotOptimize(ell_orb(in, Rational(state.range(0))));
}
BENCHMARK(BM_GenusP1Z2)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
