#include <benchmark/benchmark.h>

#include "drinfeld/chebotarev.hpp"

using namespace drinfeld;

namespace {

void BM_FieldMul(benchmark::State& state) {
  const auto f = FiniteField::make(7, 1, unsigned(state.range(0)));
  FieldElem a = f->generator() + f->one(), b = f->generator();
  for (auto _ : state) {
    a = a * b + f->one();
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(6)->Arg(60)->Arg(600);

void BM_PhiOf(benchmark::State& state) {
  const auto fq = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(fq, 3);
  const auto a = primes_of_degree(fq, unsigned(state.range(0))).front();
  for (auto _ : state) benchmark::DoNotOptimize(phi_of(d, a));
}
BENCHMARK(BM_PhiOf)->DenseRange(1, 3);

void BM_CharpolyLinearSystem(benchmark::State& state) {
  const auto fq = FiniteField::make(7, 1, 1);
  const auto d = DrinfeldModule::default_family(fq, 3);
  const auto prime = primes_of_degree(fq, unsigned(state.range(0))).back();
  for (auto _ : state) benchmark::DoNotOptimize(charpoly_linear_system(d, prime));
}
BENCHMARK(BM_CharpolyLinearSystem)->DenseRange(1, 6)->Unit(benchmark::kMicrosecond);

void BM_TorsionFrobenius(benchmark::State& state) {
  const auto fq = FiniteField::make(5, 1, 1);
  const auto d = DrinfeldModule::default_family(fq, 3);
  const auto red = reduce_mod(d, SparsePoly::parse(fq, "T^2+2"));
  const auto ell = SparsePoly::parse(fq, "T+3");
  for (auto _ : state) benchmark::DoNotOptimize(torsion_space(red, ell));
}
BENCHMARK(BM_TorsionFrobenius)->Unit(benchmark::kMillisecond);

void BM_MotiveFrobenius(benchmark::State& state) {
  const auto fq = FiniteField::make(7, 1, 1);
  const auto d = DrinfeldModule::default_family(fq, 3);
  const auto red = reduce_mod(d, primes_of_degree(fq, 5).front());
  const auto ell = SparsePoly::parse(fq, "T-1");
  for (auto _ : state) benchmark::DoNotOptimize(motive_frobenius_charpoly(red, ell));
}
BENCHMARK(BM_MotiveFrobenius)->Unit(benchmark::kMicrosecond);

void BM_GLEnumerate(benchmark::State& state) {
  const auto f = FiniteField::make(unsigned(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gl_charpoly_distribution(3, f, GLBackend::Enumerate));
}
BENCHMARK(BM_GLEnumerate)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_GLFormula(benchmark::State& state) {
  const auto f = FiniteField::make(unsigned(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gl_charpoly_distribution(3, f, GLBackend::Formula));
}
BENCHMARK(BM_GLFormula)->Arg(3)->Arg(7)->Arg(31)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
