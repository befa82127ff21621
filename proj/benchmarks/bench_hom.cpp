#include <benchmark/benchmark.h>

#include "sba/algebra.hpp"
#include "sba/graph_maps.hpp"
#include "sba/modules.hpp"
#include "sba/strings.hpp"

namespace {

const sba::Algebra& two_loops() {
  static sba::Algebra A =
      sba::Algebra::make(sba::load_presentation("data/ex1.sba"), sba::Field::rationals());
  return A;
}

void BM_hom_basis_graph(benchmark::State& state) {
  const sba::Algebra& A = two_loops();
  sba::Word m = sba::parse_word(A, "x- y x- y");
  for (auto _ : state) benchmark::DoNotOptimize(sba::hom_basis_graph(A, m, m));
}
BENCHMARK(BM_hom_basis_graph);

void BM_hom_linear(benchmark::State& state) {
  const sba::Algebra& A = two_loops();
  sba::ExplicitModule M = sba::string_module(A, sba::parse_word(A, "x- y x- y"));
  for (auto _ : state) benchmark::DoNotOptimize(sba::hom_linear(M, M));
}
BENCHMARK(BM_hom_linear);

void BM_enumerate_strings(benchmark::State& state) {
  const sba::Algebra& A = two_loops();
  for (auto _ : state) benchmark::DoNotOptimize(sba::enumerate_strings(A, (int)state.range(0)));
}
BENCHMARK(BM_enumerate_strings)->Arg(4)->Arg(8);

}  // namespace
