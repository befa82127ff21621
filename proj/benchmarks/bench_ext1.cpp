#include <benchmark/benchmark.h>

#include "sba/algebra.hpp"
#include "sba/ext.hpp"
#include "sba/modules.hpp"
#include "sba/stable.hpp"
#include "sba/strings.hpp"

namespace {

void BM_ext1_string(benchmark::State& state) {
  sba::Algebra A =
      sba::Algebra::make(sba::load_presentation("data/ex1.sba"), sba::Field::rationals());
  sba::ExplicitModule M = sba::string_module(A, sba::parse_word(A, "x- y x- y"));
  for (auto _ : state) benchmark::DoNotOptimize(sba::ext1(A, M, M));
}
BENCHMARK(BM_ext1_string);

void BM_ext1_band(benchmark::State& state) {
  sba::Algebra A =
      sba::Algebra::make(sba::load_presentation("data/ex2.sba"), sba::Field::rationals());
  sba::ExplicitModule M =
      sba::band_module(A, sba::parse_word(A, "x- x- y x- y y"), A.field.one(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sba::ext1(A, M, M));
}
BENCHMARK(BM_ext1_band);

void BM_check_main_theorem(benchmark::State& state) {
  sba::Algebra A =
      sba::Algebra::make(sba::load_presentation("data/ex1.sba"), sba::Field::rationals());
  std::vector<sba::Word> strings{sba::parse_word(A, "x- y x- y")};
  for (auto _ : state) benchmark::DoNotOptimize(sba::check_main_theorem(A, strings));
}
BENCHMARK(BM_check_main_theorem);

}  // namespace
