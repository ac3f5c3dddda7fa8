// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "treerep/group.hpp"
#include "treerep/representations.hpp"

using namespace treerep;

namespace {

// The reversal of a path moves the origin as far as possible, so the matrix is dense.
DeformedRep rep_for(std::size_t n) { return DeformedRep::rho_tilde(RootedTree(generators::path(n), 0), 0.9); }

Automorphism some_element(std::size_t n) {
  std::vector<Vertex> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Vertex>(n - 1 - i);
  return verify_automorphism(generators::path(n), std::move(images));
}

void BM_materialize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto op = rep_for(n).op(some_element(n));
  for (auto _ : state) benchmark::DoNotOptimize(materialize(op));
}

void BM_materialize_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto op = rep_for(n).op(some_element(n));
  for (auto _ : state) benchmark::DoNotOptimize(materialize_serial(op));
}

DenseMatrix dense_of(std::size_t n) { return rep_for(n).matrix(some_element(n)); }

void BM_multiply(benchmark::State& state) {
  const auto a = dense_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, a));
}

void BM_multiply_serial(benchmark::State& state) {
  const auto a = dense_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply_serial(a, a));
}

}  // namespace

BENCHMARK(BM_materialize)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_materialize_serial)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_serial)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
