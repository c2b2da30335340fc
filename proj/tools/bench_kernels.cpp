/* Copyright 2026-present the secmsr authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <benchmark/benchmark.h>

#include "secmsr/linalg.hpp"
#include "secmsr/rng.hpp"

namespace {

using namespace secmsr;

/// One shared field per benchmark binary run; degree chosen so a row is a
/// few words, the shape the elimination kernels are tuned for.
const FieldContext& field() {
  static FieldContext ctx(128, find_irreducible(128));
  return ctx;
}

Matrix random_matrix(size_t rows, size_t cols, uint64_t seed) {
  const FieldContext& f = field();
  Matrix m(f, rows, cols);
  SymbolRng rng(seed);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) m.set(r, c, rng.element(f));
  }
  return m;
}

void BM_RankParallel(benchmark::State& state) {
  const size_t dim = state.range(0);
  const Matrix m = random_matrix(dim, dim, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linalg::rank(m));
  }
  state.SetComplexityN(dim);
}

void BM_RankSerial(benchmark::State& state) {
  const size_t dim = state.range(0);
  const Matrix m = random_matrix(dim, dim, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linalg::serial::rank(m));
  }
  state.SetComplexityN(dim);
}

void BM_MultiplyParallel(benchmark::State& state) {
  const size_t dim = state.range(0);
  const Matrix a = random_matrix(dim, dim, dim);
  const Matrix b = random_matrix(dim, dim, dim + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linalg::multiply(a, b));
  }
  state.SetComplexityN(dim);
}

void BM_MultiplySerial(benchmark::State& state) {
  const size_t dim = state.range(0);
  const Matrix a = random_matrix(dim, dim, dim);
  const Matrix b = random_matrix(dim, dim, dim + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linalg::serial::multiply(a, b));
  }
  state.SetComplexityN(dim);
}

void BM_BitRank(benchmark::State& state) {
  const size_t dim = state.range(0);
  BitMatrix m(dim, dim);
  SymbolRng rng(dim);
  for (size_t r = 0; r < dim; ++r) {
    for (size_t c = 0; c < dim; ++c) m.set(r, c, rng.next_u64() & 1);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(linalg::rank(m));
  }
}

}  // namespace

BENCHMARK(BM_RankParallel)->Arg(32)->Arg(64)->Arg(128)->Complexity();
BENCHMARK(BM_RankSerial)->Arg(32)->Arg(64)->Arg(128)->Complexity();
BENCHMARK(BM_MultiplyParallel)->Arg(32)->Arg(64)->Arg(128)->Complexity();
BENCHMARK(BM_MultiplySerial)->Arg(32)->Arg(64)->Arg(128)->Complexity();
BENCHMARK(BM_BitRank)->Arg(256)->Arg(512)->Arg(1024);

BENCHMARK_MAIN();
