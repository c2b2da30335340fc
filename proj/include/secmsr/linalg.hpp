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

#pragma once

#include <vector>

#include "secmsr/matrix.hpp"

namespace secmsr::linalg {

// The kernels in this namespace are the production implementations: row
// elimination uses windowed multiply tables and the row-update and
// column-product loops are OpenMP-parallel.  linalg::serial holds direct
// textbook implementations of the same contracts; the test suite checks the
// two agree, and tools/bench_kernels compares their throughput.

struct SolveResult {
  enum class Status { kUnique, kInconsistent, kUnderdetermined };
  Status status = Status::kInconsistent;
  /// Populated only for kUnique.
  std::vector<FieldElement> solution;
};

size_t rank(const Matrix& a);
size_t rank(const BitMatrix& a);

/// Solves a * x = b for square or tall a with one right-hand side.
SolveResult solve(const Matrix& a, const std::vector<FieldElement>& b);

Matrix multiply(const Matrix& a, const Matrix& b);

/// a * x for a column vector x.
std::vector<FieldElement> apply(const Matrix& a,
                                const std::vector<FieldElement>& x);

/// x * a for a row vector x.
std::vector<FieldElement> apply_left(const Matrix& a,
                                     const std::vector<FieldElement>& x);

/// True when every row of a lies in the row space of b.
bool rowspace_contained(const Matrix& a, const Matrix& b);

namespace serial {
size_t rank(const Matrix& a);
size_t rank(const BitMatrix& a);
SolveResult solve(const Matrix& a, const std::vector<FieldElement>& b);
Matrix multiply(const Matrix& a, const Matrix& b);
}  // namespace serial

}  // namespace secmsr::linalg
