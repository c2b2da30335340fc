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

#include "secmsr/linalg.hpp"

namespace secmsr {

/// Evaluation points for a linearized-polynomial code: elements of GF(2^m)
/// that are linearly independent over GF(2).  Independence is checked at
/// construction by a bit-matrix rank computation on the coefficient vectors.
class EvaluationSet {
 public:
  EvaluationSet(const FieldContext& ctx, std::vector<FieldElement> points);
  /// Points 1, x, x^2, ..., x^(count-1); count must not exceed the degree.
  static EvaluationSet polynomial_basis(const FieldContext& ctx, size_t count);

  const FieldContext& context() const { return *ctx_; }
  size_t size() const { return points_.size(); }
  const std::vector<FieldElement>& points() const { return points_; }

 private:
  const FieldContext* ctx_;
  std::vector<FieldElement> points_;
};

/// Square matrix with entry (i, j) = y_j^(2^i): row i holds the i-th
/// Frobenius power of every point.  Invertible exactly because the points
/// are independent over GF(2).
Matrix moore_matrix(const EvaluationSet& points);

/// message * Moore: evaluates the linearized polynomial with coefficient
/// vector `message` at every point.
std::vector<FieldElement> precode(const Matrix& moore,
                                  const std::vector<FieldElement>& message);
std::vector<FieldElement> precode(const EvaluationSet& points,
                                  const std::vector<FieldElement>& message);

/// Inverse of precode: recovers the coefficient vector from the evaluations.
std::vector<FieldElement> depcode(const Matrix& moore,
                                  const std::vector<FieldElement>& encoded);
std::vector<FieldElement> depcode(const EvaluationSet& points,
                                  const std::vector<FieldElement>& encoded);

}  // namespace secmsr
