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

#include "secmsr/gabidulin.hpp"

#include <stdexcept>

namespace secmsr {

EvaluationSet::EvaluationSet(const FieldContext& ctx,
                             std::vector<FieldElement> points)
    : ctx_(&ctx), points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("no evaluation points");
  if (points_.size() > ctx.degree()) {
    throw std::invalid_argument("more points than the degree allows");
  }
  BitMatrix coeffs(points_.size(), ctx.degree());
  for (size_t i = 0; i < points_.size(); ++i) {
    if (!points_[i].context().same_field(ctx)) {
      throw std::invalid_argument("point from a different field");
    }
    const uint64_t* w = points_[i].words();
    for (unsigned b = 0; b < ctx.degree(); ++b) {
      if ((w[b >> 6] >> (b & 63)) & 1) coeffs.set(i, b, true);
    }
  }
  if (linalg::rank(coeffs) != points_.size()) {
    throw std::invalid_argument("evaluation points are linearly dependent");
  }
}

EvaluationSet EvaluationSet::polynomial_basis(const FieldContext& ctx,
                                              size_t count) {
  if (count == 0 || count > ctx.degree()) {
    throw std::invalid_argument("basis size out of range");
  }
  std::vector<FieldElement> pts;
  pts.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    std::vector<uint64_t> w(ctx.words(), 0);
    w[i >> 6] = uint64_t{1} << (i & 63);
    pts.push_back(ctx.from_words(std::move(w)));
  }
  return EvaluationSet(ctx, std::move(pts));
}

Matrix moore_matrix(const EvaluationSet& points) {
  const FieldContext& ctx = points.context();
  const size_t n = points.size();
  Matrix m(ctx, n, n);
  FieldScratch scratch;
  for (size_t j = 0; j < n; ++j) m.set(0, j, points.points()[j]);
  for (size_t i = 1; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      ctx.sqr_words(m.entry(i, j), m.entry(i - 1, j), scratch);
    }
  }
  return m;
}

std::vector<FieldElement> precode(const Matrix& moore,
                                  const std::vector<FieldElement>& message) {
  if (message.size() != moore.rows()) {
    throw std::invalid_argument("message length mismatch");
  }
  return linalg::apply_left(moore, message);
}

std::vector<FieldElement> precode(const EvaluationSet& points,
                                  const std::vector<FieldElement>& message) {
  return precode(moore_matrix(points), message);
}

std::vector<FieldElement> depcode(const Matrix& moore,
                                  const std::vector<FieldElement>& encoded) {
  if (encoded.size() != moore.rows()) {
    throw std::invalid_argument("evaluation vector length mismatch");
  }
  const auto res = linalg::solve(moore.transposed(), encoded);
  if (res.status != linalg::SolveResult::Status::kUnique) {
    throw std::logic_error("Moore matrix is singular");
  }
  return res.solution;
}

std::vector<FieldElement> depcode(const EvaluationSet& points,
                                  const std::vector<FieldElement>& encoded) {
  return depcode(moore_matrix(points), encoded);
}

}  // namespace secmsr
