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

#include "secmsr/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace secmsr::linalg {
namespace {

// Forward elimination in place, drawing pivots from columns [0, pivot_cols)
// while updating full rows.  Returns the pivot columns in order; the final
// rank is their count.  Rows at or below the returned rank are zero in every
// scanned column by the time the scan passes them.
std::vector<size_t> eliminate(Matrix& work, size_t pivot_cols) {
  const FieldContext& ctx = work.context();
  const unsigned w = ctx.words();
  const size_t rows = work.rows(), cols = work.cols();
  std::vector<size_t> pivots;
  FieldScratch scratch;
  MulTable norm(ctx);
  size_t r = 0;
  for (size_t col = 0; col < pivot_cols && r < rows; ++col) {
    size_t p = r;
    while (p < rows && work.entry_is_zero(p, col)) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap_ranges(work.row_ptr(p), work.row_ptr(p) + cols * w,
                       work.row_ptr(r));
    }
    std::vector<uint64_t> pinv(w);
    ctx.inv_words(pinv.data(), work.entry(r, col), scratch);
    norm.set_factor(pinv.data());
    for (size_t c = col; c < cols; ++c) {
      norm.apply(work.entry(r, c), work.entry(r, c));
    }
    const long first = static_cast<long>(r) + 1;
    const long last = static_cast<long>(rows);
#pragma omp parallel if (last - first > 8)
    {
      MulTable table(ctx);
#pragma omp for schedule(dynamic, 4)
      for (long i = first; i < last; ++i) {
        const size_t row = static_cast<size_t>(i);
        if (work.entry_is_zero(row, col)) continue;
        table.set_factor(work.entry(row, col));
        for (size_t c = col; c < cols; ++c) {
          table.fma(work.entry(row, c), work.entry(r, c));
        }
      }
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

SolveResult finish_solve(Matrix& aug, const std::vector<size_t>& pivots) {
  const FieldContext& ctx = aug.context();
  const size_t rows = aug.rows(), cols = aug.cols() - 1;
  const size_t rank = pivots.size();
  SolveResult out;
  for (size_t i = rank; i < rows; ++i) {
    if (!aug.entry_is_zero(i, cols)) {
      out.status = SolveResult::Status::kInconsistent;
      return out;
    }
  }
  if (rank < cols) {
    out.status = SolveResult::Status::kUnderdetermined;
    return out;
  }
  // rank == cols forces pivot columns 0..cols-1 in order.
  out.status = SolveResult::Status::kUnique;
  out.solution.assign(cols, ctx.zero());
  for (size_t c = cols; c-- > 0;) {
    FieldElement x = aug.get(c, cols);
    for (size_t c2 = c + 1; c2 < cols; ++c2) {
      if (!aug.entry_is_zero(c, c2)) {
        x += aug.get(c, c2) * out.solution[c2];
      }
    }
    out.solution[c] = x;
  }
  return out;
}

}  // namespace

size_t rank(const Matrix& a) {
  Matrix work = a;
  return eliminate(work, work.cols()).size();
}

size_t rank(const BitMatrix& a) {
  BitMatrix work = a;
  const size_t rows = work.rows(), cols = work.cols();
  const size_t wpr = work.words_per_row();
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t p = r;
    while (p < rows && !work.get(p, col)) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap_ranges(work.row_ptr(p), work.row_ptr(p) + wpr,
                       work.row_ptr(r));
    }
    const uint64_t* src = work.row_ptr(r);
    const size_t w0 = col >> 6;
    const long first = static_cast<long>(r) + 1;
    const long last = static_cast<long>(rows);
#pragma omp parallel for schedule(static) if (last - first > 256)
    for (long i = first; i < last; ++i) {
      uint64_t* dst = work.row_ptr(static_cast<size_t>(i));
      if ((dst[w0] >> (col & 63)) & 1) {
        for (size_t j = w0; j < wpr; ++j) dst[j] ^= src[j];
      }
    }
    ++r;
  }
  return r;
}

SolveResult solve(const Matrix& a, const std::vector<FieldElement>& b) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument("right-hand side length mismatch");
  }
  Matrix aug(a.context(), a.rows(), a.cols() + 1);
  const unsigned w = a.context().words();
  for (size_t i = 0; i < a.rows(); ++i) {
    std::copy_n(a.row_ptr(i), a.cols() * w, aug.row_ptr(i));
    aug.set(i, a.cols(), b[i]);
  }
  const std::vector<size_t> pivots = eliminate(aug, a.cols());
  return finish_solve(aug, pivots);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (!a.context().same_field(b.context())) {
    throw std::invalid_argument("field mismatch in multiply");
  }
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch");
  const FieldContext& ctx = a.context();
  Matrix c(ctx, a.rows(), b.cols());
  const long jn = static_cast<long>(b.cols());
#pragma omp parallel if (jn > 1)
  {
    MulTable table(ctx);
#pragma omp for schedule(dynamic, 1)
    for (long j = 0; j < jn; ++j) {
      for (size_t k = 0; k < b.rows(); ++k) {
        if (b.entry_is_zero(k, static_cast<size_t>(j))) continue;
        table.set_factor(b.entry(k, static_cast<size_t>(j)));
        for (size_t i = 0; i < a.rows(); ++i) {
          table.fma(c.entry(i, static_cast<size_t>(j)), a.entry(i, k));
        }
      }
    }
  }
  return c;
}

std::vector<FieldElement> apply(const Matrix& a,
                                const std::vector<FieldElement>& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("shape mismatch");
  const FieldContext& ctx = a.context();
  const unsigned w = ctx.words();
  std::vector<uint64_t> acc(a.rows() * w, 0);
  MulTable table(ctx);
  for (size_t k = 0; k < a.cols(); ++k) {
    if (x[k].is_zero()) continue;
    table.set_factor(x[k].words());
    for (size_t i = 0; i < a.rows(); ++i) {
      table.fma(acc.data() + i * w, a.entry(i, k));
    }
  }
  std::vector<FieldElement> out;
  out.reserve(a.rows());
  for (size_t i = 0; i < a.rows(); ++i) {
    out.push_back(ctx.from_words(std::vector<uint64_t>(
        acc.begin() + static_cast<long>(i * w),
        acc.begin() + static_cast<long>((i + 1) * w))));
  }
  return out;
}

std::vector<FieldElement> apply_left(const Matrix& a,
                                     const std::vector<FieldElement>& x) {
  if (x.size() != a.rows()) throw std::invalid_argument("shape mismatch");
  const FieldContext& ctx = a.context();
  const unsigned w = ctx.words();
  std::vector<uint64_t> acc(a.cols() * w, 0);
  MulTable table(ctx);
  for (size_t k = 0; k < a.rows(); ++k) {
    if (x[k].is_zero()) continue;
    table.set_factor(x[k].words());
    const uint64_t* row = a.row_ptr(k);
    for (size_t j = 0; j < a.cols(); ++j) {
      table.fma(acc.data() + j * w, row + j * w);
    }
  }
  std::vector<FieldElement> out;
  out.reserve(a.cols());
  for (size_t j = 0; j < a.cols(); ++j) {
    out.push_back(ctx.from_words(std::vector<uint64_t>(
        acc.begin() + static_cast<long>(j * w),
        acc.begin() + static_cast<long>((j + 1) * w))));
  }
  return out;
}

bool rowspace_contained(const Matrix& a, const Matrix& b) {
  if (!a.context().same_field(b.context())) {
    throw std::invalid_argument("field mismatch");
  }
  if (a.cols() != b.cols()) throw std::invalid_argument("column mismatch");
  return rank(Matrix::vstack(b, a)) == rank(b);
}

namespace serial {

size_t rank(const Matrix& a) {
  Matrix work = a;
  const size_t rows = work.rows(), cols = work.cols();
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t p = r;
    while (p < rows && work.entry_is_zero(p, col)) ++p;
    if (p == rows) continue;
    for (size_t c = 0; c < cols; ++c) {
      const FieldElement t = work.get(p, c);
      work.set(p, c, work.get(r, c));
      work.set(r, c, t);
    }
    const FieldElement pinv = inv(work.get(r, col));
    for (size_t c = col; c < cols; ++c) {
      work.set(r, c, work.get(r, c) * pinv);
    }
    for (size_t i = r + 1; i < rows; ++i) {
      if (work.entry_is_zero(i, col)) continue;
      const FieldElement f = work.get(i, col);
      for (size_t c = col; c < cols; ++c) {
        work.set(i, c, work.get(i, c) + f * work.get(r, c));
      }
    }
    ++r;
  }
  return r;
}

size_t rank(const BitMatrix& a) {
  BitMatrix work = a;
  const size_t rows = work.rows(), cols = work.cols();
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t p = r;
    while (p < rows && !work.get(p, col)) ++p;
    if (p == rows) continue;
    for (size_t c = 0; c < cols; ++c) {
      const bool t = work.get(p, c);
      work.set(p, c, work.get(r, c));
      work.set(r, c, t);
    }
    for (size_t i = r + 1; i < rows; ++i) {
      if (!work.get(i, col)) continue;
      for (size_t c = 0; c < cols; ++c) {
        work.set(i, c, work.get(i, c) ^ work.get(r, c));
      }
    }
    ++r;
  }
  return r;
}

SolveResult solve(const Matrix& a, const std::vector<FieldElement>& b) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument("right-hand side length mismatch");
  }
  const FieldContext& ctx = a.context();
  Matrix aug(ctx, a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a.get(i, j));
    aug.set(i, a.cols(), b[i]);
  }
  const size_t rows = aug.rows(), cols = a.cols();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t p = r;
    while (p < rows && aug.entry_is_zero(p, col)) ++p;
    if (p == rows) continue;
    for (size_t c = 0; c <= cols; ++c) {
      const FieldElement t = aug.get(p, c);
      aug.set(p, c, aug.get(r, c));
      aug.set(r, c, t);
    }
    const FieldElement pinv = inv(aug.get(r, col));
    for (size_t c = col; c <= cols; ++c) {
      aug.set(r, c, aug.get(r, c) * pinv);
    }
    for (size_t i = r + 1; i < rows; ++i) {
      if (aug.entry_is_zero(i, col)) continue;
      const FieldElement f = aug.get(i, col);
      for (size_t c = col; c <= cols; ++c) {
        aug.set(i, c, aug.get(i, c) + f * aug.get(r, c));
      }
    }
    pivots.push_back(col);
    ++r;
  }
  return finish_solve(aug, pivots);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (!a.context().same_field(b.context())) {
    throw std::invalid_argument("field mismatch in multiply");
  }
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch");
  const FieldContext& ctx = a.context();
  Matrix c(ctx, a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < b.cols(); ++j) {
      FieldElement acc = ctx.zero();
      for (size_t k = 0; k < a.cols(); ++k) {
        acc += a.get(i, k) * b.get(k, j);
      }
      c.set(i, j, acc);
    }
  }
  return c;
}

}  // namespace serial
}  // namespace secmsr::linalg
