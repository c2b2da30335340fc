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

#include "secmsr/matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace secmsr {

Matrix::Matrix(const FieldContext& ctx, size_t rows, size_t cols)
    : ctx_(&ctx),
      rows_(rows),
      cols_(cols),
      words_(ctx.words()),
      data_(rows * cols * ctx.words(), 0) {}

Matrix Matrix::identity(const FieldContext& ctx, size_t n) {
  Matrix m(ctx, n, n);
  const FieldElement one = ctx.one();
  for (size_t i = 0; i < n; ++i) m.set(i, i, one);
  return m;
}

FieldElement Matrix::get(size_t r, size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  std::vector<uint64_t> w(entry(r, c), entry(r, c) + words_);
  return FieldElement(ctx_, std::move(w));
}

void Matrix::set(size_t r, size_t c, const FieldElement& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  if (!value.context().same_field(*ctx_)) {
    throw std::invalid_argument("field mismatch in matrix assignment");
  }
  std::copy_n(value.words(), words_, entry(r, c));
}

bool Matrix::entry_is_zero(size_t r, size_t c) const {
  return FieldContext::is_zero_words(entry(r, c), words_);
}

Matrix Matrix::transposed() const {
  Matrix out(*ctx_, cols_, rows_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) {
      std::copy_n(entry(r, c), words_, out.entry(c, r));
    }
  }
  return out;
}

Matrix Matrix::row_slice(size_t begin, size_t end) const {
  if (begin > end || end > rows_) throw std::out_of_range("row slice");
  Matrix out(*ctx_, end - begin, cols_);
  std::copy_n(row_ptr(begin), (end - begin) * cols_ * words_,
              out.row_ptr(0));
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (!a.context().same_field(b.context())) {
    throw std::invalid_argument("field mismatch in vstack");
  }
  if (a.cols_ != b.cols_) throw std::invalid_argument("column mismatch");
  Matrix out(*a.ctx_, a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(),
            out.data_.begin() + static_cast<long>(a.data_.size()));
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ctx_->same_field(*b.ctx_) && a.rows_ == b.rows_ &&
         a.cols_ == b.cols_ && a.data_ == b.data_;
}

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(size_t n) {
  BitMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

size_t BitMatrix::row_weight(size_t r) const {
  size_t w = 0;
  for (size_t i = 0; i < wpr_; ++i) w += std::popcount(data_[r * wpr_ + i]);
  return w;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) out.set(c, r, true);
    }
  }
  return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("column mismatch");
  BitMatrix out(a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(),
            out.data_.begin() + static_cast<long>(a.data_.size()));
  return out;
}

Matrix BitMatrix::lift(const FieldContext& ctx) const {
  Matrix out(ctx, rows_, cols_);
  const FieldElement one = ctx.one();
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) out.set(r, c, one);
    }
  }
  return out;
}

bool operator==(const BitMatrix& a, const BitMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace secmsr
