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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "secmsr/field.hpp"

namespace secmsr {

/// Dense row-major matrix over a FieldContext.  Entries are stored as raw
/// word spans; get/set convert to FieldElement at the boundary.
class Matrix {
 public:
  Matrix(const FieldContext& ctx, size_t rows, size_t cols);
  static Matrix identity(const FieldContext& ctx, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldContext& context() const { return *ctx_; }

  FieldElement get(size_t r, size_t c) const;
  void set(size_t r, size_t c, const FieldElement& value);
  bool entry_is_zero(size_t r, size_t c) const;

  uint64_t* entry(size_t r, size_t c) {
    return data_.data() + (r * cols_ + c) * words_;
  }
  const uint64_t* entry(size_t r, size_t c) const {
    return data_.data() + (r * cols_ + c) * words_;
  }
  uint64_t* row_ptr(size_t r) { return entry(r, 0); }
  const uint64_t* row_ptr(size_t r) const { return entry(r, 0); }
  unsigned entry_words() const { return words_; }

  Matrix transposed() const;
  /// Rows [begin, end) as a new matrix.
  Matrix row_slice(size_t begin, size_t end) const;
  /// a stacked on top of b; column counts and fields must agree.
  static Matrix vstack(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  const FieldContext* ctx_;
  size_t rows_, cols_;
  unsigned words_;
  std::vector<uint64_t> data_;
};

/// Dense bit matrix (GF(2)), rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix(size_t rows, size_t cols);
  static BitMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t words_per_row() const { return wpr_; }

  bool get(size_t r, size_t c) const {
    return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
  }
  void set(size_t r, size_t c, bool v) {
    const uint64_t mask = uint64_t{1} << (c & 63);
    uint64_t& w = data_[r * wpr_ + (c >> 6)];
    w = v ? (w | mask) : (w & ~mask);
  }
  uint64_t* row_ptr(size_t r) { return data_.data() + r * wpr_; }
  const uint64_t* row_ptr(size_t r) const { return data_.data() + r * wpr_; }

  size_t row_weight(size_t r) const;
  BitMatrix transposed() const;
  static BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);
  /// 0/1 entries lifted into the given field.
  Matrix lift(const FieldContext& ctx) const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b);

 private:
  size_t rows_, cols_, wpr_;
  std::vector<uint64_t> data_;
};

}  // namespace secmsr
