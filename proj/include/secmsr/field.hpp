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
#include <string>
#include <vector>

namespace secmsr {

// Binary polynomials are bit vectors packed LSB-first into 64-bit words:
// bit i of the value is the coefficient of x^i.

/// Returns true when `poly` (degree+1 coefficient bits) is irreducible
/// over GF(2) and has exactly the stated degree.
bool poly_is_irreducible(const std::vector<uint64_t>& poly, unsigned degree);

/// Lexicographically smallest irreducible polynomial of the given degree:
/// the first v >= 0 such that x^degree + (bits of v) is irreducible.
std::vector<uint64_t> find_irreducible(unsigned degree);

/// Lowercase hex of the low nbits bits, most significant digit first.
std::string hex_of_words(const uint64_t* words, size_t nbits);
/// Hex to least-significant-first words; rejects non-hex digits.
std::vector<uint64_t> parse_hex_words(const std::string& hex);

class FieldElement;
class FieldContext;

/// Reusable scratch buffers for the word-level kernels.  One per thread.
struct FieldScratch {
  std::vector<uint64_t> wide;
  std::vector<uint64_t> aux;
};

/// GF(2^m) in polynomial basis modulo a fixed irreducible polynomial.
///
/// FieldElement and Matrix values keep a raw pointer to their context, so a
/// context must stay at a fixed address for as long as any value built from
/// it is alive.  Copying and moving are disabled for that reason; share a
/// context by reference or shared_ptr.
class FieldContext {
 public:
  /// Field with the canonical (lexicographically smallest) modulus.
  explicit FieldContext(unsigned degree);
  /// Field with a caller-chosen modulus (degree+1 bits, checked irreducible).
  FieldContext(unsigned degree, std::vector<uint64_t> modulus);

  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

  unsigned degree() const { return m_; }
  /// Words per element: ceil(degree / 64).
  unsigned words() const { return words_; }
  const std::vector<uint64_t>& modulus() const { return modulus_; }
  /// Modulus as lowercase hex, degree+1 bits wide.
  std::string modulus_hex() const;
  bool same_field(const FieldContext& other) const;

  FieldElement zero() const;
  FieldElement one() const;
  /// Element whose coefficient bits are the binary digits of `value`.
  FieldElement from_integer(uint64_t value) const;
  /// Parses lowercase/uppercase hex; the value must fit in `degree` bits.
  FieldElement from_hex(const std::string& hex) const;
  FieldElement from_words(std::vector<uint64_t> words) const;

  // Word-level kernels.  Every span is words() long unless noted.  Aliasing
  // between out and inputs is allowed.
  void add_words(uint64_t* out, const uint64_t* a, const uint64_t* b) const;
  void mul_words(uint64_t* out, const uint64_t* a, const uint64_t* b,
                 FieldScratch& scratch) const;
  void sqr_words(uint64_t* out, const uint64_t* a, FieldScratch& scratch) const;
  /// Throws std::domain_error on zero input.
  void inv_words(uint64_t* out, const uint64_t* a, FieldScratch& scratch) const;
  /// Reduces a 2*words() product in place; result in wide[0..words()).
  void reduce_wide(uint64_t* wide) const;

  static bool is_zero_words(const uint64_t* a, unsigned words);

 private:
  void validate_and_finish();

  unsigned m_ = 0;
  unsigned words_ = 0;
  std::vector<uint64_t> modulus_;
  // Reduction fast path: modulus = x^m + tail with deg(tail) <= 63.
  bool sparse_tail_ = false;
  uint64_t tail_ = 0;
};

/// Element of a FieldContext.  Default-constructed elements belong to no
/// field and may only be assigned to.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldContext* ctx, std::vector<uint64_t> words)
      : ctx_(ctx), w_(std::move(words)) {}

  const FieldContext& context() const;
  bool attached() const { return ctx_ != nullptr; }
  bool is_zero() const;
  /// Lowercase hex, zero-padded to ceil(degree/4) digits.
  std::string to_hex() const;
  /// Coefficient bits as an integer; throws if the degree exceeds 64 bits
  /// and high bits are set.
  uint64_t to_integer() const;

  const uint64_t* words() const { return w_.data(); }
  uint64_t* words() { return w_.data(); }

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);

 private:
  const FieldContext* ctx_ = nullptr;
  std::vector<uint64_t> w_;
};

FieldElement operator+(FieldElement lhs, const FieldElement& rhs);
FieldElement operator*(FieldElement lhs, const FieldElement& rhs);
bool operator==(const FieldElement& lhs, const FieldElement& rhs);
FieldElement inv(const FieldElement& e);
/// Frobenius power: e^(2^i).
FieldElement pow_q(const FieldElement& e, unsigned i);

/// 256-entry window table for repeated multiplication by one factor.
/// Rebuilding costs ~8 shifted copies plus 256 xor-combines, so a table
/// pays off once the factor is applied to a few dozen elements.  Not safe
/// to share across threads; give each thread its own instance.
class MulTable {
 public:
  explicit MulTable(const FieldContext& ctx);
  void set_factor(const uint64_t* factor);
  /// dst ^= factor * src.
  void fma(uint64_t* dst, const uint64_t* src);
  /// dst = factor * src.  dst may alias src.
  void apply(uint64_t* dst, const uint64_t* src);

 private:
  void accumulate_wide(const uint64_t* src);

  const FieldContext* ctx_;
  unsigned words_;
  std::vector<uint64_t> table_;  // 256 entries, stride words_+1
  std::vector<uint64_t> wide_;   // 2*words_
  std::vector<uint64_t> lane_;   // 2*words_
};

}  // namespace secmsr
