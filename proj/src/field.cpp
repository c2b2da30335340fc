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

#include "secmsr/field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <stdexcept>

namespace secmsr {
namespace {

// ---- raw GF(2)[x] helpers on LSB-first word vectors ----

int pdeg(const uint64_t* p, size_t n) {
  for (size_t i = n; i-- > 0;) {
    if (p[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(p[i]));
  }
  return -1;
}

int pdeg(const std::vector<uint64_t>& p) { return pdeg(p.data(), p.size()); }

// dst ^= src << shift.  dst must have room for every nonzero result bit;
// writes past `cap` words are skipped and asserted void by construction.
void pshl_xor(uint64_t* dst, size_t cap, const uint64_t* src, size_t n,
              unsigned shift) {
  const unsigned wq = shift >> 6, wb = shift & 63;
  if (wb == 0) {
    for (size_t i = n; i-- > 0;) {
      if (i + wq < cap) dst[i + wq] ^= src[i];
    }
    return;
  }
  for (size_t i = n; i-- > 0;) {
    if (i + wq + 1 < cap) dst[i + wq + 1] ^= src[i] >> (64 - wb);
    if (i + wq < cap) dst[i + wq] ^= src[i] << wb;
  }
}

// a mod f, in place.  f must be nonzero.
void pmod(std::vector<uint64_t>& a, const std::vector<uint64_t>& f) {
  const int df = pdeg(f);
  int da = pdeg(a);
  while (da >= df) {
    pshl_xor(a.data(), a.size(), f.data(), f.size(),
             static_cast<unsigned>(da - df));
    da = pdeg(a);
  }
}

std::vector<uint64_t> pgcd(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  while (pdeg(b) >= 0) {
    pmod(a, b);
    std::swap(a, b);
  }
  a.resize(std::max<size_t>(a.size(), 1));
  return a;
}

constexpr auto kSpread = [] {
  std::array<uint16_t, 256> t{};
  for (unsigned b = 0; b < 256; ++b) {
    uint16_t v = 0;
    for (unsigned i = 0; i < 8; ++i) {
      if (b & (1u << i)) v = static_cast<uint16_t>(v | (1u << (2 * i)));
    }
    t[b] = v;
  }
  return t;
}();

uint64_t spread32(uint64_t x) {
  return static_cast<uint64_t>(kSpread[x & 0xff]) |
         static_cast<uint64_t>(kSpread[(x >> 8) & 0xff]) << 16 |
         static_cast<uint64_t>(kSpread[(x >> 16) & 0xff]) << 32 |
         static_cast<uint64_t>(kSpread[(x >> 24) & 0xff]) << 48;
}

// out (2n words) = square of a (n words): bit i of a lands at bit 2i.
void psqr_wide(uint64_t* out, const uint64_t* a, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    out[2 * i] = spread32(a[i] & 0xffffffffu);
    out[2 * i + 1] = spread32(a[i] >> 32);
  }
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

bool poly_is_irreducible(const std::vector<uint64_t>& poly, unsigned degree) {
  if (degree == 0) return false;
  if (pdeg(poly) != static_cast<int>(degree)) return false;
  // poly is irreducible iff it has no irreducible factor of degree <= m/2;
  // gcd(x^(2^i) + x, poly) != 1 exactly when a factor of degree dividing i
  // exists.
  const size_t fw = poly.size();
  std::vector<uint64_t> u((degree + 64) / 64, 0);
  if (degree == 1) return true;
  u[0] = 2;  // x
  std::vector<uint64_t> wide(2 * u.size(), 0);
  for (unsigned i = 1; i <= degree / 2; ++i) {
    psqr_wide(wide.data(), u.data(), u.size());
    std::vector<uint64_t> t(wide);
    pmod(t, poly);
    std::copy_n(t.data(), u.size(), u.data());
    std::vector<uint64_t> g = u;
    g[0] ^= 2;  // x^(2^i) + x
    if (pdeg(g) < 0) return false;  // x^(2^i) == x: factors of degree <= i
    std::vector<uint64_t> d = pgcd(g, poly);
    if (pdeg(d) != 0) return false;
  }
  (void)fw;
  return true;
}

std::vector<uint64_t> find_irreducible(unsigned degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  const size_t nw = (degree + 1 + 63) / 64;
  for (uint64_t v = 0;; ++v) {
    std::vector<uint64_t> cand(nw, 0);
    cand[0] = v;
    cand[degree >> 6] |= uint64_t{1} << (degree & 63);
    if (poly_is_irreducible(cand, degree)) return cand;
    if (v == UINT64_MAX) break;
  }
  throw std::runtime_error("no irreducible polynomial found");
}

// ---- hex serialization ----

std::string hex_of_words(const uint64_t* words, size_t nbits) {
  const size_t digits = (nbits + 3) / 4;
  std::string out(digits, '0');
  static const char* kHex = "0123456789abcdef";
  for (size_t d = 0; d < digits; ++d) {
    const size_t bit = 4 * d;
    const uint64_t nib = (words[bit >> 6] >> (bit & 63)) & 0xf;
    out[digits - 1 - d] = kHex[nib];
  }
  return out;
}

std::vector<uint64_t> parse_hex_words(const std::string& hex) {
  if (hex.empty()) throw std::invalid_argument("empty hex string");
  std::vector<uint64_t> out((hex.size() * 4 + 63) / 64, 0);
  for (size_t i = 0; i < hex.size(); ++i) {
    const int v = hex_digit(hex[hex.size() - 1 - i]);
    if (v < 0) throw std::invalid_argument("invalid hex digit");
    out[(4 * i) >> 6] |= static_cast<uint64_t>(v) << ((4 * i) & 63);
  }
  return out;
}

// ---- FieldContext ----

FieldContext::FieldContext(unsigned degree) {
  m_ = degree;
  modulus_ = find_irreducible(degree);
  validate_and_finish();
}

FieldContext::FieldContext(unsigned degree, std::vector<uint64_t> modulus)
    : m_(degree), modulus_(std::move(modulus)) {
  modulus_.resize((m_ + 1 + 63) / 64, 0);
  validate_and_finish();
}

void FieldContext::validate_and_finish() {
  if (m_ == 0) throw std::invalid_argument("field degree must be positive");
  if (pdeg(modulus_) != static_cast<int>(m_)) {
    throw std::invalid_argument("modulus degree does not match field degree");
  }
  if (!poly_is_irreducible(modulus_, m_)) {
    throw std::invalid_argument("modulus is not irreducible");
  }
  words_ = (m_ + 63) / 64;
  // Fast reduction when every non-leading term lives in word 0.
  std::vector<uint64_t> tail = modulus_;
  tail[m_ >> 6] ^= uint64_t{1} << (m_ & 63);
  sparse_tail_ = true;
  for (size_t i = 1; i < tail.size(); ++i) {
    if (tail[i]) sparse_tail_ = false;
  }
  tail_ = tail[0];
}

std::string FieldContext::modulus_hex() const {
  return hex_of_words(modulus_.data(), m_ + 1);
}

bool FieldContext::same_field(const FieldContext& other) const {
  return m_ == other.m_ && modulus_ == other.modulus_;
}

FieldElement FieldContext::zero() const {
  return FieldElement(this, std::vector<uint64_t>(words_, 0));
}

FieldElement FieldContext::one() const { return from_integer(1); }

FieldElement FieldContext::from_integer(uint64_t value) const {
  if (m_ < 64 && (value >> m_) != 0) {
    throw std::invalid_argument("integer does not fit in field degree");
  }
  std::vector<uint64_t> w(words_, 0);
  w[0] = value;
  return FieldElement(this, std::move(w));
}

FieldElement FieldContext::from_hex(const std::string& hex) const {
  std::vector<uint64_t> w = parse_hex_words(hex);
  if (pdeg(w) >= static_cast<int>(m_)) {
    throw std::invalid_argument("hex value does not fit in field degree");
  }
  w.resize(words_, 0);
  return FieldElement(this, std::move(w));
}

FieldElement FieldContext::from_words(std::vector<uint64_t> words) const {
  words.resize(words_, 0);
  if (pdeg(words) >= static_cast<int>(m_)) {
    throw std::invalid_argument("value does not fit in field degree");
  }
  return FieldElement(this, std::move(words));
}

bool FieldContext::is_zero_words(const uint64_t* a, unsigned words) {
  for (unsigned i = 0; i < words; ++i) {
    if (a[i]) return false;
  }
  return true;
}

void FieldContext::add_words(uint64_t* out, const uint64_t* a,
                             const uint64_t* b) const {
  for (unsigned i = 0; i < words_; ++i) out[i] = a[i] ^ b[i];
}

void FieldContext::reduce_wide(uint64_t* wide) const {
  const unsigned w2 = 2 * words_;
  const unsigned mw = m_ >> 6, mb = m_ & 63;
  if (sparse_tail_) {
    // When mb == 0 word mw itself sits entirely at or above bit m, so the
    // full-word loop must include it; otherwise the partial step takes it.
    const unsigned lowest_full = mw + (mb ? 1u : 0u);
    while (true) {
      bool any = false;
      for (unsigned j = w2; j-- > lowest_full;) {
        const uint64_t h = wide[j];
        if (!h) continue;
        any = true;
        wide[j] = 0;
        // x^(64j+t) == x^(64j+t-m) * tail
        const unsigned off = 64 * j - m_;
        uint64_t lo = 0, hi = 0;
        uint64_t t = tail_;
        while (t) {
          const unsigned s = std::countr_zero(t);
          t &= t - 1;
          lo ^= h << s;
          if (s) hi ^= h >> (64 - s);
        }
        const unsigned ow = off >> 6, ob = off & 63;
        if (ob == 0) {
          wide[ow] ^= lo;
          wide[ow + 1] ^= hi;
        } else {
          wide[ow] ^= lo << ob;
          wide[ow + 1] ^= (lo >> (64 - ob)) ^ (hi << ob);
          if (hi >> (64 - ob)) wide[ow + 2] ^= hi >> (64 - ob);
        }
      }
      if (mb) {
        const uint64_t h = wide[mw] >> mb;
        if (h) {
          any = true;
          wide[mw] &= (uint64_t{1} << mb) - 1;
          uint64_t lo = 0, hi = 0;
          uint64_t t = tail_;
          while (t) {
            const unsigned s = std::countr_zero(t);
            t &= t - 1;
            lo ^= h << s;
            if (s) hi ^= h >> (64 - s);
          }
          wide[0] ^= lo;
          wide[1] ^= hi;
        }
      }
      if (!any) return;
    }
  }
  int da = pdeg(wide, w2);
  while (da >= static_cast<int>(m_)) {
    pshl_xor(wide, w2, modulus_.data(), modulus_.size(),
             static_cast<unsigned>(da - m_));
    da = pdeg(wide, w2);
  }
}

void FieldContext::mul_words(uint64_t* out, const uint64_t* a,
                             const uint64_t* b, FieldScratch& scratch) const {
  const unsigned w2 = 2 * words_;
  scratch.wide.assign(w2, 0);
  scratch.aux.assign(w2, 0);
  std::copy_n(b, words_, scratch.aux.data());
  uint64_t* wide = scratch.wide.data();
  uint64_t* sh = scratch.aux.data();
  for (unsigned i = 0; i < m_; ++i) {
    if ((a[i >> 6] >> (i & 63)) & 1) {
      for (unsigned j = 0; j < w2; ++j) wide[j] ^= sh[j];
    }
    uint64_t carry = 0;
    for (unsigned j = 0; j < w2; ++j) {
      const uint64_t nc = sh[j] >> 63;
      sh[j] = (sh[j] << 1) | carry;
      carry = nc;
    }
  }
  reduce_wide(wide);
  std::copy_n(wide, words_, out);
}

void FieldContext::sqr_words(uint64_t* out, const uint64_t* a,
                             FieldScratch& scratch) const {
  scratch.wide.assign(2 * words_, 0);
  psqr_wide(scratch.wide.data(), a, words_);
  reduce_wide(scratch.wide.data());
  std::copy_n(scratch.wide.data(), words_, out);
}

void FieldContext::inv_words(uint64_t* out, const uint64_t* a,
                             FieldScratch& scratch) const {
  (void)scratch;  // kept for kernel signature symmetry
  if (is_zero_words(a, words_)) {
    throw std::domain_error("zero has no multiplicative inverse");
  }
  // Binary-polynomial extended Euclid: maintains g1*a == u (mod f) and
  // g2*a == v (mod f); ends with u == 1, so g1 is the inverse.
  const size_t nw = modulus_.size();
  std::vector<uint64_t> u(nw, 0), v(modulus_);
  std::copy_n(a, words_, u.data());
  std::vector<uint64_t> g1(nw, 0), g2(nw, 0);
  g1[0] = 1;
  int du = pdeg(u), dv = pdeg(v);
  while (!(du == 0 && u[0] == 1)) {
    int j = du - dv;
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      std::swap(du, dv);
      j = -j;
    }
    pshl_xor(u.data(), nw, v.data(), nw, static_cast<unsigned>(j));
    pshl_xor(g1.data(), nw, g2.data(), nw, static_cast<unsigned>(j));
    du = pdeg(u);
  }
  std::copy_n(g1.data(), words_, out);
}

// ---- FieldElement ----

const FieldContext& FieldElement::context() const {
  if (!ctx_) throw std::logic_error("detached field element");
  return *ctx_;
}

bool FieldElement::is_zero() const {
  return FieldContext::is_zero_words(w_.data(), context().words());
}

std::string FieldElement::to_hex() const {
  return hex_of_words(w_.data(), context().degree());
}

uint64_t FieldElement::to_integer() const {
  const FieldContext& ctx = context();
  for (unsigned i = 1; i < ctx.words(); ++i) {
    if (w_[i]) throw std::range_error("element does not fit in 64 bits");
  }
  return w_[0];
}

namespace {
FieldScratch& tls_scratch() {
  thread_local FieldScratch scratch;
  return scratch;
}
}  // namespace

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  if (!context().same_field(rhs.context())) {
    throw std::invalid_argument("field mismatch in addition");
  }
  ctx_->add_words(w_.data(), w_.data(), rhs.words());
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  if (!context().same_field(rhs.context())) {
    throw std::invalid_argument("field mismatch in multiplication");
  }
  ctx_->mul_words(w_.data(), w_.data(), rhs.words(), tls_scratch());
  return *this;
}

FieldElement operator+(FieldElement lhs, const FieldElement& rhs) {
  lhs += rhs;
  return lhs;
}

FieldElement operator*(FieldElement lhs, const FieldElement& rhs) {
  lhs *= rhs;
  return lhs;
}

bool operator==(const FieldElement& lhs, const FieldElement& rhs) {
  if (!lhs.attached() || !rhs.attached()) {
    return lhs.attached() == rhs.attached();
  }
  if (!lhs.context().same_field(rhs.context())) return false;
  const unsigned w = lhs.context().words();
  return std::equal(lhs.words(), lhs.words() + w, rhs.words());
}

FieldElement inv(const FieldElement& e) {
  FieldElement out = e.context().zero();
  e.context().inv_words(out.words(), e.words(), tls_scratch());
  return out;
}

FieldElement pow_q(const FieldElement& e, unsigned i) {
  FieldElement out = e;
  for (unsigned t = 0; t < i; ++t) {
    e.context().sqr_words(out.words(), out.words(), tls_scratch());
  }
  return out;
}

// ---- MulTable ----

MulTable::MulTable(const FieldContext& ctx)
    : ctx_(&ctx),
      words_(ctx.words()),
      table_(256 * (ctx.words() + 1), 0),
      wide_(2 * ctx.words(), 0),
      lane_(2 * ctx.words(), 0) {}

void MulTable::set_factor(const uint64_t* factor) {
  const unsigned stride = words_ + 1;
  uint64_t* t = table_.data();
  std::fill_n(t, stride, 0);
  std::copy_n(factor, words_, t + stride);  // T[1] = factor
  t[stride + words_] = 0;
  for (unsigned v = 2; v < 256; ++v) {
    uint64_t* dst = t + v * stride;
    if ((v & (v - 1)) == 0) {
      const uint64_t* half = t + (v >> 1) * stride;
      uint64_t carry = 0;
      for (unsigned i = 0; i < stride; ++i) {
        const uint64_t nc = half[i] >> 63;
        dst[i] = (half[i] << 1) | carry;
        carry = nc;
      }
    } else {
      const unsigned lsb = v & (~v + 1);
      const uint64_t* a = t + (v ^ lsb) * stride;
      const uint64_t* b = t + lsb * stride;
      for (unsigned i = 0; i < stride; ++i) dst[i] = a[i] ^ b[i];
    }
  }
}

void MulTable::accumulate_wide(const uint64_t* src) {
  const unsigned stride = words_ + 1;
  const unsigned w2 = 2 * words_;
  std::fill_n(wide_.data(), w2, 0);
  for (unsigned q = 0; q < 8; ++q) {
    bool any = false;
    uint64_t* lane = lane_.data();
    for (unsigned i = 0; i < words_; ++i) {
      const unsigned b = (src[i] >> (8 * q)) & 0xff;
      if (!b) continue;
      if (!any) std::fill_n(lane, w2, 0);
      any = true;
      const uint64_t* e = table_.data() + b * stride;
      uint64_t* dst = lane + i;
      for (unsigned j = 0; j < stride; ++j) dst[j] ^= e[j];
    }
    if (!any) continue;
    if (q == 0) {
      for (unsigned i = 0; i < w2; ++i) wide_[i] ^= lane[i];
    } else {
      const unsigned sb = 8 * q;
      uint64_t prev = 0;
      for (unsigned i = 0; i < w2; ++i) {
        wide_[i] ^= (lane[i] << sb) | (prev >> (64 - sb));
        prev = lane[i];
      }
    }
  }
}

void MulTable::fma(uint64_t* dst, const uint64_t* src) {
  accumulate_wide(src);
  ctx_->reduce_wide(wide_.data());
  for (unsigned i = 0; i < words_; ++i) dst[i] ^= wide_[i];
}

void MulTable::apply(uint64_t* dst, const uint64_t* src) {
  accumulate_wide(src);
  ctx_->reduce_wide(wide_.data());
  std::copy_n(wide_.data(), words_, dst);
}

}  // namespace secmsr
