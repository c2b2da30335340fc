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

#include "secmsr/rng.hpp"

#include <stdexcept>

namespace secmsr {

uint64_t SymbolRng::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  // Reject draws below 2^64 mod bound; the remaining range is a whole
  // multiple of bound, so the modulo is unbiased.
  const uint64_t cutoff = (0 - bound) % bound;
  uint64_t r = engine_();
  while (r < cutoff) r = engine_();
  return r % bound;
}

FieldElement SymbolRng::element(const FieldContext& ctx) {
  std::vector<uint64_t> w(ctx.words());
  for (auto& x : w) x = engine_();
  const unsigned top = ctx.degree() & 63;
  if (top) w.back() &= (uint64_t{1} << top) - 1;
  return ctx.from_words(std::move(w));
}

std::vector<FieldElement> SymbolRng::elements(const FieldContext& ctx,
                                              size_t count) {
  std::vector<FieldElement> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(element(ctx));
  return out;
}

}  // namespace secmsr
