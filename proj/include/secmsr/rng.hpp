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

#include <cstdint>
#include <random>
#include <vector>

#include "secmsr/field.hpp"

namespace secmsr {

/// Deterministic randomness for seeded storage and simulations.  All public
/// outputs are pure functions of the seed: symbols are built from raw 64-bit
/// mt19937_64 draws (whose sequence the standard pins down exactly) and
/// bounded draws use rejection sampling, so no implementation-defined
/// std::*_distribution is involved anywhere.
class SymbolRng {
 public:
  explicit SymbolRng(uint64_t seed) : engine_(seed) {}

  static constexpr const char* kGeneratorName = "mt19937_64";

  uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, bound); bound must be positive.
  uint64_t below(uint64_t bound);

  /// Uniform field element: words() raw draws with the top word masked.
  FieldElement element(const FieldContext& ctx);

  std::vector<FieldElement> elements(const FieldContext& ctx, size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace secmsr
