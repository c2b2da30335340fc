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

#include <memory>

#include "secmsr/gabidulin.hpp"
#include "secmsr/msr.hpp"

namespace secmsr {

/// Everything needed to store and retrieve files at one parameter set: the
/// working field GF(2^m_total), the node multipliers, and the square Moore
/// matrix of the polynomial-basis evaluation points.  The message layout is
/// always (file || randomness) of length m_total before precoding.
struct PipelineContext {
  SystemParams params;
  std::shared_ptr<const FieldContext> field;
  LambdaTable lambda;
  Matrix moore;

  /// Canonical modulus for GF(2^m_total).
  static PipelineContext create(const SystemParams& params);
  /// Caller-chosen modulus (must be irreducible of degree m_total).
  static PipelineContext create(const SystemParams& params,
                                std::vector<uint64_t> modulus);
};

/// Precode (file || randomness) and spread the evaluations over the nodes.
/// file must have m_secure symbols and randomness m_random.
Codeword store(const PipelineContext& ctx,
               const std::vector<FieldElement>& file,
               const std::vector<FieldElement>& randomness);

/// store() with randomness drawn deterministically from the seed.
Codeword store_seeded(const PipelineContext& ctx,
                      const std::vector<FieldElement>& file, uint64_t seed);

/// Recovers the file from any k distinct nodes.
std::vector<FieldElement> retrieve(const PipelineContext& ctx,
                                   const std::vector<NodeContent>& nodes);

}  // namespace secmsr
