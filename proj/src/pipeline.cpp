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

#include "secmsr/pipeline.hpp"

#include <stdexcept>
#include <utility>

#include "secmsr/rng.hpp"

namespace secmsr {

PipelineContext PipelineContext::create(const SystemParams& params) {
  const auto m = static_cast<unsigned>(params.m_total);
  auto field = std::make_shared<const FieldContext>(m);
  PipelineContext ctx{params, field, lambda_assign(params, *field),
                      moore_matrix(EvaluationSet::polynomial_basis(*field, m))};
  return ctx;
}

PipelineContext PipelineContext::create(const SystemParams& params,
                                        std::vector<uint64_t> modulus) {
  const auto m = static_cast<unsigned>(params.m_total);
  auto field = std::make_shared<const FieldContext>(m, std::move(modulus));
  PipelineContext ctx{params, field, lambda_assign(params, *field),
                      moore_matrix(EvaluationSet::polynomial_basis(*field, m))};
  return ctx;
}

Codeword store(const PipelineContext& ctx,
               const std::vector<FieldElement>& file,
               const std::vector<FieldElement>& randomness) {
  if (file.size() != ctx.params.m_secure) {
    throw std::invalid_argument("file length must equal m_secure");
  }
  if (randomness.size() != ctx.params.m_random) {
    throw std::invalid_argument("randomness length must equal m_random");
  }
  std::vector<FieldElement> message = file;
  message.insert(message.end(), randomness.begin(), randomness.end());
  const auto evals = precode(ctx.moore, message);
  return encode(ctx.params, ctx.lambda, evals);
}

Codeword store_seeded(const PipelineContext& ctx,
                      const std::vector<FieldElement>& file, uint64_t seed) {
  SymbolRng rng(seed);
  return store(ctx, file, rng.elements(*ctx.field, ctx.params.m_random));
}

std::vector<FieldElement> retrieve(const PipelineContext& ctx,
                                   const std::vector<NodeContent>& nodes) {
  const Codeword full = collect(ctx.params, ctx.lambda, nodes);
  const auto evals = message_of(ctx.params, full);
  const auto message = depcode(ctx.moore, evals);
  return std::vector<FieldElement>(
      message.begin(), message.begin() + static_cast<long>(ctx.params.m_secure));
}

}  // namespace secmsr
