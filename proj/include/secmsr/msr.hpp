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
#include <vector>

#include "secmsr/linalg.hpp"

namespace secmsr {

/// Parameters of an (n, k, d) distributed storage code with l-node
/// eavesdropping resistance, plus the derived sizes.
///
/// Nodes are numbered 1..n.  Each node stores alpha = s^n symbols, where
/// s = d - k + 1; a repair downloads beta = s^(n-1) symbols from each of d
/// helpers.  A codeword carries m_total = k * alpha message symbols, of
/// which m_secure stay hidden from an eavesdropper observing any l nodes
/// (storage plus repair traffic) once the message is precoded; the other
/// m_random symbols are sacrificial randomness.
struct SystemParams {
  unsigned n = 0, k = 0, d = 0, l = 0;
  unsigned s = 0;
  uint64_t alpha = 0;
  uint64_t beta = 0;
  uint64_t m_total = 0;
  uint64_t m_secure = 0;
  uint64_t m_random = 0;

  /// Validates 2 <= k < n, k+1 <= d <= n-1, 0 <= l < k and fills the
  /// derived fields.  Throws std::invalid_argument otherwise, or if the
  /// symbol counts overflow the practical size guard.
  static SystemParams create(unsigned n, unsigned k, unsigned d, unsigned l);
};

/// Storage capacity (symbols of secure file content per codeword) under
/// l-node eavesdropping: (k - l) * (s - 1)^l * s^(n - l).
uint64_t secrecy_capacity(const SystemParams& p);

/// A node symbol index: an n-digit base-s number a = (a_1, ..., a_n) with
/// a_1 least significant.  Digit i selects the repair group of node i.
struct IndexTuple {
  unsigned n = 0, s = 0;
  uint64_t value = 0;

  unsigned digit(unsigned i) const;                      // i in 1..n
  IndexTuple with_digit(unsigned i, unsigned u) const;   // u in 0..s-1
};

/// Index arithmetic as free functions for hot loops.
unsigned tuple_digit(uint64_t a, unsigned i, unsigned s);
uint64_t tuple_with_digit(uint64_t a, unsigned i, unsigned u, unsigned s);

/// Representatives of node i's repair classes: all indices with digit i
/// equal to zero, in ascending order.  A class is the s indices that agree
/// with its representative everywhere but digit i.
std::vector<uint64_t> repair_class_reps(unsigned n, unsigned s, unsigned node);

/// lambda[i-1][u]: the code-multiplier field element for node i, group u.
/// Distinctness across all (i, u) comes from the integer injection
/// (i-1)*s + u, so the field must hold at least n*s elements.
using LambdaTable = std::vector<std::vector<FieldElement>>;
LambdaTable lambda_assign(const SystemParams& p, const FieldContext& ctx);

struct NodeContent {
  unsigned node = 0;  // 1-based
  std::vector<FieldElement> symbols;
};

struct Codeword {
  std::vector<NodeContent> nodes;  // node 1..n in order
};

/// Flat node-major vector: entry (j-1)*alpha + a is symbol a of node j.
std::vector<FieldElement> flatten(const Codeword& c);

/// Systematic encode: nodes 1..k store the message verbatim; each index a
/// of the parity nodes solves the n-k parity equations
///   sum_j lambda_{j, a_j}^t c_{j, a} = 0,   t = 0..n-k-1,
/// a Vandermonde system in the parity symbols.
Codeword encode(const SystemParams& p, const LambdaTable& lambda,
                const std::vector<FieldElement>& message);

/// Parity-check matrix H ((n-k)*alpha x n*alpha) with
/// H[t*alpha + a, (j-1)*alpha + a] = lambda_{j, a_j}^t.
Matrix parity_check_matrix(const SystemParams& p, const LambdaTable& lambda);

/// Internal shape of H for arbitrary node/redundancy counts (no parameter
/// validation): rows t = 0..r-1 blocks over nodes*s^nodes indices.  Exposed
/// because the single-redundancy layout (r = 1: one all-ones block row) is
/// unreachable through valid SystemParams yet worth testing directly.
Matrix parity_check_matrix_raw(unsigned nodes, unsigned r, unsigned s,
                               const LambdaTable& lambda,
                               const FieldContext& ctx);

/// Systematic generator G (m_total x n*alpha) with c = m * G.
Matrix generator_matrix(const SystemParams& p, const LambdaTable& lambda);

/// True when every parity equation holds.
bool parity_holds(const SystemParams& p, const LambdaTable& lambda,
                  const Codeword& c);

/// Rebuilds the full codeword from any k distinct nodes (MDS data
/// collection): per index a the n-k missing symbols solve the parity
/// equations with the known symbols moved to the right-hand side.
Codeword collect(const SystemParams& p, const LambdaTable& lambda,
                 const std::vector<NodeContent>& available);

/// Message read-back from a full codeword's systematic nodes.
std::vector<FieldElement> message_of(const SystemParams& p, const Codeword& c);

struct RepairDownload {
  unsigned helper = 0;
  unsigned failed = 0;
  /// mu[r] = sum over u of helper symbol at rep_r(failed, u): one symbol
  /// per repair class of the failed node, classes in representative order.
  std::vector<FieldElement> mu;
};

/// What one helper sends for the repair of `failed`.  Downloads depend only
/// on the helper's own content and the failed node's identity.
RepairDownload repair_download(const SystemParams& p,
                               const NodeContent& helper, unsigned failed);

/// Exact repair of node `failed` from d helper downloads.  Per repair class
/// the s lost symbols plus the n-1-d unobserved helpers' virtual downloads
/// solve the n-k parity-derived equations (a Vandermonde system).
NodeContent repair(const SystemParams& p, const LambdaTable& lambda,
                   unsigned failed, const std::vector<RepairDownload>& from);

}  // namespace secmsr
