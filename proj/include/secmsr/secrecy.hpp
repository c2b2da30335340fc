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
#include <utility>
#include <vector>

#include "secmsr/pipeline.hpp"

namespace secmsr {

// The analysis below works with one node's symbol index space {0..s^n-1}.
// A "line" along axis i is the set of s indices that agree everywhere but
// digit i; node i's repair downloads are exactly the line sums along axis i.

/// Hypergraph whose vertices are the s^n indices and whose edges are the
/// lines along the given axes.  Edge columns are grouped by axis in
/// descending axis order, lines in ascending representative order.
struct LineHypergraph {
  unsigned s = 0, n = 0;
  std::vector<unsigned> axes;  // descending
  uint64_t vertices = 0;
  BitMatrix incidence;         // vertices x (axes * s^(n-1))
};

LineHypergraph line_hypergraph(unsigned s, unsigned n,
                               std::vector<unsigned> axes);
/// All axes 1..n.
LineHypergraph line_hypergraph(unsigned s, unsigned n);

/// Stacked download-selector matrix of the eavesdropped nodes: one row per
/// (eavesdropped axis, line), descending axis blocks; row (i, b) has ones at
/// the s indices of line b.  Equals the transpose of the line-hypergraph
/// incidence on the same axes.  Its GF(2) rank counts the independent
/// repair-download functionals per node.
BitMatrix symbol_matrix(unsigned n, unsigned s,
                        const std::vector<unsigned>& eavesdropped);

struct Component {
  std::vector<uint64_t> vertices;  // ascending
  std::vector<uint64_t> edges;     // ascending, hypergraph edge ids
};

/// Connected components of the hypergraph, ordered by smallest vertex.
std::vector<Component> connected_components(const LineHypergraph& g);

/// s^(n-l) * (s^l - (s-1)^l): the symbol-matrix rank for l observed axes.
uint64_t symbol_rank_formula(unsigned n, unsigned s, unsigned l);

/// Rank of the symbol matrix computed three ways: directly over GF(2), by
/// the closed form, and as a sum of per-component ranks, together with the
/// component shape counts the decomposition argument predicts.
struct SymbolRankReport {
  unsigned n = 0, s = 0;
  std::vector<unsigned> eavesdropped;
  uint64_t rank_direct = 0;
  uint64_t rank_formula = 0;
  uint64_t component_rank_sum = 0;
  uint64_t component_count = 0;
  bool components_uniform = false;  // every component: s^l vertices, l*s^(l-1) edges
  bool consistent = false;          // the three ranks agree
};
SymbolRankReport symbol_rank_report(unsigned n, unsigned s,
                                    std::vector<unsigned> eavesdropped);

/// Parity functionals of the l-fold product of single-parity codes: the
/// transpose of the full line-hypergraph incidence on l axes.  GF(2) rank
/// is s^l - (s-1)^l.
BitMatrix product_code_parity(unsigned s, unsigned l);

/// Signed generator of that product code: the l-fold Kronecker power of
/// [I_(s-1) | -1], rows and columns indexed like digit tuples (digit 1
/// least significant).  Entries lie in {-1, 0, 1}.
std::vector<std::vector<int>> spc_product_generator_signed(unsigned s,
                                                           unsigned l);

/// Rank of a signed integer matrix over GF(p) for small prime p.
/// Characteristic-dependence diagnostic for the rank identities above.
size_t rank_mod_p(const std::vector<std::vector<int>>& m, unsigned p);

struct EveColumn {
  enum class Kind { kStored, kDownload };
  Kind kind = Kind::kStored;
  unsigned node = 0;    // eavesdropped node observing this symbol
  unsigned helper = 0;  // source node (downloads only)
  uint64_t index = 0;   // symbol index (stored) or class index (downloads)
};

/// The eavesdropper's view as linear functionals of the stored message
/// (file || randomness): T with one column per observed symbol, so that
/// view = message * T.
struct EveMatrix {
  Matrix t;
  std::vector<EveColumn> columns;
  uint64_t m_secure = 0;
  uint64_t m_random = 0;
};

/// View for an explicit observation set: every symbol stored on
/// `stored_nodes` plus one download column per (helper, receiver, class)
/// for each listed (helper, receiver) pair.  With `precoded` false the
/// Moore factor is dropped (functionals of the raw message): the negative
/// control showing the bare code leaks.
EveMatrix eve_view(const PipelineContext& ctx,
                   const std::vector<unsigned>& stored_nodes,
                   const std::vector<std::pair<unsigned, unsigned>>& downloads,
                   const Matrix& generator, bool precoded = true);

/// Worst-case lifetime view of an eavesdropper on `eavesdropped` (at most
/// l nodes): all stored symbols plus repair downloads from every
/// non-eavesdropped helper.  Column count: l*alpha + l*(n-l)*beta.
EveMatrix eve_matrix(const PipelineContext& ctx,
                     const std::vector<unsigned>& eavesdropped,
                     const Matrix& generator, bool precoded = true);

/// Exact secrecy accounting over the uniform message distribution.  The
/// eavesdropper's information about the file is
///   I(file; view) = rank(T) - rank(E_r)
/// symbols, where E_r is the randomness-block rows of T; the scheme is
/// secret exactly when the two ranks agree.  The sufficient pair
/// (rank(T) <= m_random, rank(E_r) == m_random) is reported alongside.
struct SecrecyCertificate {
  uint64_t rank_t = 0;
  uint64_t rank_er = 0;
  uint64_t m_random = 0;
  uint64_t leak_symbols = 0;
  bool secret = false;
  bool leak_le_randomness = false;
  bool randomness_recoverable = false;
};
SecrecyCertificate verify_secrecy(const EveMatrix& e);

}  // namespace secmsr
