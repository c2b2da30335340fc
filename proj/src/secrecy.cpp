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

#include "secmsr/secrecy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace secmsr {
namespace {

uint64_t upow(uint64_t base, unsigned exp) {
  uint64_t v = 1;
  while (exp--) v *= base;
  return v;
}

// Index of a line representative within its axis block: the representative
// read as an (n-1)-digit number with digit `axis` removed.  Representatives
// are ascending, and dropping a digit that is zero preserves order, so this
// matches the enumeration order of repair_class_reps.
uint64_t line_index(uint64_t rep, unsigned axis, unsigned n, unsigned s) {
  uint64_t out = 0, place = 1;
  for (unsigned t = 1; t <= n; ++t) {
    if (t == axis) continue;
    out += tuple_digit(rep, t, s) * place;
    place *= s;
  }
  return out;
}

void check_axes(unsigned n, const std::vector<unsigned>& axes) {
  if (axes.empty() || axes.size() > n) {
    throw std::invalid_argument("need between 1 and n axes");
  }
  std::set<unsigned> seen;
  for (unsigned a : axes) {
    if (a < 1 || a > n) throw std::invalid_argument("axis out of range");
    if (!seen.insert(a).second) throw std::invalid_argument("duplicate axis");
  }
}

}  // namespace

LineHypergraph line_hypergraph(unsigned s, unsigned n,
                               std::vector<unsigned> axes) {
  if (s < 2 || n < 1) throw std::invalid_argument("need s >= 2 and n >= 1");
  check_axes(n, axes);
  std::sort(axes.begin(), axes.end(), std::greater<unsigned>());
  const uint64_t alpha = upow(s, n);
  const uint64_t beta = alpha / s;
  LineHypergraph g{s, n, axes, alpha,
                   BitMatrix(alpha, axes.size() * beta)};
  for (size_t b = 0; b < g.axes.size(); ++b) {
    const unsigned i = g.axes[b];
    const auto reps = repair_class_reps(n, s, i);
    for (uint64_t r = 0; r < beta; ++r) {
      const uint64_t col = b * beta + r;
      for (unsigned u = 0; u < s; ++u) {
        g.incidence.set(tuple_with_digit(reps[r], i, u, s), col, true);
      }
    }
  }
  return g;
}

LineHypergraph line_hypergraph(unsigned s, unsigned n) {
  std::vector<unsigned> axes(n);
  for (unsigned i = 0; i < n; ++i) axes[i] = n - i;
  return line_hypergraph(s, n, std::move(axes));
}

BitMatrix symbol_matrix(unsigned n, unsigned s,
                        const std::vector<unsigned>& eavesdropped) {
  return line_hypergraph(s, n, eavesdropped).incidence.transposed();
}

std::vector<Component> connected_components(const LineHypergraph& g) {
  const unsigned s = g.s, n = g.n;
  const uint64_t beta = g.vertices / s;
  std::vector<char> vertex_seen(g.vertices, 0);
  std::vector<Component> out;
  for (uint64_t start = 0; start < g.vertices; ++start) {
    if (vertex_seen[start]) continue;
    Component comp;
    std::set<uint64_t> edges;
    std::vector<uint64_t> queue = {start};
    vertex_seen[start] = 1;
    while (!queue.empty()) {
      const uint64_t v = queue.back();
      queue.pop_back();
      comp.vertices.push_back(v);
      for (size_t b = 0; b < g.axes.size(); ++b) {
        const unsigned i = g.axes[b];
        const uint64_t rep = tuple_with_digit(v, i, 0, s);
        edges.insert(b * beta + line_index(rep, i, n, s));
        for (unsigned u = 0; u < s; ++u) {
          const uint64_t w = tuple_with_digit(v, i, u, s);
          if (!vertex_seen[w]) {
            vertex_seen[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.edges.assign(edges.begin(), edges.end());
    out.push_back(std::move(comp));
  }
  return out;
}

uint64_t symbol_rank_formula(unsigned n, unsigned s, unsigned l) {
  return upow(s, n - l) * (upow(s, l) - upow(s - 1, l));
}

SymbolRankReport symbol_rank_report(unsigned n, unsigned s,
                                    std::vector<unsigned> eavesdropped) {
  const LineHypergraph g = line_hypergraph(s, n, eavesdropped);
  const unsigned l = static_cast<unsigned>(g.axes.size());
  SymbolRankReport rep;
  rep.n = n;
  rep.s = s;
  rep.eavesdropped = g.axes;
  const BitMatrix p = g.incidence.transposed();
  rep.rank_direct = linalg::rank(p);
  rep.rank_formula = symbol_rank_formula(n, s, l);

  const auto comps = connected_components(g);
  rep.component_count = comps.size();
  rep.components_uniform = true;
  const uint64_t want_vertices = upow(s, l);
  const uint64_t want_edges = uint64_t{l} * upow(s, l - 1);
  for (const auto& comp : comps) {
    if (comp.vertices.size() != want_vertices ||
        comp.edges.size() != want_edges) {
      rep.components_uniform = false;
    }
    BitMatrix block(comp.edges.size(), comp.vertices.size());
    for (size_t r = 0; r < comp.edges.size(); ++r) {
      for (size_t c = 0; c < comp.vertices.size(); ++c) {
        if (p.get(comp.edges[r], comp.vertices[c])) block.set(r, c, true);
      }
    }
    rep.component_rank_sum += linalg::rank(block);
  }
  rep.consistent = rep.rank_direct == rep.rank_formula &&
                   rep.rank_direct == rep.component_rank_sum;
  return rep;
}

BitMatrix product_code_parity(unsigned s, unsigned l) {
  return line_hypergraph(s, l).incidence.transposed();
}

std::vector<std::vector<int>> spc_product_generator_signed(unsigned s,
                                                           unsigned l) {
  if (s < 2 || l < 1) throw std::invalid_argument("need s >= 2 and l >= 1");
  const uint64_t rows = upow(s - 1, l);
  const uint64_t cols = upow(s, l);
  std::vector<std::vector<int>> g(rows, std::vector<int>(cols, 0));
  for (uint64_t r = 0; r < rows; ++r) {
    for (uint64_t c = 0; c < cols; ++c) {
      int v = 1;
      uint64_t rr = r, cc = c;
      for (unsigned i = 0; i < l && v != 0; ++i) {
        const unsigned rd = static_cast<unsigned>(rr % (s - 1));
        const unsigned cd = static_cast<unsigned>(cc % s);
        rr /= (s - 1);
        cc /= s;
        if (cd == rd) {
          // +1 factor
        } else if (cd == s - 1) {
          v = -v;
        } else {
          v = 0;
        }
      }
      g[r][c] = v;
    }
  }
  return g;
}

size_t rank_mod_p(const std::vector<std::vector<int>>& m, unsigned p) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<unsigned>> w(rows, std::vector<unsigned>(cols));
  for (size_t r = 0; r < rows; ++r) {
    if (m[r].size() != cols) throw std::invalid_argument("ragged matrix");
    for (size_t c = 0; c < cols; ++c) {
      const long long v = m[r][c] % static_cast<long long>(p);
      w[r][c] = static_cast<unsigned>((v + p) % p);
    }
  }
  auto inv_mod = [p](unsigned a) {
    unsigned r = 1;
    for (unsigned e = p - 2; e; e >>= 1) {  // Fermat; p prime
      if (e & 1) r = (r * a) % p;
      a = (a * a) % p;
    }
    return r;
  };
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && w[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(w[piv], w[rank]);
    const unsigned f = inv_mod(w[rank][col]);
    for (size_t c = col; c < cols; ++c) w[rank][c] = (w[rank][c] * f) % p;
    for (size_t r = rank + 1; r < rows; ++r) {
      const unsigned g = w[r][col];
      if (!g) continue;
      for (size_t c = col; c < cols; ++c) {
        w[r][c] = (w[r][c] + (p - g) * w[rank][c]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

EveMatrix eve_view(const PipelineContext& ctx,
                   const std::vector<unsigned>& stored_nodes,
                   const std::vector<std::pair<unsigned, unsigned>>& downloads,
                   const Matrix& generator, bool precoded) {
  const SystemParams& p = ctx.params;
  const FieldContext& f = *ctx.field;
  if (generator.rows() != p.m_total ||
      generator.cols() != uint64_t{p.n} * p.alpha) {
    throw std::invalid_argument("generator shape mismatch");
  }
  std::set<unsigned> stored_set;
  for (unsigned e : stored_nodes) {
    if (e < 1 || e > p.n) throw std::invalid_argument("node out of range");
    if (!stored_set.insert(e).second) {
      throw std::invalid_argument("duplicate stored node");
    }
  }
  for (const auto& [helper, receiver] : downloads) {
    if (helper < 1 || helper > p.n || receiver < 1 || receiver > p.n ||
        helper == receiver) {
      throw std::invalid_argument("bad download pair");
    }
  }

  std::vector<EveColumn> cols;
  for (unsigned e : stored_set) {
    for (uint64_t a = 0; a < p.alpha; ++a) {
      cols.push_back({EveColumn::Kind::kStored, e, 0, a});
    }
  }
  for (const auto& [helper, receiver] : downloads) {
    for (uint64_t r = 0; r < p.beta; ++r) {
      cols.push_back({EveColumn::Kind::kDownload, receiver, helper, r});
    }
  }

  const unsigned w = f.words();
  Matrix selected(f, p.m_total, cols.size());
  size_t ci = 0;
  for (unsigned e : stored_set) {
    for (uint64_t a = 0; a < p.alpha; ++a, ++ci) {
      const uint64_t gc = uint64_t{e - 1} * p.alpha + a;
      for (uint64_t row = 0; row < p.m_total; ++row) {
        std::copy_n(generator.entry(row, gc), w, selected.entry(row, ci));
      }
    }
  }
  for (const auto& [helper, receiver] : downloads) {
    const auto reps = repair_class_reps(p.n, p.s, receiver);
    for (uint64_t r = 0; r < p.beta; ++r, ++ci) {
      for (unsigned u = 0; u < p.s; ++u) {
        const uint64_t idx = tuple_with_digit(reps[r], receiver, u, p.s);
        const uint64_t gc = uint64_t{helper - 1} * p.alpha + idx;
        for (uint64_t row = 0; row < p.m_total; ++row) {
          uint64_t* dst = selected.entry(row, ci);
          const uint64_t* src = generator.entry(row, gc);
          for (unsigned t = 0; t < w; ++t) dst[t] ^= src[t];
        }
      }
    }
  }

  Matrix t = precoded ? linalg::multiply(ctx.moore, selected)
                      : std::move(selected);
  return EveMatrix{std::move(t), std::move(cols), p.m_secure, p.m_random};
}

EveMatrix eve_matrix(const PipelineContext& ctx,
                     const std::vector<unsigned>& eavesdropped,
                     const Matrix& generator, bool precoded) {
  const SystemParams& p = ctx.params;
  if (eavesdropped.size() > p.l) {
    throw std::invalid_argument("more eavesdropped nodes than the bound l");
  }
  std::set<unsigned> eset(eavesdropped.begin(), eavesdropped.end());
  if (eset.size() != eavesdropped.size()) {
    throw std::invalid_argument("duplicate eavesdropped node");
  }
  std::vector<std::pair<unsigned, unsigned>> downloads;
  for (unsigned e : eset) {
    for (unsigned j = 1; j <= p.n; ++j) {
      if (j != e && !eset.count(j)) downloads.emplace_back(j, e);
    }
  }
  return eve_view(ctx, eavesdropped, downloads, generator, precoded);
}

SecrecyCertificate verify_secrecy(const EveMatrix& e) {
  SecrecyCertificate cert;
  cert.m_random = e.m_random;
  cert.rank_t = linalg::rank(e.t);
  const Matrix er = e.t.row_slice(e.m_secure, e.m_secure + e.m_random);
  cert.rank_er = linalg::rank(er);
  cert.leak_symbols = cert.rank_t - cert.rank_er;
  cert.secret = cert.leak_symbols == 0;
  cert.leak_le_randomness = cert.rank_t <= e.m_random;
  cert.randomness_recoverable = cert.rank_er == e.m_random;
  return cert;
}

}  // namespace secmsr
