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

#include "secmsr/msr.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <stdexcept>

namespace secmsr {
namespace {

constexpr uint64_t kMaxAlpha = uint64_t{1} << 28;

// An exception leaving an OpenMP structured block terminates the process,
// even on the serial path of an if clause.  Capture the first one inside
// the region and rethrow it after the join.
struct RegionError {
  std::exception_ptr err;

  template <typename Fn>
  void guard(Fn&& fn) noexcept {
    try {
      fn();
    } catch (...) {
#pragma omp critical(secmsr_region_error)
      if (!err) err = std::current_exception();
    }
  }
  void rethrow() const {
    if (err) std::rethrow_exception(err);
  }
};

uint64_t checked_pow(uint64_t base, unsigned exp, uint64_t limit) {
  uint64_t v = 1;
  for (unsigned i = 0; i < exp; ++i) {
    v *= base;
    if (v > limit) throw std::invalid_argument("parameter sizes too large");
  }
  return v;
}

// Solves the Vandermonde system sum_c basis[c]^t * x[c] = rhs[t] for
// t = 0..r-1.  The basis entries must be distinct, which makes the system
// uniquely solvable.
std::vector<FieldElement> vandermonde_solve(
    const FieldContext& ctx, const std::vector<FieldElement>& basis,
    const std::vector<FieldElement>& rhs) {
  const size_t r = basis.size();
  Matrix v(ctx, r, r);
  for (size_t c = 0; c < r; ++c) {
    FieldElement p = ctx.one();
    for (size_t t = 0; t < r; ++t) {
      v.set(t, c, p);
      p = p * basis[c];
    }
  }
  const auto res = linalg::solve(v, rhs);
  if (res.status != linalg::SolveResult::Status::kUnique) {
    throw std::logic_error("degenerate repair system");
  }
  return res.solution;
}

void check_lambda(const SystemParams& p, const LambdaTable& lambda) {
  if (lambda.size() != p.n) {
    throw std::invalid_argument("lambda table node count mismatch");
  }
  for (const auto& row : lambda) {
    if (row.size() != p.s) {
      throw std::invalid_argument("lambda table group count mismatch");
    }
  }
}

}  // namespace

SystemParams SystemParams::create(unsigned n, unsigned k, unsigned d,
                                  unsigned l) {
  if (k < 2 || k >= n) throw std::invalid_argument("need 2 <= k < n");
  if (d < k + 1 || d > n - 1) throw std::invalid_argument("need k+1 <= d <= n-1");
  if (l >= k) throw std::invalid_argument("need 0 <= l < k");
  SystemParams p;
  p.n = n;
  p.k = k;
  p.d = d;
  p.l = l;
  p.s = d - k + 1;
  p.alpha = checked_pow(p.s, n, kMaxAlpha);
  p.beta = p.alpha / p.s;
  p.m_total = k * p.alpha;
  p.m_secure = (k - l) * checked_pow(p.s - 1, l, kMaxAlpha) *
               checked_pow(p.s, n - l, kMaxAlpha);
  p.m_random = p.m_total - p.m_secure;
  return p;
}

uint64_t secrecy_capacity(const SystemParams& p) { return p.m_secure; }

unsigned tuple_digit(uint64_t a, unsigned i, unsigned s) {
  for (unsigned t = 1; t < i; ++t) a /= s;
  return static_cast<unsigned>(a % s);
}

uint64_t tuple_with_digit(uint64_t a, unsigned i, unsigned u, unsigned s) {
  uint64_t place = 1;
  for (unsigned t = 1; t < i; ++t) place *= s;
  const uint64_t old = (a / place) % s;
  return a + (u - old) * place;  // unsigned wraparound cancels exactly
}

unsigned IndexTuple::digit(unsigned i) const { return tuple_digit(value, i, s); }

IndexTuple IndexTuple::with_digit(unsigned i, unsigned u) const {
  return IndexTuple{n, s, tuple_with_digit(value, i, u, s)};
}

std::vector<uint64_t> repair_class_reps(unsigned n, unsigned s,
                                        unsigned node) {
  if (node < 1 || node > n) throw std::invalid_argument("node out of range");
  uint64_t alpha = 1;
  for (unsigned i = 0; i < n; ++i) alpha *= s;
  std::vector<uint64_t> reps;
  reps.reserve(alpha / s);
  for (uint64_t a = 0; a < alpha; ++a) {
    if (tuple_digit(a, node, s) == 0) reps.push_back(a);
  }
  return reps;
}

LambdaTable lambda_assign(const SystemParams& p, const FieldContext& ctx) {
  const uint64_t needed = uint64_t{p.n} * p.s;
  if (ctx.degree() < 64 && (needed - 1) >> ctx.degree() != 0) {
    throw std::invalid_argument("field too small for distinct multipliers");
  }
  LambdaTable lambda(p.n);
  for (unsigned i = 1; i <= p.n; ++i) {
    lambda[i - 1].reserve(p.s);
    for (unsigned u = 0; u < p.s; ++u) {
      lambda[i - 1].push_back(ctx.from_integer((i - 1) * uint64_t{p.s} + u));
    }
  }
  return lambda;
}

std::vector<FieldElement> flatten(const Codeword& c) {
  std::vector<FieldElement> out;
  for (const auto& node : c.nodes) {
    out.insert(out.end(), node.symbols.begin(), node.symbols.end());
  }
  return out;
}

Codeword encode(const SystemParams& p, const LambdaTable& lambda,
                const std::vector<FieldElement>& message) {
  check_lambda(p, lambda);
  if (message.size() != p.m_total) {
    throw std::invalid_argument("message length mismatch");
  }
  const FieldContext& ctx = message.front().context();
  const unsigned r = p.n - p.k;
  Codeword c;
  c.nodes.resize(p.n);
  for (unsigned j = 1; j <= p.n; ++j) {
    c.nodes[j - 1].node = j;
    c.nodes[j - 1].symbols.assign(p.alpha, ctx.zero());
  }
  for (unsigned i = 1; i <= p.k; ++i) {
    for (uint64_t a = 0; a < p.alpha; ++a) {
      c.nodes[i - 1].symbols[a] = message[(i - 1) * p.alpha + a];
    }
  }
  const long alpha = static_cast<long>(p.alpha);
  RegionError re;
#pragma omp parallel for schedule(static) if (alpha > 32)
  for (long ai = 0; ai < alpha; ++ai) {
    re.guard([&, ai] {
      const uint64_t a = static_cast<uint64_t>(ai);
      std::vector<FieldElement> basis, rhs(r, ctx.zero());
      basis.reserve(r);
      for (unsigned j = p.k + 1; j <= p.n; ++j) {
        basis.push_back(lambda[j - 1][tuple_digit(a, j, p.s)]);
      }
      for (unsigned i = 1; i <= p.k; ++i) {
        const FieldElement& lam = lambda[i - 1][tuple_digit(a, i, p.s)];
        FieldElement pw = ctx.one();
        for (unsigned t = 0; t < r; ++t) {
          rhs[t] += pw * c.nodes[i - 1].symbols[a];
          pw = pw * lam;
        }
      }
      const auto x = vandermonde_solve(ctx, basis, rhs);
      for (unsigned j = p.k + 1; j <= p.n; ++j) {
        c.nodes[j - 1].symbols[a] = x[j - p.k - 1];
      }
    });
  }
  re.rethrow();
  return c;
}

Matrix parity_check_matrix_raw(unsigned nodes, unsigned r, unsigned s,
                               const LambdaTable& lambda,
                               const FieldContext& ctx) {
  uint64_t alpha = 1;
  for (unsigned i = 0; i < nodes; ++i) alpha *= s;
  Matrix h(ctx, r * alpha, nodes * alpha);
  for (unsigned j = 1; j <= nodes; ++j) {
    for (uint64_t a = 0; a < alpha; ++a) {
      const FieldElement& lam = lambda[j - 1][tuple_digit(a, j, s)];
      FieldElement pw = ctx.one();
      for (unsigned t = 0; t < r; ++t) {
        h.set(t * alpha + a, (j - 1) * alpha + a, pw);
        pw = pw * lam;
      }
    }
  }
  return h;
}

Matrix parity_check_matrix(const SystemParams& p, const LambdaTable& lambda) {
  check_lambda(p, lambda);
  const FieldContext& ctx = lambda[0][0].context();
  return parity_check_matrix_raw(p.n, p.n - p.k, p.s, lambda, ctx);
}

Matrix generator_matrix(const SystemParams& p, const LambdaTable& lambda) {
  check_lambda(p, lambda);
  const FieldContext& ctx = lambda[0][0].context();
  const unsigned r = p.n - p.k;
  Matrix g(ctx, p.m_total, uint64_t{p.n} * p.alpha);
  const FieldElement one = ctx.one();
  const long alpha = static_cast<long>(p.alpha);
  RegionError re;
#pragma omp parallel for schedule(static) if (alpha > 32)
  for (long ai = 0; ai < alpha; ++ai) {
    re.guard([&, ai] {
      const uint64_t a = static_cast<uint64_t>(ai);
      std::vector<FieldElement> basis;
      basis.reserve(r);
      for (unsigned j = p.k + 1; j <= p.n; ++j) {
        basis.push_back(lambda[j - 1][tuple_digit(a, j, p.s)]);
      }
      for (unsigned i = 1; i <= p.k; ++i) {
        g.set((i - 1) * p.alpha + a, (i - 1) * p.alpha + a, one);
        const FieldElement& lam = lambda[i - 1][tuple_digit(a, i, p.s)];
        std::vector<FieldElement> rhs;
        rhs.reserve(r);
        FieldElement pw = one;
        for (unsigned t = 0; t < r; ++t) {
          rhs.push_back(pw);
          pw = pw * lam;
        }
        const auto x = vandermonde_solve(ctx, basis, rhs);
        for (unsigned j = p.k + 1; j <= p.n; ++j) {
          g.set((i - 1) * p.alpha + a, (j - 1) * p.alpha + a, x[j - p.k - 1]);
        }
      }
    });
  }
  re.rethrow();
  return g;
}

bool parity_holds(const SystemParams& p, const LambdaTable& lambda,
                  const Codeword& c) {
  check_lambda(p, lambda);
  if (c.nodes.size() != p.n) return false;
  const FieldContext& ctx = lambda[0][0].context();
  for (unsigned j = 1; j <= p.n; ++j) {
    if (c.nodes[j - 1].node != j) return false;
    if (c.nodes[j - 1].symbols.size() != p.alpha) return false;
  }
  const unsigned r = p.n - p.k;
  for (uint64_t a = 0; a < p.alpha; ++a) {
    std::vector<FieldElement> acc(r, ctx.zero());
    for (unsigned j = 1; j <= p.n; ++j) {
      const FieldElement& lam = lambda[j - 1][tuple_digit(a, j, p.s)];
      FieldElement pw = ctx.one();
      for (unsigned t = 0; t < r; ++t) {
        acc[t] += pw * c.nodes[j - 1].symbols[a];
        pw = pw * lam;
      }
    }
    for (const auto& v : acc) {
      if (!v.is_zero()) return false;
    }
  }
  return true;
}

Codeword collect(const SystemParams& p, const LambdaTable& lambda,
                 const std::vector<NodeContent>& available) {
  check_lambda(p, lambda);
  if (available.size() != p.k) {
    throw std::invalid_argument("collect needs exactly k nodes");
  }
  std::set<unsigned> seen;
  for (const auto& nc : available) {
    if (nc.node < 1 || nc.node > p.n) {
      throw std::invalid_argument("node id out of range");
    }
    if (!seen.insert(nc.node).second) {
      throw std::invalid_argument("duplicate node in collect");
    }
    if (nc.symbols.size() != p.alpha) {
      throw std::invalid_argument("node content has wrong length");
    }
  }
  const FieldContext& ctx = lambda[0][0].context();
  std::vector<unsigned> missing;
  for (unsigned j = 1; j <= p.n; ++j) {
    if (!seen.count(j)) missing.push_back(j);
  }
  Codeword c;
  c.nodes.resize(p.n);
  for (unsigned j = 1; j <= p.n; ++j) {
    c.nodes[j - 1].node = j;
    c.nodes[j - 1].symbols.assign(p.alpha, ctx.zero());
  }
  for (const auto& nc : available) {
    c.nodes[nc.node - 1].symbols = nc.symbols;
  }
  const unsigned r = p.n - p.k;
  const long alpha = static_cast<long>(p.alpha);
  RegionError re;
#pragma omp parallel for schedule(static) if (alpha > 32)
  for (long ai = 0; ai < alpha; ++ai) {
    re.guard([&, ai] {
      const uint64_t a = static_cast<uint64_t>(ai);
      std::vector<FieldElement> basis, rhs(r, ctx.zero());
      basis.reserve(missing.size());
      for (unsigned j : missing) {
        basis.push_back(lambda[j - 1][tuple_digit(a, j, p.s)]);
      }
      for (unsigned j = 1; j <= p.n; ++j) {
        if (!seen.count(j)) continue;
        const FieldElement& lam = lambda[j - 1][tuple_digit(a, j, p.s)];
        FieldElement pw = ctx.one();
        for (unsigned t = 0; t < r; ++t) {
          rhs[t] += pw * c.nodes[j - 1].symbols[a];
          pw = pw * lam;
        }
      }
      const auto x = vandermonde_solve(ctx, basis, rhs);
      for (size_t mi = 0; mi < missing.size(); ++mi) {
        c.nodes[missing[mi] - 1].symbols[a] = x[mi];
      }
    });
  }
  re.rethrow();
  return c;
}

std::vector<FieldElement> message_of(const SystemParams& p,
                                     const Codeword& c) {
  if (c.nodes.size() != p.n) throw std::invalid_argument("codeword size");
  std::vector<FieldElement> m;
  m.reserve(p.m_total);
  for (unsigned i = 1; i <= p.k; ++i) {
    if (c.nodes[i - 1].symbols.size() != p.alpha) {
      throw std::invalid_argument("node content has wrong length");
    }
    m.insert(m.end(), c.nodes[i - 1].symbols.begin(),
             c.nodes[i - 1].symbols.end());
  }
  return m;
}

RepairDownload repair_download(const SystemParams& p,
                               const NodeContent& helper, unsigned failed) {
  if (failed < 1 || failed > p.n) {
    throw std::invalid_argument("failed node out of range");
  }
  if (helper.node == failed) {
    throw std::invalid_argument("failed node cannot help itself");
  }
  if (helper.symbols.size() != p.alpha) {
    throw std::invalid_argument("helper content has wrong length");
  }
  RepairDownload dl;
  dl.helper = helper.node;
  dl.failed = failed;
  const auto reps = repair_class_reps(p.n, p.s, failed);
  dl.mu.reserve(reps.size());
  for (const uint64_t rep : reps) {
    FieldElement sum = helper.symbols[rep];  // u = 0 is the representative
    for (unsigned u = 1; u < p.s; ++u) {
      sum += helper.symbols[tuple_with_digit(rep, failed, u, p.s)];
    }
    dl.mu.push_back(sum);
  }
  return dl;
}

NodeContent repair(const SystemParams& p, const LambdaTable& lambda,
                   unsigned failed, const std::vector<RepairDownload>& from) {
  check_lambda(p, lambda);
  if (failed < 1 || failed > p.n) {
    throw std::invalid_argument("failed node out of range");
  }
  if (from.size() != p.d) {
    throw std::invalid_argument("repair needs exactly d downloads");
  }
  std::set<unsigned> helpers;
  for (const auto& dl : from) {
    if (dl.failed != failed) {
      throw std::invalid_argument("download for a different failed node");
    }
    if (dl.helper < 1 || dl.helper > p.n || dl.helper == failed) {
      throw std::invalid_argument("helper id out of range");
    }
    if (!helpers.insert(dl.helper).second) {
      throw std::invalid_argument("duplicate helper");
    }
    if (dl.mu.size() != p.beta) {
      throw std::invalid_argument("download has wrong length");
    }
  }
  const FieldContext& ctx = lambda[0][0].context();
  std::vector<unsigned> unobserved;
  for (unsigned j = 1; j <= p.n; ++j) {
    if (j != failed && !helpers.count(j)) unobserved.push_back(j);
  }
  const unsigned r = p.n - p.k;  // = s + unobserved.size()
  const auto reps = repair_class_reps(p.n, p.s, failed);
  NodeContent out;
  out.node = failed;
  out.symbols.assign(p.alpha, ctx.zero());
  const long nreps = static_cast<long>(reps.size());
  RegionError re;
#pragma omp parallel for schedule(static) if (nreps > 32)
  for (long ri = 0; ri < nreps; ++ri) {
    re.guard([&, ri] {
      const uint64_t rep = reps[static_cast<size_t>(ri)];
      // Unknown order: the s lost symbols (by group u), then the virtual
      // downloads of unobserved non-helpers (ascending node id).
      std::vector<FieldElement> basis(lambda[failed - 1]);
      for (unsigned j : unobserved) {
        basis.push_back(lambda[j - 1][tuple_digit(rep, j, p.s)]);
      }
      std::vector<FieldElement> rhs(r, ctx.zero());
      for (const auto& dl : from) {
        const FieldElement& lam =
            lambda[dl.helper - 1][tuple_digit(rep, dl.helper, p.s)];
        FieldElement pw = ctx.one();
        for (unsigned t = 0; t < r; ++t) {
          rhs[t] += pw * dl.mu[static_cast<size_t>(ri)];
          pw = pw * lam;
        }
      }
      const auto x = vandermonde_solve(ctx, basis, rhs);
      for (unsigned u = 0; u < p.s; ++u) {
        out.symbols[tuple_with_digit(rep, failed, u, p.s)] = x[u];
      }
    });
  }
  re.rethrow();
  return out;
}

}  // namespace secmsr
