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

#include "secmsr/sim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "secmsr/rng.hpp"

namespace secmsr {
namespace {

/// Keeps helper picks out of the randomness stream so adding events never
/// changes the stored codeword.
constexpr uint64_t kPolicyStream = 0x9e3779b97f4a7c15ull;

std::vector<unsigned> pick_random_helpers(const SystemParams& p,
                                          unsigned failed, SymbolRng& rng) {
  std::vector<unsigned> pool;
  pool.reserve(p.n - 1);
  for (unsigned j = 1; j <= p.n; ++j) {
    if (j != failed) pool.push_back(j);
  }
  for (unsigned i = 0; i < p.d; ++i) {
    const uint64_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(p.d);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<unsigned> pick_round_robin_helpers(const SystemParams& p,
                                               unsigned failed,
                                               unsigned& cursor) {
  std::vector<unsigned> helpers;
  helpers.reserve(p.d);
  unsigned j = cursor;
  while (helpers.size() < p.d) {
    if (j != failed) helpers.push_back(j);
    j = j % p.n + 1;
  }
  cursor = j;
  std::sort(helpers.begin(), helpers.end());
  return helpers;
}

std::vector<unsigned> resolve_helpers(const SystemParams& p,
                                      const RepairEvent& ev, SymbolRng& rng,
                                      unsigned& rr_cursor) {
  if (ev.failed < 1 || ev.failed > p.n) {
    throw std::invalid_argument("failed node out of range");
  }
  switch (ev.policy) {
    case HelperPolicy::kRandom:
      return pick_random_helpers(p, ev.failed, rng);
    case HelperPolicy::kRoundRobin:
      return pick_round_robin_helpers(p, ev.failed, rr_cursor);
    case HelperPolicy::kExplicit:
      break;
  }
  if (ev.helpers.size() != p.d) {
    throw std::invalid_argument("explicit policy needs exactly d helpers");
  }
  std::set<unsigned> seen;
  for (unsigned h : ev.helpers) {
    if (h < 1 || h > p.n || h == ev.failed) {
      throw std::invalid_argument("bad helper node");
    }
    if (!seen.insert(h).second) {
      throw std::invalid_argument("duplicate helper node");
    }
  }
  return ev.helpers;
}

}  // namespace

SimReport run_scenario(const PipelineContext& ctx, const Scenario& sc,
                       const std::vector<FieldElement>& file) {
  const SystemParams& p = ctx.params;
  if (sc.n != p.n || sc.k != p.k || sc.d != p.d || sc.l != p.l) {
    throw std::invalid_argument("scenario parameters do not match context");
  }
  std::set<unsigned> eve_nodes;
  for (unsigned e : sc.eavesdropped) {
    if (e < 1 || e > p.n) throw std::invalid_argument("node out of range");
    if (!eve_nodes.insert(e).second) {
      throw std::invalid_argument("duplicate eavesdropped node");
    }
  }
  if (eve_nodes.size() > p.l) {
    throw std::invalid_argument("more eavesdropped nodes than the bound l");
  }

  const Codeword original = store_seeded(ctx, file, sc.seed);
  Codeword current = original;

  SymbolRng policy_rng(sc.seed ^ kPolicyStream);
  unsigned rr_cursor = 1;

  SimReport report;
  report.all_repairs_exact = true;
  report.downloads_stable = true;

  // First download seen per (failed, helper) pair; repeats must match it.
  std::map<std::pair<unsigned, unsigned>, std::vector<FieldElement>> stable;
  // Downloads the eavesdropper observed, keyed (helper, receiver).
  std::map<std::pair<unsigned, unsigned>, std::vector<FieldElement>> ledger;

  for (size_t ei = 0; ei < sc.events.size(); ++ei) {
    const RepairEvent& ev = sc.events[ei];
    std::vector<unsigned> helpers;
    try {
      helpers = resolve_helpers(p, ev, policy_rng, rr_cursor);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("stage " + std::to_string(ei + 1) + ": " +
                                  e.what());
    }

    StageReport stage;
    stage.failed = ev.failed;
    stage.helpers = helpers;
    stage.downloaded_symbols = uint64_t{p.d} * p.beta;

    std::vector<RepairDownload> from;
    from.reserve(helpers.size());
    for (unsigned h : helpers) {
      from.push_back(repair_download(p, current.nodes[h - 1], ev.failed));
      const auto key = std::make_pair(ev.failed, h);
      auto [it, fresh] = stable.emplace(key, from.back().mu);
      if (!fresh && it->second != from.back().mu) {
        report.downloads_stable = false;
      }
      if (eve_nodes.count(ev.failed)) {
        ledger.emplace(std::make_pair(h, ev.failed), from.back().mu);
      }
    }

    const NodeContent repaired = repair(p, ctx.lambda, ev.failed, from);
    stage.repair_exact =
        repaired.symbols == original.nodes[ev.failed - 1].symbols;
    report.all_repairs_exact &= stage.repair_exact;
    current.nodes[ev.failed - 1] = repaired;

    report.total_downloaded_symbols += stage.downloaded_symbols;
    report.stages.push_back(std::move(stage));
  }

  {
    std::vector<NodeContent> subset(current.nodes.begin(),
                                    current.nodes.begin() + p.k);
    report.retrieve_ok = retrieve(ctx, subset) == file;
  }

  const Matrix gen = generator_matrix(p, ctx.lambda);
  const std::vector<unsigned> eve_list(eve_nodes.begin(), eve_nodes.end());

  std::vector<std::pair<unsigned, unsigned>> observed;
  observed.reserve(ledger.size());
  for (const auto& [key, mu] : ledger) observed.push_back(key);

  const EveMatrix seen = eve_view(ctx, eve_list, observed, gen);
  report.eve_observed_columns = seen.t.cols();
  const SecrecyCertificate run_cert = verify_secrecy(seen);
  report.eve_rank = run_cert.rank_t;
  report.eve_leak_symbols = run_cert.leak_symbols;

  // Cross-check the algebraic view against the symbols actually seen.
  std::vector<FieldElement> message = file;
  {
    SymbolRng rng(sc.seed);
    auto randomness = rng.elements(*ctx.field, p.m_random);
    message.insert(message.end(), randomness.begin(), randomness.end());
  }
  const auto view = linalg::apply_left(seen.t, message);
  report.ledger_values_match = true;
  for (size_t c = 0; c < seen.columns.size(); ++c) {
    const EveColumn& col = seen.columns[c];
    const FieldElement& expect =
        col.kind == EveColumn::Kind::kStored
            ? original.nodes[col.node - 1].symbols[col.index]
            : ledger.at({col.helper, col.node})[col.index];
    if (!(view[c] == expect)) report.ledger_values_match = false;
  }

  report.certificate = verify_secrecy(eve_matrix(ctx, eve_list, gen));
  return report;
}

}  // namespace secmsr
