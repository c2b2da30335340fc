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

#include "secmsr/secrecy.hpp"

namespace secmsr {

enum class HelperPolicy { kExplicit, kRandom, kRoundRobin };

struct RepairEvent {
  unsigned failed = 0;
  HelperPolicy policy = HelperPolicy::kExplicit;
  /// Used only by kExplicit: exactly d distinct helpers, none failed.
  std::vector<unsigned> helpers;
};

/// A storage lifetime to simulate: which nodes an eavesdropper watches,
/// the randomness seed, and the failure/repair schedule.  kRandom helper
/// picks are drawn from a policy stream derived from the seed, so a
/// scenario is a complete, replayable description.
struct Scenario {
  unsigned n = 0, k = 0, d = 0, l = 0;
  std::vector<unsigned> eavesdropped;  // at most l nodes
  uint64_t seed = 0;
  std::vector<RepairEvent> events;
};

struct StageReport {
  unsigned failed = 0;
  std::vector<unsigned> helpers;
  bool repair_exact = false;
  uint64_t downloaded_symbols = 0;
};

struct SimReport {
  std::vector<StageReport> stages;
  bool all_repairs_exact = false;
  /// Repeated (failed, helper) pairs produced byte-identical downloads.
  bool downloads_stable = false;
  /// A k-subset retrieve after all repairs returned the original file.
  bool retrieve_ok = false;
  uint64_t total_downloaded_symbols = 0;

  /// Accounting of what the eavesdropper actually saw in this run.
  uint64_t eve_observed_columns = 0;
  uint64_t eve_rank = 0;
  uint64_t eve_leak_symbols = 0;
  /// Observed values equal message * T for the observed functionals.
  bool ledger_values_match = false;
  /// Worst-case lifetime certificate for the scenario's eavesdropped set.
  SecrecyCertificate certificate;
};

/// Runs the schedule against a fresh codeword of `file` and checks every
/// invariant on the way: exact repair, download stability, retrievability,
/// and the eavesdropper ledger against the algebraic view matrix.
SimReport run_scenario(const PipelineContext& ctx, const Scenario& sc,
                       const std::vector<FieldElement>& file);

}  // namespace secmsr
