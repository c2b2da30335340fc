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

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "secmsr/sim.hpp"

namespace secmsr::io {

/// File-system or JSON-syntax failure, as opposed to semantic validation
/// errors which surface as std::invalid_argument.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {d, k, l, m, modulus_hex, n}: everything needed to rebuild the context.
/// nlohmann's object keeps keys sorted, so every document here serializes
/// byte-identically across runs.
nlohmann::json params_json(const SystemParams& p, const FieldContext& f);

/// Codeword document: {nodes: [[hex x alpha] x n], params}.  Symbols are
/// fixed-width hex in ascending index order.
nlohmann::json codeword_json(const PipelineContext& ctx, const Codeword& c);

struct LoadedCodeword {
  PipelineContext ctx;
  Codeword codeword;
};
/// Rebuilds the pipeline context from the embedded params and modulus and
/// parses the node contents against it.
LoadedCodeword codeword_from_json(const nlohmann::json& j);

/// Input payload: {file: [hex x m_secure], seed}.
nlohmann::json secure_file_json(const std::vector<FieldElement>& file,
                                uint64_t seed);
struct SecureFileData {
  std::vector<std::string> file_hex;
  uint64_t seed = 0;
};
SecureFileData secure_file_from_json(const nlohmann::json& j);
std::vector<FieldElement> parse_elements(const FieldContext& f,
                                         const std::vector<std::string>& hex);

/// Scenario document: {events: [{fail, helpers | policy}], eavesdropped,
/// params: {d, k, l, n}, seed}.
nlohmann::json scenario_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::json certificate_json(const SecrecyCertificate& c);

/// Simulation report: {ledger_summary, params, per_stage, secrecy_certificate,
/// seed}.  Embeds the config for replay.
nlohmann::json sim_report_json(const PipelineContext& ctx, const Scenario& sc,
                               const SimReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Parses a JSON document; malformed input raises io_error.
nlohmann::json parse_json(const std::string& text);

}  // namespace secmsr::io
