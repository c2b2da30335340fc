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

#include "secmsr/io.hpp"

#include <fstream>
#include <sstream>

namespace secmsr::io {

using nlohmann::json;

json params_json(const SystemParams& p, const FieldContext& f) {
  return json{{"n", p.n},
              {"k", p.k},
              {"d", p.d},
              {"l", p.l},
              {"m", p.m_total},
              {"modulus_hex", f.modulus_hex()}};
}

json codeword_json(const PipelineContext& ctx, const Codeword& c) {
  json nodes = json::array();
  for (const NodeContent& node : c.nodes) {
    json symbols = json::array();
    for (const FieldElement& e : node.symbols) symbols.push_back(e.to_hex());
    nodes.push_back(std::move(symbols));
  }
  return json{{"nodes", std::move(nodes)},
              {"params", params_json(ctx.params, *ctx.field)}};
}

LoadedCodeword codeword_from_json(const json& j) {
  const json& pj = j.at("params");
  const auto p =
      SystemParams::create(pj.at("n").get<unsigned>(), pj.at("k").get<unsigned>(),
                           pj.at("d").get<unsigned>(), pj.at("l").get<unsigned>());
  if (pj.at("m").get<uint64_t>() != p.m_total) {
    throw std::invalid_argument("field degree does not match the parameters");
  }
  auto ctx = PipelineContext::create(
      p, parse_hex_words(pj.at("modulus_hex").get<std::string>()));

  const json& nodes = j.at("nodes");
  if (!nodes.is_array() || nodes.size() != p.n) {
    throw std::invalid_argument("codeword must list exactly n nodes");
  }
  Codeword c;
  for (unsigned i = 0; i < p.n; ++i) {
    const json& symbols = nodes.at(i);
    if (!symbols.is_array() || symbols.size() != p.alpha) {
      throw std::invalid_argument("node must hold exactly alpha symbols");
    }
    NodeContent node{i + 1, {}};
    node.symbols.reserve(p.alpha);
    for (const json& s : symbols) {
      node.symbols.push_back(ctx.field->from_hex(s.get<std::string>()));
    }
    c.nodes.push_back(std::move(node));
  }
  return LoadedCodeword{std::move(ctx), std::move(c)};
}

json secure_file_json(const std::vector<FieldElement>& file, uint64_t seed) {
  json hex = json::array();
  for (const FieldElement& e : file) hex.push_back(e.to_hex());
  return json{{"file", std::move(hex)}, {"seed", seed}};
}

SecureFileData secure_file_from_json(const json& j) {
  SecureFileData out;
  out.file_hex = j.at("file").get<std::vector<std::string>>();
  out.seed = j.at("seed").get<uint64_t>();
  return out;
}

std::vector<FieldElement> parse_elements(const FieldContext& f,
                                         const std::vector<std::string>& hex) {
  std::vector<FieldElement> out;
  out.reserve(hex.size());
  for (const std::string& h : hex) out.push_back(f.from_hex(h));
  return out;
}

json scenario_json(const Scenario& sc) {
  json stages = json::array();
  for (const RepairEvent& ev : sc.events) {
    json stage{{"fail", ev.failed}};
    switch (ev.policy) {
      case HelperPolicy::kExplicit:
        stage["helpers"] = ev.helpers;
        break;
      case HelperPolicy::kRandom:
        stage["policy"] = "random";
        break;
      case HelperPolicy::kRoundRobin:
        stage["policy"] = "round_robin";
        break;
    }
    stages.push_back(std::move(stage));
  }
  return json{{"E", sc.eavesdropped},
              {"params", {{"n", sc.n}, {"k", sc.k}, {"d", sc.d}, {"l", sc.l}}},
              {"seed", sc.seed},
              {"stages", std::move(stages)}};
}

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  const json& pj = j.at("params");
  sc.n = pj.at("n").get<unsigned>();
  sc.k = pj.at("k").get<unsigned>();
  sc.d = pj.at("d").get<unsigned>();
  sc.l = pj.at("l").get<unsigned>();
  sc.eavesdropped = j.at("E").get<std::vector<unsigned>>();
  sc.seed = j.at("seed").get<uint64_t>();
  for (const json& stage : j.at("stages")) {
    RepairEvent ev;
    ev.failed = stage.at("fail").get<unsigned>();
    const bool has_helpers = stage.contains("helpers");
    const bool has_policy = stage.contains("policy");
    if (has_helpers == has_policy) {
      throw std::invalid_argument(
          "each stage needs exactly one of helpers or policy");
    }
    if (has_helpers) {
      ev.policy = HelperPolicy::kExplicit;
      ev.helpers = stage.at("helpers").get<std::vector<unsigned>>();
    } else {
      const auto name = stage.at("policy").get<std::string>();
      if (name == "random") {
        ev.policy = HelperPolicy::kRandom;
      } else if (name == "round_robin") {
        ev.policy = HelperPolicy::kRoundRobin;
      } else {
        throw std::invalid_argument("unknown helper policy: " + name);
      }
    }
    sc.events.push_back(std::move(ev));
  }
  return sc;
}

json certificate_json(const SecrecyCertificate& c) {
  return json{{"rank_t", c.rank_t},
              {"rank_er", c.rank_er},
              {"m_random", c.m_random},
              {"leak_symbols", c.leak_symbols},
              {"secret", c.secret},
              {"leak_le_randomness", c.leak_le_randomness},
              {"randomness_recoverable", c.randomness_recoverable}};
}

json sim_report_json(const PipelineContext& ctx, const Scenario& sc,
                     const SimReport& r) {
  const uint64_t symbol_bytes = (ctx.field->degree() + 7) / 8;
  json stages = json::array();
  for (const StageReport& st : r.stages) {
    stages.push_back(json{{"fail", st.failed},
                          {"helpers", st.helpers},
                          {"repair_ok", st.repair_exact},
                          {"bytes_downloaded", st.downloaded_symbols * symbol_bytes}});
  }
  json ledger{{"observed_columns", r.eve_observed_columns},
              {"rank", r.eve_rank},
              {"leak_symbols", r.eve_leak_symbols},
              {"values_match", r.ledger_values_match},
              {"downloads_stable", r.downloads_stable},
              {"all_repairs_exact", r.all_repairs_exact},
              {"retrieve_ok", r.retrieve_ok}};
  return json{{"E", sc.eavesdropped},
              {"ledger_summary", std::move(ledger)},
              {"params", params_json(ctx.params, *ctx.field)},
              {"per_stage", std::move(stages)},
              {"secrecy_certificate", certificate_json(r.certificate)},
              {"seed", sc.seed}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("read failure: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw io_error("write failure: " + path);
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw io_error("malformed JSON document");
  return j;
}

}  // namespace secmsr::io
