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

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "secmsr/io.hpp"
#include "secmsr/rng.hpp"
#include "secmsr/sim.hpp"

namespace {

using namespace secmsr;
using nlohmann::json;

// Exit codes: 0 success, 1 validation, 2 assertion falsified, 3 I/O.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitAssertion = 2;

/// Tags deriving independent element streams from one seed, so the file
/// payload never aliases the stored randomness stream.
constexpr uint64_t kFileStream = 0x517cc1b727220a95ull;
constexpr uint64_t kMessageStream = 0x2545f4914f6cdd1dull;

struct CommonOpts {
  unsigned n = 4, k = 2, d = 3, l = 1;
  uint64_t seed = 0;
  std::string modulus_hex;
  std::string out;
  std::string format = "text";
  std::string subset;
  // Which flags the user actually passed.
  bool n_given = false, k_given = false, d_given = false, l_given = false;
  bool seed_given = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_params = true) {
  if (with_params) {
    cmd->add_option("--n", o.n, "total nodes")->capture_default_str();
    cmd->add_option("--k", o.k, "collection threshold")->capture_default_str();
    cmd->add_option("--d", o.d, "repair helpers")->capture_default_str();
    cmd->add_option("--l", o.l, "eavesdropped-node bound")
        ->capture_default_str();
  }
  cmd->add_option("--seed", o.seed, "deterministic element stream seed")
      ->capture_default_str();
  cmd->add_option("--modulus", o.modulus_hex,
                  "field modulus override, hex, degree m_total");
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

void record_given(CLI::App* cmd, CommonOpts& o) {
  // Safe lookups: only options registered on this command are queried.
  auto given = [cmd](const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  o.n_given = given("--n");
  o.k_given = given("--k");
  o.d_given = given("--d");
  o.l_given = given("--l");
  o.seed_given = given("--seed");
}

SystemParams make_params(const CommonOpts& o) {
  return SystemParams::create(o.n, o.k, o.d, o.l);
}

PipelineContext make_context(const SystemParams& p, const CommonOpts& o) {
  if (o.modulus_hex.empty()) return PipelineContext::create(p);
  return PipelineContext::create(p, parse_hex_words(o.modulus_hex));
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    io::write_text_file(o.out, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<unsigned> parse_node_list(const std::string& csv) {
  std::vector<unsigned> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty entry in node list");
    size_t pos = 0;
    const unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) {
      throw std::invalid_argument("invalid node number: " + tok);
    }
    out.push_back(static_cast<unsigned>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty node list");
  return out;
}

bool next_combination(std::vector<unsigned>& c, unsigned n) {
  const unsigned l = c.size();
  unsigned i = l;
  while (i-- > 0) {
    if (c[i] < n - (l - 1 - i)) {
      ++c[i];
      for (unsigned j = i + 1; j < l; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<unsigned>> combinations(unsigned n, unsigned size) {
  std::vector<std::vector<unsigned>> out;
  if (size > n) return out;
  std::vector<unsigned> c(size);
  for (unsigned i = 0; i < size; ++i) c[i] = i + 1;
  if (size == 0) {
    out.push_back({});
    return out;
  }
  do {
    out.push_back(c);
  } while (next_combination(c, n));
  return out;
}

std::string join(const std::vector<unsigned>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// ---- params ----

int cmd_params(const CommonOpts& o) {
  const auto p = make_params(o);
  if (!o.modulus_hex.empty() &&
      !poly_is_irreducible(parse_hex_words(o.modulus_hex), p.m_total)) {
    throw std::invalid_argument(
        "modulus must be irreducible of degree m_total");
  }
  if (o.format == "json") {
    json j{{"n", p.n},
           {"k", p.k},
           {"d", p.d},
           {"l", p.l},
           {"s", p.s},
           {"alpha", p.alpha},
           {"beta", p.beta},
           {"m_total", p.m_total},
           {"m_secure", p.m_secure},
           {"m_random", p.m_random},
           {"field_degree", p.m_total}};
    emit(o, dump(j));
  } else {
    std::ostringstream out;
    auto line = [&out](const char* key, uint64_t v) {
      out << key << std::string(14 - std::string(key).size(), ' ') << v
          << "\n";
    };
    line("n", p.n);
    line("k", p.k);
    line("d", p.d);
    line("l", p.l);
    line("s", p.s);
    line("alpha", p.alpha);
    line("beta", p.beta);
    line("m_total", p.m_total);
    line("m_secure", p.m_secure);
    line("m_random", p.m_random);
    line("field_degree", p.m_total);
    emit(o, out.str());
  }
  return kExitOk;
}

// ---- encode ----

int cmd_encode(const CommonOpts& o, const std::string& file_path) {
  const auto p = make_params(o);
  const auto ctx = make_context(p, o);
  const auto doc = io::parse_json(io::read_text_file(file_path));
  const auto sf = io::secure_file_from_json(doc);
  const auto file = io::parse_elements(*ctx.field, sf.file_hex);
  const uint64_t seed = o.seed_given ? o.seed : sf.seed;

  const Codeword c = store_seeded(ctx, file, seed);
  const bool parity_ok = parity_holds(p, ctx.lambda, c);

  const std::string out_path = o.out.empty() ? "codeword.json" : o.out;
  io::write_text_file(out_path, dump(io::codeword_json(ctx, c)));
  std::cout << "codeword " << out_path << "\n"
            << "parity_check " << (parity_ok ? "ok" : "FAILED") << "\n";
  return parity_ok ? kExitOk : kExitAssertion;
}

// ---- retrieve ----

int cmd_retrieve(const CommonOpts& o, const std::string& codeword_path) {
  const auto doc = io::parse_json(io::read_text_file(codeword_path));
  auto loaded = io::codeword_from_json(doc);
  const SystemParams& p = loaded.ctx.params;
  if ((o.n_given && o.n != p.n) || (o.k_given && o.k != p.k) ||
      (o.d_given && o.d != p.d) || (o.l_given && o.l != p.l)) {
    throw std::invalid_argument(
        "given parameters disagree with the codeword file");
  }

  std::vector<unsigned> subset;
  if (o.subset.empty()) {
    for (unsigned j = 1; j <= p.k; ++j) subset.push_back(j);
  } else {
    subset = parse_node_list(o.subset);
  }
  if (subset.size() < p.k) {
    throw std::invalid_argument("need at least k node indices");
  }
  subset.resize(p.k);  // any k of the listed nodes suffice; use the first k
  std::vector<NodeContent> picked;
  for (unsigned j : subset) {
    if (j < 1 || j > p.n) throw std::invalid_argument("node out of range");
    picked.push_back(loaded.codeword.nodes[j - 1]);
  }

  const auto file = retrieve(loaded.ctx, picked);
  if (o.format == "json") {
    json hex = json::array();
    for (const auto& e : file) hex.push_back(e.to_hex());
    emit(o, dump(json{{"file", std::move(hex)}}));
  } else {
    std::ostringstream out;
    for (const auto& e : file) out << e.to_hex() << "\n";
    emit(o, out.str());
  }
  return kExitOk;
}

// ---- simulate ----

int cmd_simulate(const CommonOpts& o, const std::string& scenario_path,
                 const std::string& file_path) {
  const auto sc =
      io::scenario_from_json(io::parse_json(io::read_text_file(scenario_path)));
  const auto p = SystemParams::create(sc.n, sc.k, sc.d, sc.l);
  const auto ctx = make_context(p, o);

  std::vector<FieldElement> file;
  if (!file_path.empty()) {
    const auto sf =
        io::secure_file_from_json(io::parse_json(io::read_text_file(file_path)));
    file = io::parse_elements(*ctx.field, sf.file_hex);
  } else {
    SymbolRng rng(sc.seed ^ kFileStream);
    file = rng.elements(*ctx.field, p.m_secure);
  }

  const SimReport rep = run_scenario(ctx, sc, file);
  const bool ok = rep.all_repairs_exact && rep.downloads_stable &&
                  rep.retrieve_ok && rep.ledger_values_match &&
                  rep.certificate.secret;

  if (o.format == "json") {
    emit(o, dump(io::sim_report_json(ctx, sc, rep)));
  } else {
    std::ostringstream out;
    for (size_t i = 0; i < rep.stages.size(); ++i) {
      const auto& st = rep.stages[i];
      out << "stage " << (i + 1) << " fail=" << st.failed << " helpers="
          << join(st.helpers) << " repair_ok=" << yesno(st.repair_exact)
          << " symbols=" << st.downloaded_symbols << "\n";
    }
    out << "ledger observed_columns=" << rep.eve_observed_columns
        << " rank=" << rep.eve_rank << " leak=" << rep.eve_leak_symbols
        << " values_match=" << yesno(rep.ledger_values_match) << "\n";
    out << "summary repairs_exact=" << yesno(rep.all_repairs_exact)
        << " stable=" << yesno(rep.downloads_stable)
        << " retrieve_ok=" << yesno(rep.retrieve_ok)
        << " secret=" << yesno(rep.certificate.secret) << "\n";
    emit(o, out.str());
  }
  return ok ? kExitOk : kExitAssertion;
}

// ---- analyze ----

int cmd_analyze(const CommonOpts& o, bool grid) {
  const auto start = std::chrono::steady_clock::now();
  const auto p = make_params(o);
  const auto ctx = make_context(p, o);
  const Matrix gen = generator_matrix(p, ctx.lambda);

  std::vector<std::vector<unsigned>> subsets;
  if (!o.subset.empty()) {
    auto e = parse_node_list(o.subset);
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("duplicate node in subset");
    }
    for (unsigned j : e) {
      if (j < 1 || j > p.n) throw std::invalid_argument("node out of range");
    }
    if (e.size() > p.l) {
      throw std::invalid_argument("subset larger than the bound l");
    }
    subsets.push_back(std::move(e));
  } else {
    subsets = combinations(p.n, p.l);
  }

  bool all_ok = true;
  json reports = json::array();
  std::ostringstream text;
  text << "params n=" << p.n << " k=" << p.k << " d=" << p.d << " l=" << p.l
       << " s=" << p.s << " alpha=" << p.alpha << " beta=" << p.beta
       << " m_total=" << p.m_total << "\n";

  for (const auto& e : subsets) {
    uint64_t rank_p = 0, formula = 0, comp_count = 0;
    json sizes = json::array();
    bool rank_ok = true;
    if (!e.empty()) {
      const auto srr = symbol_rank_report(p.n, p.s, e);
      rank_p = srr.rank_direct;
      formula = srr.rank_formula;
      comp_count = srr.component_count;
      rank_ok = srr.consistent && srr.components_uniform;
      for (const auto& comp :
           connected_components(line_hypergraph(p.s, p.n, e))) {
        sizes.push_back(comp.vertices.size());
      }
    }
    const auto cert = verify_secrecy(eve_matrix(ctx, e, gen));
    const bool ok =
        rank_ok && rank_p == formula && cert.secret && cert.rank_er == p.m_random;
    all_ok &= ok;

    reports.push_back(json{{"E", e},
                           {"rank_P", rank_p},
                           {"formula", formula},
                           {"components", {{"count", comp_count},
                                           {"sizes", std::move(sizes)}}},
                           {"secrecy", io::certificate_json(cert)}});
    text << "E={" << join(e) << "} rank_P=" << rank_p
         << " formula=" << formula << " components=" << comp_count
         << " secret=" << yesno(cert.secret)
         << " leak=" << cert.leak_symbols << "\n";
    if (grid && !e.empty()) {
      const auto m = symbol_matrix(p.n, p.s, e);
      text << "P for E={" << join(e) << "} (" << m.rows() << " x " << m.cols()
           << ")\n";
      for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) text << (m.get(r, c) ? '1' : '0');
        text << "\n";
      }
    }
  }

  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  text << "all_ok " << yesno(all_ok) << "\n"
       << "wall_time_ms " << wall << "\n";

  if (o.format == "json") {
    emit(o, dump(json{{"all_ok", all_ok},
                      {"params", io::params_json(p, *ctx.field)},
                      {"reports", std::move(reports)},
                      {"wall_time_ms", wall}}));
  } else {
    emit(o, text.str());
  }
  return all_ok ? kExitOk : kExitAssertion;
}

// ---- verify ----

struct Rational {
  unsigned __int128 num = 0, den = 1;
  void mul(uint64_t x) { num *= x; }
  void div(uint64_t x) { den *= x; }
  bool equals_integer(uint64_t v) const {
    return den != 0 && num % den == 0 && num / den == v;
  }
};

int cmd_verify(const CommonOpts& o, const std::string& inject) {
  const auto p = make_params(o);
  auto ctx = make_context(p, o);
  if (!inject.empty()) {
    if (inject != "lambda-dup") {
      throw std::invalid_argument("unknown fault: " + inject);
    }
    // Duplicate multiplier inside node 1: repairs of node 1 become
    // singular while encode and collection stay consistent.
    ctx.lambda[0][1] = ctx.lambda[0][0];
  }

  SymbolRng file_rng(o.seed ^ kFileStream);
  const auto file = file_rng.elements(*ctx.field, p.m_secure);
  const Codeword stored = store_seeded(ctx, file, o.seed);

  std::vector<std::pair<std::string, bool>> results;
  std::ostringstream detail;
  auto run_suite = [&results, &detail](const std::string& name,
                                       const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail << name << " raised: " << e.what() << "\n";
      ok = false;
    }
    results.emplace_back(name, ok);
  };

  run_suite("capacity", [&] {
    Rational r;
    r.num = p.m_total;
    r.mul(p.k - p.l);
    r.div(p.k);
    for (unsigned i = 0; i < p.l; ++i) {
      r.mul(p.s - 1);
      r.div(p.s);
    }
    return r.equals_integer(secrecy_capacity(p)) &&
           secrecy_capacity(p) == p.m_secure;
  });

  run_suite("mds_collect", [&] {
    if (!parity_holds(p, ctx.lambda, stored)) return false;
    for (const auto& subset : combinations(p.n, p.k)) {
      std::vector<NodeContent> picked;
      for (unsigned j : subset) picked.push_back(stored.nodes[j - 1]);
      if (retrieve(ctx, picked) != file) return false;
    }
    return true;
  });

  run_suite("exact_repair", [&] {
    for (unsigned failed = 1; failed <= p.n; ++failed) {
      std::vector<unsigned> others;
      for (unsigned j = 1; j <= p.n; ++j) {
        if (j != failed) others.push_back(j);
      }
      for (const auto& ix : combinations(p.n - 1, p.d)) {
        std::vector<RepairDownload> from;
        for (unsigned i : ix) {
          from.push_back(
              repair_download(p, stored.nodes[others[i - 1] - 1], failed));
        }
        const auto node = repair(p, ctx.lambda, failed, from);
        if (node.symbols != stored.nodes[failed - 1].symbols) return false;
      }
    }
    return true;
  });

  run_suite("download_stability", [&] {
    Scenario sc;
    sc.n = p.n;
    sc.k = p.k;
    sc.d = p.d;
    sc.l = p.l;
    for (unsigned e = 1; e <= p.l; ++e) sc.eavesdropped.push_back(e);
    sc.seed = o.seed;
    for (unsigned j = 1; j <= p.n; ++j) {
      RepairEvent ev;
      ev.failed = j;
      ev.policy = HelperPolicy::kExplicit;
      for (unsigned h = 1; h <= p.n && ev.helpers.size() < p.d; ++h) {
        if (h != j) ev.helpers.push_back(h);
      }
      sc.events.push_back(ev);
      sc.events.push_back(RepairEvent{j, HelperPolicy::kRoundRobin, {}});
    }
    const auto rep = run_scenario(ctx, sc, file);
    return rep.downloads_stable && rep.all_repairs_exact && rep.retrieve_ok &&
           rep.ledger_values_match;
  });

  run_suite("precode_roundtrip", [&] {
    if (linalg::rank(ctx.moore) != p.m_total) return false;
    SymbolRng rng(o.seed ^ kMessageStream);
    for (int t = 0; t < 10; ++t) {
      const auto msg = rng.elements(*ctx.field, p.m_total);
      if (depcode(ctx.moore, precode(ctx.moore, msg)) != msg) return false;
    }
    return true;
  });

  run_suite("rank_theorem", [&] {
    for (const auto& e : combinations(p.n, p.l)) {
      if (e.empty()) continue;
      const auto srr = symbol_rank_report(p.n, p.s, e);
      if (!srr.consistent || !srr.components_uniform) return false;
    }
    return true;
  });

  const Matrix gen = generator_matrix(p, ctx.lambda);
  run_suite("secrecy", [&] {
    for (const auto& e : combinations(p.n, p.l)) {
      const auto cert = verify_secrecy(eve_matrix(ctx, e, gen));
      if (!cert.secret || cert.rank_er != p.m_random) return false;
    }
    return true;
  });

  run_suite("negative_control", [&] {
    if (p.l == 0) return true;
    std::vector<unsigned> e;
    for (unsigned j = 1; j <= p.l; ++j) e.push_back(j);
    const auto cert = verify_secrecy(eve_matrix(ctx, e, gen, false));
    return !cert.secret && cert.leak_symbols > 0;
  });

  bool overall = true;
  for (const auto& [name, ok] : results) overall &= ok;

  if (o.format == "json") {
    json suites = json::object();
    for (const auto& [name, ok] : results) suites[name] = ok;
    emit(o, dump(json{{"overall", overall},
                      {"params", io::params_json(p, *ctx.field)},
                      {"seed", o.seed},
                      {"suites", std::move(suites)}}));
  } else {
    std::ostringstream out;
    for (const auto& [name, ok] : results) {
      out << name << std::string(20 - name.size(), ' ')
          << (ok ? "PASS" : "FAIL") << "\n";
    }
    out << "overall             " << (overall ? "PASS" : "FAIL") << "\n";
    const std::string d = detail.str();
    if (!d.empty()) out << d;
    emit(o, out.str());
  }
  return overall ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secure regenerating-code toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string file_path, codeword_path, scenario_path, sim_file_path, inject;
  bool grid = false;

  CLI::App* c_params = app.add_subcommand("params", "print the derived sizes");
  add_common(c_params, o);

  CLI::App* c_encode =
      app.add_subcommand("encode", "store a secure file into a codeword");
  add_common(c_encode, o);
  c_encode->add_option("file", file_path, "secure file JSON {file, seed}")
      ->required();

  CLI::App* c_retrieve =
      app.add_subcommand("retrieve", "recover the file from k nodes");
  add_common(c_retrieve, o);
  c_retrieve->add_option("codeword", codeword_path, "codeword JSON")
      ->required();
  c_retrieve->add_option("--subset", o.subset,
                         "comma-separated node list (default: 1..k)");

  CLI::App* c_simulate =
      app.add_subcommand("simulate", "run a failure/repair scenario");
  add_common(c_simulate, o, false);
  c_simulate->add_option("--scenario", scenario_path, "scenario JSON")
      ->required();
  c_simulate->add_option("--file", sim_file_path,
                         "secure file JSON (default: drawn from the seed)");

  CLI::App* c_analyze = app.add_subcommand(
      "analyze", "certify the secrecy theorem over eavesdropper subsets");
  add_common(c_analyze, o);
  c_analyze->add_option("--subset", o.subset,
                        "analyze one eavesdropped subset only");
  c_analyze->add_flag("--grid", grid, "print symbol matrices as 0/1 grids");

  CLI::App* c_verify = app.add_subcommand(
      "verify", "run the full invariant suite at the given parameters");
  add_common(c_verify, o);
  c_verify->add_option("--inject-fault", inject, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (c_params->parsed()) {
      record_given(c_params, o);
      return cmd_params(o);
    }
    if (c_encode->parsed()) {
      record_given(c_encode, o);
      return cmd_encode(o, file_path);
    }
    if (c_retrieve->parsed()) {
      record_given(c_retrieve, o);
      return cmd_retrieve(o, codeword_path);
    }
    if (c_simulate->parsed()) {
      record_given(c_simulate, o);
      return cmd_simulate(o, scenario_path, sim_file_path);
    }
    if (c_analyze->parsed()) {
      record_given(c_analyze, o);
      return cmd_analyze(o, grid);
    }
    if (c_verify->parsed()) {
      record_given(c_verify, o);
      return cmd_verify(o, inject);
    }
  } catch (const io::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitValidation;
}
