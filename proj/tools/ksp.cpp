// Copyright 2026 The ksproofs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ksp: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 resource cap reached.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <openssl/evp.h>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ksp/acceptance.hpp"
#include "ksp/context_system.hpp"
#include "ksp/error.hpp"
#include "ksp/io.hpp"
#include "ksp/ks.hpp"
#include "ksp/parity.hpp"
#include "ksp/search.hpp"
#include "ksp/states.hpp"

namespace {

using nlohmann::json;
using ksp::io::load_system;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Settings {
  std::size_t dense_cap = ksp::kDefaultDenseStateCap;
  std::uint64_t basis_cap = 10'000'000;
  std::size_t kernel_cap = 34;
  std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  bool ascii = false;
  std::string out;
  std::string manifest;
};

/// Everything a run touched, written next to (never inside) the payload.
struct Manifest {
  std::vector<std::string> argv;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

Settings g_settings;
Manifest g_manifest;

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

ksp::ContextSystem input_system(const std::string& path) {
  g_manifest.inputs.push_back(path);
  return load_system(path);
}

/// Writes the payload to --out or stdout.
void emit(const std::string& text) {
  if (g_settings.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  ksp::io::write_text(g_settings.out, text.back() == '\n' ? text : text + "\n");
  g_manifest.outputs.push_back(g_settings.out);
}

void emit(const json& j) { emit(j.dump(2)); }

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "+" || item == "+1" || item == "1") {
      out.push_back(1);
    } else if (item == "-" || item == "-1" || item == "\xE2\x88\x92") {
      out.push_back(-1);
    } else {
      throw ksp::ParseError("eigenvalues must be a comma-separated list of + and -: " + text);
    }
  }
  return out;
}

std::vector<int> signs_or_default(const std::string& text, const ksp::ContextSystem& sys) {
  return text.empty() ? ksp::default_signature(sys.observables().size()) : parse_signs(text);
}

std::vector<std::size_t> parse_one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto q : v) {
    if (q == 0) throw ksp::ParseError("qubits are numbered from 1");
    out.push_back(q - 1);
  }
  return out;
}

ksp::BasisTable table_for(const ksp::ContextSystem& sys) {
  ksp::BasisOptions o;
  o.basis_cap = g_settings.basis_cap;
  auto table = ksp::enumerate_bases(ksp::projectors_of(sys), o);
  if (table.partial) throw ksp::ResourceError("basis enumeration stopped at basis_cap");
  return table;
}

// --- subcommands ------------------------------------------------------------

int cmd_gen(const std::string& family, std::size_t half, const std::string& fixture) {
  if (family == "star") {
    emit(ksp::io::to_json(ksp::build_star_table(half)));
  } else if (family == "fixture") {
    const auto fx = ksp::builtin_fixtures();
    auto it = fx.find(fixture);
    if (it == fx.end()) throw ksp::DomainError("unknown fixture '" + fixture + "'");
    emit(ksp::io::to_json(it->second));
  } else if (family == "list") {
    json names = json::array();
    for (const auto& [name, sys] : ksp::builtin_fixtures()) names.push_back(name);
    emit(names);
  } else if (family == "lifted") {
    const auto fx = ksp::builtin_fixtures();
    auto it = fx.find(fixture);
    if (it == fx.end()) throw ksp::DomainError("unknown fixture '" + fixture + "'");
    emit(ksp::io::to_json(ksp::lift_to_single_qubit(it->second)));
  } else {
    throw ksp::DomainError("gen family must be star, fixture, lifted or list");
  }
  return kOk;
}

int cmd_verify(const std::string& path) {
  const auto sys = input_system(path);
  const auto report = ksp::verify_system(sys);
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back({{"context", v.context}, {"message", v.message}});
  emit(json{{"valid", report.ok()},
            {"violations", violations},
            {"parity_witness", report.ok() && ksp::parity_witness(sys)},
            {"gf2_infeasible", report.ok() && ksp::gf2_infeasible(sys)}});
  return report.ok() ? kOk : kVerificationFailure;
}

int cmd_ghz(const std::string& path, const std::string& eigenvalues) {
  const auto sys = input_system(path);
  const auto sig = signs_or_default(eigenvalues, sys);
  const auto c = ksp::ghz_infeasible(sys, sig);
  emit(json{{"infeasible", c.infeasible},
            {"gf2_infeasible", c.gf2_infeasible},
            {"slots", c.slots},
            {"exhaustive_ran", c.exhaustive_ran},
            {"assignments", c.assignments},
            {"satisfying", c.satisfying},
            {"methods_agree", c.methods_agree}});
  return c.infeasible && c.methods_agree ? kOk : kVerificationFailure;
}

int cmd_multipartite(const std::string& path, std::size_t max_qubits) {
  const auto sys = input_system(path);
  ksp::MultipartiteOptions o;
  o.max_qubits = max_qubits;
  const auto r = ksp::is_genuinely_multipartite(sys, o);
  json j = {{"is_proof", r.is_proof},
            {"genuine", r.genuine},
            {"complete", r.complete},
            {"column_subsets", r.column_subsets},
            {"kernel_vectors", r.kernel_vectors}};
  if (r.witness) {
    std::vector<std::size_t> rows, cols;
    for (auto x : r.witness->rows) rows.push_back(x + 1);
    for (auto x : r.witness->columns) cols.push_back(x + 1);
    j["witness"] = {{"rows", rows}, {"columns", cols}};
  }
  emit(j);
  if (!r.complete) return kResource;
  return r.genuine ? kOk : kVerificationFailure;
}

int cmd_search(const std::string& path, const std::vector<std::size_t>& shape, std::uint64_t budget,
               bool first_only) {
  const auto seed = input_system(path);
  ksp::SearchOptions o;
  o.workers = g_settings.workers;
  o.budget = budget;
  const auto r = ksp::search_completions(seed, shape, o);
  if (first_only) {
    if (r.systems.empty()) throw ksp::DomainError("no completion found");
    emit(ksp::io::to_json(r.systems.front()));
    return kOk;
  }
  json systems = json::array();
  for (const auto& s : r.systems) systems.push_back(ksp::io::to_json(s));
  emit(json{{"systems", systems}, {"partial", r.partial}, {"nodes", r.nodes}});
  return r.partial ? kResource : kOk;
}

ksp::DenseState state_from_input(const std::string& path, const std::string& eigenvalues) {
  const auto j = ksp::io::read_json_file(path);
  g_manifest.inputs.push_back(path);
  if (j.is_array()) return ksp::io::state_from_json(j);
  const auto sys = ksp::io::system_from_json(j);
  const auto r = ksp::joint_eigenstate(sys, signs_or_default(eigenvalues, sys), g_settings.dense_cap);
  if (!r.state) {
    throw ksp::DomainError("eigenvalues leave a " + std::to_string(r.eigenspace_dimension) +
                           "-dimensional eigenspace; no unique state");
  }
  return *r.state;
}

int cmd_state(const std::string& path, const std::string& eigenvalues) {
  const auto sys = input_system(path);
  const auto r = ksp::joint_eigenstate(sys, signs_or_default(eigenvalues, sys), g_settings.dense_cap);
  json j = {{"n", sys.num_qubits()}, {"eigenspace_dimension", r.eigenspace_dimension}};
  if (r.state) {
    j["max_residual"] = r.max_residual;
    j["amplitudes"] = ksp::io::state_to_json(*r.state);
  }
  emit(j);
  return r.state ? kOk : kVerificationFailure;
}

int cmd_bell(const std::string& path, const std::string& eigenvalues, const std::string& pairing) {
  const auto state = state_from_input(path, eigenvalues);
  const auto p = pairing.empty() ? ksp::adjacent_pairing(state.num_qubits()) : ksp::io::parse_pairing(pairing);
  emit(ksp::io::bell_to_json(ksp::bell_decompose(state, p, 1e-10), g_settings.ascii));
  return kOk;
}

int cmd_measure(const std::string& path, const std::string& eigenvalues, const std::vector<std::size_t>& qubits,
                const std::string& outcome, const std::string& reference) {
  const auto state = state_from_input(path, eigenvalues);
  if (outcome.size() != qubits.size()) throw ksp::ParseError("outcome needs one bit per measured qubit");
  std::vector<int> bits;
  for (char c : outcome) {
    if (c != '0' && c != '1') throw ksp::ParseError("outcome must be a bit string");
    bits.push_back(c - '0');
  }
  const auto m = ksp::measure_computational(state, parse_one_based(qubits), bits);
  json j = {{"probability", m.probability}};
  if (m.residual) {
    j["residual"] = ksp::io::state_to_json(*m.residual);
    const auto ref = reference.empty() ? *m.residual : state_from_input(reference, "");
    j["verdict"] = ksp::to_string(ksp::classify_residual(*m.residual, ref));
  } else {
    j["residual"] = nullptr;
  }
  emit(j);
  return kOk;
}

int cmd_projectors(const std::string& path) {
  const auto pool = ksp::projectors_of(input_system(path));
  json list = json::array();
  for (const auto& p : pool.projectors) list.push_back(ksp::io::projector_to_json(p));
  emit(json{{"n", pool.num_qubits}, {"projectors", list}, {"families", pool.families}});
  return kOk;
}

int cmd_bases(const std::string& path) {
  emit(ksp::io::basis_table_to_json(table_for(input_system(path))));
  return kOk;
}

int cmd_census(const std::string& path, bool brute_force, const std::string& catalog) {
  const auto table = table_for(input_system(path));
  ksp::CensusOptions o;
  o.kernel_cap = g_settings.kernel_cap;
  o.workers = g_settings.workers;
  o.keep = catalog.empty() ? 0 : std::numeric_limits<std::size_t>::max();
  const auto census = ksp::enumerate_parity_proofs(table, o);
  std::optional<ksp::TwoPowerReport> two;
  if (!census.partial) two = ksp::check_two_power_h(table, census);
  json j = ksp::io::census_to_json(census, two, g_settings.ascii);
  json hist = json::object();
  for (const auto& [k, v] : census.by_basis_count) hist[std::to_string(k)] = v;
  j["by_basis_count"] = hist;
  j["projectors"] = table.pool.size();
  j["bases"] = table.bases.size();
  j["hybrid"] = table.num_hybrid();
  int code = census.partial ? kResource : kOk;
  if (brute_force) {
    std::vector<std::size_t> all(table.bases.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<std::size_t>> windows;
    if (all.size() <= 20) {
      windows.push_back(all);
    } else {
      std::mt19937_64 rng(1);
      for (int k = 0; k < 4; ++k) {
        std::shuffle(all.begin(), all.end(), rng);
        windows.emplace_back(all.begin(), all.begin() + 20);
        std::sort(windows.back().begin(), windows.back().end());
      }
    }
    json checks = json::array();
    for (const auto& ids : windows) {
      const auto brute = ksp::brute_force_parity_proofs(table, ids);
      const bool agree = brute == ksp::acceptance::detail::kernel_proofs(table, ids);
      checks.push_back({{"bases", ids}, {"proofs", brute.size()}, {"agree", agree}});
      if (!agree) code = kVerificationFailure;
    }
    j["brute_force_check"] = checks;
  }
  if (!catalog.empty()) {
    std::string lines;
    for (const auto& p : census.kept) {
      lines += ksp::io::proof_to_json(table, p, ksp::check_proof(table, p).critical, g_settings.ascii).dump() + "\n";
    }
    ksp::io::write_text(catalog, lines);
    g_manifest.outputs.push_back(catalog);
  }
  emit(j);
  return code;
}

int cmd_symbol(const std::string& proof_path, const std::string& system_path) {
  const auto proof = ksp::io::read_json_file(proof_path);
  g_manifest.inputs.push_back(proof_path);
  const auto table = table_for(input_system(system_path));
  const auto ids = proof.at("bases").get<std::vector<std::size_t>>();
  for (auto b : ids) {
    if (b >= table.bases.size()) throw ksp::DomainError("basis id " + std::to_string(b) + " out of range");
  }
  const auto check = ksp::check_proof(table, ids);
  const auto sym = ksp::proof_symbol(table, ids);
  emit(json{{"symbol", sym.utf8()},
            {"ascii", sym.ascii()},
            {"short", sym.short_form()},
            {"odd", check.odd},
            {"even_incidence", check.even_incidence},
            {"critical", check.critical},
            {"single_drop_critical", check.single_drop_critical}});
  return check.is_parity_proof() ? kOk : kVerificationFailure;
}

int cmd_export_graph(const std::string& path) {
  const auto sys = input_system(path);
  if (sys.contexts().empty()) throw ksp::DomainError("no contexts");
  std::ostringstream dot;
  dot << "graph ks {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < sys.observables().size(); ++i) {
    dot << "  o" << i << " [label=\"" << sys.observable(i).render() << "\"];\n";
  }
  for (std::size_t c = 0; c < sys.contexts().size(); ++c) {
    const auto& ctx = sys.contexts()[c];
    const char* style = ctx.sign < 0 ? "bold" : "solid";
    const char* width = ctx.sign < 0 ? "3" : "1";
    dot << "  subgraph context" << c << " {\n    edge [style=" << style << ", penwidth=" << width
        << ", label=\"" << (ctx.sign < 0 ? "-I" : "+I") << "\"];\n";
    for (std::size_t a = 0; a < ctx.members.size(); ++a) {
      for (std::size_t b = a + 1; b < ctx.members.size(); ++b) {
        dot << "    o" << ctx.members[a] << " -- o" << ctx.members[b] << ";\n";
      }
    }
    dot << "  }\n";
  }
  dot << "}\n";
  emit(dot.str());
  return kOk;
}

int cmd_hierarchy(std::size_t max_half) {
  json rows = json::array();
  for (std::size_t half = 3; half <= max_half; ++half) {
    const auto state = ksp::acceptance::detail::star_state(half);
    const auto reference = ksp::acceptance::detail::star_state(half - 1);
    const auto ref_profile = ksp::entanglement_profile(reference, g_settings.dense_cap);
    std::size_t match = 0, mismatch = 0, zero = 0;
    const std::size_t n = 2 * half;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (int o = 0; o < 4; ++o) {
          const auto m = ksp::measure_computational(state, {a, b}, {o >> 1, o & 1});
          if (!m.residual) {
            ++zero;
            continue;
          }
          const bool same = ksp::profiles_match(ksp::entanglement_profile(*m.residual, g_settings.dense_cap),
                                                ref_profile);
          (same ? match : mismatch)++;
        }
      }
    }
    rows.push_back({{"N", half},
                    {"qubits", n},
                    {"profile_match", match},
                    {"mismatch", mismatch},
                    {"zero_probability", zero}});
  }
  emit(json{{"reference", "eigenstate of the star table on two fewer qubits"}, {"results", rows}});
  return kOk;
}

int cmd_reproduce(const ksp::acceptance::Options& options) {
  std::vector<ksp::acceptance::ClaimResult> results;
  std::printf("%-4s  %-4s  %-48s %10s\n", "id", "", "claim", "seconds");
  results = ksp::acceptance::run_all(options, [](const ksp::acceptance::ClaimResult& r) {
    std::printf("%-4d  %-4s  %-48s %10.3f\n", r.id, ksp::acceptance::to_string(r.status), r.title.c_str(),
                r.seconds);
    for (const auto& line : r.lines) std::printf("            %s\n", line.c_str());
    std::fflush(stdout);
  });
  json report = json::array();
  int failures = 0;
  for (const auto& r : results) {
    failures += r.status == ksp::acceptance::Status::kFail;
    report.push_back({{"id", r.id}, {"claim", r.title}, {"status", ksp::acceptance::to_string(r.status)},
                      {"checks", r.lines}});
  }
  if (!g_settings.out.empty()) emit(report);
  if (failures > 0) {
    std::fprintf(stderr, "%d criteria failed:", failures);
    for (const auto& r : results) {
      if (r.status == ksp::acceptance::Status::kFail) std::fprintf(stderr, " %d", r.id);
    }
    std::fprintf(stderr, "\n");
  }
  return failures == 0 ? kOk : kVerificationFailure;
}

void write_manifest(int argc, char** argv, double seconds, int code) {
  if (g_settings.manifest.empty()) return;
  json inputs = json::object();
  for (const auto& p : g_manifest.inputs) inputs[p] = sha256_file(p);
  json outputs = json::object();
  for (const auto& p : g_manifest.outputs) outputs[p] = sha256_file(p);
  std::vector<std::string> args(argv, argv + argc);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  const json m = {{"command_line", args},
                  {"inputs", inputs},
                  {"results", outputs},
                  {"exit_code", code},
                  {"wall_time_seconds", seconds},
                  {"finished_at", stamp},
                  {"versions",
                   {{"ksp", "0.1.0"},
                    {"compiler", __VERSION__},
                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION)},
                    {"boost", BOOST_LIB_VERSION}}},
                  {"settings",
                   {{"dense_cap", g_settings.dense_cap},
                    {"basis_cap", g_settings.basis_cap},
                    {"kernel_cap", g_settings.kernel_cap},
                    {"workers", g_settings.workers}}}};
  ksp::io::write_text(g_settings.manifest, m.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kochen-Specker and GHZ proofs over the N-qubit Pauli group"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file setting dense_cap, basis_cap, kernel_cap, workers");
  app.add_option("--dense-cap,--dense_cap", g_settings.dense_cap, "largest qubit count for dense states");
  app.add_option("--basis-cap,--basis_cap", g_settings.basis_cap, "largest basis table");
  app.add_option("--kernel-cap,--kernel_cap", g_settings.kernel_cap, "largest kernel dimension enumerated");
  app.add_option("--workers", g_settings.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--ascii", g_settings.ascii, "ASCII symbols and Bell labels");
  app.add_option("-o,--out", g_settings.out, "write the result payload to this file");
  app.add_option("--manifest", g_settings.manifest, "write a run manifest to this file");

  std::string file, eigenvalues, pairing, outcome, reference, catalog, family, fixture, system;
  std::size_t half = 2, max_qubits = 10, max_half = 6;
  std::uint64_t budget = 200'000'000;
  std::vector<std::size_t> shape, qubits;
  std::vector<int> only;
  bool brute_force = false;
  bool first_only = false;

  auto* gen = app.add_subcommand("gen", "generate a system: star --N k | fixture NAME | lifted NAME | list");
  gen->add_option("family", family, "star, fixture, lifted or list")->required();
  gen->add_option("name", fixture, "fixture name");
  gen->add_option("--N", half, "half the qubit count for star tables")->check(CLI::Range(2, 31));

  auto* verify = app.add_subcommand("verify", "check commutation and product signs of every context");
  verify->add_option("file", file)->required();

  auto* ghz = app.add_subcommand("ghz-check", "single-qubit value infeasibility of a GHZ table");
  ghz->add_option("file", file)->required();
  ghz->add_option("--eigenvalues", eigenvalues, "e.g. +,+,+,+,- (default: last row -1)");

  auto* multi = app.add_subcommand("multipartite", "search for proper sub-table proofs");
  multi->add_option("file", file)->required();
  multi->add_option("--max-qubits", max_qubits);

  auto* search = app.add_subcommand("search-complete", "complete a seed system with contexts of given sizes");
  search->add_option("file", file)->required();
  search->add_option("--shape", shape, "context sizes, e.g. 3,3,3,3")->delimiter(',')->required();
  search->add_option("--budget", budget, "search node budget");
  search->add_flag("--first", first_only, "write only the first canonical system");

  auto* state = app.add_subcommand("state", "joint eigenstate of a single-context system");
  state->add_option("file", file)->required();
  state->add_option("--eigenvalues", eigenvalues);

  auto* bell = app.add_subcommand("bell", "Bell-pair decomposition of a state or system eigenstate");
  bell->add_option("file", file, "system or state JSON")->required();
  bell->add_option("--eigenvalues", eigenvalues);
  bell->add_option("--pairing", pairing, "e.g. 1-2,3-4 (default adjacent pairs)");

  auto* measure = app.add_subcommand("measure", "computational-basis measurement of some qubits");
  measure->add_option("file", file, "system or state JSON")->required();
  measure->add_option("--eigenvalues", eigenvalues);
  measure->add_option("--qubits", qubits, "1-based, e.g. 1,2")->delimiter(',')->required();
  measure->add_option("--outcome", outcome, "bit string, e.g. 01")->required();
  measure->add_option("--reference", reference, "state or system to compare the residual with");

  auto* projectors = app.add_subcommand("projectors", "eigenspace projectors of every context");
  projectors->add_option("file", file)->required();

  auto* bases = app.add_subcommand("bases", "pure and hybrid basis table");
  bases->add_option("file", file)->required();

  auto* census = app.add_subcommand("parity-census", "critical parity proofs of the basis table");
  census->add_option("file", file)->required();
  census->add_flag("--brute-force-check", brute_force, "cross-check on sub-tables of at most 20 bases");
  census->add_option("--catalog", catalog, "write every proof as JSON lines to this file");

  auto* symbol = app.add_subcommand("symbol", "symbol and checks for one proof");
  symbol->add_option("proof", file, "JSON with a \"bases\" list")->required();
  symbol->add_option("--system", system, "system the basis ids refer to")->required();

  auto* graph = app.add_subcommand("export-graph", "DOT graph of observables and contexts");
  graph->add_option("file", file)->required();

  auto* hierarchy = app.add_subcommand("hierarchy", "two-qubit measurement residuals of star eigenstates");
  hierarchy->add_option("--max-N", max_half)->check(CLI::Range(3, 7));

  ksp::acceptance::Options acc;
  auto* reproduce = app.add_subcommand("reproduce-paper", "run the acceptance suite");
  reproduce->add_option("--max-qubits", acc.max_qubits);
  reproduce->add_option("--only", only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (*gen) code = cmd_gen(family, half, fixture);
    else if (*verify) code = cmd_verify(file);
    else if (*ghz) code = cmd_ghz(file, eigenvalues);
    else if (*multi) code = cmd_multipartite(file, max_qubits);
    else if (*search) code = cmd_search(file, shape, budget, first_only);
    else if (*state) code = cmd_state(file, eigenvalues);
    else if (*bell) code = cmd_bell(file, eigenvalues, pairing);
    else if (*measure) code = cmd_measure(file, eigenvalues, qubits, outcome, reference);
    else if (*projectors) code = cmd_projectors(file);
    else if (*bases) code = cmd_bases(file);
    else if (*census) code = cmd_census(file, brute_force, catalog);
    else if (*symbol) code = cmd_symbol(file, system);
    else if (*graph) code = cmd_export_graph(file);
    else if (*hierarchy) code = cmd_hierarchy(max_half);
    else if (*reproduce) {
      acc.workers = g_settings.workers;
      acc.ascii = g_settings.ascii;
      acc.only.insert(only.begin(), only.end());
      code = cmd_reproduce(acc);
    }
  } catch (const ksp::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    code = kResource;
  } catch (const ksp::InconsistencyError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    code = kVerificationFailure;
  } catch (const ksp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  }
  write_manifest(argc, argv, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), code);
  return code;
}
