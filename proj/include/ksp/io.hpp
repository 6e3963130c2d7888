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

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ksp/context_system.hpp"
#include "ksp/error.hpp"
#include "ksp/parity.hpp"
#include "ksp/pauli.hpp"
#include "ksp/states.hpp"

namespace ksp::io {

using nlohmann::json;

// --- context systems --------------------------------------------------------

inline json to_json(const ContextSystem& sys) {
  json obs = json::array();
  for (const auto& w : sys.observables()) obs.push_back(w.render());
  json ctx = json::array();
  for (const auto& c : sys.contexts()) ctx.push_back({{"members", c.members}, {"sign", c.sign}});
  return {{"n", sys.num_qubits()}, {"observables", obs}, {"contexts", ctx}};
}

inline ContextSystem system_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("observables") || !j.contains("contexts")) {
      throw ParseError("system document needs \"n\", \"observables\" and \"contexts\"", 0);
    }
    const auto n = j.at("n").get<std::size_t>();
    std::vector<PauliWord> observables;
    for (const auto& o : j.at("observables")) observables.push_back(parse_word(o.get<std::string>()));
    std::vector<Context> contexts;
    for (const auto& c : j.at("contexts")) {
      Context ctx;
      ctx.members = c.at("members").get<std::vector<std::size_t>>();
      ctx.sign = c.at("sign").get<int>();
      contexts.push_back(std::move(ctx));
    }
    return ContextSystem(n, std::move(observables), std::move(contexts));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed system document: ") + e.what(), 0);
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

/// Loads a system file; every failure names the file.
inline ContextSystem load_system(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return system_from_json(j);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// --- states -----------------------------------------------------------------

inline json state_to_json(const DenseState& s) {
  json a = json::array();
  for (const auto& c : s.amplitudes()) a.push_back({c.real(), c.imag()});
  return a;
}

inline DenseState state_from_json(const json& j) {
  Amplitudes amps;
  for (const auto& p : j) amps.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < amps.size()) ++n;
  return DenseState::from_amplitudes(n, std::move(amps));
}

inline std::string bell_term_label(const std::vector<BellLabel>& labels, bool ascii = false) {
  std::string s;
  for (auto l : labels) s += bell_name(l, ascii);
  return s;
}

inline json bell_to_json(const BellDecomposition& d, bool ascii = false) {
  json pairing = json::array();
  for (const auto& [a, b] : d.pairing) pairing.push_back({a + 1, b + 1});
  json terms = json::object();
  for (const auto& [labels, c] : d.coefficients) terms[bell_term_label(labels, ascii)] = {c.real(), c.imag()};
  return {{"pairing", pairing}, {"terms", terms}};
}

/// Parses "1-2,3-4" (1-based) into a pairing.
inline Pairing parse_pairing(const std::string& text) {
  Pairing p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw ParseError("pair must look like a-b: " + item, 0);
    try {
      const auto a = std::stoul(item.substr(0, dash));
      const auto b = std::stoul(item.substr(dash + 1));
      if (a == 0 || b == 0) throw ParseError("qubits are numbered from 1", 0);
      p.emplace_back(a - 1, b - 1);
    } catch (const std::logic_error&) {
      throw ParseError("pair must look like a-b: " + item, 0);
    }
  }
  return p;
}

// --- parity -----------------------------------------------------------------

inline json proof_to_json(const BasisTable& table, const std::vector<std::size_t>& ids, bool critical,
                          bool ascii = false) {
  const auto sym = proof_symbol(table, ids);
  return {{"bases", ids}, {"symbol", ascii ? sym.ascii() : sym.utf8()}, {"critical", critical}};
}

inline json census_to_json(const ProofCensus& census, const std::optional<TwoPowerReport>& two_power,
                           bool ascii = false) {
  json types = json::array();
  for (const auto& [sym, count] : census.by_symbol) {
    types.push_back({{"symbol", ascii ? sym.ascii() : sym.utf8()}, {"count", count}});
  }
  json out = {{"total", census.total}, {"types", types}, {"kernel_dimension", census.kernel_dimension},
              {"partial", census.partial}};
  if (two_power && two_power->half_hybrid) {
    out["H"] = *two_power->half_hybrid;
    out["two_power_H_holds"] = two_power->holds;
  } else {
    out["H"] = nullptr;
    out["two_power_H_holds"] = false;
  }
  return out;
}

inline json projector_to_json(const StabilizerProjector& p) {
  json gens = json::array();
  for (const auto& g : p.group.generators()) gens.push_back(g.render());
  return {{"generators", gens}, {"rank", p.rank}, {"contexts", p.contexts}};
}

inline json basis_table_to_json(const BasisTable& table) {
  json bases = json::array();
  for (const auto& b : table.bases) {
    bases.push_back({{"projectors", b.projectors}, {"kind", b.kind == BasisKind::kPure ? "pure" : "hybrid"}});
  }
  return {{"projectors", table.pool.size()},
          {"pure", table.num_pure()},
          {"hybrid", table.num_hybrid()},
          {"saturated", is_saturated(table)},
          {"partial", table.partial},
          {"bases", bases}};
}

}  // namespace ksp::io
