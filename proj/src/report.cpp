// Copyright 2026 The OPAF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opaf/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace opaf {

ProtocolParams RunConfig::resolve_params() const {
  ProtocolParams p = ProtocolParams::defaults(fn, s);
  if (sprime_offset >= 0) p.s_prime = s + sprime_offset;
  if (l > 0) p.l = l;
  if (bw_o > 0) p.bw_o = bw_o;
  p.n_bits = n_bits;
  return p;
}

u64 config_hash(const RunConfig& cfg) {
  std::ostringstream os;
  const ProtocolParams p = cfg.resolve_params();
  os << cfg.cmd << '|' << fn_name(cfg.fn) << '|' << p.s << '|' << p.s_prime
     << '|' << p.l << '|' << p.bw_o << '|' << p.n_bits << '|'
     << (cfg.backend == BackendKind::IdealDealer ? "ideal" : "beaver") << '|'
     << cfg.rec_iterative << '|' << cfg.batch << '|' << cfg.seed;
  u64 h = 0xcbf29ce484222325ull;
  for (char c : os.str()) {
    h ^= static_cast<u8>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

nlohmann::json ledger_json(const CostLedger& led) {
  nlohmann::json j;
  j["bits_sent"] = led.bits_sent;
  j["messages"] = led.messages;
  j["rounds"] = led.rounds;
  j["domain_clamps"] = led.domain_clamps;
  j["invocations"] = led.invocations;
  return j;
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::json j;
  j["config"]["cmd"] = cfg.cmd;
  j["config"]["fn"] = fn_name(cfg.fn);
  const ProtocolParams p = cfg.resolve_params();
  j["config"]["s"] = p.s;
  j["config"]["sprime"] = p.s_prime;
  j["config"]["l"] = p.l;
  j["config"]["bw_out"] = p.bw_o;
  j["config"]["n_bits"] = p.n_bits;
  j["config"]["backend"] =
      cfg.backend == BackendKind::IdealDealer ? "ideal" : "beaver";
  j["config"]["rec_iterative"] = cfg.rec_iterative;
  j["config"]["batch"] = cfg.batch;
  j["config"]["seed"] = cfg.seed;
  j["config"]["threads"] = cfg.threads;
  j["config"]["transport"] = cfg.transport;
  j["config"]["config_hash"] = cfg_hash;
  if (max_ulp) j["results"]["max_ulp"] = *max_ulp;
  if (mean_ulp) j["results"]["mean_ulp"] = *mean_ulp;
  if (!histogram.empty()) {
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [u, n] : histogram) h[std::to_string(u)] = n;
    j["results"]["ulp_histogram"] = h;
  }
  j["results"]["domain_size"] = domain_size;
  j["results"]["ledger"] = ledger_json(ledger);
  j["results"]["model_kb_per_instance"] = model_kb_per_instance;
  j["results"]["wire_bytes_per_instance"] = wire_bytes_per_instance;
  j["results"]["rounds_per_instance"] = rounds_per_instance;
  j["results"]["wall_ms"] = wall_ms;
  if (!note.empty()) j["results"]["note"] = note;
  return j.dump(2);
}

const char* Report::csv_header() {
  return "cmd,fn,s,sprime,l,bw_out,n_bits,backend,batch,seed,config_hash,"
         "max_ulp,mean_ulp,domain_size,model_bits,model_kb_per_instance,"
         "wire_bytes_per_instance,rounds_per_instance,invocations,wall_ms,"
         "note";
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << csv_header() << '\n';
  const ProtocolParams p = cfg.resolve_params();
  os << cfg.cmd << ',' << fn_name(cfg.fn) << ',' << p.s << ',' << p.s_prime
     << ',' << p.l << ',' << p.bw_o << ',' << p.n_bits << ','
     << (cfg.backend == BackendKind::IdealDealer ? "ideal" : "beaver") << ','
     << cfg.batch << ',' << cfg.seed << ',' << cfg_hash << ',';
  if (max_ulp) os << *max_ulp;
  os << ',';
  if (mean_ulp) os << *mean_ulp;
  os << ',' << domain_size << ',' << ledger.bits_sent << ','
     << model_kb_per_instance << ',' << wire_bytes_per_instance << ','
     << rounds_per_instance << ',';
  bool first = true;
  for (const auto& [name, n] : ledger.invocations) {
    if (!first) os << ';';
    os << name << ':' << n;
    first = false;
  }
  os << ',' << wall_ms << ',' << note << '\n';
  return os.str();
}

void Report::emit() const {
  const std::string body = cfg.format == "json" ? to_json() : to_csv();
  if (cfg.report_path.empty()) {
    std::cout << body << std::endl;
    return;
  }
  std::ofstream out(cfg.report_path);
  if (!out) throw std::runtime_error("cannot write " + cfg.report_path);
  out << body;
}

}  // namespace opaf
