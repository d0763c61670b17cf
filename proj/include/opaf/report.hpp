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

#pragma once

#include <optional>
#include <string>

#include "opaf/sweep.hpp"

namespace opaf {

// One CLI run, resolved. Everything that affects results feeds the config
// hash, which is embedded in every report and checked at party handshakes.
struct RunConfig {
  std::string cmd = "sweep";
  Fn fn = Fn::Sigmoid;
  int s = 12;
  int sprime_offset = -1;  // -1: function default
  int l = -1;              // -1: s+4
  int bw_o = -1;           // -1: function default
  int n_bits = 64;
  BackendKind backend = BackendKind::IdealDealer;
  bool rec_iterative = false;
  u64 batch = 1;
  u64 seed = 1;
  int threads = 1;
  std::string transport = "inproc";  // inproc | tcp
  std::string host = "127.0.0.1";
  int port = 7100;
  std::string report_path;
  std::string format = "csv";  // csv | json
  bool reveal = false;

  ProtocolParams resolve_params() const;
};

u64 config_hash(const RunConfig& cfg);

// Flat result row; optional fields stay empty in CSV and absent in JSON.
struct Report {
  RunConfig cfg;
  u64 cfg_hash = 0;
  std::optional<u64> max_ulp;
  std::optional<double> mean_ulp;
  std::map<u64, u64> histogram;
  u64 domain_size = 0;
  CostLedger ledger;             // per-instance (sweep/bench) or total (cell)
  double model_kb_per_instance = 0;
  double wire_bytes_per_instance = 0;
  u64 rounds_per_instance = 0;
  double wall_ms = 0;
  std::string note;

  std::string to_json() const;
  std::string to_csv() const;  // header + one row
  static const char* csv_header();

  // Writes to cfg.report_path (or stdout when empty) in cfg.format.
  void emit() const;
};

}  // namespace opaf
