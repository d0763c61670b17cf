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

#include <vector>

#include "opaf/local_exec.hpp"
#include "opaf/protocols.hpp"

namespace opaf {

// One gated-recurrence step on a shared hidden state: a hidden dimension of
// 100 drives 100 sigmoid gates (16-bit, scale 8 in / 14 out) and 100 tanh
// candidates (16-bit, scale 9), mixed by public sparse +/-1 weights chosen so
// every pre-activation stays inside the protocols' input domains. The
// reconstructed next state is checked elementwise against a plaintext
// fixed-point run of the identical cell.
struct RnnCellConfig {
  int hidden = 100;
  u64 seed = 7;
  BackendKind backend = BackendKind::IdealDealer;
  int threads = 1;
  bool zero_state = false;  // zero state and biases (gate sanity checks)
};

struct RnnCellResult {
  u64 max_state_ulp = 0;  // elementwise |sfp| gap to the plaintext cell, scale 8
  std::vector<u64> state_raw;   // reconstructed next state, ring 2^16, scale 8
  std::vector<u64> plain_raw;   // plaintext cell next state
  std::vector<u64> z_raw;       // reconstructed sigmoid gates, scale 14
  std::vector<u64> c_raw;       // reconstructed tanh candidates, scale 9
  CostLedger activations;       // the 200 activation instances only
  u64 activation_model_bits = 0;
  u64 sirnn_model_bits = 0;     // same 200 instances composed the SIRNN way
  double traffic_ratio = 0.0;   // ours / SIRNN
  u64 wire_bytes = 0;
  double wall_ms = 0.0;
};

RnnCellResult run_rnn_cell(const RnnCellConfig& cfg);

// Closed-form model bits of one protocol instance under our composition and
// under the SIRNN-style composition (shared exponential core), used for the
// structural-saving comparison.
u64 opaf_model_bits(Fn fn, const ProtocolParams& p, const CostModel& m);
u64 sirnn_model_bits(Fn fn, const ProtocolParams& p, const CostModel& m);

}  // namespace opaf
