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

#include <map>
#include <vector>

#include "opaf/local_exec.hpp"
#include "opaf/protocols.hpp"
#include "opaf/reference.hpp"

namespace opaf {

struct SweepConfig {
  Fn fn = Fn::Exp;
  ProtocolParams params;
  BackendKind backend = BackendKind::IdealDealer;
  u64 seed = 1;
  int threads = 1;
  int splits = 1;  // share splits evaluated per grid input
  bool rec_iterative = false;
};

struct SweepResult {
  u64 max_ulp = 0;
  u64 worst_input_raw = 0;
  double mean_ulp = 0.0;
  std::map<u64, u64> histogram;
  u64 domain_size = 0;
  bool sampled = false;  // true when the grid was subsampled (large s)
  CostLedger per_instance;
  CostLedger total;
  u64 wire_bytes = 0;
  double wall_ms = 0.0;

  // Worst case is the max ULP; ties resolve to the smallest raw input so
  // serial and parallel runs report the same witness.
  void absorb(u64 raw, u64 ulp) {
    ++histogram[ulp];
    if (!has_worst || ulp > max_ulp ||
        (ulp == max_ulp && raw < worst_input_raw)) {
      max_ulp = ulp;
      worst_input_raw = raw;
      has_worst = true;
    }
  }
  bool has_worst = false;
};

// Every grid input of the protocol's domain, in raw encoding. Grids above
// 2^20 points are stratified down to 2^16 samples.
std::vector<u64> sweep_domain(Fn fn, const ProtocolParams& p, u64 seed,
                              bool* sampled);

// Extended-precision comparison target, encoding shift included.
real128 sweep_target(Fn fn, long double x_f, int s);

// Runs one protocol instance end to end and reports its ULP error. All
// randomness derives from (seed, raw, split), so any schedule of instances
// produces identical results.
u64 sweep_eval_one(const SweepConfig& cfg, u64 raw, int split,
                   CostLedger* ledger_out, u64* wire_bytes_out);

// Deterministic in-domain grid point for bench/party instance i; local and
// distributed runs derive identical inputs and splits from the run seed.
u64 bench_input_raw(Fn fn, const ProtocolParams& p, u64 seed, u64 i);

// Seed of the input-split generator for one instance; shared by every
// execution mode so reconstructions agree bit for bit.
constexpr u64 split_seed(u64 run_seed, u64 raw) {
  return mix_seed(run_seed ^ 0x5eedbeefcafef00dull, raw);
}

struct BenchResult {
  u64 batch = 0;
  u64 max_ulp = 0;
  double mean_ulp = 0.0;
  CostLedger per_instance;
  CostLedger total;
  u64 wire_bytes = 0;
  double wall_ms = 0.0;
};

// Runs `batch` independent instances on random in-domain inputs. Rounds
// amortize across a packed batch, so the group round count is one instance's.
BenchResult run_bench(const SweepConfig& cfg, u64 batch);

// Serial reference implementation.
SweepResult run_sweep_serial(const SweepConfig& cfg);

// OpenMP kernel over independent sessions; identical output to the serial
// reference by construction.
SweepResult run_sweep_parallel(const SweepConfig& cfg);

// Dispatches on cfg.threads.
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace opaf
