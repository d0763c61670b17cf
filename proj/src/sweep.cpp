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

#include "opaf/sweep.hpp"

#include <chrono>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "opaf/fixed_point.hpp"

namespace opaf {

namespace {

constexpr u64 kSampleCap = u64{1} << 16;
constexpr u64 kExhaustiveCap = u64{1} << 20;

}  // namespace

std::vector<u64> sweep_domain(Fn fn, const ProtocolParams& p, u64 seed,
                              bool* sampled) {
  std::vector<u64> domain;
  const u64 ring = u64{1} << p.l;
  u64 lo = 0, count = 0;
  switch (fn) {
    case Fn::Exp:
    case Fn::Sigmoid:
      lo = 0;
      count = ring;
      break;
    case Fn::Expn:
      // Strictly negative rev(x): the msb=1 half of the ring.
      lo = ring / 2;
      count = ring / 2;
      break;
    case Fn::Tanh: {
      // rev(x) in (-4, 4): |sfp| < 2^(s+2).
      const u64 quarter = u64{1} << (p.s + 2);
      domain.reserve(2 * quarter - 1);
      for (u64 v = ring - quarter + 1; v < ring; ++v) domain.push_back(v);
      for (u64 v = 0; v < quarter; ++v) domain.push_back(v);
      if (sampled) *sampled = false;
      return domain;
    }
  }
  if (count <= kExhaustiveCap) {
    domain.reserve(count);
    for (u64 i = 0; i < count; ++i) domain.push_back(lo + i);
    if (sampled) *sampled = false;
  } else {
    const u64 stride = count / kSampleCap;
    domain.reserve(kSampleCap);
    for (u64 i = 0; i < kSampleCap; ++i) {
      domain.push_back(lo + i * stride + mix_seed(seed, i) % stride);
    }
    if (sampled) *sampled = true;
  }
  return domain;
}

real128 sweep_target(Fn fn, long double x_f, int s) {
  switch (fn) {
    case Fn::Exp:
    case Fn::Expn:
      return exp_ref(static_cast<real128>(x_f));
    case Fn::Sigmoid:
      return sigmoid_target(x_f, s);
    case Fn::Tanh:
      return tanh_target(x_f, s);
  }
  return 0;
}

u64 sweep_eval_one(const SweepConfig& cfg, u64 raw, int split,
                   CostLedger* ledger_out, u64* wire_bytes_out) {
  const ProtocolParams& p = cfg.params;
  CostModel model;
  LocalExec ex(cfg.backend, model,
               mix_seed(mix_seed(cfg.seed, raw), static_cast<u64>(split)),
               static_cast<u32>(raw));
  ex.set_rec_iterative(cfg.rec_iterative);
  SeededRng split_rng(
      mix_seed(split_seed(cfg.seed, raw), static_cast<u64>(split)));
  PairArith x = ex.make_input(raw, p.l, split_rng);
  ProtocolOutput out = run_protocol(cfg.fn, ex, x, p);
  const u64 y = ex.reconstruct(out.share);
  const FxNum input{raw, FixedConfig{p.l, p.s}};
  const FxNum produced{y, FixedConfig{p.bw_o, p.s}};
  const real128 target = sweep_target(cfg.fn, rev(input), p.s);
  if (ledger_out) *ledger_out = ex.ledger();
  if (wire_bytes_out) *wire_bytes_out = ex.wire_bytes();
  return ulp_error(target, produced);
}

SweepResult run_sweep_serial(const SweepConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  const std::vector<u64> domain =
      sweep_domain(cfg.fn, cfg.params, cfg.seed, &res.sampled);
  res.domain_size = domain.size();
  const int splits = cfg.splits > 0 ? cfg.splits : 1;
  long double acc = 0;
  for (size_t i = 0; i < domain.size(); ++i) {
    for (int j = 0; j < splits; ++j) {
      CostLedger led;
      u64 bytes = 0;
      const u64 ulp = sweep_eval_one(cfg, domain[i], j, &led, &bytes);
      res.absorb(domain[i], ulp);
      acc += ulp;
      res.total.merge(led);
      res.wire_bytes += bytes;
      if (i == 0 && j == 0) res.per_instance = led;
    }
  }
  res.mean_ulp = domain.empty()
                     ? 0.0
                     : static_cast<double>(acc / (domain.size() * splits));
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
}

SweepResult run_sweep_parallel(const SweepConfig& cfg) {
#ifndef _OPENMP
  return run_sweep_serial(cfg);
#else
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  const std::vector<u64> domain =
      sweep_domain(cfg.fn, cfg.params, cfg.seed, &res.sampled);
  res.domain_size = domain.size();
  const int splits = cfg.splits > 0 ? cfg.splits : 1;
  long double acc = 0;
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    SweepResult local;
    long double local_acc = 0;
#pragma omp for schedule(dynamic, 256)
    for (long i = 0; i < static_cast<long>(domain.size()); ++i) {
      for (int j = 0; j < splits; ++j) {
        CostLedger led;
        u64 bytes = 0;
        const u64 ulp = sweep_eval_one(cfg, domain[i], j, &led, &bytes);
        local.absorb(domain[i], ulp);
        local_acc += ulp;
        local.total.merge(led);
        local.wire_bytes += bytes;
        if (i == 0 && j == 0) local.per_instance = led;
      }
    }
#pragma omp critical
    {
      if (local.has_worst &&
          (!res.has_worst || local.max_ulp > res.max_ulp ||
           (local.max_ulp == res.max_ulp &&
            local.worst_input_raw < res.worst_input_raw))) {
        res.max_ulp = local.max_ulp;
        res.worst_input_raw = local.worst_input_raw;
        res.has_worst = true;
      }
      for (const auto& [u, n] : local.histogram) res.histogram[u] += n;
      acc += local_acc;
      res.total.merge(local.total);
      res.wire_bytes += local.wire_bytes;
      if (!local.per_instance.invocations.empty()) {
        res.per_instance = local.per_instance;
      }
    }
  }
  res.mean_ulp = domain.empty()
                     ? 0.0
                     : static_cast<double>(acc / (domain.size() * splits));
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
#endif
}

SweepResult run_sweep(const SweepConfig& cfg) {
  return cfg.threads > 1 ? run_sweep_parallel(cfg) : run_sweep_serial(cfg);
}

u64 bench_input_raw(Fn fn, const ProtocolParams& p, u64 seed, u64 i) {
  const u64 mix = mix_seed(seed ^ 0xbe4c4, i);
  const u64 ring = u64{1} << p.l;
  switch (fn) {
    case Fn::Exp:
    case Fn::Sigmoid:
      return mix % ring;
    case Fn::Expn:
      return ring / 2 + mix % (ring / 2);
    case Fn::Tanh: {
      const u64 quarter = u64{1} << (p.s + 2);
      const u64 span = 2 * quarter - 1;
      return mod_bits(mix % span - (quarter - 1), p.l);
    }
  }
  return 0;
}

BenchResult run_bench(const SweepConfig& cfg, u64 batch) {
  const auto t0 = std::chrono::steady_clock::now();
  BenchResult res;
  res.batch = batch;
  long double acc = 0;
  for (u64 i = 0; i < batch; ++i) {
    const u64 raw = bench_input_raw(cfg.fn, cfg.params, cfg.seed, i);
    SweepConfig inst = cfg;
    inst.seed = mix_seed(cfg.seed, i);
    CostLedger led;
    u64 bytes = 0;
    const u64 ulp = sweep_eval_one(inst, raw, 0, &led, &bytes);
    if (ulp > res.max_ulp) res.max_ulp = ulp;
    acc += ulp;
    res.total.merge(led);
    res.wire_bytes += bytes;
    if (i == 0) res.per_instance = led;
  }
  res.mean_ulp = batch ? static_cast<double>(acc / batch) : 0.0;
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
}

}  // namespace opaf
