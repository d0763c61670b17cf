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

#include <random>

#include "opaf/types.hpp"

namespace opaf {

// Deterministic generator injected everywhere shares or masks are drawn, so
// any protocol trace is replayable from a seed. Production entropy comes in
// through from_entropy().
class SeededRng {
 public:
  explicit SeededRng(u64 seed) : gen_(seed) {}

  static SeededRng from_entropy() {
    std::random_device rd;
    return SeededRng((static_cast<u64>(rd()) << 32) ^ rd());
  }

  u64 next_u64() { return gen_(); }

  // Uniform element of Z_{2^k}, k in 1..64.
  u64 uniform_bits(int k) { return gen_() & mask_bits(k); }

  int bit() { return static_cast<int>(gen_() & 1); }

 private:
  std::mt19937_64 gen_;
};

// splitmix64 finalizer; derives independent per-instance seeds from a run
// seed so parallel and serial sweeps draw identical randomness per input.
constexpr u64 mix_seed(u64 seed, u64 stream) {
  u64 z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace opaf
