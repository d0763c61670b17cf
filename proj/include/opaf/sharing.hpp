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

#include <span>
#include <utility>

#include "opaf/rng.hpp"
#include "opaf/types.hpp"

namespace opaf {

enum class Party : int { P1 = 0, P2 = 1 };

constexpr Party other(Party p) { return p == Party::P1 ? Party::P2 : Party::P1; }

// One party's additive share in Z_{2^k}. Shares carry their ring width and
// every binary operation checks width equality; mixed-ring arithmetic is
// rejected rather than silently reduced.
struct ArithShare {
  u64 raw = 0;
  int k = 0;
  Party owner = Party::P1;
};

// One party's XOR share of a bit.
struct BoolShare {
  u8 bit = 0;
  Party owner = Party::P1;
};

// share1 uniform in Z_{2^k}; share2 = x - share1 mod 2^k.
std::pair<ArithShare, ArithShare> share_arith(u64 x, int k, SeededRng& rng);

u64 reconst_arith(const ArithShare& s1, const ArithShare& s2);

// 1 iff r1 + r2 >= 2^k. Plaintext helper for tests and the dealer backend.
int wrap_oracle(u64 r1, u64 r2, int k);

std::pair<BoolShare, BoolShare> share_bool(int b, SeededRng& rng);

int reconst_bool(const BoolShare& b1, const BoolShare& b2);

// Per-party affine map over Z_{2^k}: sum coeff_i * share_i (+ constant, folded
// in by P1 only so the reconstruction picks it up exactly once). Zero
// communication.
ArithShare local_affine(std::span<const i64> coeffs,
                        std::span<const ArithShare> shares, i64 constant,
                        Party owner);

// Widen the ring, raw unchanged. Only valid when the calling protocol
// guarantees the shared value is non-negative and in range; narrowing is
// rejected.
ArithShare ring_lift(const ArithShare& s, int k_new);

// Narrow the ring by local reduction mod 2^k_new. Exact whenever the shared
// value fits the target ring.
ArithShare ring_reduce(const ArithShare& s, int k_new);

}  // namespace opaf
