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

#include "opaf/sharing.hpp"

#include <stdexcept>
#include <string>

namespace opaf {

namespace {

void check_ring(int k) {
  if (k < 1 || k > 64) {
    throw std::invalid_argument("ring width " + std::to_string(k) +
                                " outside 1..64");
  }
}

}  // namespace

std::pair<ArithShare, ArithShare> share_arith(u64 x, int k, SeededRng& rng) {
  check_ring(k);
  if (x > mask_bits(k)) {
    throw std::invalid_argument("share_arith: value outside Z_{2^k}");
  }
  const u64 r = rng.uniform_bits(k);
  return {ArithShare{r, k, Party::P1},
          ArithShare{mod_bits(x - r, k), k, Party::P2}};
}

u64 reconst_arith(const ArithShare& s1, const ArithShare& s2) {
  if (s1.k != s2.k) {
    throw std::invalid_argument("reconst_arith: mismatched ring widths");
  }
  return mod_bits(s1.raw + s2.raw, s1.k);
}

int wrap_oracle(u64 r1, u64 r2, int k) {
  check_ring(k);
  const u128 sum = static_cast<u128>(r1) + r2;
  return sum >= (static_cast<u128>(1) << k) ? 1 : 0;
}

std::pair<BoolShare, BoolShare> share_bool(int b, SeededRng& rng) {
  if (b != 0 && b != 1) {
    throw std::invalid_argument("share_bool: input must be a bit");
  }
  const u8 r = static_cast<u8>(rng.bit());
  return {BoolShare{r, Party::P1},
          BoolShare{static_cast<u8>(r ^ b), Party::P2}};
}

int reconst_bool(const BoolShare& b1, const BoolShare& b2) {
  return (b1.bit ^ b2.bit) & 1;
}

ArithShare local_affine(std::span<const i64> coeffs,
                        std::span<const ArithShare> shares, i64 constant,
                        Party owner) {
  if (coeffs.size() != shares.size() || shares.empty()) {
    throw std::invalid_argument("local_affine: coeff/share arity mismatch");
  }
  const int k = shares[0].k;
  u64 acc = owner == Party::P1 ? static_cast<u64>(constant) : 0;
  for (size_t i = 0; i < shares.size(); ++i) {
    if (shares[i].k != k) {
      throw std::invalid_argument("local_affine: mixed ring widths");
    }
    acc += static_cast<u64>(coeffs[i]) * shares[i].raw;
  }
  return ArithShare{mod_bits(acc, k), k, owner};
}

ArithShare ring_lift(const ArithShare& s, int k_new) {
  check_ring(k_new);
  if (k_new < s.k) {
    throw std::invalid_argument("ring_lift: narrowing not allowed");
  }
  return ArithShare{s.raw, k_new, s.owner};
}

ArithShare ring_reduce(const ArithShare& s, int k_new) {
  check_ring(k_new);
  if (k_new > s.k) {
    throw std::invalid_argument("ring_reduce: widening not allowed");
  }
  return ArithShare{mod_bits(s.raw, k_new), k_new, s.owner};
}

}  // namespace opaf
