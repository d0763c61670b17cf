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

#include <cstdint>

namespace opaf {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// 113-bit-mantissa binary float used by the reference oracle so the oracle's
// own rounding never shows up in integer ULP counts.
using real128 = __float128;

// All-ones mask for the low k bits, k in 0..64.
constexpr u64 mask_bits(int k) {
  return k >= 64 ? ~u64{0} : ((u64{1} << k) - 1);
}

constexpr u64 mod_bits(u64 v, int k) { return v & mask_bits(k); }

// Sign-extend the low k bits of v into a signed 64-bit value.
constexpr i64 to_signed(u64 v, int k) {
  if (k >= 64) return static_cast<i64>(v);
  const u64 sign = u64{1} << (k - 1);
  return static_cast<i64>((v & mask_bits(k)) ^ sign) - static_cast<i64>(sign);
}

}  // namespace opaf
