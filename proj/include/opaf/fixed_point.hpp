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

#include "opaf/types.hpp"

namespace opaf {

// Fixed-point encoding parameters: an l-bit ring element with s fractional
// bits. The ring modulus 2^l is implied and never materialized wider than
// 64 bits.
struct FixedConfig {
  int l = 0;  // bitwidth, values live in Z_{2^l}, 1 <= l <= 64
  int s = 0;  // scale: fractional bits, 0 <= s < l

  void validate() const;  // throws std::invalid_argument on violation
  u64 mask() const { return mask_bits(l); }
  bool operator==(const FixedConfig&) const = default;
};

// An encoded fixed-point value: raw ring element plus its encoding.
struct FxNum {
  u64 raw = 0;
  FixedConfig cfg;
};

// floor(x_f * 2^s) mod 2^l, floor toward negative infinity. -0.0 encodes as
// raw 0. Requires |x_f| * 2^s < 2^63 and finite x_f.
FxNum fix(double x_f, FixedConfig cfg);

// 1 iff raw >= 2^(l-1): the sign bit under two's-complement reading.
int msb(const FxNum& x);

// raw - msb(x) * 2^l, the signed value in [-2^(l-1), 2^(l-1)).
i64 sfp(const FxNum& x);

// sfp(x) / 2^s. Exact: long double carries a 64-bit mantissa, enough for any
// l <= 64 ring element scaled by a power of two.
long double rev(const FxNum& x);

// Grid-step distance between `produced` and the correctly rounded
// (ties-to-even) encoding of `exact` at the same scale.
u64 ulp_error(real128 exact, const FxNum& produced);

struct UlpReport {
  long double input = 0.0L;
  real128 exact = 0;
  FxNum produced;
  u64 ulp = 0;
};

}  // namespace opaf
