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

#include "opaf/fixed_point.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace opaf {

void FixedConfig::validate() const {
  if (l < 1 || l > 64) {
    throw std::invalid_argument("FixedConfig: bitwidth " + std::to_string(l) +
                                " outside 1..64");
  }
  if (s < 0 || s >= l) {
    throw std::invalid_argument("FixedConfig: scale " + std::to_string(s) +
                                " must satisfy 0 <= s < l = " +
                                std::to_string(l));
  }
}

FxNum fix(double x_f, FixedConfig cfg) {
  cfg.validate();
  if (!std::isfinite(x_f)) {
    throw std::invalid_argument("fix: input must be finite");
  }
  if (x_f == 0.0) x_f = 0.0;  // collapse -0.0
  const long double scaled = ldexpl(static_cast<long double>(x_f), cfg.s);
  if (fabsl(scaled) >= 0x1p63L) {
    throw std::invalid_argument("fix: |x_f|*2^s overflows the 63-bit product");
  }
  const i128 v = static_cast<i128>(floorl(scaled));
  return FxNum{static_cast<u64>(static_cast<u128>(v)) & cfg.mask(), cfg};
}

int msb(const FxNum& x) {
  return static_cast<int>((x.raw >> (x.cfg.l - 1)) & u64{1});
}

i64 sfp(const FxNum& x) { return to_signed(x.raw, x.cfg.l); }

long double rev(const FxNum& x) {
  return ldexpl(static_cast<long double>(sfp(x)), -x.cfg.s);
}

u64 ulp_error(real128 exact, const FxNum& produced) {
  produced.cfg.validate();
  // Round exact*2^s to the nearest grid integer, ties to even; rintq honors
  // the default FE_TONEAREST mode.
  const real128 g = scalbnq(exact, produced.cfg.s);
  const i128 target = static_cast<i128>(rintq(g));
  i128 d = static_cast<i128>(sfp(produced)) - target;
  if (d < 0) d = -d;
  return static_cast<u64>(d);
}

}  // namespace opaf
