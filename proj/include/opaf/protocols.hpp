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

#include <string>

#include "opaf/blocks.hpp"

namespace opaf {

enum class Fn { Exp, Expn, Sigmoid, Tanh };

const char* fn_name(Fn fn);
Fn fn_from_name(const std::string& name);

// Bitwidths, scales and the intermediate ring for one protocol run. The
// input carries l = s+4 bits by default, leaving 4 integer bits so values
// lie in (-8, 8); the working scale s' > s absorbs the error amplification
// of the exponential; everything upstream of the final truncation lives in
// Z_{2^n_bits}.
struct ProtocolParams {
  int s = 12;        // input/output scale
  int s_prime = 21;  // internal scale
  int l = 16;        // input bitwidth
  int bw_o = 25;     // output bitwidth
  int n_bits = 64;   // intermediate ring width

  static ProtocolParams defaults(Fn fn, int s);
  void validate(Fn fn) const;

  int int_bits() const { return l - s; }
  // Declared width of a local exponential table entry: enough integer bits
  // for e^(2^(int_bits-1)), the largest magnitude a selected branch can see,
  // plus the s' fraction bits.
  int cross_width() const;
  int trunc_shift() const { return 2 * s_prime - s; }
};

struct ProtocolOutput {
  PairArith share;  // ring bw_o, scale s
};

// y ~ Fix(e^rev(x), s) for rev(x) in (-8, 8).
ProtocolOutput exp_protocol(Exec& ex, const PairArith& x,
                            const ProtocolParams& p);

// y ~ Fix(e^rev(x), s) for strictly negative rev(x); msb(x) is pinned to 1.
ProtocolOutput expn_protocol(Exec& ex, const PairArith& x,
                             const ProtocolParams& p);

// y ~ Fix(sigmoid(rev(x)), s); non-negative inputs are evaluated at
// rev(x) + 2^-s via the -(x+1) encoding.
ProtocolOutput sigmoid_protocol(Exec& ex, const PairArith& x,
                                const ProtocolParams& p);

// y ~ Fix(tanh(rev(x)), s) for rev(x) in (-4, 4), via 2*sigmoid(2x) - 1.
ProtocolOutput tanh_protocol(Exec& ex, const PairArith& x,
                             const ProtocolParams& p);

ProtocolOutput run_protocol(Fn fn, Exec& ex, const PairArith& x,
                            const ProtocolParams& p);

// Clamps x_f onto the protocol's representable input domain; out-of-domain
// values hit the boundary grid point and are flagged on the ledger.
double clamp_domain(Fn fn, double x_f, const ProtocolParams& p,
                    CostLedger& ledger);

}  // namespace opaf
