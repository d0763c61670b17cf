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

#include <utility>
#include <vector>

#include "opaf/blocks.hpp"
#include "opaf/frame.hpp"
#include "opaf/rng.hpp"

namespace opaf {

// Functionality evaluation at the dealer. One instance serves both the
// in-process executor and the TCP dealer process, so the two modes draw
// identical randomness in identical order (P1's fresh share always first).
class DealerLogic {
 public:
  explicit DealerLogic(u64 seed) : rng_(seed) {}

  // Consumes the two parties' request payloads for one block invocation and
  // produces the two response payloads. Throws ContractViolation when the
  // requests disagree on parameters.
  std::pair<std::vector<u8>, std::vector<u8>> handle(
      BlockTag tag, const std::vector<u8>& req1, const std::vector<u8>& req2);

 private:
  SeededRng rng_;
};

// Per-party combine algebra for the Beaver-backed blocks. `me` selects which
// side of the correlation the caller holds.

inline u8 beaver_and_combine(Party me, u8 a, u8 b, u8 c, u8 d, u8 e) {
  u8 z = static_cast<u8>(c ^ (d & b) ^ (e & a));
  if (me == Party::P1) z ^= static_cast<u8>(d & e);
  return static_cast<u8>(z & 1);
}

// Correlation: random bit r (XOR-shared), [r] and [r*m] arithmetic, mask m.
// Opens: delta = b ^ r, mu = x - m. Then b*x = delta*x + (1-2*delta)*r*x.
inline u64 beaver_mux_combine(Party me, int k, u8 delta, u64 mu, u64 r_arith,
                              u64 m_arith, u64 rm_arith) {
  const u64 x_term = (me == Party::P1 ? mu : 0) + m_arith;
  const u64 rx_term = mu * r_arith + rm_arith;
  u64 z = (delta ? x_term : 0);
  z += rx_term;
  if (delta) z -= 2 * rx_term;
  return mod_bits(z, k);
}

// Correlation: r1 at P1, r2 at P2, [r1*r2] shared. Opens: d1 = a1 - r1,
// d2 = a2 - r2 (both mod the output ring).
inline u64 beaver_cross_combine(Party me, int out_bits, u64 d1, u64 d2, u64 r,
                                u64 u) {
  u64 z = u;
  if (me == Party::P1) {
    z += d1 * d2 + d2 * r;
  } else {
    z += d1 * r;
  }
  return mod_bits(z, out_bits);
}

// Standard triple combine over Z_{2^K}: z = c + d*b + e*a (+ d*e at P1).
inline u64 beaver_prod_combine(Party me, int K, u64 d, u64 e, u64 a, u64 b,
                               u64 c) {
  u64 z = c + d * b + e * a;
  if (me == Party::P1) z += d * e;
  return mod_bits(z, K);
}

}  // namespace opaf
