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

#include "opaf/blocks.hpp"

#include <cassert>
#include <cmath>

namespace opaf {

void Exec::charge(const char* name, u64 bits, u64 block_rounds) {
  CostLedger& led = current();
  led.bits_sent += bits;
  led.messages += 4;  // request + response per party under the dealer model
  led.rounds += block_rounds;
  ++led.invocations[name];
}

PairArith Exec::affine(std::initializer_list<Term> terms, i64 constant,
                       int k) {
  std::vector<i64> coeffs;
  std::vector<ArithShare> shares;
  PairArith out{};
  for (int p = 0; p < 2; ++p) {
    if (!own_[p]) continue;
    coeffs.clear();
    shares.clear();
    for (const Term& t : terms) {
      if (t.share->s[p].k != k) {
        throw ContractViolation("affine: operand ring width differs from k");
      }
      coeffs.push_back(t.coeff);
      shares.push_back(t.share->s[p]);
    }
    out.s[p] = local_affine(coeffs, shares, constant, static_cast<Party>(p));
  }
  return out;
}

PairBool Exec::xor_bits(const PairBool& x, const PairBool& y) {
  PairBool out{};
  for (int p = 0; p < 2; ++p) {
    if (!own_[p]) continue;
    out.b[p] = BoolShare{static_cast<u8>((x.b[p].bit ^ y.b[p].bit) & 1),
                         static_cast<Party>(p)};
  }
  return out;
}

PairBool Exec::const_bool(int bit_p1, int bit_p2) {
  PairBool out{};
  if (own_[0]) out.b[0] = BoolShare{static_cast<u8>(bit_p1 & 1), Party::P1};
  if (own_[1]) out.b[1] = BoolShare{static_cast<u8>(bit_p2 & 1), Party::P2};
  return out;
}

PairArith Exec::lift(const PairArith& x, int k_new) {
  PairArith out{};
  for (int p = 0; p < 2; ++p) {
    if (own_[p]) out.s[p] = ring_lift(x.s[p], k_new);
  }
  return out;
}

PairArith Exec::reduce(const PairArith& x, int k_new) {
  PairArith out{};
  for (int p = 0; p < 2; ++p) {
    if (own_[p]) out.s[p] = ring_reduce(x.s[p], k_new);
  }
  return out;
}

PairPriv Exec::exp_table(const PairArith& x, double off, int s, int s_prime,
                         int bits) {
  assert(x.k() <= 52);  // raw must be exact in a double
  PairPriv out;
  out.bits = bits;
  const double big_l = std::ldexp(1.0, x.k());
  for (int p = 0; p < 2; ++p) {
    if (!own_[p]) continue;
    // Local tables are evaluated in double then floored; the 53-bit mantissa
    // keeps the local relative error below 2^-50, well under the s' grids.
    const double arg =
        (static_cast<double>(x.s[p].raw) - off * big_l) / std::ldexp(1.0, s);
    const long double scaled =
        ldexpl(static_cast<long double>(std::exp(arg)), s_prime);
    const u64 v = static_cast<u64>(static_cast<u128>(
        static_cast<i128>(floorl(scaled))));
    out.v[p] = mod_bits(v, bits);
  }
  return out;
}

PairArith Exec::make_input(u64 x, int k, SeededRng& rng) {
  const u64 r = rng.uniform_bits(k);
  PairArith out{};
  if (own_[0]) out.s[0] = ArithShare{r, k, Party::P1};
  if (own_[1]) out.s[1] = ArithShare{mod_bits(x - r, k), k, Party::P2};
  return out;
}

PairArith Exec::f_rec(const PairArith& v, int s) {
  if (rec_iterative_) {
    CompositeScope scope(*this, "Rec");
    return rec_goldschmidt(v, s);
  }
  charge("Rec", model_.rec_bits(s, v.k()), 1);
  return rec_ideal(v, s);
}

PairArith Exec::f_zext(const PairArith& x, int k_new) {
  const int k = x.k();
  if (k_new <= k) return k_new == k ? x : reduce(x, k_new);
  PairBool zero = const_bool(0, 0);  // msb(x) = 0 by precondition
  PairBool w = f_msb_to_wrap(x, zero);
  PairArith wa = f_b2a(w, k_new);
  PairArith xl = lift(x, k_new);  // raw sum is x + wrap*2^k over the integers
  return affine({{1, &xl}, {-(i64{1} << k), &wa}}, 0, k_new);
}

// Goldschmidt on shares. The operand is Fix(v_f, s) with v_f in [1,2); the
// linear initial estimate Fix(2.9142,s) - raw(v), read at scale s+1, carries
// ~3.5 correct bits and every pass squares the relative error. All
// intermediate values stay positive with a clear top bit, so the truncations
// see unsigned magnitudes and widening is never needed inside the loop.
PairArith Exec::rec_goldschmidt(const PairArith& v, int s) {
  if (s < 3 || 3 * s + 6 > 64) {
    throw ContractViolation("rec: scale outside the iterative pipeline range");
  }
  if (v.k() < s + 2) throw ContractViolation("rec: ring too narrow for [1,2)");
  const int kv = s + 2;
  PairArith vv = v.k() == kv ? v : reduce(v, kv);
  const i64 c0 = static_cast<i64>(std::floor(2.9142 * std::ldexp(1.0, s)));
  PairArith r = affine({{-1, &vv}}, c0, kv);  // ~1/v at scale s+1
  const int iters = CostModel::rec_iterations(s);
  PairArith r_wide{};  // last iteration result before narrowing, ring s+5
  for (int i = 0; i < iters; ++i) {
    PairArith p = f_mult(vv, r);  // v*r at scale 2s+1, ring 2s+4
    PairArith q = affine({{-1, &p}}, i64{1} << (2 * s + 2), 2 * s + 4);
    PairArith rq = f_mult(r, q);  // scale 3s+2, ring 3s+6
    // Round back to scale s+1: add half, truncate by 2s+1.
    PairArith rq2 = affine({{1, &rq}}, i64{1} << (2 * s), 3 * s + 6);
    r_wide = f_truncate(rq2, 2 * s + 1);  // ring s+5
    r = reduce(r_wide, kv);
  }
  // Rescale s+1 -> s with rounding; ring s+4 keeps msb clear even at 1/v = 1.
  PairArith r2 = affine({{1, &r_wide}}, 1, s + 5);
  PairArith out = f_truncate(r2, 1);  // ring s+4, scale s
  if (v.k() <= s + 4) return reduce(out, v.k());
  return f_zext(out, v.k());
}

CompositeScope::CompositeScope(Exec& ex, std::string name)
    : ex_(ex), name_(std::move(name)) {
  ex_.scope_pool_.push_back(std::make_unique<CostLedger>());
  ex_.ledger_stack_.push_back(ex_.scope_pool_.back().get());
}

CompositeScope::~CompositeScope() {
  CostLedger* child = ex_.ledger_stack_.back();
  ex_.ledger_stack_.pop_back();
  CostLedger& parent = *ex_.ledger_stack_.back();
  parent.bits_sent += child->bits_sent;
  parent.messages += child->messages;
  parent.rounds += child->rounds;
  parent.domain_clamps += child->domain_clamps;
  ++parent.invocations[name_];
  ex_.scope_pool_.pop_back();
}

}  // namespace opaf
