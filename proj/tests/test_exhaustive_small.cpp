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

// Brute-force equivalence at l=8: protocol outputs against a plaintext
// evaluation of the selection algebra, computed with the same local
// fixed-point tables. Shares enter every possible wrap/msb case.

#include <cmath>

#include "doctest.h"
#include "opaf/local_exec.hpp"
#include "opaf/protocols.hpp"

using namespace opaf;

namespace {

CostModel kModel;

// Independent table computation (same contract as the executor's).
u64 table(u64 raw, double off, const ProtocolParams& p, int width) {
  const double big_l = std::ldexp(1.0, p.l);
  const double arg =
      (static_cast<double>(raw) - off * big_l) / std::ldexp(1.0, p.s);
  const long double scaled =
      ldexpl(static_cast<long double>(std::exp(arg)), p.s_prime);
  return mod_bits(
      static_cast<u64>(static_cast<u128>(static_cast<i128>(floorl(scaled)))),
      width);
}

u64 cross(u64 a, u64 b, int out_bits) {
  return mod_bits(static_cast<u64>(static_cast<u128>(a) * b), out_bits);
}

// Plaintext selection algebra of the general exponential, on one share split.
u64 plain_exp(u64 r1, u64 r2, const ProtocolParams& p) {
  const int w = p.cross_width();
  const u64 x = mod_bits(r1 + r2, p.l);
  const u64 ap = cross(table(r1, 0.0, p, w), table(r2, 0.0, p, w), p.n_bits);
  const u64 bp = cross(table(r1, 0.5, p, w), table(r2, 0.5, p, w), p.n_bits);
  const u64 cp = cross(table(r1, 1.0, p, w), table(r2, 1.0, p, w), p.n_bits);
  const int wr = wrap_oracle(r1, r2, p.l);
  const int mb = static_cast<int>((x >> (p.l - 1)) & 1);
  u64 rst = ap;
  if (wr ^ mb) rst += bp - ap;
  if (wr & mb) rst += cp - ap;
  rst = mod_bits(rst, p.n_bits);
  return mod_bits(rst >> p.trunc_shift(), p.bw_o);
}

// Same for the negative-only variant: msb pinned, two tables.
u64 plain_expn(u64 r1, u64 r2, const ProtocolParams& p) {
  const int w = p.cross_width();
  const u64 ap = cross(table(r1, 0.5, p, w), table(r2, 0.5, p, w), p.n_bits);
  const u64 bp = cross(table(r1, 1.0, p, w), table(r2, 1.0, p, w), p.n_bits);
  const int wr = wrap_oracle(r1, r2, p.l);
  u64 rst = ap;
  if (wr) rst += bp - ap;
  rst = mod_bits(rst, p.n_bits);
  return mod_bits(rst >> p.trunc_shift(), p.bw_o);
}

ProtocolParams small_params(Fn fn, int n_bits) {
  ProtocolParams p = ProtocolParams::defaults(fn, 4);  // l=8
  p.n_bits = n_bits;
  return p;
}

}  // namespace

TEST_CASE("exp selection algebra, exhaustive l=8, bitwise equality") {
  // Both the wide default ring and the minimal one, where the unused
  // branches' cross terms genuinely overflow and must cancel.
  for (int n_bits : {64, 43}) {
    ProtocolParams p = small_params(Fn::Exp, 64);
    p.n_bits = n_bits;
    p.validate(Fn::Exp);
    SeededRng rng(3);
    for (u64 x = 0; x < 256; ++x) {
      for (int split = 0; split < 64; ++split) {
        const u64 r1 = rng.uniform_bits(8);
        const u64 r2 = mod_bits(x - r1, 8);
        LocalExec ex(BackendKind::IdealDealer, kModel, rng.next_u64());
        PairArith xs{{ArithShare{r1, 8, Party::P1},
                      ArithShare{r2, 8, Party::P2}}};
        const u64 got = ex.reconstruct(exp_protocol(ex, xs, p).share);
        CHECK(got == plain_exp(r1, r2, p));
      }
    }
  }
}

TEST_CASE("expn selection algebra, exhaustive negative l=8, bitwise") {
  ProtocolParams p = small_params(Fn::Expn, 64);
  p.validate(Fn::Expn);
  SeededRng rng(5);
  for (u64 x = 128; x < 256; ++x) {  // msb(x) = 1
    for (int split = 0; split < 64; ++split) {
      const u64 r1 = rng.uniform_bits(8);
      const u64 r2 = mod_bits(x - r1, 8);
      LocalExec ex(BackendKind::IdealDealer, kModel, rng.next_u64());
      PairArith xs{{ArithShare{r1, 8, Party::P1},
                    ArithShare{r2, 8, Party::P2}}};
      const u64 got = ex.reconstruct(expn_protocol(ex, xs, p).share);
      CHECK(got == plain_expn(r1, r2, p));
    }
  }
}

TEST_CASE("negx construction, exhaustive l=8") {
  // negx reconstructs -(x+1) for msb=0 and x for msb=1, and rev(negx) < 0.
  const int l = 8;
  SeededRng rng(7);
  for (u64 x = 0; x < 256; ++x) {
    for (int split = 0; split < 32; ++split) {
      const u64 r1 = rng.uniform_bits(l);
      const u64 r2 = mod_bits(x - r1, l);
      LocalExec ex(BackendKind::IdealDealer, kModel, rng.next_u64());
      PairArith xs{{ArithShare{r1, l, Party::P1},
                    ArithShare{r2, l, Party::P2}}};
      PairArith two_x_one = ex.affine({{2, &xs}}, 1, l);
      PairBool mb = ex.f_msb(xs);
      PairArith sel = ex.f_mux(two_x_one, mb);
      PairArith negx = ex.affine({{1, &sel}, {-1, &xs}}, -1, l);
      const u64 got = ex.reconstruct(negx);
      const int m = static_cast<int>(x >> (l - 1));
      const u64 want = m ? x : mod_bits(~x, l);  // -(x+1) mod 2^l
      CHECK(got == want);
      CHECK(to_signed(got, l) < 0);
    }
  }
}

TEST_CASE("reconstructed exp output fits the declared output ring") {
  // The selected value never exceeds bw_o - s integer bits; spot the
  // extremes of the domain.
  const ProtocolParams p = small_params(Fn::Exp, 64);
  SeededRng rng(9);
  for (u64 x : {u64{127}, u64{128}, u64{0}, u64{255}}) {
    LocalExec ex(BackendKind::IdealDealer, kModel, 4);
    PairArith xs = ex.make_input(x, 8, rng);
    const u64 y = ex.reconstruct(exp_protocol(ex, xs, p).share);
    CHECK(y < (u64{1} << p.bw_o));
  }
}
