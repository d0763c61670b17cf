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

#include "opaf/local_exec.hpp"

#include <set>

#include "doctest.h"

using namespace opaf;

namespace {

CostModel kModel;

PairArith share_pair(LocalExec& ex, u64 x, int k, SeededRng& rng) {
  return ex.make_input(x, k, rng);
}

PairBool bool_pair(int b, SeededRng& rng) {
  const u8 r = static_cast<u8>(rng.bit());
  return PairBool{{BoolShare{r, Party::P1},
                   BoolShare{static_cast<u8>(r ^ b), Party::P2}}};
}

}  // namespace

TEST_CASE("f_msb matches plaintext msb, exhaustive l=8 with 16 splits") {
  for (BackendKind bk : {BackendKind::IdealDealer, BackendKind::BeaverDealer}) {
    SeededRng rng(21);
    for (u64 x = 0; x < 256; ++x) {
      for (int split = 0; split < 16; ++split) {
        LocalExec ex(bk, kModel, rng.next_u64());
        PairArith xs = share_pair(ex, x, 8, rng);
        CHECK(ex.reconstruct_bit(ex.f_msb(xs)) == (x >= 128 ? 1 : 0));
      }
    }
  }
}

TEST_CASE("f_msb_to_wrap matches wrap oracle over all l=8 share pairs") {
  SeededRng rng(22);
  LocalExec ex(BackendKind::IdealDealer, kModel, 77);
  for (u64 x1 = 0; x1 < 256; x1 += 3) {
    for (u64 x2 = 0; x2 < 256; x2 += 2) {
      PairArith xs{{ArithShare{x1, 8, Party::P1}, ArithShare{x2, 8, Party::P2}}};
      const int mb = (mod_bits(x1 + x2, 8) >> 7) & 1;
      PairBool mbs = bool_pair(mb, rng);
      CHECK(ex.reconstruct_bit(ex.f_msb_to_wrap(xs, mbs)) ==
            wrap_oracle(x1, x2, 8));
    }
  }
}

TEST_CASE("f_mux selects x or zero") {
  for (BackendKind bk : {BackendKind::IdealDealer, BackendKind::BeaverDealer}) {
    SeededRng rng(23);
    LocalExec ex(bk, kModel, 99);
    for (int l : {16, 32, 64}) {
      for (int i = 0; i < 2500; ++i) {
        const u64 x = rng.uniform_bits(l);
        const int b = rng.bit();
        PairArith xs = share_pair(ex, x, l, rng);
        PairBool bs = bool_pair(b, rng);
        CHECK(ex.reconstruct(ex.f_mux(xs, bs)) == (b ? x : 0));
      }
    }
  }
}

TEST_CASE("f_and truth table over all sharings") {
  for (BackendKind bk : {BackendKind::IdealDealer, BackendKind::BeaverDealer}) {
    LocalExec ex(bk, kModel, 5);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        for (int sx = 0; sx < 2; ++sx) {
          for (int sy = 0; sy < 2; ++sy) {
            PairBool xs{{BoolShare{static_cast<u8>(sx), Party::P1},
                         BoolShare{static_cast<u8>(sx ^ x), Party::P2}}};
            PairBool ys{{BoolShare{static_cast<u8>(sy), Party::P1},
                         BoolShare{static_cast<u8>(sy ^ y), Party::P2}}};
            CHECK(ex.reconstruct_bit(ex.f_and(xs, ys)) == (x & y));
          }
        }
      }
    }
  }
}

TEST_CASE("f_b2a embeds the bit in the ring") {
  LocalExec ex(BackendKind::IdealDealer, kModel, 6);
  SeededRng rng(1);
  for (int l : {16, 64}) {
    for (int b = 0; b < 2; ++b) {
      for (int s = 0; s < 2; ++s) {
        PairBool bs{{BoolShare{static_cast<u8>(s), Party::P1},
                     BoolShare{static_cast<u8>(s ^ b), Party::P2}}};
        CHECK(ex.reconstruct(ex.f_b2a(bs, l)) == static_cast<u64>(b));
      }
    }
  }
}

TEST_CASE("f_cross_term matches the wide-integer product") {
  for (BackendKind bk : {BackendKind::IdealDealer, BackendKind::BeaverDealer}) {
    SeededRng rng(31);
    LocalExec ex(bk, kModel, 13);
    for (auto [m, n] : std::vector<std::pair<int, int>>{{44, 20}, {32, 32}}) {
      for (int i = 0; i < 5000; ++i) {
        const u64 a = rng.uniform_bits(m);
        const u64 b = rng.uniform_bits(n);
        PairPriv priv{{a, b}, std::max(m, n)};
        const int out = std::min(m + n, 64);
        const u64 want = static_cast<u64>(
            (static_cast<u128>(a) * static_cast<u128>(b)) &
            ((static_cast<u128>(1) << out) - 1));
        CHECK(ex.reconstruct(ex.f_cross_term(priv, m, n, out)) == want);
      }
    }
  }
  // trivial anchors
  LocalExec ex(BackendKind::IdealDealer, kModel, 1);
  CHECK(ex.reconstruct(ex.f_cross_term(PairPriv{{3, 4}, 8}, 8, 8, 16)) == 12);
  CHECK(ex.reconstruct(ex.f_cross_term(PairPriv{{0, 4}, 8}, 8, 8, 16)) == 0);
}

TEST_CASE("f_mult multiplies across rings into m+n bits") {
  for (BackendKind bk : {BackendKind::IdealDealer, BackendKind::BeaverDealer}) {
    SeededRng rng(41);
    LocalExec ex(bk, kModel, 17);
    for (auto [m, n] : std::vector<std::pair<int, int>>{{16, 16}, {20, 28}}) {
      for (int i = 0; i < 4000; ++i) {
        const u64 x = rng.uniform_bits(m);
        const u64 y = rng.uniform_bits(n);
        PairArith xs = share_pair(ex, x, m, rng);
        PairArith ys = share_pair(ex, y, n, rng);
        const u64 want = mod_bits(x * y, m + n);
        CHECK(ex.reconstruct(ex.f_mult(xs, ys)) == want);
      }
    }
    // identity and zero
    PairArith one = share_pair(ex, 1, 8, rng);
    PairArith seven = share_pair(ex, 7, 8, rng);
    CHECK(ex.reconstruct(ex.f_mult(one, seven)) == 7);
    PairArith zero = share_pair(ex, 0, 8, rng);
    CHECK(ex.reconstruct(ex.f_mult(zero, seven)) == 0);
  }
  LocalExec ex(BackendKind::IdealDealer, kModel, 1);
  SeededRng rng(2);
  PairArith a = share_pair(ex, 1, 40, rng);
  PairArith b = share_pair(ex, 1, 32, rng);
  CHECK_THROWS_AS(ex.f_mult(a, b), ContractViolation);
}

TEST_CASE("f_truncate floors, exhaustive l=10 all shifts and 8 splits") {
  SeededRng rng(51);
  LocalExec ex(BackendKind::IdealDealer, kModel, 19);
  for (int t = 1; t <= 9; ++t) {
    for (u64 x = 0; x < 1024; ++x) {
      for (int split = 0; split < 8; ++split) {
        PairArith xs = share_pair(ex, x, 10, rng);
        PairArith y = ex.f_truncate(xs, t);
        CHECK(y.k() == 10 - t);
        CHECK(ex.reconstruct(y) == (x >> t));
      }
    }
  }
  // anchors
  SeededRng r2(1);
  PairArith big = share_pair(ex, 4096, 32, r2);
  CHECK(ex.reconstruct(ex.f_truncate(big, 4)) == 256);
  PairArith small = share_pair(ex, 15, 32, r2);
  CHECK(ex.reconstruct(ex.f_truncate(small, 4)) == 0);
  CHECK_THROWS_AS(ex.f_truncate(big, 32), ContractViolation);
}

TEST_CASE("backend equivalence on seeded cases") {
  // Identical reconstructions from both backends on the same inputs.
  for (int trial = 0; trial < 2500; ++trial) {
    SeededRng in(1000 + trial);
    const u64 x = in.uniform_bits(24);
    const u64 y = in.uniform_bits(24);
    const int b = in.bit();
    u64 got[2][4];
    for (BackendKind bk :
         {BackendKind::IdealDealer, BackendKind::BeaverDealer}) {
      const int idx = bk == BackendKind::IdealDealer ? 0 : 1;
      SeededRng rng(2000 + trial);
      LocalExec ex(bk, kModel, 3000 + trial);
      PairArith xs = share_pair(ex, x, 24, rng);
      PairArith ys = share_pair(ex, y, 24, rng);
      PairBool bs = bool_pair(b, rng);
      got[idx][0] = ex.reconstruct_bit(ex.f_and(bs, bs));
      got[idx][1] = ex.reconstruct(ex.f_mux(xs, bs));
      got[idx][2] = ex.reconstruct(ex.f_mult(xs, ys));
      got[idx][3] =
          ex.reconstruct(ex.f_cross_term(PairPriv{{x, y}, 24}, 24, 24, 48));
    }
    for (int i = 0; i < 4; ++i) CHECK(got[0][i] == got[1][i]);
  }
}

TEST_CASE("output shares are fresh-uniform while reconstruction is constant") {
  std::set<u64> p1_values;
  const u64 x = 200;
  for (int seed = 0; seed < 4000; ++seed) {
    LocalExec ex(BackendKind::IdealDealer, kModel, seed);
    SeededRng rng(7);  // fixed input split
    PairArith xs = share_pair(ex, x, 8, rng);
    PairBool bs = bool_pair(1, rng);
    PairArith out = ex.f_mux(xs, bs);
    CHECK(ex.reconstruct(out) == x);
    p1_values.insert(out.s[0].raw);
  }
  CHECK(p1_values.size() == 256);  // the full k=8 ring appears
}

TEST_CASE("ledger bits equal the summed per-block formulas") {
  LocalExec ex(BackendKind::IdealDealer, kModel, 4);
  SeededRng rng(4);
  PairArith xs = share_pair(ex, 61440, 16, rng);
  PairBool mb = ex.f_msb(xs);
  CHECK(ex.reconstruct_bit(mb) == 1);
  PairBool wr = ex.f_msb_to_wrap(xs, mb);
  (void)wr;
  PairArith mx = ex.f_mux(xs, mb);
  (void)mx;
  const CostLedger& led = ex.ledger();
  CHECK(led.bits_sent ==
        kModel.msb_bits(16) + kModel.msb_to_wrap_bits() + kModel.mux_bits(16));
  CHECK(led.count("msb") == 1);
  CHECK(led.count("msbTOwrap") == 1);
  CHECK(led.count("Mux") == 1);
  CHECK(led.rounds == 2 + 1 + 1);  // msb charges 2, the others 1
}

TEST_CASE("model bits are identical across backends") {
  for (int l : {16, 32}) {
    u64 bits[2];
    for (BackendKind bk :
         {BackendKind::IdealDealer, BackendKind::BeaverDealer}) {
      SeededRng rng(9);
      LocalExec ex(bk, kModel, 9);
      PairArith xs = share_pair(ex, 5, l, rng);
      PairBool bs = bool_pair(1, rng);
      (void)ex.f_mux(xs, bs);
      bits[bk == BackendKind::IdealDealer ? 0 : 1] = ex.ledger().bits_sent;
    }
    CHECK(bits[0] == bits[1]);
  }
}
