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

#include "opaf/dealer.hpp"

#include <cassert>

namespace opaf {

namespace {

struct Req {
  PayloadReader r;
};

void require(bool cond, const char* what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace

std::pair<std::vector<u8>, std::vector<u8>> DealerLogic::handle(
    BlockTag tag, const std::vector<u8>& req1, const std::vector<u8>& req2) {
  PayloadReader r1{req1};
  PayloadReader r2{req2};
  std::vector<u8> out1, out2;
  PayloadWriter w1{out1};
  PayloadWriter w2{out2};

  // Fresh arithmetic / boolean resharing of a dealer-computed value; P1's
  // share is always drawn first so traces replay identically everywhere.
  auto share_val = [&](u64 val, int k) {
    const u64 a = rng_.uniform_bits(k);
    w1.u64_(a);
    w2.u64_(mod_bits(val - a, k));
  };
  auto share_bit = [&](int bit) {
    const u8 a = static_cast<u8>(rng_.bit());
    w1.u8_(a);
    w2.u8_(static_cast<u8>(a ^ bit));
  };

  switch (tag) {
    case BlockTag::kMsb: {
      const int l = r1.u8_();
      require(l == r2.u8_(), "msb: ring mismatch between parties");
      const u64 x = mod_bits(r1.u64_() + r2.u64_(), l);
      share_bit((x >> (l - 1)) & 1);
      break;
    }
    case BlockTag::kMsbToWrap: {
      const int l = r1.u8_();
      require(l == r2.u8_(), "msbTOwrap: ring mismatch between parties");
      const u64 x1 = r1.u64_();
      const u64 x2 = r2.u64_();
      const int m1 = r1.u8_();
      const int m2 = r2.u8_();
      // Contract: the boolean input genuinely shares msb(x).
      assert(((m1 ^ m2) & 1) ==
             static_cast<int>((mod_bits(x1 + x2, l) >> (l - 1)) & 1));
      (void)m1;
      (void)m2;
      share_bit(wrap_oracle(x1, x2, l));
      break;
    }
    case BlockTag::kMux: {
      const int k = r1.u8_();
      require(k == r2.u8_(), "mux: ring mismatch between parties");
      const u64 x1 = r1.u64_();
      const u64 x2 = r2.u64_();
      const int b = (r1.u8_() ^ r2.u8_()) & 1;
      share_val(b ? mod_bits(x1 + x2, k) : 0, k);
      break;
    }
    case BlockTag::kAnd: {
      const int x = (r1.u8_() ^ r2.u8_()) & 1;
      const int y = (r1.u8_() ^ r2.u8_()) & 1;
      share_bit(x & y);
      break;
    }
    case BlockTag::kB2A: {
      const int l = r1.u8_();
      require(l == r2.u8_(), "b2a: ring mismatch between parties");
      const int b = (r1.u8_() ^ r2.u8_()) & 1;
      share_val(static_cast<u64>(b), l);
      break;
    }
    case BlockTag::kCrossTerm: {
      const int out = r1.u8_();
      require(out == r2.u8_(), "cross term: output ring mismatch");
      const u64 prod = static_cast<u64>(
          static_cast<u128>(r1.u64_()) * static_cast<u128>(r2.u64_()));
      share_val(mod_bits(prod, out), out);
      break;
    }
    case BlockTag::kMult: {
      const int m = r1.u8_();
      const int n = r1.u8_();
      require(m == r2.u8_() && n == r2.u8_(), "mult: ring mismatch");
      const u64 x1 = r1.u64_();
      const u64 y1 = r1.u64_();
      const u64 x2 = r2.u64_();
      const u64 y2 = r2.u64_();
      const int out = std::min(m + n, 64);
      const u64 x = mod_bits(x1 + x2, m);
      const u64 y = mod_bits(y1 + y2, n);
      const u64 prod =
          static_cast<u64>(static_cast<u128>(x) * static_cast<u128>(y));
      share_val(mod_bits(prod, out), out);
      break;
    }
    case BlockTag::kTruncate: {
      const int l = r1.u8_();
      const int t = r1.u8_();
      require(l == r2.u8_() && t == r2.u8_(), "truncate: param mismatch");
      const u64 x = mod_bits(r1.u64_() + r2.u64_(), l);
      share_val(x >> t, l - t);
      break;
    }
    case BlockTag::kRec: {
      const int k = r1.u8_();
      const int s = r1.u8_();
      require(k == r2.u8_() && s == r2.u8_(), "rec: param mismatch");
      const u64 v = mod_bits(r1.u64_() + r2.u64_(), k);
      // Requires rev(v) in [1,2).
      assert(v >= (u64{1} << s) && v < (u64{1} << (s + 1)));
      u64 out = 0;
      if (v != 0) {
        const u128 num = static_cast<u128>(1) << (2 * s);
        u128 q = num / v;
        const u128 rem = num % v;
        const u128 twice = rem * 2;
        if (twice > v || (twice == v && (q & 1))) ++q;  // ties to even
        out = static_cast<u64>(q);
      }
      share_val(mod_bits(out, k), k);
      break;
    }
    case BlockTag::kWrap: {
      const int l = r1.u8_();
      require(l == r2.u8_(), "wrap: ring mismatch");
      share_bit(wrap_oracle(r1.u64_(), r2.u64_(), l));
      break;
    }
    case BlockTag::kTripleBit: {
      const int a = rng_.bit(), b = rng_.bit(), c0 = rng_.bit();
      const int a2 = rng_.bit(), b2 = rng_.bit();
      const int c = (a ^ a2) & (b ^ b2);
      w1.u8_(static_cast<u8>(a | (b << 1) | (c0 << 2)));
      w2.u8_(static_cast<u8>(a2 | (b2 << 1) | ((c ^ c0) << 2)));
      break;
    }
    case BlockTag::kTripleMux: {
      const int k = r1.u8_();
      require(k == r2.u8_(), "mux triple: ring mismatch");
      const int rb = rng_.bit();
      const int rb1 = rng_.bit();
      const u64 m = rng_.uniform_bits(k);
      const u64 rm = rb ? m : 0;
      w1.u8_(static_cast<u8>(rb1));
      w2.u8_(static_cast<u8>(rb1 ^ rb));
      const u64 ra1 = rng_.uniform_bits(k);
      w1.u64_(ra1);
      w2.u64_(mod_bits(static_cast<u64>(rb) - ra1, k));
      const u64 m1 = rng_.uniform_bits(k);
      w1.u64_(m1);
      w2.u64_(mod_bits(m - m1, k));
      const u64 rm1 = rng_.uniform_bits(k);
      w1.u64_(rm1);
      w2.u64_(mod_bits(rm - rm1, k));
      break;
    }
    case BlockTag::kTripleCross: {
      const int out = r1.u8_();
      require(out == r2.u8_(), "cross triple: ring mismatch");
      const u64 ra = rng_.uniform_bits(out);
      const u64 rb = rng_.uniform_bits(out);
      const u64 prod = mod_bits(
          static_cast<u64>(static_cast<u128>(ra) * static_cast<u128>(rb)),
          out);
      const u64 u1 = rng_.uniform_bits(out);
      w1.u64_(ra);
      w1.u64_(u1);
      w2.u64_(rb);
      w2.u64_(mod_bits(prod - u1, out));
      break;
    }
    case BlockTag::kTripleProd: {
      const int K = r1.u8_();
      require(K == r2.u8_(), "product triple: ring mismatch");
      const u64 a = rng_.uniform_bits(K);
      const u64 b = rng_.uniform_bits(K);
      const u64 c = mod_bits(
          static_cast<u64>(static_cast<u128>(a) * static_cast<u128>(b)), K);
      const u64 a1 = rng_.uniform_bits(K);
      const u64 b1 = rng_.uniform_bits(K);
      const u64 c1 = rng_.uniform_bits(K);
      w1.u64_(a1);
      w1.u64_(b1);
      w1.u64_(c1);
      w2.u64_(mod_bits(a - a1, K));
      w2.u64_(mod_bits(b - b1, K));
      w2.u64_(mod_bits(c - c1, K));
      break;
    }
    default:
      throw ContractViolation("dealer: unknown block tag");
  }
  return {std::move(out1), std::move(out2)};
}

}  // namespace opaf
