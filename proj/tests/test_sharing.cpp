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

#include <array>
#include <stdexcept>

#include "doctest.h"
#include "opaf/types.hpp"

using namespace opaf;

TEST_CASE("forced share completion") {
  // x = 0, share1 = 7, k = 4 -> share2 = 9
  CHECK(mod_bits(0 - 7, 4) == 9);
  CHECK(reconst_arith({7, 4, Party::P1}, {9, 4, Party::P2}) == 0);
  // x = 12, share1 = 12, k = 8 -> share2 = 0
  CHECK(reconst_arith({12, 8, Party::P1}, {0, 8, Party::P2}) == 12);
  SeededRng rng(1);
  CHECK_THROWS_AS(share_arith(70000, 16, rng), std::invalid_argument);
}

TEST_CASE("reconst examples and round trip") {
  CHECK(reconst_arith({40000, 16, Party::P1}, {30000, 16, Party::P2}) == 4464);
  CHECK(reconst_arith({0, 16, Party::P1}, {0, 16, Party::P2}) == 0);
  CHECK_THROWS_AS(reconst_arith({1, 16, Party::P1}, {1, 32, Party::P2}),
                  std::invalid_argument);
  SeededRng rng(42);
  for (int k : {16, 32, 64}) {
    for (int i = 0; i < 1000; ++i) {
      const u64 x = rng.uniform_bits(k);
      auto [s1, s2] = share_arith(x, k, rng);
      CHECK(reconst_arith(s1, s2) == x);
    }
  }
}

TEST_CASE("wrap oracle") {
  CHECK(wrap_oracle(40000, 30000, 16) == 1);
  CHECK(wrap_oracle(1, 1, 16) == 0);
  CHECK(wrap_oracle(65535, 1, 16) == 1);
}

TEST_CASE("bool sharing") {
  CHECK(reconst_bool({1, Party::P1}, {0, Party::P2}) == 1);
  CHECK(reconst_bool({1, Party::P1}, {1, Party::P2}) == 0);
  SeededRng rng(5);
  for (int b : {0, 1}) {
    auto [b1, b2] = share_bool(b, rng);
    CHECK(reconst_bool(b1, b2) == b);
  }
  CHECK_THROWS_AS(share_bool(2, rng), std::invalid_argument);
}

TEST_CASE("local affine matches the 2x+1 step and general linearity") {
  const std::array<i64, 1> two{2};
  const std::array<ArithShare, 1> p1{ArithShare{5, 16, Party::P1}};
  const std::array<ArithShare, 1> p2{ArithShare{9, 16, Party::P2}};
  CHECK(local_affine(two, p1, 1, Party::P1).raw == 11);  // 2*5 + 1
  CHECK(local_affine(two, p2, 1, Party::P2).raw == 18);  // constant at P1 only

  SeededRng rng(7);
  for (int k : {16, 32, 64}) {
    for (int i = 0; i < 10000; ++i) {
      const u64 x = rng.uniform_bits(k);
      const u64 y = rng.uniform_bits(k);
      auto [x1, x2] = share_arith(x, k, rng);
      auto [y1, y2] = share_arith(y, k, rng);
      const i64 a = static_cast<i64>(rng.uniform_bits(8)) - 128;
      const i64 b = static_cast<i64>(rng.uniform_bits(8)) - 128;
      const i64 c = static_cast<i64>(rng.uniform_bits(8)) - 128;
      const std::array<i64, 2> coeffs{a, b};
      const std::array<ArithShare, 2> sh1{x1, y1};
      const std::array<ArithShare, 2> sh2{x2, y2};
      const u64 got = reconst_arith(local_affine(coeffs, sh1, c, Party::P1),
                                    local_affine(coeffs, sh2, c, Party::P2));
      const u64 want = mod_bits(static_cast<u64>(a) * x +
                                    static_cast<u64>(b) * y +
                                    static_cast<u64>(c),
                                k);
      CHECK(got == want);
    }
  }
  CHECK_THROWS_AS(
      local_affine(std::array<i64, 2>{1, 1},
                   std::array<ArithShare, 2>{ArithShare{0, 16, Party::P1},
                                             ArithShare{0, 32, Party::P1}},
                   0, Party::P1),
      std::invalid_argument);
}

TEST_CASE("wrap/msb/reconst identity, exhaustive k=8") {
  // x1 + x2 - wrap*2^k reconstructs x over the integers.
  for (u64 x1 = 0; x1 < 256; ++x1) {
    for (u64 x2 = 0; x2 < 256; ++x2) {
      const i64 lhs = static_cast<i64>(x1 + x2) -
                      wrap_oracle(x1, x2, 8) * 256;
      CHECK(static_cast<u64>(lhs) ==
            reconst_arith({x1, 8, Party::P1}, {x2, 8, Party::P2}));
    }
  }
}

TEST_CASE("ring lift and reduce") {
  const ArithShare s{10, 16, Party::P1};
  CHECK(ring_lift(s, 32).raw == 10);
  CHECK(ring_lift(s, 32).k == 32);
  CHECK(ring_lift({0, 16, Party::P1}, 64).raw == 0);
  CHECK_THROWS_AS(ring_lift({10, 32, Party::P1}, 16), std::invalid_argument);
  CHECK(ring_reduce({0x12345, 32, Party::P1}, 16).raw == 0x2345);
  CHECK_THROWS_AS(ring_reduce(s, 32), std::invalid_argument);
}
