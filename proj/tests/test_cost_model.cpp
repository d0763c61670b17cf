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

#include "opaf/cost_model.hpp"

#include "doctest.h"

using namespace opaf;

// Hand-computed formula values at lambda=128, l=16, m=n=32, s=12.
TEST_CASE("per-block charged bits match hand-computed formulas") {
  CostModel m;
  CHECK(m.msb_bits(16) == 2272);  // 128*16 + 14*16
  CHECK(m.msb_to_wrap_bits() == 130);
  CHECK(m.mux_bits(16) == 288);  // 2*(128+16)
  CHECK(m.and_bits() == 148);    // lambda + 20
  CHECK(m.b2a_bits(16) == 144);
  // mu=32: 128*32 + 32*33/2 + 32*32 = 4096 + 528 + 1024
  CHECK(m.cross_term_bits(32, 32) == 5648);
  // mu=nu=32: 128*70 + 2*32*32 + 32*32 + 96 + 64 + 4
  CHECK(m.mult_bits(32, 32) == 12196);
  // t=12, l=16: 128*13 + 16 + 156
  CHECK(m.truncate_bits(16, 12) == 1836);
}

TEST_CASE("asymmetric widths use mu=min, nu=max") {
  CostModel m;
  CHECK(m.cross_term_bits(44, 20) == m.cross_term_bits(20, 44));
  // mu=20: 128*20 + 20*21/2 + 44*20
  CHECK(m.cross_term_bits(44, 20) == 2560 + 210 + 880);
  CHECK(m.mult_bits(44, 20) == m.mult_bits(20, 44));
  // mu=20, nu=44: 128*46 + 2*20*44 + 400 + 60 + 88 + 4
  CHECK(m.mult_bits(44, 20) == 5888 + 1760 + 400 + 60 + 88 + 4);
}

TEST_CASE("AND cost variant switch") {
  CostModel wide;
  wide.and_wide = true;
  CHECK(wide.and_bits() == 148);
  CostModel narrow;
  narrow.lambda = 100;
  CHECK(narrow.and_bits() == 120);
  narrow.and_wide = true;
  CHECK(narrow.and_bits() == 148);
}

TEST_CASE("reciprocal iteration schedule") {
  CHECK(CostModel::rec_iterations(8) == 2);   // 9/3.5 -> 2 doublings
  CHECK(CostModel::rec_iterations(12) == 2);  // 13/3.5
  CHECK(CostModel::rec_iterations(16) == 3);  // 17/3.5
  CHECK(CostModel::rec_iterations(2) == 0);
}

TEST_CASE("rec bits equal the summed pipeline formulas") {
  CostModel m;
  for (int s : {8, 12, 16}) {
    u64 want = 0;
    for (int i = 0; i < CostModel::rec_iterations(s); ++i) {
      want += m.mult_bits(s + 2, s + 2);
      want += m.mult_bits(s + 2, 2 * s + 4);
      want += m.truncate_bits(3 * s + 6, 2 * s + 1);
    }
    want += m.truncate_bits(s + 5, 1);
    CHECK(m.rec_bits(s, s + 2) == want);
    // widening to a 16-bit output appends the zero extension
    if (s + 4 < 16) {
      CHECK(m.rec_bits(s, 16) ==
            want + m.msb_to_wrap_bits() + m.b2a_bits(16));
    }
  }
}
