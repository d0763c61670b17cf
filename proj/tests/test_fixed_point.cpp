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

#include "doctest.h"
#include "opaf/reference.hpp"
#include "opaf/rng.hpp"

using namespace opaf;

TEST_CASE("fix encodes onto the grid with floor semantics") {
  CHECK(fix(1.0, {16, 12}).raw == 4096);
  CHECK(fix(-1.0, {16, 12}).raw == 61440);  // 65536 - 4096
  CHECK(fix(2.5, {8, 2}).raw == 10);
  CHECK(fix(-0.0, {16, 12}).raw == 0);
  // floor toward negative infinity, not truncation
  CHECK(fix(-0.1, {8, 2}).raw == mod_bits(static_cast<u64>(-1), 8));
  CHECK_THROWS_AS(fix(1.0, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(fix(1.0, {16, 16}), std::invalid_argument);
  CHECK_THROWS_AS(fix(std::nan(""), {16, 12}), std::invalid_argument);
  CHECK_THROWS_AS(fix(1e30, {16, 12}), std::invalid_argument);
}

TEST_CASE("msb boundary and negative encodings") {
  CHECK(msb({32768, {16, 12}}) == 1);
  CHECK(msb({32767, {16, 12}}) == 0);
  CHECK(msb({61440, {16, 12}}) == 1);
  CHECK(msb({0, {16, 12}}) == 0);
}

TEST_CASE("sfp signed reading") {
  CHECK(sfp({61440, {16, 12}}) == -4096);
  CHECK(sfp({4096, {16, 12}}) == 4096);
  CHECK(sfp({0, {16, 12}}) == 0);
}

TEST_CASE("rev examples") {
  CHECK(rev({61440, {16, 12}}) == -1.0L);
  CHECK(rev({10, {8, 2}}) == 2.5L);
  CHECK(rev({0, {16, 12}}) == 0.0L);
}

TEST_CASE("ulp_error counts grid steps against ties-to-even rounding") {
  const FxNum half = fix(0.5, {16, 12});
  CHECK(ulp_error(real128{0.5}, half) == 0);
  CHECK(ulp_error(real128{0.5} + scalbnq(real128{1}, -12), half) == 1);
  // e^-1: round(0.36787944*4096) = 1507
  CHECK(ulp_error(exp_ref(real128{-1}), FxNum{1503, {16, 12}}) == 4);
}

TEST_CASE("round-trip on grid points") {
  for (int k = -2048; k < 2048; ++k) {
    const long double x = ldexpl(static_cast<long double>(k), -12);
    const FxNum fx = fix(static_cast<double>(x), {16, 12});
    CHECK(rev(fx) == x);
  }
}

TEST_CASE("msb/sfp consistency and zero self-ulp, exhaustive l=16") {
  const FixedConfig cfg{16, 12};
  for (u64 r = 0; r < (u64{1} << 16); ++r) {
    const FxNum x{r, cfg};
    CHECK((sfp(x) < 0) == (msb(x) == 1));
    CHECK(ulp_error(static_cast<real128>(rev(x)), x) == 0);
  }
}

TEST_CASE("fix is additive on in-range grid points") {
  const FixedConfig cfg{16, 8};
  SeededRng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const i64 a = static_cast<i64>(rng.uniform_bits(13)) - 4096;
    const i64 b = static_cast<i64>(rng.uniform_bits(13)) - 4096;
    const double af = std::ldexp(static_cast<double>(a), -8);
    const double bf = std::ldexp(static_cast<double>(b), -8);
    const u64 lhs = mod_bits(fix(af, cfg).raw + fix(bf, cfg).raw, 16);
    CHECK(lhs == fix(af + bf, cfg).raw);
  }
}
