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

#include "opaf/protocols.hpp"

#include <quadmath.h>

#include "doctest.h"
#include "opaf/fixed_point.hpp"
#include "opaf/local_exec.hpp"
#include "opaf/reference.hpp"
#include "opaf/rnn_cell.hpp"

using namespace opaf;

namespace {

CostModel kModel;

struct RunOut {
  u64 raw;
  CostLedger ledger;
};

RunOut run_once(Fn fn, double x_f, const ProtocolParams& p, u64 seed,
                BackendKind bk = BackendKind::IdealDealer) {
  LocalExec ex(bk, kModel, seed);
  SeededRng rng(seed ^ 0xf00d);
  const u64 raw = fix(x_f, {p.l, p.s}).raw;
  PairArith x = ex.make_input(raw, p.l, rng);
  ProtocolOutput out = run_protocol(fn, ex, x, p);
  CHECK(out.share.k() == p.bw_o);
  return {ex.reconstruct(out.share), ex.ledger()};
}

u64 ulp_vs(Fn fn, double x_f, u64 raw_out, const ProtocolParams& p) {
  // The protocol sees the encoded input; the target is exact at that grid
  // point.
  const long double xg = rev(fix(x_f, {p.l, p.s}));
  const real128 target =
      fn == Fn::Sigmoid  ? sigmoid_target(xg, p.s)
      : fn == Fn::Tanh   ? tanh_target(xg, p.s)
                         : exp_ref(static_cast<real128>(xg));
  return ulp_error(target, FxNum{raw_out, {p.bw_o, p.s}});
}

void check_counts(const CostLedger& led,
                  const std::map<std::string, u64>& want) {
  std::map<std::string, u64> got;
  for (const auto& [k, v] : led.invocations) {
    if (k != "clamped") got[k] = v;
  }
  CHECK(got == want);
}

}  // namespace

TEST_CASE("protocol defaults follow the evaluation settings") {
  for (int s : {8, 12, 16}) {
    CHECK(ProtocolParams::defaults(Fn::Exp, s).s_prime == s + 9);
    CHECK(ProtocolParams::defaults(Fn::Exp, s).bw_o == s + 13);
    CHECK(ProtocolParams::defaults(Fn::Expn, s).s_prime == s + 12);
    CHECK(ProtocolParams::defaults(Fn::Expn, s).bw_o == s + 2);
    CHECK(ProtocolParams::defaults(Fn::Sigmoid, s).s_prime == s + 9);
    CHECK(ProtocolParams::defaults(Fn::Tanh, s).s_prime == s + 11);
    CHECK(ProtocolParams::defaults(Fn::Tanh, s).l == s + 4);
  }
  ProtocolParams bad = ProtocolParams::defaults(Fn::Exp, 12);
  bad.s_prime = 30;  // bw_o - s + 2s' > 64
  CHECK_THROWS_AS(bad.validate(Fn::Exp), ContractViolation);
  ProtocolParams narrow = ProtocolParams::defaults(Fn::Exp, 12);
  narrow.n_bits = 40;
  CHECK_THROWS_AS(narrow.validate(Fn::Exp), ContractViolation);
}

TEST_CASE("exp anchors: 0, -1, large positive") {
  const ProtocolParams p = ProtocolParams::defaults(Fn::Exp, 12);
  for (u64 seed : {1, 2, 3}) {
    CHECK(ulp_vs(Fn::Exp, 0.0, run_once(Fn::Exp, 0.0, p, seed).raw, p) <= 6);
    CHECK(ulp_vs(Fn::Exp, -1.0, run_once(Fn::Exp, -1.0, p, seed).raw, p) <= 6);
    CHECK(ulp_vs(Fn::Exp, 7.9, run_once(Fn::Exp, 7.9, p, seed).raw, p) <= 6);
  }
}

TEST_CASE("exp invocation counts equal the building-block table") {
  const ProtocolParams p = ProtocolParams::defaults(Fn::Exp, 12);
  check_counts(run_once(Fn::Exp, 1.25, p, 7).ledger,
               {{"CrossTerm", 3},
                {"msb", 1},
                {"msbTOwrap", 1},
                {"AND", 1},
                {"Mux", 2},
                {"TR", 1}});
}

TEST_CASE("expn anchors: one-ulp input, -1, deep tail") {
  ProtocolParams p = ProtocolParams::defaults(Fn::Expn, 12);
  p.s_prime = 12 + 15;
  const double ulp1 = -std::ldexp(1.0, -12);
  for (u64 seed : {1, 2, 3}) {
    CHECK(ulp_vs(Fn::Expn, ulp1, run_once(Fn::Expn, ulp1, p, seed).raw, p) <=
          1);
  }
  const ProtocolParams pd = ProtocolParams::defaults(Fn::Expn, 12);
  for (u64 seed : {1, 2, 3}) {
    CHECK(ulp_vs(Fn::Expn, -1.0, run_once(Fn::Expn, -1.0, pd, seed).raw, pd) <=
          2);
    CHECK(ulp_vs(Fn::Expn, -7.99, run_once(Fn::Expn, -7.99, pd, seed).raw,
                 pd) <= 2);
  }
}

TEST_CASE("expn invocation counts equal the building-block table") {
  const ProtocolParams p = ProtocolParams::defaults(Fn::Expn, 12);
  check_counts(run_once(Fn::Expn, -2.5, p, 11).ledger,
               {{"CrossTerm", 2}, {"msbTOwrap", 1}, {"Mux", 1}, {"TR", 1}});
}

TEST_CASE("sigmoid anchors: origin lands on Fix(0.5) or one above") {
  const ProtocolParams p = ProtocolParams::defaults(Fn::Sigmoid, 12);
  for (u64 seed : {1, 2, 3, 4}) {
    const u64 got = run_once(Fn::Sigmoid, 0.0, p, seed).raw;
    const u64 half = u64{1} << 11;
    CHECK(got >= half);
    CHECK(got <= half + 1);
  }
  for (u64 seed : {1, 2, 3}) {
    CHECK(ulp_vs(Fn::Sigmoid, -4.0, run_once(Fn::Sigmoid, -4.0, p, seed).raw,
                 p) <= 3);
    CHECK(ulp_vs(Fn::Sigmoid, 4.0, run_once(Fn::Sigmoid, 4.0, p, seed).raw,
                 p) <= 3);
  }
}

TEST_CASE("sigmoid/tanh invocation counts equal the building-block table") {
  const std::map<std::string, u64> row{
      {"msb", 1}, {"Mux", 2}, {"Rec", 1}, {"expn", 1}};
  const ProtocolParams ps = ProtocolParams::defaults(Fn::Sigmoid, 12);
  check_counts(run_once(Fn::Sigmoid, 1.5, ps, 13).ledger, row);
  const ProtocolParams pt = ProtocolParams::defaults(Fn::Tanh, 12);
  check_counts(run_once(Fn::Tanh, 1.5, pt, 13).ledger, row);
}

TEST_CASE("tanh anchors") {
  const ProtocolParams p = ProtocolParams::defaults(Fn::Tanh, 12);
  for (u64 seed : {1, 2, 3}) {
    CHECK(ulp_vs(Fn::Tanh, 0.0, run_once(Fn::Tanh, 0.0, p, seed).raw, p) <= 4);
    CHECK(ulp_vs(Fn::Tanh, 1.0, run_once(Fn::Tanh, 1.0, p, seed).raw, p) <= 4);
    CHECK(ulp_vs(Fn::Tanh, -3.5, run_once(Fn::Tanh, -3.5, p, seed).raw, p) <=
          4);
  }
}

TEST_CASE("model rounds do not depend on the scale") {
  for (Fn fn : {Fn::Exp, Fn::Expn, Fn::Sigmoid, Fn::Tanh}) {
    u64 rounds[2];
    int i = 0;
    for (int s : {12, 16}) {
      const ProtocolParams p = ProtocolParams::defaults(fn, s);
      const double x = fn == Fn::Expn ? -1.25 : 1.25;
      rounds[i++] = run_once(fn, x, p, 19).ledger.rounds;
    }
    CHECK(rounds[0] == rounds[1]);
  }
}

TEST_CASE("ledger bits match the closed-form composition") {
  for (Fn fn : {Fn::Exp, Fn::Expn, Fn::Sigmoid, Fn::Tanh}) {
    for (int s : {12, 16}) {
      const ProtocolParams p = ProtocolParams::defaults(fn, s);
      const double x = fn == Fn::Expn ? -0.75 : 0.75;
      const CostLedger led = run_once(fn, x, p, 23).ledger;
      CHECK(led.bits_sent == opaf_model_bits(fn, p, kModel));
    }
  }
}

TEST_CASE("structural saving vs the SIRNN composition at s=16") {
  for (Fn fn : {Fn::Sigmoid, Fn::Tanh}) {
    const ProtocolParams p = ProtocolParams::defaults(fn, 16);
    CHECK(opaf_model_bits(fn, p, kModel) < sirnn_model_bits(fn, p, kModel));
  }
}

TEST_CASE("identical results under both backends end to end") {
  for (Fn fn : {Fn::Exp, Fn::Expn, Fn::Sigmoid, Fn::Tanh}) {
    const ProtocolParams p = ProtocolParams::defaults(fn, 12);
    const double x = fn == Fn::Expn ? -1.7 : 1.7;
    for (u64 seed : {5, 6}) {
      CHECK(run_once(fn, x, p, seed, BackendKind::IdealDealer).raw ==
            run_once(fn, x, p, seed, BackendKind::BeaverDealer).raw);
    }
  }
}

TEST_CASE("domain clamping flags the ledger") {
  const ProtocolParams p = ProtocolParams::defaults(Fn::Sigmoid, 12);
  CostLedger led;
  CHECK(clamp_domain(Fn::Sigmoid, 9.5, p, led) ==
        doctest::Approx(8.0 - std::ldexp(1.0, -12)));
  CHECK(clamp_domain(Fn::Sigmoid, -9.5, p, led) == -8.0);
  CHECK(clamp_domain(Fn::Sigmoid, 1.0, p, led) == 1.0);
  CHECK(led.domain_clamps == 2);
  CostLedger led2;
  CHECK(clamp_domain(Fn::Tanh, 5.0, p, led2) ==
        doctest::Approx(4.0 - std::ldexp(1.0, -12)));
  CHECK(clamp_domain(Fn::Expn, 0.5, p, led2) == -std::ldexp(1.0, -12));
  CHECK(led2.domain_clamps == 2);
}
