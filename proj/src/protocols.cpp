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

#include <cmath>
#include <stdexcept>

namespace opaf {

const char* fn_name(Fn fn) {
  switch (fn) {
    case Fn::Exp: return "exp";
    case Fn::Expn: return "expn";
    case Fn::Sigmoid: return "sigmoid";
    case Fn::Tanh: return "tanh";
  }
  return "?";
}

Fn fn_from_name(const std::string& name) {
  if (name == "exp") return Fn::Exp;
  if (name == "expn") return Fn::Expn;
  if (name == "sigmoid") return Fn::Sigmoid;
  if (name == "tanh") return Fn::Tanh;
  throw std::invalid_argument("unknown function: " + name);
}

ProtocolParams ProtocolParams::defaults(Fn fn, int s) {
  ProtocolParams p;
  p.s = s;
  p.l = s + 4;
  p.n_bits = 64;
  switch (fn) {
    case Fn::Exp:
      p.s_prime = s + 9;
      p.bw_o = s + 13;
      break;
    case Fn::Expn:
      p.s_prime = s + 12;
      p.bw_o = s + 2;
      break;
    case Fn::Sigmoid:
      p.s_prime = s + 9;
      p.bw_o = s + 2;
      break;
    case Fn::Tanh:
      p.s_prime = s + 11;
      p.bw_o = s + 2;
      break;
  }
  return p;
}

void ProtocolParams::validate(Fn fn) const {
  if (s < 1 || l <= s || l > 52) {
    throw ContractViolation("params: need 1 <= s < l <= 52");
  }
  if (s_prime < s) {
    throw ContractViolation("params: internal scale s' must be >= s");
  }
  if (bw_o <= s) {
    throw ContractViolation("params: output bitwidth must exceed the scale");
  }
  if (n_bits < l || n_bits > 64) {
    throw ContractViolation("params: intermediate ring outside l..64");
  }
  if (bw_o - s + 2 * s_prime > n_bits) {
    throw ContractViolation(
        "params: bw_o - s + 2s' exceeds the intermediate ring");
  }
  if (cross_width() > 64) {
    throw ContractViolation("params: local table width exceeds 64 bits");
  }
  if (fn == Fn::Tanh && int_bits() < 2) {
    throw ContractViolation("tanh: needs at least 2 integer bits");
  }
}

int ProtocolParams::cross_width() const {
  const double max_mag = std::ldexp(1.0, int_bits() - 1);  // e.g. 8.0
  const int int_part = static_cast<int>(std::ceil(max_mag * std::log2(std::exp(1.0))));
  return int_part + s_prime;
}

ProtocolOutput exp_protocol(Exec& ex, const PairArith& x,
                            const ProtocolParams& p) {
  p.validate(Fn::Exp);
  if (x.k() != p.l) throw ContractViolation("exp: input ring differs from l");
  const int w = p.cross_width();
  PairPriv ta = ex.exp_table(x, 0.0, p.s, p.s_prime, w);
  PairPriv tb = ex.exp_table(x, 0.5, p.s, p.s_prime, w);
  PairPriv tc = ex.exp_table(x, 1.0, p.s, p.s_prime, w);
  PairArith ap = ex.f_cross_term(ta, w, w, p.n_bits);
  PairArith bp = ex.f_cross_term(tb, w, w, p.n_bits);
  PairArith cp = ex.f_cross_term(tc, w, w, p.n_bits);
  PairBool mb = ex.f_msb(x);
  PairBool wr = ex.f_msb_to_wrap(x, mb);
  PairBool w_and_m = ex.f_and(wr, mb);
  PairBool w_xor_m = ex.xor_bits(wr, mb);
  PairArith b_minus_a = ex.affine({{1, &bp}, {-1, &ap}}, 0, p.n_bits);
  PairArith c_minus_a = ex.affine({{1, &cp}, {-1, &ap}}, 0, p.n_bits);
  PairArith t1 = ex.f_mux(b_minus_a, w_xor_m);
  PairArith t2 = ex.f_mux(c_minus_a, w_and_m);
  PairArith rst = ex.affine({{1, &t1}, {1, &t2}, {1, &ap}}, 0, p.n_bits);
  PairArith y = ex.f_truncate(rst, p.trunc_shift());
  return {ex.reduce(y, p.bw_o)};
}

ProtocolOutput expn_protocol(Exec& ex, const PairArith& x,
                             const ProtocolParams& p) {
  p.validate(Fn::Expn);
  if (x.k() != p.l) throw ContractViolation("expn: input ring differs from l");
  const int w = p.cross_width();
  PairPriv ta = ex.exp_table(x, 0.5, p.s, p.s_prime, w);
  PairPriv tb = ex.exp_table(x, 1.0, p.s, p.s_prime, w);
  PairArith ap = ex.f_cross_term(ta, w, w, p.n_bits);
  PairArith bp = ex.f_cross_term(tb, w, w, p.n_bits);
  PairBool mb = ex.const_bool(0, 1);  // strictly negative input: msb(x) = 1
  PairBool wr = ex.f_msb_to_wrap(x, mb);
  PairArith b_minus_a = ex.affine({{1, &bp}, {-1, &ap}}, 0, p.n_bits);
  PairArith t = ex.f_mux(b_minus_a, wr);
  PairArith rst = ex.affine({{1, &t}, {1, &ap}}, 0, p.n_bits);
  PairArith y = ex.f_truncate(rst, p.trunc_shift());
  return {ex.reduce(y, p.bw_o)};
}

ProtocolOutput sigmoid_protocol(Exec& ex, const PairArith& x,
                                const ProtocolParams& p) {
  p.validate(Fn::Sigmoid);
  if (x.k() != p.l) {
    throw ContractViolation("sigmoid: input ring differs from l");
  }
  const i64 one = i64{1} << p.s;
  PairArith two_x_one = ex.affine({{2, &x}}, 1, p.l);
  PairBool mb = ex.f_msb(x);
  PairArith sel = ex.f_mux(two_x_one, mb);
  // negx = (2x+1)*msb - x - 1: equals -(x+1) for msb=0 and x for msb=1, so
  // rev(negx) < 0 always.
  PairArith negx = ex.affine({{1, &sel}, {-1, &x}}, -1, p.l);
  PairArith e;
  {
    CompositeScope scope(ex, "expn");
    e = expn_protocol(ex, negx, p).share;
  }
  PairArith denom = ex.affine({{1, &e}}, one, p.bw_o);  // 1 + e^rev(negx) in [1,2)
  PairArith rec = ex.f_rec(denom, p.s);
  PairArith flip = ex.affine({{-2, &rec}}, one, p.bw_o);  // 1 - 2*rec
  PairArith sel2 = ex.f_mux(flip, mb);
  PairArith y = ex.affine({{1, &rec}, {1, &sel2}}, 0, p.bw_o);
  return {y};
}

ProtocolOutput tanh_protocol(Exec& ex, const PairArith& x,
                             const ProtocolParams& p) {
  p.validate(Fn::Tanh);
  if (x.k() != p.l) throw ContractViolation("tanh: input ring differs from l");
  const i64 one = i64{1} << p.s;
  PairArith x2 = ex.affine({{2, &x}}, 0, p.l);
  PairArith sig = sigmoid_protocol(ex, x2, p).share;
  PairArith y = ex.affine({{2, &sig}}, -one, p.bw_o);
  return {y};
}

ProtocolOutput run_protocol(Fn fn, Exec& ex, const PairArith& x,
                            const ProtocolParams& p) {
  switch (fn) {
    case Fn::Exp: return exp_protocol(ex, x, p);
    case Fn::Expn: return expn_protocol(ex, x, p);
    case Fn::Sigmoid: return sigmoid_protocol(ex, x, p);
    case Fn::Tanh: return tanh_protocol(ex, x, p);
  }
  throw std::logic_error("unreachable");
}

double clamp_domain(Fn fn, double x_f, const ProtocolParams& p,
                    CostLedger& ledger) {
  const double ulp = std::ldexp(1.0, -p.s);
  const double half = std::ldexp(1.0, p.int_bits() - 1);
  double lo, hi;
  switch (fn) {
    case Fn::Exp:
    case Fn::Sigmoid:
      lo = -half;
      hi = half - ulp;
      break;
    case Fn::Expn:
      lo = -half;
      hi = -ulp;
      break;
    case Fn::Tanh:
      lo = -half / 2 + ulp;
      hi = half / 2 - ulp;
      break;
    default:
      throw std::logic_error("unreachable");
  }
  if (x_f < lo) {
    ++ledger.domain_clamps;
    return lo;
  }
  if (x_f > hi) {
    ++ledger.domain_clamps;
    return hi;
  }
  return x_f;
}

}  // namespace opaf
