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

#include <cassert>

namespace opaf {

namespace {

void check_pair_ring(const PairArith& x, const char* what) {
  if (x.s[0].k != x.s[1].k) throw ContractViolation(what);
}

}  // namespace

LocalExec::LocalExec(BackendKind backend, const CostModel& model,
                     u64 dealer_seed, u32 session_id)
    : Exec(model, /*own_p1=*/true, /*own_p2=*/true),
      backend_(backend),
      dealer_(dealer_seed),
      session_(session_id) {
  std::tie(p1_dealer_, dealer_p1_) = make_inprocess_pair();
  std::tie(p2_dealer_, dealer_p2_) = make_inprocess_pair();
  std::tie(p1_peer_, p2_peer_) = make_inprocess_pair();
}

std::pair<LocalExec::Payload, LocalExec::Payload> LocalExec::dealer_round(
    BlockTag tag, Payload req1, Payload req2) {
  Frame f1{session_, static_cast<u8>(tag), p1_dealer_->next_seq(session_),
           std::move(req1)};
  p1_dealer_->send(f1);
  Frame f2{session_, static_cast<u8>(tag), p2_dealer_->next_seq(session_),
           std::move(req2)};
  p2_dealer_->send(f2);
  Frame in1 = dealer_p1_->recv();
  Frame in2 = dealer_p2_->recv();
  auto [resp1, resp2] = dealer_.handle(tag, in1.payload, in2.payload);
  dealer_p1_->send(Frame{session_, static_cast<u8>(tag),
                         dealer_p1_->next_seq(session_), std::move(resp1)});
  dealer_p2_->send(Frame{session_, static_cast<u8>(tag),
                         dealer_p2_->next_seq(session_), std::move(resp2)});
  return {p1_dealer_->recv().payload, p2_dealer_->recv().payload};
}

std::pair<LocalExec::Payload, LocalExec::Payload> LocalExec::exchange_opens(
    Payload from_p1, Payload from_p2) {
  p1_peer_->send(Frame{session_, static_cast<u8>(BlockTag::kOpen),
                       p1_peer_->next_seq(session_), std::move(from_p1)});
  p2_peer_->send(Frame{session_, static_cast<u8>(BlockTag::kOpen),
                       p2_peer_->next_seq(session_), std::move(from_p2)});
  Payload at_p2 = p2_peer_->recv().payload;  // what P1 sent
  Payload at_p1 = p1_peer_->recv().payload;  // what P2 sent
  return {std::move(at_p1), std::move(at_p2)};
}

PairArith LocalExec::share_from(const Payload& r1, const Payload& r2, int k) {
  PayloadReader a{r1}, b{r2};
  return PairArith{{ArithShare{a.u64_(), k, Party::P1},
                    ArithShare{b.u64_(), k, Party::P2}}};
}

PairBool LocalExec::bit_from(const Payload& r1, const Payload& r2) {
  PayloadReader a{r1}, b{r2};
  return PairBool{{BoolShare{a.u8_(), Party::P1},
                   BoolShare{b.u8_(), Party::P2}}};
}

PairBool LocalExec::f_msb(const PairArith& x) {
  check_pair_ring(x, "msb: inconsistent share rings");
  const int l = x.k();
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(l));
  w1.u64_(x.s[0].raw);
  w2.u8_(static_cast<u8>(l));
  w2.u64_(x.s[1].raw);
  auto [r1, r2] = dealer_round(BlockTag::kMsb, std::move(q1), std::move(q2));
  charge("msb", model_.msb_bits(l), 2);
  return bit_from(r1, r2);
}

PairBool LocalExec::f_msb_to_wrap(const PairArith& x, const PairBool& msb_sh) {
  check_pair_ring(x, "msbTOwrap: inconsistent share rings");
  const int l = x.k();
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(l));
  w1.u64_(x.s[0].raw);
  w1.u8_(msb_sh.b[0].bit);
  w2.u8_(static_cast<u8>(l));
  w2.u64_(x.s[1].raw);
  w2.u8_(msb_sh.b[1].bit);
  auto [r1, r2] =
      dealer_round(BlockTag::kMsbToWrap, std::move(q1), std::move(q2));
  charge("msbTOwrap", model_.msb_to_wrap_bits(), 1);
  return bit_from(r1, r2);
}

PairArith LocalExec::beaver_mux_raw(const PairArith& x, const PairBool& b) {
  const int k = x.k();
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(k));
  w2.u8_(static_cast<u8>(k));
  auto [t1, t2] =
      dealer_round(BlockTag::kTripleMux, std::move(q1), std::move(q2));
  PayloadReader a{t1}, c{t2};
  const u8 r1 = a.u8_();
  const u64 ra1 = a.u64_(), m1 = a.u64_(), rm1 = a.u64_();
  const u8 r2 = c.u8_();
  const u64 ra2 = c.u64_(), m2 = c.u64_(), rm2 = c.u64_();

  Payload o1, o2;
  PayloadWriter ow1{o1}, ow2{o2};
  ow1.u8_(static_cast<u8>(b.b[0].bit ^ r1));
  ow1.u64_(mod_bits(x.s[0].raw - m1, k));
  ow2.u8_(static_cast<u8>(b.b[1].bit ^ r2));
  ow2.u64_(mod_bits(x.s[1].raw - m2, k));
  auto [at1, at2] = exchange_opens(std::move(o1), std::move(o2));
  PayloadReader p1r{at1}, p2r{at2};  // at1: P2's open, at2: P1's open
  const u8 d2 = p1r.u8_();
  const u64 mu2 = p1r.u64_();
  const u8 d1 = p2r.u8_();
  const u64 mu1 = p2r.u64_();
  const u8 delta = static_cast<u8>((d1 ^ d2) & 1);
  const u64 mu = mod_bits(mu1 + mu2, k);
  return PairArith{
      {ArithShare{beaver_mux_combine(Party::P1, k, delta, mu, ra1, m1, rm1), k,
                  Party::P1},
       ArithShare{beaver_mux_combine(Party::P2, k, delta, mu, ra2, m2, rm2), k,
                  Party::P2}}};
}

PairArith LocalExec::f_mux(const PairArith& x, const PairBool& b) {
  check_pair_ring(x, "mux: inconsistent share rings");
  const int k = x.k();
  charge("Mux", model_.mux_bits(k), 1);
  if (backend_ == BackendKind::BeaverDealer) return beaver_mux_raw(x, b);
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(k));
  w1.u64_(x.s[0].raw);
  w1.u8_(b.b[0].bit);
  w2.u8_(static_cast<u8>(k));
  w2.u64_(x.s[1].raw);
  w2.u8_(b.b[1].bit);
  auto [r1, r2] = dealer_round(BlockTag::kMux, std::move(q1), std::move(q2));
  return share_from(r1, r2, k);
}

PairBool LocalExec::f_and(const PairBool& x, const PairBool& y) {
  charge("AND", model_.and_bits(), 1);
  if (backend_ == BackendKind::BeaverDealer) {
    auto [t1, t2] = dealer_round(BlockTag::kTripleBit, {}, {});
    PayloadReader a{t1}, b{t2};
    const u8 tr1 = a.u8_(), tr2 = b.u8_();
    const u8 a1 = tr1 & 1, b1 = (tr1 >> 1) & 1, c1 = (tr1 >> 2) & 1;
    const u8 a2 = tr2 & 1, b2 = (tr2 >> 1) & 1, c2 = (tr2 >> 2) & 1;
    Payload o1, o2;
    PayloadWriter ow1{o1}, ow2{o2};
    ow1.u8_(static_cast<u8>(x.b[0].bit ^ a1));
    ow1.u8_(static_cast<u8>(y.b[0].bit ^ b1));
    ow2.u8_(static_cast<u8>(x.b[1].bit ^ a2));
    ow2.u8_(static_cast<u8>(y.b[1].bit ^ b2));
    auto [at1, at2] = exchange_opens(std::move(o1), std::move(o2));
    PayloadReader p1r{at1}, p2r{at2};
    const u8 dx2 = p1r.u8_(), dy2 = p1r.u8_();
    const u8 dx1 = p2r.u8_(), dy1 = p2r.u8_();
    const u8 d = static_cast<u8>((dx1 ^ dx2) & 1);
    const u8 e = static_cast<u8>((dy1 ^ dy2) & 1);
    return PairBool{
        {BoolShare{beaver_and_combine(Party::P1, a1, b1, c1, d, e), Party::P1},
         BoolShare{beaver_and_combine(Party::P2, a2, b2, c2, d, e),
                   Party::P2}}};
  }
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(x.b[0].bit);
  w1.u8_(y.b[0].bit);
  w2.u8_(x.b[1].bit);
  w2.u8_(y.b[1].bit);
  auto [r1, r2] = dealer_round(BlockTag::kAnd, std::move(q1), std::move(q2));
  return bit_from(r1, r2);
}

PairArith LocalExec::f_b2a(const PairBool& x, int l) {
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(l));
  w1.u8_(x.b[0].bit);
  w2.u8_(static_cast<u8>(l));
  w2.u8_(x.b[1].bit);
  auto [r1, r2] = dealer_round(BlockTag::kB2A, std::move(q1), std::move(q2));
  charge("B2A", model_.b2a_bits(l), 1);
  return share_from(r1, r2, l);
}

PairArith LocalExec::f_cross_term(const PairPriv& a, int m, int n,
                                  int out_bits) {
  if (out_bits < 1 || out_bits > 64) {
    throw ContractViolation("cross term: output ring outside 1..64");
  }
  const u64 v1 = mod_bits(a.v[0], m);
  const u64 v2 = mod_bits(a.v[1], n);
  charge("CrossTerm", model_.cross_term_bits(m, n), 1);
  if (backend_ == BackendKind::BeaverDealer) {
    Payload q1, q2;
    PayloadWriter w1{q1}, w2{q2};
    w1.u8_(static_cast<u8>(out_bits));
    w2.u8_(static_cast<u8>(out_bits));
    auto [t1, t2] =
        dealer_round(BlockTag::kTripleCross, std::move(q1), std::move(q2));
    PayloadReader ta{t1}, tb{t2};
    const u64 r1 = ta.u64_(), u1 = ta.u64_();
    const u64 r2 = tb.u64_(), u2 = tb.u64_();
    Payload o1, o2;
    PayloadWriter ow1{o1}, ow2{o2};
    ow1.u64_(mod_bits(v1 - r1, out_bits));
    ow2.u64_(mod_bits(v2 - r2, out_bits));
    auto [at1, at2] = exchange_opens(std::move(o1), std::move(o2));
    PayloadReader p1r{at1}, p2r{at2};
    const u64 d2 = p1r.u64_();
    const u64 d1 = p2r.u64_();
    return PairArith{
        {ArithShare{beaver_cross_combine(Party::P1, out_bits, d1, d2, r1, u1),
                    out_bits, Party::P1},
         ArithShare{beaver_cross_combine(Party::P2, out_bits, d1, d2, r2, u2),
                    out_bits, Party::P2}}};
  }
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(out_bits));
  w1.u64_(v1);
  w2.u8_(static_cast<u8>(out_bits));
  w2.u64_(v2);
  auto [r1, r2] =
      dealer_round(BlockTag::kCrossTerm, std::move(q1), std::move(q2));
  return share_from(r1, r2, out_bits);
}

PairArith LocalExec::f_mult(const PairArith& x, const PairArith& y) {
  check_pair_ring(x, "mult: inconsistent x rings");
  check_pair_ring(y, "mult: inconsistent y rings");
  const int m = x.k();
  const int n = y.k();
  if (m + n > 64) throw ContractViolation("mult: m+n exceeds 64");
  const int K = m + n;
  charge("Mult", model_.mult_bits(m, n), 1);
  if (backend_ == BackendKind::IdealDealer) {
    Payload q1, q2;
    PayloadWriter w1{q1}, w2{q2};
    w1.u8_(static_cast<u8>(m));
    w1.u8_(static_cast<u8>(n));
    w1.u64_(x.s[0].raw);
    w1.u64_(y.s[0].raw);
    w2.u8_(static_cast<u8>(m));
    w2.u8_(static_cast<u8>(n));
    w2.u64_(x.s[1].raw);
    w2.u64_(y.s[1].raw);
    auto [r1, r2] = dealer_round(BlockTag::kMult, std::move(q1), std::move(q2));
    return share_from(r1, r2, K);
  }

  // Triple-backed core: multiply the lifted share sums, then cancel the
  // 2^m*wrap_x*y and 2^n*wrap_y*x excess. The wrap bits ride the dealer's
  // wrap facility (same trust class as msb); the product itself stays blind.
  auto wrap_bits = [&](const PairArith& v, int l) {
    Payload q1, q2;
    PayloadWriter w1{q1}, w2{q2};
    w1.u8_(static_cast<u8>(l));
    w1.u64_(v.s[0].raw);
    w2.u8_(static_cast<u8>(l));
    w2.u64_(v.s[1].raw);
    auto [r1, r2] = dealer_round(BlockTag::kWrap, std::move(q1), std::move(q2));
    return bit_from(r1, r2);
  };
  PairBool wx = wrap_bits(x, m);
  PairBool wy = wrap_bits(y, n);
  PairArith xh = lift(x, K);
  PairArith yh = lift(y, K);

  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(K));
  w2.u8_(static_cast<u8>(K));
  auto [t1, t2] =
      dealer_round(BlockTag::kTripleProd, std::move(q1), std::move(q2));
  PayloadReader ta{t1}, tb{t2};
  const u64 a1 = ta.u64_(), b1 = ta.u64_(), c1 = ta.u64_();
  const u64 a2 = tb.u64_(), b2 = tb.u64_(), c2 = tb.u64_();
  Payload o1, o2;
  PayloadWriter ow1{o1}, ow2{o2};
  ow1.u64_(mod_bits(xh.s[0].raw - a1, K));
  ow1.u64_(mod_bits(yh.s[0].raw - b1, K));
  ow2.u64_(mod_bits(xh.s[1].raw - a2, K));
  ow2.u64_(mod_bits(yh.s[1].raw - b2, K));
  auto [at1, at2] = exchange_opens(std::move(o1), std::move(o2));
  PayloadReader p1r{at1}, p2r{at2};
  const u64 dx2 = p1r.u64_(), dy2 = p1r.u64_();
  const u64 dx1 = p2r.u64_(), dy1 = p2r.u64_();
  const u64 d = mod_bits(dx1 + dx2, K);
  const u64 e = mod_bits(dy1 + dy2, K);
  PairArith prod{
      {ArithShare{beaver_prod_combine(Party::P1, K, d, e, a1, b1, c1), K,
                  Party::P1},
       ArithShare{beaver_prod_combine(Party::P2, K, d, e, a2, b2, c2), K,
                  Party::P2}}};

  PairArith t_wx = beaver_mux_raw(yh, wx);
  PairArith t_wy = beaver_mux_raw(xh, wy);
  PairArith out{};
  for (int p = 0; p < 2; ++p) {
    const u64 z = prod.s[p].raw - (t_wx.s[p].raw << m) - (t_wy.s[p].raw << n);
    out.s[p] = ArithShare{mod_bits(z, K), K, static_cast<Party>(p)};
  }
  return out;
}

PairArith LocalExec::f_truncate(const PairArith& x, int t) {
  check_pair_ring(x, "truncate: inconsistent share rings");
  const int l = x.k();
  if (t <= 0 || t >= l) throw ContractViolation("truncate: shift outside 0 < t < l");
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(l));
  w1.u8_(static_cast<u8>(t));
  w1.u64_(x.s[0].raw);
  w2.u8_(static_cast<u8>(l));
  w2.u8_(static_cast<u8>(t));
  w2.u64_(x.s[1].raw);
  auto [r1, r2] =
      dealer_round(BlockTag::kTruncate, std::move(q1), std::move(q2));
  charge("TR", model_.truncate_bits(l, t), 1);
  return share_from(r1, r2, l - t);
}

PairArith LocalExec::rec_ideal(const PairArith& v, int s) {
  check_pair_ring(v, "rec: inconsistent share rings");
  const int k = v.k();
  Payload q1, q2;
  PayloadWriter w1{q1}, w2{q2};
  w1.u8_(static_cast<u8>(k));
  w1.u8_(static_cast<u8>(s));
  w1.u64_(v.s[0].raw);
  w2.u8_(static_cast<u8>(k));
  w2.u8_(static_cast<u8>(s));
  w2.u64_(v.s[1].raw);
  auto [r1, r2] = dealer_round(BlockTag::kRec, std::move(q1), std::move(q2));
  return share_from(r1, r2, k);
}

u64 LocalExec::reconstruct(const PairArith& x) {
  return reconst_arith(x.s[0], x.s[1]);
}

int LocalExec::reconstruct_bit(const PairBool& b) {
  return reconst_bool(b.b[0], b.b[1]);
}

u64 LocalExec::wire_bytes() const {
  u64 total = 0;
  for (const Channel* c :
       {p1_dealer_.get(), p2_dealer_.get(), dealer_p1_.get(), dealer_p2_.get(),
        p1_peer_.get(), p2_peer_.get()}) {
    total += c->stats().bytes_sent;
  }
  return total;
}

u64 LocalExec::wire_frames() const {
  u64 total = 0;
  for (const Channel* c :
       {p1_dealer_.get(), p2_dealer_.get(), dealer_p1_.get(), dealer_p2_.get(),
        p1_peer_.get(), p2_peer_.get()}) {
    total += c->stats().frames_sent;
  }
  return total;
}

u64 LocalExec::wire_flights() const {
  u64 total = 0;
  for (const Channel* c : {p1_dealer_.get(), p2_dealer_.get(), p1_peer_.get()}) {
    total += c->stats().flights;
  }
  return total;
}

u64 LocalExec::sent_stream_hash() const {
  u64 h = 0xcbf29ce484222325ull;
  for (const Channel* c :
       {p1_dealer_.get(), p2_dealer_.get(), dealer_p1_.get(), dealer_p2_.get(),
        p1_peer_.get(), p2_peer_.get()}) {
    h ^= c->stats().sent_hash;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace opaf
