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

#include "opaf/party_exec.hpp"

#include "opaf/fixed_point.hpp"
#include "opaf/sweep.hpp"

namespace opaf {

PartyExec::PartyExec(Party me, BackendKind backend, const CostModel& model,
                     std::unique_ptr<Channel> dealer_ch,
                     std::unique_ptr<Channel> peer_ch, u32 session_id,
                     bool allow_reveal)
    : Exec(model, me == Party::P1, me == Party::P2),
      me_(me),
      backend_(backend),
      session_(session_id),
      allow_reveal_(allow_reveal),
      dealer_ch_(std::move(dealer_ch)),
      peer_ch_(std::move(peer_ch)) {}

PartyExec::Payload PartyExec::dealer_round(BlockTag tag, Payload req) {
  dealer_ch_->send(Frame{session_, static_cast<u8>(tag),
                         dealer_ch_->next_seq(session_), std::move(req)});
  Frame resp = dealer_ch_->recv();
  if (resp.block_tag != static_cast<u8>(tag)) {
    throw TransportError("dealer response tag mismatch");
  }
  return std::move(resp.payload);
}

PartyExec::Payload PartyExec::exchange_open(Payload mine) {
  peer_ch_->send(Frame{session_, static_cast<u8>(BlockTag::kOpen),
                       peer_ch_->next_seq(session_), std::move(mine)});
  return peer_ch_->recv().payload;
}

PairBool PartyExec::f_msb(const PairArith& x) {
  const int l = x.k();
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(l));
  w.u64_(x.s[slot()].raw);
  Payload r = dealer_round(BlockTag::kMsb, std::move(q));
  charge("msb", model_.msb_bits(l), 2);
  PairBool out{};
  out.b[slot()] = BoolShare{PayloadReader{r}.u8_(), me_};
  return out;
}

PairBool PartyExec::f_msb_to_wrap(const PairArith& x, const PairBool& msb_sh) {
  const int l = x.k();
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(l));
  w.u64_(x.s[slot()].raw);
  w.u8_(msb_sh.b[slot()].bit);
  Payload r = dealer_round(BlockTag::kMsbToWrap, std::move(q));
  charge("msbTOwrap", model_.msb_to_wrap_bits(), 1);
  PairBool out{};
  out.b[slot()] = BoolShare{PayloadReader{r}.u8_(), me_};
  return out;
}

PairArith PartyExec::beaver_mux_raw(const PairArith& x, const PairBool& b) {
  const int k = x.k();
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(k));
  Payload t = dealer_round(BlockTag::kTripleMux, std::move(q));
  PayloadReader tr{t};
  const u8 r = tr.u8_();
  const u64 ra = tr.u64_(), m = tr.u64_(), rm = tr.u64_();
  Payload open;
  PayloadWriter ow{open};
  ow.u8_(static_cast<u8>(b.b[slot()].bit ^ r));
  ow.u64_(mod_bits(x.s[slot()].raw - m, k));
  Payload theirs = exchange_open(std::move(open));
  PayloadReader orr{theirs};
  const u8 d_theirs = orr.u8_();
  const u64 mu_theirs = orr.u64_();
  const u8 delta = static_cast<u8>((d_theirs ^ b.b[slot()].bit ^ r) & 1);
  const u64 mu = mod_bits(mu_theirs + mod_bits(x.s[slot()].raw - m, k), k);
  PairArith out{};
  out.s[slot()] =
      ArithShare{beaver_mux_combine(me_, k, delta, mu, ra, m, rm), k, me_};
  return out;
}

PairArith PartyExec::f_mux(const PairArith& x, const PairBool& b) {
  const int k = x.k();
  charge("Mux", model_.mux_bits(k), 1);
  if (backend_ == BackendKind::BeaverDealer) return beaver_mux_raw(x, b);
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(k));
  w.u64_(x.s[slot()].raw);
  w.u8_(b.b[slot()].bit);
  Payload r = dealer_round(BlockTag::kMux, std::move(q));
  PairArith out{};
  out.s[slot()] = ArithShare{PayloadReader{r}.u64_(), k, me_};
  return out;
}

PairBool PartyExec::f_and(const PairBool& x, const PairBool& y) {
  charge("AND", model_.and_bits(), 1);
  PairBool out{};
  if (backend_ == BackendKind::BeaverDealer) {
    Payload t = dealer_round(BlockTag::kTripleBit, {});
    const u8 packed = PayloadReader{t}.u8_();
    const u8 a = packed & 1, b = (packed >> 1) & 1, c = (packed >> 2) & 1;
    Payload open;
    PayloadWriter ow{open};
    const u8 dx = static_cast<u8>(x.b[slot()].bit ^ a);
    const u8 dy = static_cast<u8>(y.b[slot()].bit ^ b);
    ow.u8_(dx);
    ow.u8_(dy);
    Payload theirs = exchange_open(std::move(open));
    PayloadReader orr{theirs};
    const u8 d = static_cast<u8>((orr.u8_() ^ dx) & 1);
    const u8 e = static_cast<u8>((orr.u8_() ^ dy) & 1);
    out.b[slot()] = BoolShare{beaver_and_combine(me_, a, b, c, d, e), me_};
    return out;
  }
  Payload q;
  PayloadWriter w{q};
  w.u8_(x.b[slot()].bit);
  w.u8_(y.b[slot()].bit);
  Payload r = dealer_round(BlockTag::kAnd, std::move(q));
  out.b[slot()] = BoolShare{PayloadReader{r}.u8_(), me_};
  return out;
}

PairArith PartyExec::f_b2a(const PairBool& x, int l) {
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(l));
  w.u8_(x.b[slot()].bit);
  Payload r = dealer_round(BlockTag::kB2A, std::move(q));
  charge("B2A", model_.b2a_bits(l), 1);
  PairArith out{};
  out.s[slot()] = ArithShare{PayloadReader{r}.u64_(), l, me_};
  return out;
}

PairArith PartyExec::f_cross_term(const PairPriv& a, int m, int n,
                                  int out_bits) {
  if (out_bits < 1 || out_bits > 64) {
    throw ContractViolation("cross term: output ring outside 1..64");
  }
  const u64 mine = mod_bits(a.v[slot()], me_ == Party::P1 ? m : n);
  charge("CrossTerm", model_.cross_term_bits(m, n), 1);
  PairArith out{};
  if (backend_ == BackendKind::BeaverDealer) {
    Payload q;
    PayloadWriter w{q};
    w.u8_(static_cast<u8>(out_bits));
    Payload t = dealer_round(BlockTag::kTripleCross, std::move(q));
    PayloadReader tr{t};
    const u64 r = tr.u64_(), u = tr.u64_();
    Payload open;
    PayloadWriter ow{open};
    const u64 d_mine = mod_bits(mine - r, out_bits);
    ow.u64_(d_mine);
    Payload theirs = exchange_open(std::move(open));
    const u64 d_theirs = PayloadReader{theirs}.u64_();
    const u64 d1 = me_ == Party::P1 ? d_mine : d_theirs;
    const u64 d2 = me_ == Party::P1 ? d_theirs : d_mine;
    out.s[slot()] =
        ArithShare{beaver_cross_combine(me_, out_bits, d1, d2, r, u), out_bits,
                   me_};
    return out;
  }
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(out_bits));
  w.u64_(mine);
  Payload r = dealer_round(BlockTag::kCrossTerm, std::move(q));
  out.s[slot()] = ArithShare{PayloadReader{r}.u64_(), out_bits, me_};
  return out;
}

PairArith PartyExec::f_mult(const PairArith& x, const PairArith& y) {
  const int m = x.k();
  const int n = y.k();
  if (m + n > 64) throw ContractViolation("mult: m+n exceeds 64");
  const int K = m + n;
  charge("Mult", model_.mult_bits(m, n), 1);
  PairArith out{};
  if (backend_ == BackendKind::IdealDealer) {
    Payload q;
    PayloadWriter w{q};
    w.u8_(static_cast<u8>(m));
    w.u8_(static_cast<u8>(n));
    w.u64_(x.s[slot()].raw);
    w.u64_(y.s[slot()].raw);
    Payload r = dealer_round(BlockTag::kMult, std::move(q));
    out.s[slot()] = ArithShare{PayloadReader{r}.u64_(), K, me_};
    return out;
  }
  auto wrap_bits = [&](const PairArith& v, int l) {
    Payload q;
    PayloadWriter w2{q};
    w2.u8_(static_cast<u8>(l));
    w2.u64_(v.s[slot()].raw);
    Payload r = dealer_round(BlockTag::kWrap, std::move(q));
    PairBool bout{};
    bout.b[slot()] = BoolShare{PayloadReader{r}.u8_(), me_};
    return bout;
  };
  PairBool wx = wrap_bits(x, m);
  PairBool wy = wrap_bits(y, n);
  PairArith xh = lift(x, K);
  PairArith yh = lift(y, K);
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(K));
  Payload t = dealer_round(BlockTag::kTripleProd, std::move(q));
  PayloadReader tr{t};
  const u64 a = tr.u64_(), b = tr.u64_(), c = tr.u64_();
  Payload open;
  PayloadWriter ow{open};
  const u64 dx_mine = mod_bits(xh.s[slot()].raw - a, K);
  const u64 dy_mine = mod_bits(yh.s[slot()].raw - b, K);
  ow.u64_(dx_mine);
  ow.u64_(dy_mine);
  Payload theirs = exchange_open(std::move(open));
  PayloadReader orr{theirs};
  const u64 d = mod_bits(orr.u64_() + dx_mine, K);
  const u64 e = mod_bits(orr.u64_() + dy_mine, K);
  const u64 prod = beaver_prod_combine(me_, K, d, e, a, b, c);
  PairArith t_wx = beaver_mux_raw(yh, wx);
  PairArith t_wy = beaver_mux_raw(xh, wy);
  const u64 z =
      prod - (t_wx.s[slot()].raw << m) - (t_wy.s[slot()].raw << n);
  out.s[slot()] = ArithShare{mod_bits(z, K), K, me_};
  return out;
}

PairArith PartyExec::f_truncate(const PairArith& x, int t) {
  const int l = x.k();
  if (t <= 0 || t >= l) {
    throw ContractViolation("truncate: shift outside 0 < t < l");
  }
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(l));
  w.u8_(static_cast<u8>(t));
  w.u64_(x.s[slot()].raw);
  Payload r = dealer_round(BlockTag::kTruncate, std::move(q));
  charge("TR", model_.truncate_bits(l, t), 1);
  PairArith out{};
  out.s[slot()] = ArithShare{PayloadReader{r}.u64_(), l - t, me_};
  return out;
}

PairArith PartyExec::rec_ideal(const PairArith& v, int s) {
  const int k = v.k();
  Payload q;
  PayloadWriter w{q};
  w.u8_(static_cast<u8>(k));
  w.u8_(static_cast<u8>(s));
  w.u64_(v.s[slot()].raw);
  Payload r = dealer_round(BlockTag::kRec, std::move(q));
  PairArith out{};
  out.s[slot()] = ArithShare{PayloadReader{r}.u64_(), k, me_};
  return out;
}

u64 PartyExec::reconstruct(const PairArith& x) {
  if (!allow_reveal_) {
    throw ContractViolation("reconstruct requires the reveal opt-in");
  }
  Payload mine;
  PayloadWriter w{mine};
  w.u64_(x.s[slot()].raw);
  peer_ch_->send(Frame{session_, static_cast<u8>(BlockTag::kReveal),
                       peer_ch_->next_seq(session_), std::move(mine)});
  Frame f = peer_ch_->recv();
  const u64 theirs = PayloadReader{f.payload}.u64_();
  return mod_bits(theirs + x.s[slot()].raw, x.k());
}

int PartyExec::reconstruct_bit(const PairBool& b) {
  if (!allow_reveal_) {
    throw ContractViolation("reconstruct requires the reveal opt-in");
  }
  Payload mine;
  PayloadWriter w{mine};
  w.u8_(b.b[slot()].bit);
  peer_ch_->send(Frame{session_, static_cast<u8>(BlockTag::kReveal),
                       peer_ch_->next_seq(session_), std::move(mine)});
  Frame f = peer_ch_->recv();
  return (PayloadReader{f.payload}.u8_() ^ b.b[slot()].bit) & 1;
}

u64 PartyExec::wire_bytes() const {
  return dealer_ch_->stats().bytes_sent + peer_ch_->stats().bytes_sent;
}

PartyBatchResult run_party_batch(PartyExec& ex, Fn fn,
                                 const ProtocolParams& p, u64 seed, u64 batch,
                                 bool reveal) {
  PartyBatchResult res;
  res.batch = batch;
  res.revealed = reveal;
  long double acc = 0;
  for (u64 i = 0; i < batch; ++i) {
    const u64 raw = bench_input_raw(fn, p, seed, i);
    // Same derivation as the in-process bench path (split index 0).
    SeededRng split_rng(mix_seed(split_seed(mix_seed(seed, i), raw), 0));
    PairArith x = ex.make_input(raw, p.l, split_rng);
    ProtocolOutput out = run_protocol(fn, ex, x, p);
    if (reveal) {
      const u64 y = ex.reconstruct(out.share);
      const FxNum input{raw, FixedConfig{p.l, p.s}};
      const FxNum produced{y, FixedConfig{p.bw_o, p.s}};
      const u64 ulp = ulp_error(sweep_target(fn, rev(input), p.s), produced);
      if (ulp > res.max_ulp) res.max_ulp = ulp;
      acc += ulp;
    }
  }
  res.mean_ulp = (reveal && batch) ? static_cast<double>(acc / batch) : 0.0;
  res.total = ex.ledger();
  res.wire_bytes = ex.wire_bytes();
  return res;
}

void dealer_serve(Channel& ch_p1, Channel& ch_p2, u64 seed) {
  DealerLogic logic(seed);
  for (;;) {
    Frame f1, f2;
    try {
      f1 = ch_p1.recv();
      f2 = ch_p2.recv();
    } catch (const TransportError&) {
      return;  // parties done
    }
    if (f1.block_tag != f2.block_tag) {
      throw ContractViolation("dealer: parties disagree on the block tag");
    }
    auto [r1, r2] = logic.handle(static_cast<BlockTag>(f1.block_tag),
                                 f1.payload, f2.payload);
    ch_p1.send(Frame{f1.session_id, f1.block_tag, ch_p1.next_seq(f1.session_id),
                     std::move(r1)});
    ch_p2.send(Frame{f2.session_id, f2.block_tag, ch_p2.next_seq(f2.session_id),
                     std::move(r2)});
  }
}

}  // namespace opaf
