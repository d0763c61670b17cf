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

#pragma once

#include "opaf/blocks.hpp"
#include "opaf/dealer.hpp"
#include "opaf/protocols.hpp"
#include "opaf/transport.hpp"

namespace opaf {

// One party of a distributed session: blocks talk to a dealer endpoint,
// masked opens and output reveals go directly to the peer. Runs the same
// protocol code as LocalExec with only its own share slot populated.
class PartyExec final : public Exec {
 public:
  PartyExec(Party me, BackendKind backend, const CostModel& model,
            std::unique_ptr<Channel> dealer_ch,
            std::unique_ptr<Channel> peer_ch, u32 session_id = 0,
            bool allow_reveal = false);

  PairBool f_msb(const PairArith& x) override;
  PairBool f_msb_to_wrap(const PairArith& x, const PairBool& msb_sh) override;
  PairArith f_mux(const PairArith& x, const PairBool& b) override;
  PairBool f_and(const PairBool& x, const PairBool& y) override;
  PairArith f_b2a(const PairBool& x, int l) override;
  PairArith f_cross_term(const PairPriv& a, int m, int n,
                         int out_bits) override;
  PairArith f_mult(const PairArith& x, const PairArith& y) override;
  PairArith f_truncate(const PairArith& x, int t) override;

  // Opt-in output reconstruction: exchanges shares with the peer.
  u64 reconstruct(const PairArith& x) override;
  int reconstruct_bit(const PairBool& b) override;

  Party me() const { return me_; }
  u64 wire_bytes() const;

 protected:
  PairArith rec_ideal(const PairArith& v, int s) override;

 private:
  using Payload = std::vector<u8>;
  Payload dealer_round(BlockTag tag, Payload req);
  Payload exchange_open(Payload mine);
  PairArith beaver_mux_raw(const PairArith& x, const PairBool& b);

  int slot() const { return static_cast<int>(me_); }

  Party me_;
  BackendKind backend_;
  u32 session_;
  bool allow_reveal_;
  std::unique_ptr<Channel> dealer_ch_;
  std::unique_ptr<Channel> peer_ch_;
};

// Dealer node: pairs the two parties' block requests and answers them until
// both disconnect.
void dealer_serve(Channel& ch_p1, Channel& ch_p2, u64 seed);

struct PartyBatchResult {
  u64 batch = 0;
  bool revealed = false;
  u64 max_ulp = 0;
  double mean_ulp = 0.0;
  CostLedger total;
  u64 wire_bytes = 0;
};

// Runs `batch` protocol instances on this party; inputs and splits derive
// from the common run seed, so they match an in-process run of the same
// configuration exactly. ULP statistics require the reveal opt-in.
PartyBatchResult run_party_batch(PartyExec& ex, Fn fn,
                                 const ProtocolParams& p, u64 seed, u64 batch,
                                 bool reveal);

}  // namespace opaf
