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
#include "opaf/transport.hpp"

namespace opaf {

// Runs both parties and the dealer lockstep in one thread. Every block still
// moves real frames through in-process channels, so wire accounting and
// replay determinism mean the same thing here as across TCP.
class LocalExec final : public Exec {
 public:
  LocalExec(BackendKind backend, const CostModel& model, u64 dealer_seed,
            u32 session_id = 0);

  PairBool f_msb(const PairArith& x) override;
  PairBool f_msb_to_wrap(const PairArith& x, const PairBool& msb_sh) override;
  PairArith f_mux(const PairArith& x, const PairBool& b) override;
  PairBool f_and(const PairBool& x, const PairBool& y) override;
  PairArith f_b2a(const PairBool& x, int l) override;
  PairArith f_cross_term(const PairPriv& a, int m, int n,
                         int out_bits) override;
  PairArith f_mult(const PairArith& x, const PairArith& y) override;
  PairArith f_truncate(const PairArith& x, int t) override;

  u64 reconstruct(const PairArith& x) override;
  int reconstruct_bit(const PairBool& b) override;

  BackendKind backend() const { return backend_; }

  // Physical accounting, aggregated over the three links.
  u64 wire_bytes() const;
  u64 wire_frames() const;
  u64 wire_flights() const;
  u64 sent_stream_hash() const;

 protected:
  PairArith rec_ideal(const PairArith& v, int s) override;

 private:
  using Payload = std::vector<u8>;

  // One dealer round trip for both parties: requests out, responses back.
  std::pair<Payload, Payload> dealer_round(BlockTag tag, Payload req1,
                                           Payload req2);
  // Party-to-party masked opens (Beaver path).
  std::pair<Payload, Payload> exchange_opens(Payload from_p1, Payload from_p2);

  PairArith share_from(const Payload& r1, const Payload& r2, int k);
  PairBool bit_from(const Payload& r1, const Payload& r2);

  // Beaver-backed mux core used by f_mux and inside f_mult; charges nothing.
  PairArith beaver_mux_raw(const PairArith& x, const PairBool& b);

  BackendKind backend_;
  DealerLogic dealer_;
  u32 session_;
  std::unique_ptr<Channel> p1_dealer_, dealer_p1_;
  std::unique_ptr<Channel> p2_dealer_, dealer_p2_;
  std::unique_ptr<Channel> p1_peer_, p2_peer_;
};

}  // namespace opaf
