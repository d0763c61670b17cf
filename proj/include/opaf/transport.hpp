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

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "opaf/frame.hpp"

namespace opaf {

struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HandshakeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Endpoint : u8 { P1 = 0, P2 = 1, Dealer = 2 };

// Physical wire accounting, kept strictly apart from the model-bit ledger.
// `flights` counts direction flips: consecutive same-direction frames
// coalesce into one flight, so packing many instances costs the same number
// of rounds as one. `sent_hash` fingerprints the outgoing frame stream for
// replay checks.
struct WireStats {
  u64 bytes_sent = 0;
  u64 frames_sent = 0;
  u64 bytes_recv = 0;
  u64 frames_recv = 0;
  u64 flights = 0;
  u64 sent_hash = 0xcbf29ce484222325ull;  // FNV-1a

  void on_send(const Frame& f) {
    bytes_sent += f.wire_size();
    ++frames_sent;
    if (last_dir_ != 0) ++flights;
    last_dir_ = 0;
    hash_u64(f.session_id);
    hash_u64(f.block_tag);
    hash_u64(f.seq);
    for (u8 b : f.payload) hash_byte(b);
  }
  void on_recv(const Frame& f) {
    bytes_recv += f.wire_size();
    ++frames_recv;
    if (last_dir_ != 1) ++flights;
    last_dir_ = 1;
  }

 private:
  void hash_byte(u8 b) {
    sent_hash ^= b;
    sent_hash *= 0x100000001b3ull;
  }
  void hash_u64(u64 v) {
    for (int i = 0; i < 8; ++i) hash_byte(static_cast<u8>(v >> (8 * i)));
  }
  int last_dir_ = -1;
};

// Ordered, exactly-once duplex frame channel between two endpoints.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const Frame& f) = 0;
  virtual Frame recv() = 0;  // blocks; throws TransportError on closed peer
  virtual void close() = 0;

  WireStats& stats() { return stats_; }
  const WireStats& stats() const { return stats_; }

  // Next seq for a given outgoing session stream.
  u32 next_seq(u32 session_id);

 protected:
  WireStats stats_;

 private:
  std::map<u32, u32> seq_;
};

// Reads current flight count; the direction bookkeeping itself is automatic
// on send/recv.
u64 round_barrier(const Channel& ch);

// In-process duplex pair backed by mutex-guarded queues; usable lockstep in
// one thread or across two.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>>
make_inprocess_pair();

class TcpListener {
 public:
  // port 0 picks an ephemeral port, readable via port().
  explicit TcpListener(const std::string& host, int port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  int port() const { return port_; }
  std::unique_ptr<Channel> accept_channel();

 private:
  int fd_ = -1;
  int port_ = 0;
};

std::unique_ptr<Channel> tcp_connect(const std::string& host, int port,
                                     int retries = 50);

// Session handshake: both sides exchange version, security parameter and a
// hash of the run configuration; any mismatch aborts the session.
constexpr u32 kProtocolVersion = 1;

struct HandshakeInfo {
  u32 version = kProtocolVersion;
  u32 lambda = 128;
  u64 config_hash = 0;
  Endpoint role = Endpoint::P1;
};

void send_handshake(Channel& ch, u32 session_id, const HandshakeInfo& info);
HandshakeInfo recv_handshake(Channel& ch, const HandshakeInfo& expect);

}  // namespace opaf
