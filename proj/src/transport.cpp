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

#include "opaf/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

namespace opaf {

u32 Channel::next_seq(u32 session_id) { return seq_[session_id]++; }

u64 round_barrier(const Channel& ch) { return ch.stats().flights; }

namespace {

struct InProcessState {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Frame> q[2];  // q[i]: frames destined for side i
  bool closed = false;
};

class InProcessChannel final : public Channel {
 public:
  InProcessChannel(std::shared_ptr<InProcessState> st, int side)
      : st_(std::move(st)), side_(side) {}

  ~InProcessChannel() override { close(); }

  void send(const Frame& f) override {
    std::unique_lock lk(st_->mu);
    if (st_->closed) throw TransportError("send on closed channel");
    st_->q[1 - side_].push_back(f);
    stats_.on_send(f);
    st_->cv.notify_all();
  }

  Frame recv() override {
    std::unique_lock lk(st_->mu);
    st_->cv.wait(lk, [&] { return !st_->q[side_].empty() || st_->closed; });
    if (st_->q[side_].empty()) throw TransportError("recv on closed channel");
    Frame f = std::move(st_->q[side_].front());
    st_->q[side_].pop_front();
    stats_.on_recv(f);
    return f;
  }

  void close() override {
    std::unique_lock lk(st_->mu);
    st_->closed = true;
    st_->cv.notify_all();
  }

 private:
  std::shared_ptr<InProcessState> st_;
  int side_;
};

class TcpChannel final : public Channel {
 public:
  explicit TcpChannel(int fd) : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }

  ~TcpChannel() override { close(); }

  void send(const Frame& f) override {
    buf_.clear();
    encode_frame(f, buf_);
    size_t off = 0;
    while (off < buf_.size()) {
      const ssize_t n = ::write(fd_, buf_.data() + off, buf_.size() - off);
      if (n <= 0) {
        if (n < 0 && errno == EINTR) continue;
        throw TransportError("tcp send failed: " +
                             std::string(std::strerror(errno)));
      }
      off += static_cast<size_t>(n);
    }
    stats_.on_send(f);
  }

  Frame recv() override {
    Frame f;
    for (;;) {
      const size_t used = decode_frame(rbuf_.data(), rbuf_.size(), f);
      if (used > 0) {
        rbuf_.erase(rbuf_.begin(), rbuf_.begin() + static_cast<long>(used));
        stats_.on_recv(f);
        return f;
      }
      u8 chunk[4096];
      const ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n == 0) throw TransportError("peer closed the connection");
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError("tcp recv failed: " +
                             std::string(std::strerror(errno)));
      }
      rbuf_.insert(rbuf_.end(), chunk, chunk + n);
    }
  }

  void close() override {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }

 private:
  int fd_;
  std::vector<u8> buf_;
  std::vector<u8> rbuf_;
};

sockaddr_in resolve(const std::string& host, int port) {
  sockaddr_in addr;
  std::memset(&addr, 0, sizeof addr);
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    hostent* he = ::gethostbyname(host.c_str());
    if (he == nullptr || he->h_addrtype != AF_INET) {
      throw TransportError("cannot resolve host " + host);
    }
    std::memcpy(&addr.sin_addr, he->h_addr_list[0], sizeof addr.sin_addr);
  }
  return addr;
}

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>>
make_inprocess_pair() {
  auto st = std::make_shared<InProcessState>();
  return {std::make_unique<InProcessChannel>(st, 0),
          std::make_unique<InProcessChannel>(st, 1)};
}

TcpListener::TcpListener(const std::string& host, int port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw TransportError("socket() failed");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr = resolve(host, port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    throw TransportError("bind failed on " + host + ":" +
                         std::to_string(port) + ": " + std::strerror(errno));
  }
  socklen_t alen = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &alen);
  port_ = ntohs(addr.sin_port);
  if (::listen(fd_, 8) != 0) throw TransportError("listen failed");
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Channel> TcpListener::accept_channel() {
  const int cfd = ::accept(fd_, nullptr, nullptr);
  if (cfd < 0) throw TransportError("accept failed");
  return std::make_unique<TcpChannel>(cfd);
}

std::unique_ptr<Channel> tcp_connect(const std::string& host, int port,
                                     int retries) {
  sockaddr_in addr = resolve(host, port);
  for (int attempt = 0;; ++attempt) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw TransportError("socket() failed");
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0) {
      return std::make_unique<TcpChannel>(fd);
    }
    ::close(fd);
    if (attempt >= retries) {
      throw TransportError("connect to " + host + ":" + std::to_string(port) +
                           " failed: " + std::strerror(errno));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
}

void send_handshake(Channel& ch, u32 session_id, const HandshakeInfo& info) {
  Frame f;
  f.session_id = session_id;
  f.block_tag = 0;  // handshake tag
  f.seq = ch.next_seq(session_id);
  PayloadWriter w{f.payload};
  w.u32_(info.version);
  w.u32_(info.lambda);
  w.u64_(info.config_hash);
  w.u8_(static_cast<u8>(info.role));
  ch.send(f);
}

HandshakeInfo recv_handshake(Channel& ch, const HandshakeInfo& expect) {
  Frame f = ch.recv();
  if (f.block_tag != 0) throw HandshakeError("expected handshake frame");
  PayloadReader r{f.payload};
  HandshakeInfo got;
  got.version = r.u32_();
  got.lambda = r.u32_();
  got.config_hash = r.u64_();
  got.role = static_cast<Endpoint>(r.u8_());
  if (got.version != expect.version) {
    throw HandshakeError("protocol version mismatch: " +
                         std::to_string(got.version) + " vs " +
                         std::to_string(expect.version));
  }
  if (got.lambda != expect.lambda) {
    throw HandshakeError("security parameter mismatch");
  }
  if (got.config_hash != expect.config_hash) {
    throw HandshakeError("config hash mismatch");
  }
  return got;
}

}  // namespace opaf
