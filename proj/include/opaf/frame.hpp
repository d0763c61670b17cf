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

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "opaf/types.hpp"

namespace opaf {

// The wire unit. On the wire: a 12-byte little-endian header
// (session_id:4 | block_tag:1 | seq:4 | payload_len:3) followed by the
// payload bytes.
struct Frame {
  u32 session_id = 0;
  u8 block_tag = 0;
  u32 seq = 0;
  std::vector<u8> payload;

  size_t wire_size() const { return kHeaderBytes + payload.size(); }

  static constexpr size_t kHeaderBytes = 12;
  static constexpr size_t kMaxPayload = (1u << 24) - 1;
};

void encode_frame(const Frame& f, std::vector<u8>& out);

// Decodes one frame from buf if a complete frame is present. Returns the
// number of bytes consumed, 0 if more data is needed.
size_t decode_frame(const u8* buf, size_t len, Frame& out);

// Little-endian payload cursor helpers.
struct PayloadWriter {
  std::vector<u8>& out;
  void u8_(u8 v) { out.push_back(v); }
  void u32_(u32 v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<u8>(v >> (8 * i)));
  }
  void u64_(u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<u8>(v >> (8 * i)));
  }
};

struct PayloadReader {
  const std::vector<u8>& in;
  size_t pos = 0;
  u8 u8_() {
    need(1);
    return in[pos++];
  }
  u32 u32_() {
    need(4);
    u32 v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<u32>(in[pos++]) << (8 * i);
    return v;
  }
  u64 u64_() {
    need(8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(in[pos++]) << (8 * i);
    return v;
  }
  void need(size_t n) const {
    if (pos + n > in.size()) throw std::runtime_error("payload underrun");
  }
};

}  // namespace opaf
