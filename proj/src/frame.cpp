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

#include "opaf/frame.hpp"

namespace opaf {

void encode_frame(const Frame& f, std::vector<u8>& out) {
  if (f.payload.size() > Frame::kMaxPayload) {
    throw std::length_error("frame payload exceeds 2^24-1 bytes");
  }
  out.reserve(out.size() + f.wire_size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<u8>(f.session_id >> (8 * i)));
  out.push_back(f.block_tag);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<u8>(f.seq >> (8 * i)));
  const u32 len = static_cast<u32>(f.payload.size());
  for (int i = 0; i < 3; ++i) out.push_back(static_cast<u8>(len >> (8 * i)));
  out.insert(out.end(), f.payload.begin(), f.payload.end());
}

size_t decode_frame(const u8* buf, size_t len, Frame& out) {
  if (len < Frame::kHeaderBytes) return 0;
  u32 plen = 0;
  for (int i = 0; i < 3; ++i) plen |= static_cast<u32>(buf[9 + i]) << (8 * i);
  const size_t total = Frame::kHeaderBytes + plen;
  if (len < total) return 0;
  out.session_id = 0;
  for (int i = 0; i < 4; ++i) out.session_id |= static_cast<u32>(buf[i]) << (8 * i);
  out.block_tag = buf[4];
  out.seq = 0;
  for (int i = 0; i < 4; ++i) out.seq |= static_cast<u32>(buf[5 + i]) << (8 * i);
  out.payload.assign(buf + Frame::kHeaderBytes, buf + total);
  return total;
}

}  // namespace opaf
