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
#include <string>

#include "opaf/types.hpp"

namespace opaf {

// Per-session accounting of the communication model: bits charged by the
// per-block closed forms, block invocation counts, and model rounds. Physical
// wire bytes are tracked separately on the channels and never mixed in here.
struct CostLedger {
  u64 bits_sent = 0;
  u64 messages = 0;
  u64 rounds = 0;
  u64 domain_clamps = 0;
  std::map<std::string, u64> invocations;

  void merge(const CostLedger& o) {
    bits_sent += o.bits_sent;
    messages += o.messages;
    rounds += o.rounds;
    domain_clamps += o.domain_clamps;
    for (const auto& [name, n] : o.invocations) invocations[name] += n;
  }

  u64 count(const std::string& name) const {
    auto it = invocations.find(name);
    return it == invocations.end() ? 0 : it->second;
  }
};

}  // namespace opaf
