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

#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "opaf/cost_model.hpp"
#include "opaf/ledger.hpp"
#include "opaf/sharing.hpp"

namespace opaf {

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

enum class BlockTag : u8 {
  kHandshake = 0,
  kMsb = 1,
  kMsbToWrap = 2,
  kMux = 3,
  kAnd = 4,
  kB2A = 5,
  kCrossTerm = 6,
  kMult = 7,
  kTruncate = 8,
  kRec = 9,
  kWrap = 10,
  kTripleBit = 11,
  kTripleMux = 12,
  kTripleCross = 13,
  kTripleProd = 14,
  kOpen = 15,
  kReveal = 16,
};

// IdealDealer evaluates every functionality at a trusted dealer and hands
// back fresh uniform shares. BeaverDealer pre-distributes correlated
// randomness for the multiplicative blocks (AND, Mux, CrossTerm and the
// product core of Mult) and the parties run the masked-open evaluation
// themselves; the dealer never sees live inputs for those blocks. Neither
// backend is a cryptographic realization: correctness, costs, rounds and
// invocation counts are faithful, secrecy against the dealer is not claimed.
enum class BackendKind { IdealDealer, BeaverDealer };

// Two-slot containers. A local executor populates both slots; a remote
// (per-party) executor populates only its own, and block implementations
// never read a slot the executor does not own.
struct PairArith {
  ArithShare s[2];
  int k() const { return s[0].k ? s[0].k : s[1].k; }
};

struct PairBool {
  BoolShare b[2];
};

// A per-party private value (not a sharing): slot i is known to party i only.
struct PairPriv {
  u64 v[2] = {0, 0};
  int bits = 0;
};

class CompositeScope;

// The execution surface protocol code is written against. Exactly one
// implementation runs both parties lockstep in-process; another runs a single
// party against TCP peers. Blocks charge the model ledger by formula; local
// helpers are communication-free.
class Exec {
 public:
  explicit Exec(const CostModel& model, bool own_p1, bool own_p2)
      : model_(model), own_{own_p1, own_p2} {
    ledger_stack_.push_back(&session_ledger_);
  }
  virtual ~Exec() = default;

  // --- 2PC building blocks -------------------------------------------------
  virtual PairBool f_msb(const PairArith& x) = 0;
  virtual PairBool f_msb_to_wrap(const PairArith& x, const PairBool& msb_sh) = 0;
  virtual PairArith f_mux(const PairArith& x, const PairBool& b) = 0;
  virtual PairBool f_and(const PairBool& x, const PairBool& y) = 0;
  virtual PairArith f_b2a(const PairBool& x, int l) = 0;
  // Multiplies the two private slot values, declared m and n bits wide,
  // into Z_{2^out_bits}. Values are reduced mod 2^m / 2^n on entry.
  virtual PairArith f_cross_term(const PairPriv& a, int m, int n,
                                 int out_bits) = 0;
  virtual PairArith f_mult(const PairArith& x, const PairArith& y) = 0;
  virtual PairArith f_truncate(const PairArith& x, int t) = 0;

  // Reciprocal of a shared Fix(v_f, s) with v_f in [1,2). Ideal mode answers
  // round-to-nearest from the dealer; iterative mode runs Goldschmidt on
  // shares and stays within 2 ULP of ideal.
  PairArith f_rec(const PairArith& v, int s);

  // Zero-extension of a shared value with msb(x) = 0. Raw widening alone is
  // wrong whenever the share sum wraps the small ring, so the wrap bit is
  // computed (msb share is the constant 0) and subtracted via B2A.
  PairArith f_zext(const PairArith& x, int k_new);

  // --- local share algebra (zero communication) ----------------------------
  struct Term {
    i64 coeff;
    const PairArith* share;
  };
  PairArith affine(std::initializer_list<Term> terms, i64 constant, int k);
  PairBool xor_bits(const PairBool& x, const PairBool& y);
  PairBool const_bool(int bit_p1, int bit_p2);
  PairArith lift(const PairArith& x, int k_new);
  PairArith reduce(const PairArith& x, int k_new);

  // Per-party local exponential table Fix(e^{(raw_i - off*2^l)/2^s}, s'),
  // reduced mod 2^bits before entering a cross term.
  PairPriv exp_table(const PairArith& x, double off, int s, int s_prime,
                     int bits);

  // Splits an input value the same way on every executor, so a local run and
  // a pair of party runs see identical shares for identical seeds.
  PairArith make_input(u64 x, int k, SeededRng& rng);

  virtual u64 reconstruct(const PairArith& x) = 0;
  virtual int reconstruct_bit(const PairBool& b) = 0;

  CostLedger& ledger() { return session_ledger_; }
  const CostModel& model() const { return model_; }

  void set_rec_iterative(bool on) { rec_iterative_ = on; }
  bool rec_iterative() const { return rec_iterative_; }

  bool owns(Party p) const { return own_[static_cast<int>(p)]; }

 protected:
  virtual PairArith rec_ideal(const PairArith& v, int s) = 0;
  PairArith rec_goldschmidt(const PairArith& v, int s);

  CostLedger& current() { return *ledger_stack_.back(); }
  void charge(const char* name, u64 bits, u64 block_rounds);

  CostModel model_;
  bool own_[2];
  bool rec_iterative_ = false;

 private:
  friend class CompositeScope;
  CostLedger session_ledger_;
  std::vector<CostLedger*> ledger_stack_;
  std::vector<std::unique_ptr<CostLedger>> scope_pool_;
};

// RAII invocation scope for composite functionalities: bits, messages and
// rounds of the inner blocks flow up, the inner invocation names collapse
// into one invocation of the composite.
class CompositeScope {
 public:
  CompositeScope(Exec& ex, std::string name);
  ~CompositeScope();
  CompositeScope(const CompositeScope&) = delete;
  CompositeScope& operator=(const CompositeScope&) = delete;

 private:
  Exec& ex_;
  std::string name_;
};

}  // namespace opaf
