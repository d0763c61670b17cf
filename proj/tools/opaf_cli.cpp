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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "opaf/party_exec.hpp"
#include "opaf/report.hpp"
#include "opaf/rnn_cell.hpp"

namespace opaf {
namespace {

constexpr int kExitContract = 2;
constexpr int kExitTransport = 3;

BackendKind parse_backend(const std::string& s) {
  if (s == "ideal") return BackendKind::IdealDealer;
  if (s == "beaver") return BackendKind::BeaverDealer;
  throw std::invalid_argument("backend must be ideal or beaver");
}

nlohmann::json load_golden(const std::string& explicit_path) {
  std::vector<std::string> candidates;
  if (!explicit_path.empty()) candidates.push_back(explicit_path);
  if (const char* env = std::getenv("OPAF_GOLDEN")) candidates.push_back(env);
  candidates.push_back("data/golden_expectations.json");
  for (const auto& path : candidates) {
    std::ifstream in(path);
    if (in) return nlohmann::json::parse(in, nullptr, false);
  }
  return nlohmann::json();
}

int cmd_sweep(const RunConfig& rc, int splits) {
  SweepConfig sc;
  sc.fn = rc.fn;
  sc.params = rc.resolve_params();
  sc.params.validate(rc.fn);
  sc.backend = rc.backend;
  sc.seed = rc.seed;
  sc.threads = rc.threads;
  sc.splits = splits;
  sc.rec_iterative = rc.rec_iterative;
  const SweepResult r = run_sweep(sc);
  Report rep;
  rep.cfg = rc;
  rep.cfg_hash = config_hash(rc);
  rep.max_ulp = r.max_ulp;
  rep.mean_ulp = r.mean_ulp;
  rep.histogram = r.histogram;
  rep.domain_size = r.domain_size;
  rep.ledger = r.per_instance;
  rep.model_kb_per_instance =
      static_cast<double>(r.per_instance.bits_sent) / 8.0 / 1024.0;
  rep.wire_bytes_per_instance =
      r.domain_size ? static_cast<double>(r.wire_bytes) / r.domain_size : 0.0;
  rep.rounds_per_instance = r.per_instance.rounds;
  rep.wall_ms = r.wall_ms;
  if (r.sampled) rep.note = "grid subsampled to 2^16 points";
  rep.emit();
  return 0;
}

int cmd_sweep_sprime(const RunConfig& rc, int max_offset, int splits,
                     const std::string& golden_path) {
  (void)golden_path;
  std::ostringstream os;
  os << "fn,s";
  for (int t = 0; t <= max_offset; ++t) os << ",s+" << t;
  os << '\n';
  for (Fn fn : {Fn::Exp, Fn::Expn, Fn::Sigmoid, Fn::Tanh}) {
    os << fn_name(fn) << ',' << rc.s;
    for (int t = 0; t <= max_offset; ++t) {
      ProtocolParams p = ProtocolParams::defaults(fn, rc.s);
      p.s_prime = rc.s + t;
      p.n_bits = rc.n_bits;
      bool feasible = true;
      try {
        p.validate(fn);
      } catch (const ContractViolation&) {
        feasible = false;
      }
      if (!feasible) {
        os << ",-";
        continue;
      }
      SweepConfig sc;
      sc.fn = fn;
      sc.params = p;
      sc.backend = rc.backend;
      sc.seed = rc.seed;
      sc.threads = rc.threads;
      sc.splits = splits;
      sc.rec_iterative = rc.rec_iterative;
      os << ',' << run_sweep(sc).max_ulp;
    }
    os << '\n';
  }
  if (rc.report_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(rc.report_path);
    if (!out) throw std::runtime_error("cannot write " + rc.report_path);
    out << os.str();
  }
  return 0;
}

int cmd_bench(const RunConfig& rc, const std::string& golden_path) {
  SweepConfig sc;
  sc.fn = rc.fn;
  sc.params = rc.resolve_params();
  sc.params.validate(rc.fn);
  sc.backend = rc.backend;
  sc.seed = rc.seed;
  sc.threads = rc.threads;
  sc.rec_iterative = rc.rec_iterative;
  const BenchResult r = run_bench(sc, rc.batch);
  Report rep;
  rep.cfg = rc;
  rep.cfg_hash = config_hash(rc);
  rep.max_ulp = r.max_ulp;
  rep.mean_ulp = r.mean_ulp;
  rep.domain_size = r.batch;
  rep.ledger = r.per_instance;
  rep.model_kb_per_instance =
      static_cast<double>(r.per_instance.bits_sent) / 8.0 / 1024.0;
  rep.wire_bytes_per_instance =
      r.batch ? static_cast<double>(r.wire_bytes) / r.batch : 0.0;
  rep.rounds_per_instance = r.per_instance.rounds;
  rep.wall_ms = r.wall_ms;
  const nlohmann::json golden = load_golden(golden_path);
  if (golden.is_object() && golden.contains("traffic_kb")) {
    const auto& t = golden["traffic_kb"];
    if (t.contains(fn_name(rc.fn))) {
      std::ostringstream n;
      n << "golden reference traffic: " << t[fn_name(rc.fn)].get<double>()
        << " KB/instance";
      rep.note = n.str();
    }
  }
  rep.emit();
  return 0;
}

int cmd_party(const RunConfig& rc, const std::string& role) {
  const ProtocolParams p = rc.resolve_params();
  p.validate(rc.fn);
  CostModel model;
  HandshakeInfo mine;
  mine.lambda = static_cast<u32>(model.lambda);
  mine.config_hash = config_hash(rc);

  if (role == "dealer") {
    mine.role = Endpoint::Dealer;
    TcpListener listener(rc.host, rc.port);
    std::unique_ptr<Channel> a = listener.accept_channel();
    const HandshakeInfo ha = recv_handshake(*a, mine);
    send_handshake(*a, 0, mine);
    std::unique_ptr<Channel> b = listener.accept_channel();
    const HandshakeInfo hb = recv_handshake(*b, mine);
    send_handshake(*b, 0, mine);
    Channel* p1 = ha.role == Endpoint::P1 ? a.get() : b.get();
    Channel* p2 = ha.role == Endpoint::P1 ? b.get() : a.get();
    if (ha.role == hb.role) throw HandshakeError("both parties claim one role");
    dealer_serve(*p1, *p2, rc.seed ^ 0xdea1e5);
    std::cout << "dealer: session served" << std::endl;
    return 0;
  }

  const Party me = role == "p1" ? Party::P1 : Party::P2;
  mine.role = me == Party::P1 ? Endpoint::P1 : Endpoint::P2;
  std::unique_ptr<Channel> dealer_ch = tcp_connect(rc.host, rc.port);
  send_handshake(*dealer_ch, 0, mine);
  recv_handshake(*dealer_ch, mine);

  std::unique_ptr<Channel> peer_ch;
  if (me == Party::P1) {
    TcpListener peer_listener(rc.host, rc.port + 1);
    peer_ch = peer_listener.accept_channel();
    recv_handshake(*peer_ch, mine);
    send_handshake(*peer_ch, 0, mine);
  } else {
    peer_ch = tcp_connect(rc.host, rc.port + 1);
    send_handshake(*peer_ch, 0, mine);
    recv_handshake(*peer_ch, mine);
  }

  PartyExec ex(me, rc.backend, model, std::move(dealer_ch),
               std::move(peer_ch), 0, rc.reveal);
  ex.set_rec_iterative(rc.rec_iterative);
  const PartyBatchResult r =
      run_party_batch(ex, rc.fn, p, rc.seed, rc.batch, rc.reveal);

  Report rep;
  rep.cfg = rc;
  rep.cfg_hash = config_hash(rc);
  if (r.revealed) {
    rep.max_ulp = r.max_ulp;
    rep.mean_ulp = r.mean_ulp;
  }
  rep.domain_size = r.batch;
  rep.ledger = r.total;
  rep.model_kb_per_instance = r.batch
      ? static_cast<double>(r.total.bits_sent) / r.batch / 8.0 / 1024.0
      : 0.0;
  rep.wire_bytes_per_instance =
      r.batch ? static_cast<double>(r.wire_bytes) / r.batch : 0.0;
  rep.rounds_per_instance = r.batch ? r.total.rounds / r.batch : 0;
  rep.note = std::string("party ") + role;
  rep.emit();
  return 0;
}

int cmd_rnn_cell(const RunConfig& rc, int hidden, bool zero_state) {
  RnnCellConfig cc;
  cc.hidden = hidden;
  cc.seed = rc.seed;
  cc.backend = rc.backend;
  cc.threads = rc.threads;
  cc.zero_state = zero_state;
  const RnnCellResult r = run_rnn_cell(cc);
  Report rep;
  rep.cfg = rc;
  rep.cfg_hash = config_hash(rc);
  rep.max_ulp = r.max_state_ulp;
  rep.domain_size = static_cast<u64>(hidden);
  rep.ledger = r.activations;
  rep.model_kb_per_instance =
      static_cast<double>(r.activation_model_bits) / (2.0 * hidden) / 8.0 /
      1024.0;
  rep.wire_bytes_per_instance =
      static_cast<double>(r.wire_bytes) / (2.0 * hidden);
  rep.wall_ms = r.wall_ms;
  std::ostringstream n;
  n << "traffic ratio vs SIRNN composition: " << r.traffic_ratio;
  rep.note = n.str();
  rep.emit();
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"OPAF: secure two-party exponential/sigmoid/tanh protocols"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string fn_str = "sigmoid";
  std::string backend_str = "ideal";
  std::string role = "p1";
  std::string golden_path;
  int hidden = 100;
  bool zero_state = false;
  int max_offset = 15;
  int splits = 1;

  if (const char* h = std::getenv("OPAF_HOST")) rc.host = h;
  if (const char* p = std::getenv("OPAF_PORT")) rc.port = std::atoi(p);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--fn", fn_str, "exp | expn | sigmoid | tanh");
    sub->add_option("--s", rc.s, "input/output scale");
    sub->add_option("--sprime", rc.sprime_offset,
                    "internal scale offset over s (default per function)");
    sub->add_option("--l", rc.l, "input bitwidth (default s+4)");
    sub->add_option("--bwout", rc.bw_o, "output bitwidth (default per function)");
    sub->add_option("--nbits", rc.n_bits, "intermediate ring width");
    sub->add_option("--backend", backend_str, "ideal | beaver");
    sub->add_flag("--rec-iterative", rc.rec_iterative,
                  "Goldschmidt reciprocal instead of the ideal one");
    sub->add_option("--batch", rc.batch, "instances per run");
    sub->add_option("--seed", rc.seed, "run seed");
    sub->add_option("--threads", rc.threads, "worker threads (sweeps/bench)");
    sub->add_option("--transport", rc.transport, "inproc | tcp");
    sub->add_option("--host", rc.host, "TCP host (or OPAF_HOST)");
    sub->add_option("--port", rc.port, "TCP base port (or OPAF_PORT)");
    sub->add_option("--report", rc.report_path, "report file (default stdout)");
    sub->add_option("--format", rc.format, "csv | json");
    sub->add_option("--golden", golden_path, "golden expectations file");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "exhaustive precision sweep");
  add_common(sweep);
  sweep->add_option("--splits", splits, "share splits per grid input");
  CLI::App* sprime = app.add_subcommand(
      "sweep-sprime", "max-ULP table across internal scales");
  add_common(sprime);
  sprime->add_option("--max-offset", max_offset, "largest s' offset");
  sprime->add_option("--splits", splits, "share splits per grid input");
  CLI::App* bench =
      app.add_subcommand("bench", "batched cost/traffic benchmark");
  add_common(bench);
  CLI::App* party =
      app.add_subcommand("party", "run one endpoint of a TCP session");
  add_common(party);
  party->add_option("--role", role, "p1 | p2 | dealer")->required();
  party->add_flag("--reveal", rc.reveal,
                  "opt into output reconstruction (both parties must agree)");
  CLI::App* cell =
      app.add_subcommand("rnn-cell", "gated recurrent cell microbenchmark");
  add_common(cell);
  cell->add_option("--hidden", hidden, "hidden dimension");
  cell->add_flag("--zero", zero_state, "zero state and biases");

  CLI11_PARSE(app, argc, argv);

  rc.fn = fn_from_name(fn_str);
  rc.backend = parse_backend(backend_str);

  if (sweep->parsed()) {
    rc.cmd = "sweep";
    return cmd_sweep(rc, splits);
  }
  if (sprime->parsed()) {
    rc.cmd = "sweep-sprime";
    return cmd_sweep_sprime(rc, max_offset, splits, golden_path);
  }
  if (bench->parsed()) {
    rc.cmd = "bench";
    return cmd_bench(rc, golden_path);
  }
  if (party->parsed()) {
    rc.cmd = "party";
    return cmd_party(rc, role);
  }
  rc.cmd = "rnn-cell";
  return cmd_rnn_cell(rc, hidden, zero_state);
}

}  // namespace
}  // namespace opaf

int main(int argc, char** argv) {
  try {
    return opaf::run(argc, argv);
  } catch (const opaf::TransportError& e) {
    std::cerr << "transport error: " << e.what() << std::endl;
    return opaf::kExitTransport;
  } catch (const opaf::HandshakeError& e) {
    std::cerr << "handshake error: " << e.what() << std::endl;
    return opaf::kExitTransport;
  } catch (const opaf::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << std::endl;
    return opaf::kExitContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << std::endl;
    return opaf::kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
