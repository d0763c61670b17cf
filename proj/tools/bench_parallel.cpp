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

// Compares the serial reference sweep against the OpenMP kernel at a few
// thread counts and checks they produce identical results.

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "opaf/sweep.hpp"

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP sweep benchmark"};
  std::string fn_str = "sigmoid";
  int s = 10;
  opaf::u64 seed = 1;
  int max_threads = 0;
  app.add_option("--fn", fn_str, "exp | expn | sigmoid | tanh");
  app.add_option("--s", s, "scale (domain has 2^(s+4) points)");
  app.add_option("--seed", seed, "run seed");
  app.add_option("--max-threads", max_threads, "0 = hardware default");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (max_threads <= 0) max_threads = omp_get_max_threads();
#else
  max_threads = 1;
#endif

  opaf::SweepConfig cfg;
  cfg.fn = opaf::fn_from_name(fn_str);
  cfg.params = opaf::ProtocolParams::defaults(cfg.fn, s);
  cfg.seed = seed;

  const opaf::SweepResult ref = opaf::run_sweep_serial(cfg);
  std::printf("domain %llu points, function %s, s=%d\n",
              static_cast<unsigned long long>(ref.domain_size), fn_str.c_str(),
              s);
  std::printf("%8s %12s %10s %10s %8s\n", "threads", "wall_ms", "inst/s",
              "speedup", "match");
  std::printf("%8s %12.1f %10.0f %10.2f %8s\n", "serial", ref.wall_ms,
              ref.domain_size / ref.wall_ms * 1e3, 1.0, "ref");
  for (int t = 1; t <= max_threads; t *= 2) {
    opaf::SweepConfig c = cfg;
    c.threads = t;
    const opaf::SweepResult r = opaf::run_sweep_parallel(c);
    const bool match = r.max_ulp == ref.max_ulp &&
                       r.histogram == ref.histogram &&
                       r.worst_input_raw == ref.worst_input_raw;
    std::printf("%8d %12.1f %10.0f %10.2f %8s\n", t, r.wall_ms,
                r.domain_size / r.wall_ms * 1e3, ref.wall_ms / r.wall_ms,
                match ? "yes" : "NO");
    if (!match) return 1;
  }
  return 0;
}
