// Copyright 2026 The trihybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "trihybrid/cli.hpp"
#include "trihybrid/trihybrid.hpp"

using namespace trihybrid;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  c.expect(secs < limit_s, std::string("took ") + buf);
  if (!c.ok) ++failures;
  std::printf("%s %d %s (%s)%s%s\n", c.ok ? "PASS" : "FAIL", id, name, buf,
              c.ok ? "" : ": ", c.detail.c_str());
  std::fflush(stdout);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("trihybrid_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int cli_run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

Graph qwc_graph(const Hamiltonian& h) { return build_noncommutation_graph(h, CommuteMode::QWC); }

std::size_t greedy_groups(const Hamiltonian& h, CommuteMode m) {
  return greedy_coloring(build_noncommutation_graph(h, m)).n_colors;
}

}  // namespace

int main() {
  TempDir tmp;
  const std::string h2_file = tmp.file("h2.txt");
  cli::write_file(h2_file, render(h2_hamiltonian()));

  criterion(1, "H2 QWC grouping is {X0X1} and {Z0,Z1,Z0Z1}", 1.0, [&](Check& c) {
    std::string out;
    c.expect(cli_run({"group", "-i", h2_file, "--mode", "qwc"}, &out) == 0, "group failed");
    std::set<std::string> lines;
    std::istringstream is(out);
    for (std::string line; std::getline(is, line);)
      if (line.starts_with("group ")) lines.insert(line.substr(line.rfind('\t') + 1));
    c.expect(lines == std::set<std::string>{"X0 X1", "Z0 Z1 | Z0 | Z1"},
             "unexpected groups in:\n" + out);
  });

  criterion(2, "H2 coloring QUBO ground states and invalid-row energies", 1.0, [&](Check& c) {
    const auto g = qwc_graph(h2_hamiltonian());
    const auto q = graph_coloring_qubo(g, 2, 4.0);
    c.expect(q.dim() == 8, "dim != 8");
    const auto ground = exhaustive_minimize(q);
    std::set<std::string> bits;
    for (const auto& r : ground.rows) {
      c.expect(r.energy == -16.0, "ground energy != -16");
      bits.insert(to_string(r.bits));
    }
    c.expect(bits == std::set<std::string>{"01010110", "10101001"}, "ground bitstrings");
    for (const char* s : {"01100110", "10100101", "01000110"}) {
      c.expect(qubo_energy(q, bits_from_string(s)) == -12.0, std::string(s) + " != -12");
      c.expect(!validate_solution(g, 2, bits_from_string(s)).valid,
               std::string(s) + " validated");
    }
  });

  criterion(3, "SA on H2 QUBO: >= 90% valid, both ground bitstrings", 5.0, [&](Check& c) {
    const auto g = qwc_graph(h2_hamiltonian());
    AnnealConfig cfg;
    cfg.seed = 1;
    const auto st = sample_statistics(simulated_annealing_sample(graph_coloring_qubo(g, 2), cfg),
                                      g, 2);
    c.expect(st.total_reads == 1000, "reads != 1000");
    c.expect(st.valid_count >= 900, "valid " + std::to_string(st.valid_count));
    std::set<std::string> ground;
    for (const auto& r : st.table)
      if (r.energy == -16.0) ground.insert(to_string(r.bits));
    c.expect(ground.size() == 2, "ground bitstrings seen: " + std::to_string(ground.size()));
    std::printf("  valid %zu/%zu\n", st.valid_count, st.total_reads);
  });

  criterion(4, "H2 minimum -0.192; grouped 2^13-shot estimate within 0.01", 10.0, [&](Check& c) {
    const auto h = h2_hamiltonian();
    const auto m = minimize_scalar(
        [&](double t) { return exact_expectation(prepare_h2_ansatz(t), h); }, 0.0,
        2 * std::numbers::pi);
    c.expect(std::round(m.value * 1000) / 1000 == -0.192, "minimum " + format_double(m.value));
    const auto grouping = grouping_from_coloring(h, greedy_coloring(qwc_graph(h)),
                                                 CommuteMode::QWC);
    const auto est =
        estimate_energy_grouped(h, grouping, prepare_h2_ansatz(m.theta), 1 << 13, 1);
    c.expect(std::abs(est.energy + 0.192) <= 0.01, "estimate " + format_double(est.energy));
    VqeConfig cfg;
    cfg.seed = 1;
    const auto r = run_vqe(h, cfg);
    c.expect(std::abs(r.best_energy + 0.192) <= 0.01, "vqe " + format_double(r.best_energy));
    std::printf("  exact min %.6f at theta %.6f; grouped estimate %.6f; vqe %.6f\n", m.value,
                m.theta, est.energy, r.best_energy);
  });

  criterion(5, "H2 VQE: 2 runs grouped vs 4 naive, speedup 2.0", 10.0, [&](Check& c) {
    VqeConfig cfg;
    cfg.seed = 1;
    const auto grouped = run_vqe(h2_hamiltonian(), cfg);
    cfg.grouping_mode = GroupingMode::naive;
    const auto naive = run_vqe(h2_hamiltonian(), cfg);
    c.expect(grouped.runs_per_evaluation == 2, "grouped runs");
    c.expect(naive.runs_per_evaluation == 4, "naive runs");
    c.expect(grouped.speedup_factor == 2.0, "speedup " + format_double(grouped.speedup_factor));
  });

  criterion(6, "Heisenberg chain and grid group counts", 60.0, [&](Check& c) {
    const auto chain = heisenberg_hamiltonian({1, 20, true});
    const auto grid = heisenberg_hamiltonian({3, 3, false});
    c.expect(chain.size() == 60, "chain terms");
    c.expect(grid.size() == 36, "grid terms");
    c.expect(greedy_groups(chain, CommuteMode::QWC) == 3, "chain QWC");
    c.expect(greedy_groups(chain, CommuteMode::GC) == 2, "chain GC");
    c.expect(greedy_groups(grid, CommuteMode::QWC) == 3, "grid QWC");
    c.expect(greedy_groups(grid, CommuteMode::GC) == 4, "grid GC greedy");
    const auto g = build_noncommutation_graph(grid, CommuteMode::GC);
    const auto ex = exhaustive_chromatic(g, 4);
    c.expect(ex.status == ChromaticResult::Status::optimal && ex.coloring->n_colors == 3,
             "grid GC exact");
    AnnealConfig cfg;
    cfg.seed = 1;
    const auto st = sample_statistics(simulated_annealing_sample(graph_coloring_qubo(g, 3), cfg),
                                      g, 3);
    c.expect(st.valid_count > 0, "SA found no valid 3-coloring");
    for (const auto& r : st.table)
      if (*r.valid)
        c.expect(decode_coloring(r.bits, g.n_vertices(), 3).compacted().n_colors == 3,
                 "SA coloring uses fewer than 3 colors?");
    std::printf("  grid GC SA K=3 valid %zu/%zu\n", st.valid_count, st.total_reads);
  });

  criterion(7, "default survey speedups span 1.5x to 20x", 120.0, [&](Check& c) {
    std::string out;
    c.expect(cli_run({"survey"}, &out) == 0, "survey failed");
    double lo = 1e9, hi = 0.0;
    for (const auto& r : parse_survey_tsv(out)) {
      if (!r.speedup) continue;
      lo = std::min(lo, *r.speedup);
      hi = std::max(hi, *r.speedup);
    }
    c.expect(lo <= 1.5 && hi >= 20.0, "range " + format_double(lo) + ".." + format_double(hi));
    std::printf("  speedup range %.3g..%.3g\n", lo, hi);
    std::printf("%s", out.c_str());
  });

  criterion(8, "property suites and seeded reproducibility", 300.0, [&](Check& c) {
    std::mt19937_64 rng(2024);
    std::size_t violations = 0;
    for (int i = 0; i < 100000; ++i) {
      const std::size_t n = 1 + rng() % 12;
      const auto a = PauliString::from_label(oracle::random_label(rng, n));
      const auto b = PauliString::from_label(oracle::random_label(rng, n));
      if (qubit_wise_commutes(a, b) && !generally_commutes(a, b)) ++violations;
    }
    c.expect(violations == 0, "QWC without GC");

    for (auto spec : {LatticeSpec{1, 2, false}, LatticeSpec{1, 3, false},
                      LatticeSpec{2, 2, false}, LatticeSpec{1, 4, true}}) {
      const std::size_t modes = 2 * spec.n_sites();
      const auto f = hubbard_hamiltonian(spec);
      const double err = (oracle::hamiltonian_matrix(jordan_wigner(f, modes)) -
                          oracle::fermion_matrix(f, modes))
                             .cwiseAbs()
                             .maxCoeff();
      c.expect(err <= 1e-10, "JW mismatch " + format_double(err));
    }

    {
      const auto h = h2_hamiltonian();
      const auto grouping = grouping_from_coloring(h, greedy_coloring(qwc_graph(h)),
                                                   CommuteMode::QWC);
      const double theta = 0.5;
      const double exact = exact_expectation(prepare_h2_ansatz(theta), h);
      double sum = 0.0, sq = 0.0;
      const int seeds = 400;
      for (int s = 0; s < seeds; ++s) {
        const double e =
            estimate_energy_grouped(h, grouping, prepare_h2_ansatz(theta), 1024, s).energy;
        sum += e;
        sq += e * e;
      }
      const double mean = sum / seeds;
      const double sem = std::sqrt((sq / seeds - mean * mean) / seeds);
      c.expect(std::abs(mean - exact) <= 4 * sem, "estimator bias");
    }

    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + rng() % 4, k = 1 + rng() % 3;
      if (n * k > 16) continue;
      Graph g(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (rng() % 2) g.add_edge(i, j);
      const auto q = graph_coloring_qubo(g, k);
      const double ground = -4.0 * static_cast<double>(n);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * k)); ++m) {
        Bits x(n * k);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (m >> i) & 1u;
        if (validate_solution(g, k, x).valid != (qubo_energy(q, x) == ground)) {
          c.expect(false, "valid/ground mismatch");
          break;
        }
      }
    }

    auto same = [&](std::vector<std::string> args, const std::string& file) {
      std::string a, b;
      cli_run(args, &a);
      const std::string fa = file.empty() ? "" : cli::read_file(file);
      cli_run(args, &b);
      const std::string fb = file.empty() ? "" : cli::read_file(file);
      return a == b && fa == fb;
    };
    c.expect(same({"group", "-i", h2_file, "--solver", "anneal", "--seed", "7", "--samples",
                   tmp.file("s.tsv")},
                  tmp.file("s.tsv")),
             "group anneal not reproducible");
    std::string t1, t4;
    cli_run({"group", "-i", h2_file, "--solver", "anneal", "--seed", "7", "--threads", "1",
             "--samples", tmp.file("t1.tsv")});
    cli_run({"group", "-i", h2_file, "--solver", "anneal", "--seed", "7", "--threads", "4",
             "--samples", tmp.file("t4.tsv")});
    c.expect(cli::read_file(tmp.file("t1.tsv")) == cli::read_file(tmp.file("t4.tsv")),
             "thread count changes samples");
    c.expect(same({"vqe", "-i", h2_file, "--seed", "7", "-o", tmp.file("v.json")},
                  tmp.file("v.json")),
             "vqe not reproducible");
    c.expect(same({"vqe", "-i", h2_file, "--grouping", "qwc-anneal", "--seed", "7"}, ""),
             "vqe anneal not reproducible");
    cli::write_file(tmp.file("m.txt"), "heisenberg 3 3 gc anneal 3 4 200 7 open\n");
    c.expect(same({"survey", "--manifest", tmp.file("m.txt")}, ""), "survey not reproducible");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
