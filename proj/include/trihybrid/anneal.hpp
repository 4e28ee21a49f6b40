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

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "trihybrid/qubo.hpp"
#include "trihybrid/random.hpp"

namespace trihybrid {

enum class BetaSchedule { geometric };

struct AnnealConfig {
  std::size_t num_reads = 1000;
  std::size_t sweeps_per_read = 1000;
  double beta_initial = 0.1;
  double beta_final = 10.0;
  BetaSchedule schedule = BetaSchedule::geometric;
  std::uint64_t seed = 0;
  /// Worker threads; 0 means hardware concurrency. Does not affect results.
  unsigned num_threads = 0;

  void validate() const {
    if (num_reads < 1) throw std::invalid_argument("num_reads must be >= 1");
    if (sweeps_per_read < 1) throw std::invalid_argument("sweeps_per_read must be >= 1");
    if (!(beta_initial > 0.0 && beta_initial < beta_final))
      throw std::invalid_argument("need 0 < beta_initial < beta_final");
  }
};

struct SampleRow {
  Bits bits;
  double energy = 0.0;
  std::size_t frequency = 0;
  /// Unset until checked against a coloring instance.
  std::optional<bool> valid;

  friend bool operator==(const SampleRow&, const SampleRow&) = default;
};

/// Unique bitstrings with multiplicities, ordered by ascending energy, then
/// descending frequency, then bitstring.
struct SampleSet {
  std::vector<SampleRow> rows;
  std::size_t total_reads = 0;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

  /// Fill each row's validity flag for a coloring instance.
  void annotate_validity(const Graph& g, std::size_t k) {
    for (auto& r : rows) r.valid = validate_solution(g, k, r.bits).valid;
  }
};

namespace detail {

inline void sort_rows(std::vector<SampleRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const SampleRow& a, const SampleRow& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.bits < b.bits;
  });
}

inline SampleSet aggregate(const QuboMatrix& q, const std::vector<Bits>& reads) {
  std::map<Bits, std::size_t> counts;
  for (const auto& b : reads) ++counts[b];
  SampleSet s;
  s.total_reads = reads.size();
  for (const auto& [bits, n] : counts)
    s.rows.push_back({bits, qubo_energy(q, bits), n, std::nullopt});
  sort_rows(s.rows);
  return s;
}

/// Off-diagonal couplings per variable plus the diagonal.
struct SparseQubo {
  std::vector<double> diagonal;
  std::vector<std::vector<std::pair<std::size_t, double>>> couplings;

  explicit SparseQubo(const QuboMatrix& q)
      : diagonal(q.dim(), 0.0), couplings(q.dim()) {
    for (const auto& [ij, v] : q.entries()) {
      if (ij.first == ij.second) {
        diagonal[ij.first] += v;
      } else {
        couplings[ij.first].emplace_back(ij.second, v);
        couplings[ij.second].emplace_back(ij.first, v);
      }
    }
  }

  /// field[i] = sum_{j != i} Q_ij x_j
  std::vector<double> fields(const Bits& x) const {
    std::vector<double> f(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (const auto& [j, w] : couplings[i])
        if (x[j]) f[i] += w;
    return f;
  }

  void flip(Bits& x, std::vector<double>& field, std::size_t i) const {
    x[i] ^= 1u;
    const double sign = x[i] ? 1.0 : -1.0;
    for (const auto& [j, w] : couplings[i]) field[j] += sign * w;
  }

  double delta(const Bits& x, const std::vector<double>& field, std::size_t i) const {
    return (x[i] ? -1.0 : 1.0) * (diagonal[i] + field[i]);
  }
};

inline Bits anneal_one(const SparseQubo& sq, const std::vector<double>& betas,
                       std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = sq.diagonal.size();
  Bits x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() >> 63);
  auto field = sq.fields(x);
  for (double beta : betas) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = sq.delta(x, field, i);
      if (d <= 0.0 || uniform01(rng) < std::exp(-beta * d)) sq.flip(x, field, i);
    }
  }
  return x;
}

}  // namespace detail

/// Inverse temperatures for each sweep, geometric from beta_initial to beta_final.
inline std::vector<double> beta_schedule(const AnnealConfig& cfg) {
  std::vector<double> betas(cfg.sweeps_per_read);
  if (cfg.sweeps_per_read == 1) {
    betas[0] = cfg.beta_final;
    return betas;
  }
  const double ratio = cfg.beta_final / cfg.beta_initial;
  for (std::size_t s = 0; s < cfg.sweeps_per_read; ++s)
    betas[s] = cfg.beta_initial *
               std::pow(ratio, static_cast<double>(s) /
                                   static_cast<double>(cfg.sweeps_per_read - 1));
  return betas;
}

/**
 * Simulated annealing over single-bit Metropolis flips.
 *
 * Each read starts from a uniformly random bitstring and performs
 * sweeps_per_read in-order sweeps. Read r draws from substream r of the
 * master seed, so the result is independent of the thread count.
 */
inline SampleSet simulated_annealing_sample(const QuboMatrix& q, const AnnealConfig& cfg) {
  cfg.validate();
  if (q.dim() == 0) throw std::invalid_argument("QUBO has no variables");
  const detail::SparseQubo sq(q);
  const auto betas = beta_schedule(cfg);

  std::vector<Bits> reads(cfg.num_reads);
  unsigned threads = cfg.num_threads ? cfg.num_threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cfg.num_reads));

  auto work = [&](unsigned worker) {
    for (std::size_t r = worker; r < cfg.num_reads; r += threads)
      reads[r] = detail::anneal_one(sq, betas, substream_seed(cfg.seed, r));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  return detail::aggregate(q, reads);
}

/// Every global minimum of q by Gray-code enumeration (dim <= 24).
inline SampleSet exhaustive_minimize(const QuboMatrix& q) {
  constexpr std::size_t max_dim = 24;
  if (q.dim() > max_dim)
    throw std::invalid_argument("exhaustive_minimize handles dim <= 24; dim " +
                                std::to_string(q.dim()) +
                                " needs simulated_annealing_sample");
  const detail::SparseQubo sq(q);
  const std::size_t n = q.dim();
  Bits x(n, 0);
  std::vector<double> field(n, 0.0);
  double energy = 0.0;
  // Energies are tracked incrementally; candidates within slack of the best
  // are re-scored exactly at the end.
  constexpr double slack = 1e-9;
  double best = 0.0;
  std::vector<Bits> candidates{x};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(step));
    energy += sq.delta(x, field, i);
    sq.flip(x, field, i);
    if (energy < best - slack) {
      best = energy;
      candidates.clear();
    }
    if (energy <= best + slack) candidates.push_back(x);
  }

  double exact_best = qubo_energy(q, candidates.front());
  for (const auto& c : candidates) exact_best = std::min(exact_best, qubo_energy(q, c));
  SampleSet s;
  for (const auto& c : candidates) {
    const double e = qubo_energy(q, c);
    if (e == exact_best) s.rows.push_back({c, e, 1, std::nullopt});
  }
  s.total_reads = s.rows.size();
  detail::sort_rows(s.rows);
  return s;
}

struct StatsReport {
  std::vector<SampleRow> table;
  std::size_t valid_count = 0;
  std::size_t total_reads = 0;
  std::size_t unique_bitstrings = 0;
  std::optional<double> ground_energy;
  std::size_t ground_hits = 0;
  double ground_hit_rate = 0.0;
  std::size_t n_qubits = 0;
};

/// Validity and ground-state statistics of a sample set for a coloring instance.
inline StatsReport sample_statistics(const SampleSet& s, const Graph& g, std::size_t k) {
  StatsReport r;
  r.table = s.rows;
  for (auto& row : r.table) row.valid = validate_solution(g, k, row.bits).valid;
  detail::sort_rows(r.table);
  r.total_reads = s.total_reads;
  r.unique_bitstrings = r.table.size();
  r.n_qubits = g.n_vertices() * k;
  for (const auto& row : r.table)
    if (*row.valid) r.valid_count += row.frequency;
  if (!r.table.empty()) {
    r.ground_energy = r.table.front().energy;
    for (const auto& row : r.table)
      if (row.energy == *r.ground_energy) r.ground_hits += row.frequency;
    r.ground_hit_rate = static_cast<double>(r.ground_hits) / static_cast<double>(r.total_reads);
  }
  return r;
}

/// `bitstring energy frequency valid`, tab separated, one header line.
inline std::string render_sample_tsv(const SampleSet& s) {
  std::string out = "bitstring\tenergy\tfrequency\tvalid\n";
  for (const auto& r : s.rows) {
    out += to_string(r.bits) + "\t" + format_double(r.energy) + "\t" +
           std::to_string(r.frequency) + "\t" +
           (r.valid ? (*r.valid ? "1" : "0") : "-") + "\n";
  }
  return out;
}

inline SampleSet parse_sample_tsv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  SampleSet s;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream ls(line);
    std::string bits, energy, valid;
    std::size_t freq;
    if (!(ls >> bits >> energy >> freq >> valid))
      throw ParseError(line_no, 1, "expected 4 tab-separated columns");
    SampleRow row{bits_from_string(bits), std::stod(energy), freq, std::nullopt};
    if (valid != "-") row.valid = valid == "1";
    s.total_reads += freq;
    s.rows.push_back(std::move(row));
  }
  return s;
}

struct ValidCountPoint {
  std::string label;
  std::size_t n_qubits = 0;
  std::size_t valid_count = 0;
  std::size_t total_reads = 0;
};

inline std::string render_valid_count_csv(const std::vector<ValidCountPoint>& points) {
  std::string out = "label,n_qubits,valid_count,total_reads\n";
  for (const auto& p : points)
    out += p.label + "," + std::to_string(p.n_qubits) + "," +
           std::to_string(p.valid_count) + "," + std::to_string(p.total_reads) + "\n";
  return out;
}

}  // namespace trihybrid
