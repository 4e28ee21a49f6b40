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

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "trihybrid/anneal.hpp"
#include "trihybrid/commgraph.hpp"
#include "trihybrid/qubo.hpp"
#include "trihybrid/sim.hpp"

namespace trihybrid {

enum class GroupingMode { naive, qwc_greedy, qwc_anneal, qwc_exact };

inline std::string_view to_string(GroupingMode m) {
  switch (m) {
    case GroupingMode::naive: return "naive";
    case GroupingMode::qwc_greedy: return "qwc-greedy";
    case GroupingMode::qwc_anneal: return "qwc-anneal";
    case GroupingMode::qwc_exact: return "qwc-exact";
  }
  return "?";
}

inline GroupingMode grouping_mode_from_string(std::string_view s) {
  for (auto m : {GroupingMode::naive, GroupingMode::qwc_greedy, GroupingMode::qwc_anneal,
                 GroupingMode::qwc_exact})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown grouping mode '" + std::string(s) + "'");
}

/// The annealer returned no sample that passes validation.
class AnnealFailure : public std::runtime_error {
 public:
  AnnealFailure(const std::string& what, SampleSet samples)
      : std::runtime_error(what), samples_(std::move(samples)) {}
  const SampleSet& samples() const noexcept { return samples_; }

 private:
  SampleSet samples_;
};

/// No ansatz is registered for the Hamiltonian's qubit count.
class UnregisteredAnsatz : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ScalarMinimum {
  double theta = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

struct ScalarMinimizerConfig {
  std::size_t grid_points = 64;
  double tolerance = 1e-4;
  std::size_t max_iterations = 200;
};

/**
 * Derivative-free 1D minimization on [lo, hi): a uniform grid scan followed
 * by golden-section search on the two grid cells around the best point.
 * Stops once the bracket is narrower than the tolerance or after
 * max_iterations golden steps. Returns the best point observed.
 */
inline ScalarMinimum minimize_scalar(const std::function<double(double)>& objective,
                                     double lo, double hi,
                                     const ScalarMinimizerConfig& cfg = {}) {
  ScalarMinimum best;
  bool have = false;
  auto eval = [&](double x) {
    const double f = objective(x);
    ++best.evaluations;
    if (!have || f < best.value) {
      best.theta = x;
      best.value = f;
      have = true;
    }
    return f;
  };

  const std::size_t n = std::max<std::size_t>(cfg.grid_points, 1);
  const double step = (hi - lo) / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) eval(lo + step * static_cast<double>(k));

  constexpr double inv_phi = 0.6180339887498949;
  double a = best.theta - step, b = best.theta + step;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (std::size_t it = 0; it < cfg.max_iterations && (b - a) > cfg.tolerance; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  return best;
}

struct VqeConfig {
  std::size_t shots_per_group = 8192;
  std::size_t max_iterations = 200;
  double theta_init = 0.0;
  std::uint64_t seed = 0;
  GroupingMode grouping_mode = GroupingMode::qwc_greedy;
  /// Annealer knobs for qwc-anneal; its seed is derived from `seed`.
  AnnealConfig anneal{};
  double penalty = 4.0;
  /// Use the greedy grouping if the annealer finds no valid coloring.
  bool fallback_to_greedy = false;
  /// Noise-free objective (exact expectation) instead of shot estimates.
  bool exact_objective = false;

  void validate() const {
    if (shots_per_group < 1) throw std::invalid_argument("shots_per_group must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  }
};

struct VqeReport {
  double best_theta = 0.0;
  double best_energy = 0.0;
  std::size_t runs_per_evaluation = 0;
  std::size_t total_evaluations = 0;
  std::size_t n_terms = 0;
  Grouping grouping_used;
  double speedup_factor = 0.0;
  GroupingMode grouping_mode = GroupingMode::qwc_greedy;
  bool used_fallback = false;
};

/// Grouping for a VQE run under the requested mode.
inline Grouping make_grouping(const Hamiltonian& h, const VqeConfig& cfg,
                              bool* used_fallback = nullptr) {
  if (used_fallback) *used_fallback = false;
  if (cfg.grouping_mode == GroupingMode::naive) return naive_grouping(h);

  const Graph g = build_noncommutation_graph(h, CommuteMode::QWC);
  const Coloring greedy = greedy_coloring(g);
  switch (cfg.grouping_mode) {
    case GroupingMode::qwc_greedy:
      return grouping_from_coloring(h, greedy, CommuteMode::QWC);
    case GroupingMode::qwc_exact: {
      const auto r = exhaustive_chromatic(g, greedy.n_colors);
      if (r.status != ChromaticResult::Status::optimal)
        throw std::runtime_error("exhaustive coloring did not finish");
      return grouping_from_coloring(h, *r.coloring, CommuteMode::QWC);
    }
    case GroupingMode::qwc_anneal: {
      const std::size_t k = greedy.n_colors;
      const QuboMatrix q = graph_coloring_qubo(g, k, cfg.penalty);
      AnnealConfig ac = cfg.anneal;
      ac.seed = substream_seed(cfg.seed, 0xa11ea1);
      SampleSet samples = simulated_annealing_sample(q, ac);
      samples.annotate_validity(g, k);
      for (const auto& row : samples.rows)
        if (*row.valid)
          return grouping_from_coloring(h, decode_coloring(row.bits, g.n_vertices(), k),
                                        CommuteMode::QWC);
      if (cfg.fallback_to_greedy) {
        if (used_fallback) *used_fallback = true;
        return grouping_from_coloring(h, greedy, CommuteMode::QWC);
      }
      throw AnnealFailure("annealer produced no valid " + std::to_string(k) + "-coloring",
                          std::move(samples));
    }
    case GroupingMode::naive: break;
  }
  return naive_grouping(h);
}

/// Parameterized trial state for a Hamiltonian; only the 2-qubit
/// exp(-i theta X0 Y1)|01> ansatz is registered.
inline std::function<StateVector(double)> ansatz_for(const Hamiltonian& h) {
  if (h.n_qubits() == 2) return prepare_h2_ansatz;
  throw UnregisteredAnsatz("no ansatz registered for " + std::to_string(h.n_qubits()) +
                           "-qubit Hamiltonians");
}

/**
 * Variational loop: every objective call prepares the ansatz and estimates
 * the energy from one shot batch per group (substream = evaluation index).
 * The incumbent is re-measured with 4x shots for the reported energy.
 */
inline VqeReport run_vqe(const Hamiltonian& h, const VqeConfig& cfg) {
  cfg.validate();
  const auto ansatz = ansatz_for(h);
  VqeReport report;
  report.grouping_mode = cfg.grouping_mode;
  report.grouping_used = make_grouping(h, cfg, &report.used_fallback);
  report.n_terms = h.size();
  report.runs_per_evaluation = report.grouping_used.size();
  report.speedup_factor =
      static_cast<double>(h.size()) / static_cast<double>(report.runs_per_evaluation);

  std::size_t evaluation = 0;
  auto energy = [&](double theta, std::size_t shots) {
    const auto state = ansatz(theta);
    const std::uint64_t stream = substream_seed(cfg.seed, evaluation++);
    if (cfg.exact_objective) return exact_expectation(state, h);
    return estimate_energy_grouped(h, report.grouping_used, state, shots, stream).energy;
  };

  const auto best = minimize_scalar(
      [&](double theta) { return energy(theta, cfg.shots_per_group); }, cfg.theta_init,
      cfg.theta_init + 2.0 * std::numbers::pi,
      ScalarMinimizerConfig{64, 1e-4, cfg.max_iterations});
  report.best_theta = best.theta;
  report.best_energy = energy(best.theta, 4 * cfg.shots_per_group);
  report.total_evaluations = evaluation;
  return report;
}

inline nlohmann::ordered_json grouping_to_json(const Hamiltonian& h, const Grouping& g) {
  auto groups = nlohmann::ordered_json::array();
  for (const auto& group : g.groups) {
    auto members = nlohmann::ordered_json::array();
    for (auto i : group)
      members.push_back({{"index", i},
                         {"coefficient", h[i].coefficient},
                         {"term", h[i].string.tokens()}});
    groups.push_back(members);
  }
  return groups;
}

inline nlohmann::ordered_json to_json(const VqeReport& r, const Hamiltonian& h) {
  return {
      {"best_theta", r.best_theta},
      {"best_energy", r.best_energy},
      {"runs_per_evaluation", r.runs_per_evaluation},
      {"total_evaluations", r.total_evaluations},
      {"n_terms", r.n_terms},
      {"speedup_factor", r.speedup_factor},
      {"grouping_mode", std::string(to_string(r.grouping_mode))},
      {"used_fallback", r.used_fallback},
      {"grouping_used", grouping_to_json(h, r.grouping_used)},
  };
}

struct SpeedupEntry {
  std::string label;
  std::size_t terms = 0;
  std::size_t groups = 0;
  double speedup = 0.0;
};

/// Terms, groups and terms/groups per (label, Hamiltonian, grouping).
inline std::vector<SpeedupEntry> speedup_table(
    const std::vector<std::tuple<std::string, Hamiltonian, Grouping>>& entries) {
  std::vector<SpeedupEntry> out;
  for (const auto& [label, h, g] : entries) {
    verify_grouping(h, g);
    SpeedupEntry e{label, h.size(), g.size(), 0.0};
    e.speedup = e.groups ? static_cast<double>(e.terms) / static_cast<double>(e.groups) : 0.0;
    out.push_back(e);
  }
  return out;
}

inline std::string render_speedup_tsv(const std::vector<SpeedupEntry>& rows) {
  std::string out = "label\tterms\tgroups\tspeedup\n";
  for (const auto& r : rows)
    out += r.label + "\t" + std::to_string(r.terms) + "\t" + std::to_string(r.groups) + "\t" +
           format_double(r.speedup) + "\n";
  return out;
}

}  // namespace trihybrid
