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

#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "trihybrid/anneal.hpp"
#include "trihybrid/commgraph.hpp"
#include "trihybrid/models.hpp"
#include "trihybrid/qubo.hpp"

namespace trihybrid {

enum class ModelKind { h2, heisenberg, hubbard };
enum class Solver { greedy, exact, anneal };

inline std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::h2: return "h2";
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::hubbard: return "hubbard";
  }
  return "?";
}

inline std::string_view to_string(Solver s) {
  switch (s) {
    case Solver::greedy: return "greedy";
    case Solver::exact: return "exact";
    case Solver::anneal: return "anneal";
  }
  return "?";
}

inline ModelKind model_kind_from_string(std::string_view s) {
  for (auto k : {ModelKind::h2, ModelKind::heisenberg, ModelKind::hubbard})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown model kind '" + std::string(s) + "'");
}

inline Solver solver_from_string(std::string_view s) {
  for (auto k : {Solver::greedy, Solver::exact, Solver::anneal})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown solver '" + std::string(s) + "'");
}

inline CommuteMode commute_mode_from_string(std::string_view s) {
  if (s == "qwc") return CommuteMode::QWC;
  if (s == "gc") return CommuteMode::GC;
  throw std::invalid_argument("unknown commutation mode '" + std::string(s) + "'");
}

struct ModelSpec {
  ModelKind kind = ModelKind::h2;
  std::size_t rows = 1;
  std::size_t cols = 2;
  /// Unset: heisenberg uses the per-dimension default, hubbard stays open.
  std::optional<bool> periodic;
  double coupling = 1.0;
  double t = 1.0;
  double u = 2.0;

  std::string label() const {
    if (kind == ModelKind::h2) return "h2";
    return std::string(to_string(kind)) + "-" + std::to_string(rows) + "x" +
           std::to_string(cols);
  }
};

inline Hamiltonian build_model(const ModelSpec& m) {
  switch (m.kind) {
    case ModelKind::h2:
      return h2_hamiltonian();
    case ModelKind::heisenberg: {
      LatticeSpec l = LatticeSpec::with_default_boundary(m.rows, m.cols);
      if (m.periodic) l.periodic = *m.periodic;
      l.validate();
      return heisenberg_hamiltonian(l, m.coupling);
    }
    case ModelKind::hubbard: {
      LatticeSpec l{m.rows, m.cols, m.periodic.value_or(false)};
      l.validate();
      return jordan_wigner(hubbard_hamiltonian(l, m.t, m.u), 2 * l.n_sites());
    }
  }
  throw std::logic_error("unhandled model kind");
}

struct Preprocessed {
  Hamiltonian kept;
  std::vector<Term> z_group;
  std::vector<Term> universal;
};

/// Optional Z-only extraction followed by optional universal-commuter removal.
inline Preprocessed preprocess(const Hamiltonian& h, CommuteMode mode, bool strip_z,
                               bool strip_universal) {
  Preprocessed p{h, {}, {}};
  if (strip_z) {
    auto z = extract_z_only_group(p.kept);
    p.kept = std::move(z.rest);
    p.z_group = std::move(z.z_group);
  }
  if (strip_universal) {
    auto s = strip_universal_commuters(p.kept, mode);
    p.kept = std::move(s.kept);
    p.universal = std::move(s.removed);
  }
  return p;
}

/// One line of a survey manifest:
///   kind rows cols mode solver colors penalty reads seed flags
/// colors may be `-` (use the greedy count); flags is `-` or a comma list of
/// periodic, open, strip-z, strip-universal.
struct SurveyRow {
  ModelSpec model;
  CommuteMode mode = CommuteMode::QWC;
  Solver solver = Solver::greedy;
  std::optional<std::size_t> colors;
  double penalty = 4.0;
  std::size_t reads = 1000;
  std::uint64_t seed = 0;
  bool strip_z = false;
  bool strip_universal = false;
};

inline std::vector<SurveyRow> parse_survey_manifest(const std::string& text) {
  std::vector<SurveyRow> rows;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto body = detail::strip_comment(line);
    const auto tok = detail::split_tokens(body);
    if (tok.empty()) continue;
    if (tok.size() != 10)
      throw ParseError(line_no, 1, "expected 10 fields, got " + std::to_string(tok.size()));
    auto field = [&](std::size_t i) { return std::string(tok[i].text); };
    try {
      SurveyRow r;
      r.model.kind = model_kind_from_string(field(0));
      r.model.rows = std::stoul(field(1));
      r.model.cols = std::stoul(field(2));
      r.mode = commute_mode_from_string(field(3));
      r.solver = solver_from_string(field(4));
      if (field(5) != "-" && field(5) != "0") r.colors = std::stoul(field(5));
      r.penalty = std::stod(field(6));
      r.reads = std::stoul(field(7));
      r.seed = std::stoull(field(8));
      if (field(9) != "-") {
        std::istringstream flags(field(9));
        std::string f;
        while (std::getline(flags, f, ',')) {
          if (f == "periodic") r.model.periodic = true;
          else if (f == "open") r.model.periodic = false;
          else if (f == "strip-z") r.strip_z = true;
          else if (f == "strip-universal") r.strip_universal = true;
          else throw std::invalid_argument("unknown flag '" + f + "'");
        }
      }
      rows.push_back(r);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, 1, e.what());
    }
  }
  return rows;
}

/// Grouping benchmarks: H2 and the Heisenberg/Hubbard lattices, each under
/// both commutation modes, colored by the annealer with the greedy count
/// (three colors for the 3x3 GC grid, where greedy needs four).
inline constexpr std::string_view default_survey_manifest =
    "# kind rows cols mode solver colors penalty reads seed flags\n"
    "h2         1 2  qwc anneal - 4 1000 1 -\n"
    "h2         1 2  gc  anneal - 4 1000 1 strip-universal\n"
    "heisenberg 1 20 qwc anneal - 4 1000 1 periodic\n"
    "heisenberg 1 20 gc  anneal - 4 1000 1 periodic\n"
    "heisenberg 3 3  qwc anneal - 4 1000 1 open\n"
    "heisenberg 3 3  gc  anneal 3 4 1000 1 open\n"
    "hubbard    2 2  qwc anneal - 4 1000 1 strip-z\n"
    "hubbard    2 2  gc  anneal - 4 1000 1 strip-universal\n"
    "hubbard    1 3  qwc anneal - 4 1000 1 strip-z\n"
    "hubbard    1 3  gc  anneal - 4 1000 1 strip-universal\n";

struct SurveyResult {
  std::string label;
  CommuteMode mode = CommuteMode::QWC;
  Solver solver = Solver::greedy;
  std::optional<std::size_t> terms;
  std::optional<std::size_t> greedy_colors;
  std::optional<std::size_t> solver_colors;
  std::optional<std::size_t> valid_count;
  std::optional<std::size_t> total_reads;
  std::optional<std::size_t> n_qubits;
  std::optional<double> speedup;
  std::string error;
};

/// Evaluate one manifest row. Failures are recorded, never thrown.
inline SurveyResult run_survey_row(const SurveyRow& row, unsigned threads = 0) {
  SurveyResult r;
  r.label = row.model.label();
  r.mode = row.mode;
  r.solver = row.solver;
  try {
    const auto pre =
        preprocess(build_model(row.model), row.mode, row.strip_z, row.strip_universal);
    const Hamiltonian& h = pre.kept;
    r.terms = h.size();
    const Graph g = build_noncommutation_graph(h, row.mode);
    const Coloring greedy = greedy_coloring(g);
    r.greedy_colors = greedy.n_colors;
    const std::size_t k = row.colors.value_or(greedy.n_colors);

    switch (row.solver) {
      case Solver::greedy:
        r.solver_colors = greedy.n_colors;
        break;
      case Solver::exact: {
        const auto ex = exhaustive_chromatic(g, k);
        if (ex.status == ChromaticResult::Status::optimal) r.solver_colors = ex.coloring->n_colors;
        break;
      }
      case Solver::anneal: {
        if (k == 0) break;
        const QuboMatrix q = graph_coloring_qubo(g, k, row.penalty);
        AnnealConfig cfg;
        cfg.num_reads = row.reads;
        cfg.seed = row.seed;
        cfg.num_threads = threads;
        const SampleSet s = simulated_annealing_sample(q, cfg);
        const StatsReport st = sample_statistics(s, g, k);
        r.valid_count = st.valid_count;
        r.total_reads = st.total_reads;
        r.n_qubits = st.n_qubits;
        for (const auto& rowv : st.table) {
          if (!*rowv.valid) continue;
          r.solver_colors = decode_coloring(rowv.bits, g.n_vertices(), k).compacted().n_colors;
          break;
        }
        break;
      }
    }
    const auto groups = r.solver_colors ? r.solver_colors : r.greedy_colors;
    if (groups && *groups > 0)
      r.speedup = static_cast<double>(h.size()) / static_cast<double>(*groups);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

inline std::vector<SurveyResult> run_survey(const std::vector<SurveyRow>& rows,
                                            unsigned threads = 0) {
  std::vector<SurveyResult> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(run_survey_row(row, threads));
  return out;
}

namespace detail {
template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "-";
  if constexpr (std::is_floating_point_v<T>)
    return format_double(*v);
  else
    return std::to_string(*v);
}
}  // namespace detail

/// Grouping table: one line per manifest row, `-` where a value is missing.
inline std::string render_survey_tsv(const std::vector<SurveyResult>& results) {
  std::string out =
      "label\tmode\tsolver\tterms\tgreedy_colors\tsolver_colors\tvalid_count\t"
      "total_reads\tn_qubits\tspeedup\n";
  for (const auto& r : results) {
    out += r.label + "\t" + std::string(to_string(r.mode)) + "\t" +
           std::string(to_string(r.solver)) + "\t" + detail::cell(r.terms) + "\t" +
           detail::cell(r.greedy_colors) + "\t" + detail::cell(r.solver_colors) + "\t" +
           detail::cell(r.valid_count) + "\t" + detail::cell(r.total_reads) + "\t" +
           detail::cell(r.n_qubits) + "\t" + detail::cell(r.speedup) + "\n";
  }
  return out;
}

inline std::vector<SurveyResult> parse_survey_tsv(const std::string& text) {
  std::vector<SurveyResult> out;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  auto opt_size = [](const std::string& s) -> std::optional<std::size_t> {
    if (s == "-") return std::nullopt;
    return std::stoul(s);
  };
  while (std::getline(is, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> f;
    for (std::string c; std::getline(ls, c, '\t');) f.push_back(c);
    if (f.size() != 10) throw ParseError(line_no, 1, "expected 10 columns");
    SurveyResult r;
    r.label = f[0];
    r.mode = commute_mode_from_string(f[1]);
    r.solver = solver_from_string(f[2]);
    r.terms = opt_size(f[3]);
    r.greedy_colors = opt_size(f[4]);
    r.solver_colors = opt_size(f[5]);
    r.valid_count = opt_size(f[6]);
    r.total_reads = opt_size(f[7]);
    r.n_qubits = opt_size(f[8]);
    if (f[9] != "-") r.speedup = std::stod(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

/// Valid-sample counts against annealer problem size (annealed rows only).
inline std::vector<ValidCountPoint> valid_count_points(const std::vector<SurveyResult>& results) {
  std::vector<ValidCountPoint> out;
  for (const auto& r : results)
    if (r.n_qubits && r.valid_count && r.total_reads)
      out.push_back({r.label + "-" + std::string(to_string(r.mode)), *r.n_qubits,
                     *r.valid_count, *r.total_reads});
  return out;
}

}  // namespace trihybrid
