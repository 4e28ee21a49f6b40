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

// Command-line front end. Everything lives in run_cli() so tests can drive
// the commands in-process.

#pragma once

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trihybrid/anneal.hpp"
#include "trihybrid/commgraph.hpp"
#include "trihybrid/models.hpp"
#include "trihybrid/pauli.hpp"
#include "trihybrid/qubo.hpp"
#include "trihybrid/survey.hpp"
#include "trihybrid/version.hpp"
#include "trihybrid/vqe.hpp"

namespace trihybrid::cli {

enum ExitCode : int { ok = 0, internal_error = 1, usage_error = 2, no_valid_solution = 3 };

/// Bad flag values detected after parsing; mapped to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Provenance written next to each output as `<output>.manifest.json`.
/// `replay <manifest>` re-runs the recorded arguments.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> input_digests;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [path, digest] : input_digests) inputs[path] = "sha256:" + digest;
    nlohmann::ordered_json j{{"command", command},
                             {"args", args},
                             {"seed", nullptr},
                             {"tool_version", std::string(version)},
                             {"inputs", inputs},
                             {"timestamp", utc_timestamp()}};
    if (seed) j["seed"] = *seed;
    return j;
  }

  void write_beside(const std::string& output) const {
    write_file(output + ".manifest.json", to_json().dump(2) + "\n");
  }
};

namespace detail {

struct Context {
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
};

inline std::string groups_text(const Hamiltonian& h, const Grouping& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.groups.size(); ++i) {
    os << "group " << i << '\t';
    for (std::size_t k = 0; k < g.groups[i].size(); ++k)
      os << (k ? "," : "") << g.groups[i][k];
    os << '\t';
    for (std::size_t k = 0; k < g.groups[i].size(); ++k)
      os << (k ? " | " : "") << h[g.groups[i][k]].string.tokens();
    os << '\n';
  }
  return os.str();
}

inline std::string terms_text(const std::string& label, const std::vector<Term>& terms) {
  std::string s;
  for (const auto& t : terms)
    s += label + "\t" + format_double(t.coefficient) + " " + t.string.tokens() + "\n";
  return s;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

inline int cmd_model(const ModelSpec& spec, const std::string& output, Context& ctx) {
  Hamiltonian h;
  try {
    h = build_model(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string text = render(h);
  const bool to_stdout = output.empty() || output == "-";
  if (to_stdout) {
    ctx.out << text;
  } else {
    write_file(output, text);
    RunManifest{"model", ctx.args, std::nullopt, {}}.write_beside(output);
  }
  (to_stdout ? ctx.err : ctx.out) << "terms " << h.size() << "\nqubits " << h.n_qubits() << '\n';
  return ok;
}

struct GroupOptions {
  std::string input;
  std::string mode = "qwc";
  std::string solver = "greedy";
  std::size_t colors = 0;
  double penalty = 4.0;
  std::size_t reads = 1000;
  std::size_t sweeps = 1000;
  std::uint64_t seed = 0;
  bool strip_z = false;
  bool strip_universal = false;
  std::string fallback;
  std::string samples;
  std::string output;
  unsigned threads = 0;
};

inline int cmd_group(const GroupOptions& o, Context& ctx) {
  const CommuteMode mode = commute_mode_from_string(o.mode);
  const Solver solver = solver_from_string(o.solver);
  if (!o.fallback.empty() && o.fallback != "greedy")
    throw UsageError("--fallback only accepts 'greedy'");
  const std::string source = read_file(o.input);
  const auto pre = preprocess(parse_hamiltonian(source), mode, o.strip_z, o.strip_universal);
  const Hamiltonian& h = pre.kept;

  std::ostringstream report;
  report << "# mode " << to_string(mode) << " solver " << to_string(solver) << '\n';
  report << detail::terms_text("z-group", pre.z_group);
  report << detail::terms_text("removed", pre.universal);
  report << "terms " << h.size() << '\n';

  int status = ok;
  Grouping grouping{{}, mode};
  if (!h.empty()) {
    const Graph g = build_noncommutation_graph(h, mode);
    const Coloring greedy = greedy_coloring(g);
    const std::size_t k = o.colors ? o.colors : greedy.n_colors;
    report << "greedy_colors " << greedy.n_colors << '\n';
    Coloring chosen = greedy;
    switch (solver) {
      case Solver::greedy:
        break;
      case Solver::exact: {
        const auto ex = exhaustive_chromatic(g, k);
        if (ex.status != ChromaticResult::Status::optimal) {
          report << "exact " << (ex.status == ChromaticResult::Status::infeasible
                                     ? "infeasible"
                                     : "unknown")
                 << '\n';
          ctx.out << report.str();
          return no_valid_solution;
        }
        chosen = *ex.coloring;
        break;
      }
      case Solver::anneal: {
        const QuboMatrix q = graph_coloring_qubo(g, k, o.penalty);
        AnnealConfig cfg;
        cfg.num_reads = o.reads;
        cfg.sweeps_per_read = o.sweeps;
        cfg.seed = o.seed;
        cfg.num_threads = o.threads;
        SampleSet samples = simulated_annealing_sample(q, cfg);
        samples.annotate_validity(g, k);
        const std::string samples_path =
            o.samples.empty()
                ? (std::filesystem::path(o.input).replace_extension(".samples.tsv")).string()
                : o.samples;
        write_file(samples_path, render_sample_tsv(samples));
        RunManifest{"group", ctx.args, o.seed, {{o.input, sha256_hex(source)}}}.write_beside(
            samples_path);
        const StatsReport st = sample_statistics(samples, g, k);
        report << "qubo_dim " << q.dim() << '\n'
               << "valid_samples " << st.valid_count << '/' << st.total_reads << '\n'
               << "unique_bitstrings " << st.unique_bitstrings << '\n'
               << "ground_energy " << format_double(*st.ground_energy) << '\n'
               << "samples_file " << samples_path << '\n';
        const auto best = std::find_if(st.table.begin(), st.table.end(),
                                       [](const SampleRow& r) { return *r.valid; });
        if (best != st.table.end()) {
          chosen = decode_coloring(best->bits, g.n_vertices(), k);
        } else if (o.fallback == "greedy") {
          report << "fallback greedy\n";
        } else {
          report << "no valid coloring\n";
          status = no_valid_solution;
        }
        break;
      }
    }
    if (status == ok) grouping = grouping_from_coloring(h, chosen, mode);
  }

  if (status == ok) {
    report << "groups " << grouping.size() << '\n';
    if (grouping.size())
      report << "speedup "
             << format_double(static_cast<double>(h.size()) /
                              static_cast<double>(grouping.size()))
             << '\n';
    report << detail::groups_text(h, grouping);
  }
  ctx.out << report.str();
  if (!o.output.empty()) {
    write_file(o.output, report.str());
    RunManifest{"group", ctx.args, o.seed, {{o.input, sha256_hex(source)}}}.write_beside(
        o.output);
  }
  return status;
}

struct QuboOptions {
  std::string input;
  std::string mode = "qwc";
  std::size_t colors = 0;
  double penalty = 4.0;
  std::string output;
};

inline int cmd_qubo(const QuboOptions& o, Context& ctx) {
  const CommuteMode mode = commute_mode_from_string(o.mode);
  if (o.colors == 0) throw UsageError("--colors must be positive");
  if (!(o.penalty > 0.0)) throw UsageError("--penalty must be positive");
  const std::string source = read_file(o.input);
  const Hamiltonian h = parse_hamiltonian(source);
  const Graph g = build_noncommutation_graph(h, mode);
  const QuboMatrix q = graph_coloring_qubo(g, o.colors, o.penalty);
  write_file(o.output, render_qubo(q));
  RunManifest{"qubo", ctx.args, std::nullopt, {{o.input, sha256_hex(source)}}}.write_beside(
      o.output);
  ctx.out << "dim " << q.dim() << "\nvertices " << g.n_vertices() << "\ncolors " << o.colors
          << "\noffset " << format_double(q.offset()) << '\n';
  return ok;
}

struct VqeOptions {
  std::string input;
  std::string grouping = "qwc-greedy";
  std::size_t shots = 8192;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 200;
  std::string fallback;
  std::string output;
  unsigned threads = 0;
};

inline int cmd_vqe(const VqeOptions& o, Context& ctx) {
  VqeConfig cfg;
  cfg.grouping_mode = grouping_mode_from_string(o.grouping);
  if (o.shots < 1) throw UsageError("--shots must be >= 1");
  if (!o.fallback.empty() && o.fallback != "greedy")
    throw UsageError("--fallback only accepts 'greedy'");
  cfg.shots_per_group = o.shots;
  cfg.seed = o.seed;
  cfg.max_iterations = o.max_iterations;
  cfg.fallback_to_greedy = o.fallback == "greedy";
  cfg.anneal.num_threads = o.threads;
  const std::string source = read_file(o.input);
  const Hamiltonian h = parse_hamiltonian(source);
  VqeReport r;
  try {
    r = run_vqe(h, cfg);
  } catch (const AnnealFailure& e) {
    ctx.err << "error: " << e.what() << '\n';
    if (!o.output.empty()) {
      write_file(o.output + ".samples.tsv", render_sample_tsv(e.samples()));
    }
    return no_valid_solution;
  }
  auto j = to_json(r, h);
  j["shots_per_group"] = o.shots;
  j["seed"] = o.seed;
  const std::string doc = j.dump(2) + "\n";
  if (!o.output.empty()) {
    write_file(o.output, doc);
    RunManifest{"vqe", ctx.args, o.seed, {{o.input, sha256_hex(source)}}}.write_beside(o.output);
  }
  ctx.out << "grouping\truns\tenergy\n"
          << to_string(r.grouping_mode) << '\t' << r.runs_per_evaluation << '\t'
          << std::fixed << std::setprecision(3) << r.best_energy << '\n'
          << std::defaultfloat;
  return ok;
}

struct SurveyOptions {
  std::string manifest;
  std::string table;
  std::string csv;
  unsigned threads = 0;
};

inline int cmd_survey(const SurveyOptions& o, Context& ctx) {
  std::string text(default_survey_manifest);
  std::vector<std::pair<std::string, std::string>> inputs;
  if (!o.manifest.empty()) {
    text = read_file(o.manifest);
    inputs.emplace_back(o.manifest, sha256_hex(text));
  }
  const auto results = run_survey(parse_survey_manifest(text), o.threads);
  const std::string tsv = render_survey_tsv(results);
  const std::string csv = render_valid_count_csv(valid_count_points(results));
  for (const auto& r : results)
    if (!r.error.empty()) ctx.err << r.label << ' ' << to_string(r.mode) << ": " << r.error << '\n';
  const RunManifest manifest{"survey", ctx.args, std::nullopt, inputs};
  if (o.table.empty()) {
    ctx.out << tsv;
  } else {
    write_file(o.table, tsv);
    manifest.write_beside(o.table);
  }
  if (!o.csv.empty()) {
    write_file(o.csv, csv);
    manifest.write_beside(o.csv);
  }
  return ok;
}

inline int cmd_replay(const std::string& path, Context& ctx) {
  const auto j = nlohmann::json::parse(read_file(path));
  for (const auto& [input, digest] : j.at("inputs").items()) {
    const std::string now = "sha256:" + sha256_hex(read_file(input));
    if (now != digest.get<std::string>())
      throw UsageError("input '" + input + "' changed since the recorded run");
  }
  auto args = j.at("args").get<std::vector<std::string>>();
  return run_cli(args, ctx.out, ctx.err);
}

}  // namespace detail

/// Run one command. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pauli-term grouping, QUBO coloring and grouped-measurement VQE", "trihybrid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version));
  detail::Context ctx{args, out, err};

  ModelSpec model;
  std::string model_kind = "h2", model_out;
  bool periodic = false, open = false;
  auto* m = app.add_subcommand("model", "Write a benchmark Hamiltonian");
  m->add_option("--kind", model_kind, "h2 | heisenberg | hubbard")
      ->check(CLI::IsMember({"h2", "heisenberg", "hubbard"}));
  m->add_option("--rows", model.rows, "Lattice rows");
  m->add_option("--cols", model.cols, "Lattice columns");
  auto* per = m->add_flag("--periodic", periodic, "Wrap the lattice");
  m->add_flag("--open", open, "Open boundary")->excludes(per);
  m->add_option("--coupling", model.coupling, "Heisenberg coupling");
  m->add_option("--t", model.t, "Hubbard hopping");
  m->add_option("--u", model.u, "Hubbard interaction");
  m->add_option("-o,--output", model_out, "Output file (stdout if omitted)");

  detail::GroupOptions group;
  auto* g = app.add_subcommand("group", "Group commuting terms");
  g->add_option("-i,--input", group.input, "Hamiltonian file")->required();
  g->add_option("--mode", group.mode)->check(CLI::IsMember({"qwc", "gc"}));
  g->add_option("--solver", group.solver)->check(CLI::IsMember({"greedy", "exact", "anneal"}));
  g->add_option("--colors", group.colors, "Colors (default: greedy count)");
  g->add_option("--penalty", group.penalty);
  g->add_option("--reads", group.reads);
  g->add_option("--sweeps", group.sweeps);
  g->add_option("--seed", group.seed);
  g->add_flag("--strip-z", group.strip_z, "Pull Z-only terms into their own group");
  g->add_flag("--strip-universal", group.strip_universal,
              "Drop terms commuting with all others");
  g->add_option("--fallback", group.fallback, "Use greedy when annealing fails");
  g->add_option("--samples", group.samples, "Sample TSV path for --solver anneal");
  g->add_option("-o,--output", group.output, "Also write the report here");
  g->add_option("--threads", group.threads);

  detail::QuboOptions qubo;
  auto* q = app.add_subcommand("qubo", "Export the coloring QUBO");
  q->add_option("-i,--input", qubo.input)->required();
  q->add_option("--mode", qubo.mode)->check(CLI::IsMember({"qwc", "gc"}));
  q->add_option("--colors", qubo.colors)->required();
  q->add_option("--penalty", qubo.penalty);
  q->add_option("-o,--output", qubo.output)->required();

  detail::VqeOptions vqe;
  auto* v = app.add_subcommand("vqe", "Run the grouped-measurement VQE");
  v->add_option("-i,--input", vqe.input)->required();
  v->add_option("--grouping", vqe.grouping)
      ->check(CLI::IsMember({"naive", "qwc-greedy", "qwc-anneal", "qwc-exact"}));
  v->add_option("--shots", vqe.shots);
  v->add_option("--seed", vqe.seed);
  v->add_option("--max-iterations", vqe.max_iterations);
  v->add_option("--fallback", vqe.fallback);
  v->add_option("-o,--output", vqe.output);
  v->add_option("--threads", vqe.threads);

  detail::SurveyOptions survey;
  auto* s = app.add_subcommand("survey", "Grouping survey over a manifest");
  s->add_option("--manifest", survey.manifest, "Manifest (built-in default if omitted)");
  s->add_option("--table", survey.table, "Grouping TSV (stdout if omitted)");
  s->add_option("--csv", survey.csv, "Valid-sample CSV");
  s->add_option("--threads", survey.threads);

  std::string replay;
  auto* r = app.add_subcommand("replay", "Re-run the command recorded in a run manifest");
  r->add_option("manifest", replay)->required();

  std::vector<std::string> argv_store{"trihybrid"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << version << '\n';
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (m->parsed()) {
      model.kind = model_kind_from_string(model_kind);
      if (periodic) model.periodic = true;
      if (open) model.periodic = false;
      return detail::cmd_model(model, model_out, ctx);
    }
    if (g->parsed()) return detail::cmd_group(group, ctx);
    if (q->parsed()) return detail::cmd_qubo(qubo, ctx);
    if (v->parsed()) return detail::cmd_vqe(vqe, ctx);
    if (s->parsed()) return detail::cmd_survey(survey, ctx);
    if (r->parsed()) return detail::cmd_replay(replay, ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage_error;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return internal_error;
  }
  return usage_error;
}

}  // namespace trihybrid::cli
