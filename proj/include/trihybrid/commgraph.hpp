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
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trihybrid/pauli.hpp"

namespace trihybrid {

/// Undirected simple graph over vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n_vertices) : adjacency_(n_vertices) {}

  std::size_t n_vertices() const noexcept { return adjacency_.size(); }
  std::size_t n_edges() const noexcept { return edges_.size(); }

  void add_edge(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("self-loop on vertex " + std::to_string(i));
    if (i >= n_vertices() || j >= n_vertices())
      throw std::out_of_range("edge endpoint out of range");
    if (i > j) std::swap(i, j);
    if (edges_.emplace(i, j).second) {
      adjacency_[i].push_back(j);
      adjacency_[j].push_back(i);
    }
  }

  bool has_edge(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return edges_.contains({i, j});
  }

  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adjacency_) d = std::max(d, a.size());
    return d;
  }

  /// Edges as (i, j) with i < j in lexicographic order.
  const std::set<std::pair<std::size_t, std::size_t>>& edges() const noexcept {
    return edges_;
  }

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
};

/// Vertex i is term i; an edge joins terms that fail to commute under mode.
inline Graph build_noncommutation_graph(const Hamiltonian& h, CommuteMode mode) {
  const auto& t = h.terms();
  Graph g(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (!commutes(t[i].string, t[j].string, mode)) g.add_edge(i, j);
  return g;
}

/// `# vertices <n>` followed by one `i j` line per edge.
inline std::string render_graph(const Graph& g) {
  std::ostringstream os;
  os << "# vertices " << g.n_vertices() << '\n';
  for (const auto& [i, j] : g.edges()) os << i << ' ' << j << '\n';
  return os.str();
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::optional<Graph> g;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    if (line.starts_with("#")) {
      std::string hash, key;
      std::size_t n;
      if (ls >> hash >> key >> n && key == "vertices") g.emplace(n);
      continue;
    }
    std::size_t i, j;
    if (!(ls >> i)) continue;
    if (!g) throw ParseError(line_no, 1, "edge before '# vertices' header");
    if (!(ls >> j)) throw ParseError(line_no, 1, "edge line needs two indices");
    g->add_edge(i, j);
  }
  if (!g) throw ParseError(line_no, 1, "missing '# vertices' header");
  return *g;
}

struct Coloring {
  std::vector<std::size_t> color_of;
  std::size_t n_colors = 0;

  /// Renumber colors 0..k-1 in order of first use by ascending vertex.
  Coloring compacted() const {
    std::vector<std::size_t> remap;
    Coloring out{std::vector<std::size_t>(color_of.size()), 0};
    for (std::size_t v = 0; v < color_of.size(); ++v) {
      const std::size_t c = color_of[v];
      if (c >= remap.size()) remap.resize(c + 1, SIZE_MAX);
      if (remap[c] == SIZE_MAX) remap[c] = out.n_colors++;
      out.color_of[v] = remap[c];
    }
    return out;
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

inline bool validate_coloring(const Graph& g, const Coloring& c) {
  if (c.color_of.size() != g.n_vertices())
    throw SizeMismatch("coloring has " + std::to_string(c.color_of.size()) +
                       " entries for " + std::to_string(g.n_vertices()) + " vertices");
  for (auto col : c.color_of)
    if (col >= c.n_colors) return false;
  for (const auto& [i, j] : g.edges())
    if (c.color_of[i] == c.color_of[j]) return false;
  return true;
}

enum class GreedyStrategy { largest_first };

/**
 * Greedy coloring. Vertices are visited by descending degree (ties broken by
 * ascending index) and take the smallest color not used by an already
 * colored neighbour. Isolated vertices therefore come last and get color 0.
 */
inline Coloring greedy_coloring(const Graph& g,
                                GreedyStrategy = GreedyStrategy::largest_first) {
  const std::size_t n = g.n_vertices();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.degree(a) > g.degree(b);
  });

  constexpr std::size_t uncolored = SIZE_MAX;
  std::vector<std::size_t> color(n, uncolored);
  std::vector<char> taken;
  for (std::size_t v : order) {
    taken.assign(g.degree(v) + 1, 0);
    for (std::size_t w : g.neighbors(v))
      if (color[w] != uncolored && color[w] < taken.size()) taken[color[w]] = 1;
    color[v] = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
  }
  Coloring c{std::move(color), 0};
  for (auto col : c.color_of) c.n_colors = std::max(c.n_colors, col + 1);
  return c.compacted();
}

struct ChromaticResult {
  enum class Status { optimal, infeasible, unknown };
  Status status = Status::unknown;
  /// Present only when status == optimal.
  std::optional<Coloring> coloring;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

/// DSATUR-ordered backtracking for a k-coloring. Returns nullopt-with-flag
/// when the node budget runs out.
class KColorSearch {
 public:
  KColorSearch(const Graph& g, std::size_t k, std::uint64_t budget)
      : g_(g), k_(k), budget_(budget), color_(g.n_vertices(), none) {}

  enum class Outcome { found, impossible, exhausted };

  Outcome run() {
    const bool ok = extend(0, 0);
    if (exhausted_) return Outcome::exhausted;
    return ok ? Outcome::found : Outcome::impossible;
  }

  const std::vector<std::size_t>& colors() const { return color_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr std::size_t none = SIZE_MAX;

  std::size_t pick() const {
    std::size_t best = none, best_sat = 0, best_deg = 0;
    for (std::size_t v = 0; v < g_.n_vertices(); ++v) {
      if (color_[v] != none) continue;
      std::uint64_t seen = 0;
      std::size_t sat = 0;
      for (std::size_t w : g_.neighbors(v)) {
        const std::size_t c = color_[w];
        if (c != none && !((seen >> c) & 1u)) {
          seen |= std::uint64_t{1} << c;
          ++sat;
        }
      }
      if (best == none || sat > best_sat ||
          (sat == best_sat && g_.degree(v) > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = g_.degree(v);
      }
    }
    return best;
  }

  bool extend(std::size_t colored, std::size_t used) {
    if (colored == g_.n_vertices()) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const std::size_t v = pick();
    std::uint64_t forbidden = 0;
    for (std::size_t w : g_.neighbors(v))
      if (color_[w] != none) forbidden |= std::uint64_t{1} << color_[w];
    // Colors above `used` are interchangeable; only try the first fresh one.
    const std::size_t limit = std::min(k_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      if ((forbidden >> c) & 1u) continue;
      color_[v] = c;
      if (extend(colored + 1, std::max(used, c + 1))) return true;
      if (exhausted_) break;
    }
    color_[v] = none;
    return false;
  }

  const Graph& g_;
  std::size_t k_;
  std::uint64_t budget_;
  std::vector<std::size_t> color_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/**
 * Minimum coloring with at most max_k colors by exhaustive backtracking.
 *
 * Tries k = 1, 2, ... and stops at the first feasible k. If the search
 * budget (backtracking nodes, summed over all k) runs out the result is
 * `unknown`; it never reports a non-optimal coloring as optimal.
 */
inline ChromaticResult exhaustive_chromatic(const Graph& g, std::size_t max_k,
                                            std::uint64_t node_budget = 50'000'000) {
  if (max_k > 64) max_k = 64;
  ChromaticResult r;
  if (g.n_vertices() == 0) {
    r.status = ChromaticResult::Status::optimal;
    r.coloring = Coloring{{}, 0};
    return r;
  }
  const std::size_t start = g.n_edges() == 0 ? 1 : 2;
  for (std::size_t k = start; k <= max_k; ++k) {
    detail::KColorSearch search(g, k, node_budget - r.nodes_explored);
    const auto outcome = search.run();
    r.nodes_explored += search.nodes();
    if (outcome == detail::KColorSearch::Outcome::exhausted) {
      r.status = ChromaticResult::Status::unknown;
      return r;
    }
    if (outcome == detail::KColorSearch::Outcome::found) {
      Coloring c{search.colors(), 0};
      for (auto col : c.color_of) c.n_colors = std::max(c.n_colors, col + 1);
      r.status = ChromaticResult::Status::optimal;
      r.coloring = c.compacted();
      return r;
    }
  }
  r.status = ChromaticResult::Status::infeasible;
  return r;
}

/// Partition of term indices into commuting groups.
struct Grouping {
  std::vector<std::vector<std::size_t>> groups;
  CommuteMode mode = CommuteMode::QWC;

  std::size_t size() const noexcept { return groups.size(); }
  friend bool operator==(const Grouping&, const Grouping&) = default;
};

/// Throws if some group holds a non-commuting pair.
inline void verify_grouping(const Hamiltonian& h, const Grouping& grouping) {
  std::vector<char> seen(h.size(), 0);
  for (const auto& group : grouping.groups) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      if (group[a] >= h.size() || seen[group[a]]++)
        throw std::invalid_argument("grouping is not a partition of the terms");
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        const auto& s = h[group[a]].string;
        const auto& t = h[group[b]].string;
        if (!commutes(s, t, grouping.mode))
          throw std::invalid_argument(
              "terms " + std::to_string(group[a]) + " (" + s.tokens() + ") and " +
              std::to_string(group[b]) + " (" + t.tokens() + ") do not commute (" +
              std::string(to_string(grouping.mode)) + ")");
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw std::invalid_argument("grouping is not a partition of the terms");
}

/// One group per used color, ordered by color; commutation re-checked.
inline Grouping grouping_from_coloring(const Hamiltonian& h, const Coloring& c,
                                       CommuteMode mode) {
  if (c.color_of.size() != h.size())
    throw SizeMismatch("coloring size does not match term count");
  const Coloring cc = c.compacted();
  Grouping out{std::vector<std::vector<std::size_t>>(cc.n_colors), mode};
  for (std::size_t v = 0; v < cc.color_of.size(); ++v) out.groups[cc.color_of[v]].push_back(v);
  verify_grouping(h, out);
  return out;
}

/// Every term measured on its own.
inline Grouping naive_grouping(const Hamiltonian& h) {
  Grouping out{{}, CommuteMode::QWC};
  for (std::size_t i = 0; i < h.size(); ++i) out.groups.push_back({i});
  return out;
}

}  // namespace trihybrid
