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

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trihybrid/commgraph.hpp"

namespace trihybrid {

/// Binary assignment; entry i is variable i. Rendered with variable 0 leftmost.
using Bits = std::vector<std::uint8_t>;

inline std::string to_string(const Bits& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
  return s;
}

inline Bits bits_from_string(std::string_view s) {
  Bits b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw std::invalid_argument("bitstring may only contain 0 and 1");
    b[i] = s[i] == '1';
  }
  return b;
}

/// Upper-triangular QUBO: energy(x) = sum_{i<=j} Q[i,j] x_i x_j.
class QuboMatrix {
 public:
  QuboMatrix() = default;
  explicit QuboMatrix(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }

  /// Adds to entry (i, j); a lower-triangle pair is folded onto (j, i).
  void add(std::size_t i, std::size_t j, double value) {
    if (i >= dim_ || j >= dim_) throw std::out_of_range("QUBO index out of range");
    if (i > j) std::swap(i, j);
    entries_[{i, j}] += value;
  }

  double at(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const auto it = entries_.find({i, j});
    return it == entries_.end() ? 0.0 : it->second;
  }

  const std::map<std::pair<std::size_t, std::size_t>, double>& entries() const noexcept {
    return entries_;
  }

  /// Constant dropped when expanding the penalties; energy + offset is the
  /// true (non-negative) constraint energy.
  double offset() const noexcept { return offset_; }
  void set_offset(double c) noexcept { offset_ = c; }

  friend bool operator==(const QuboMatrix&, const QuboMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, double> entries_;
  double offset_ = 0.0;
};

/// Variable index for "vertex v has color c" with k colors.
inline std::size_t color_variable(std::size_t v, std::size_t c, std::size_t k) {
  return v * k + c;
}

/**
 * Penalty QUBO for a k-coloring of g.
 *
 * One-hot per vertex, P * (1 - sum_c x_vc)^2 without its constant:
 *   -P on each diagonal, +2P between two colors of the same vertex.
 * Adjacent vertices sharing a color: +P on (v,c),(w,c).
 * A proper coloring scores exactly -P * |V|; each broken edge adds +P.
 */
inline QuboMatrix graph_coloring_qubo(const Graph& g, std::size_t k, double penalty = 4.0) {
  if (k == 0) throw std::invalid_argument("number of colors must be positive");
  if (!(penalty > 0.0)) throw std::invalid_argument("penalty must be positive");
  const std::size_t n = g.n_vertices();
  QuboMatrix q(n * k);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t c = 0; c < k; ++c) {
      q.add(color_variable(v, c, k), color_variable(v, c, k), -penalty);
      for (std::size_t d = c + 1; d < k; ++d)
        q.add(color_variable(v, c, k), color_variable(v, d, k), 2.0 * penalty);
    }
  }
  for (const auto& [v, w] : g.edges())
    for (std::size_t c = 0; c < k; ++c)
      q.add(color_variable(v, c, k), color_variable(w, c, k), penalty);
  q.set_offset(penalty * static_cast<double>(n));
  return q;
}

inline double qubo_energy(const QuboMatrix& q, const Bits& bits) {
  if (bits.size() != q.dim())
    throw SizeMismatch("bitstring has " + std::to_string(bits.size()) +
                       " bits for a QUBO of dimension " + std::to_string(q.dim()));
  double e = 0.0;
  for (const auto& [ij, v] : q.entries())
    if (bits[ij.first] && bits[ij.second]) e += v;
  return e;
}

struct Violation {
  enum class Kind { one_hot, adjacency };
  Kind kind = Kind::one_hot;
  std::size_t vertex = 0;
  /// one_hot: number of colors set on vertex. adjacency: the other endpoint.
  std::size_t other = 0;
  /// adjacency: the shared color.
  std::size_t color = 0;

  std::string describe() const {
    if (kind == Kind::one_hot)
      return "vertex " + std::to_string(vertex) + " has " + std::to_string(other) +
             " colors set";
    return "edge " + std::to_string(vertex) + "-" + std::to_string(other) +
           " shares color " + std::to_string(color);
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ColoringSolution {
  Bits bits;
  /// Set when the QUBO is known to the validator.
  std::optional<double> energy;
  bool valid = false;
  std::vector<Violation> violations;
};

/// Check one-hot per vertex and no monochromatic edge.
inline ColoringSolution validate_solution(const Graph& g, std::size_t k, const Bits& bits) {
  if (bits.size() != g.n_vertices() * k)
    throw SizeMismatch("bitstring has " + std::to_string(bits.size()) +
                       " bits, expected " + std::to_string(g.n_vertices() * k));
  ColoringSolution s{bits, std::nullopt, false, {}};
  for (std::size_t v = 0; v < g.n_vertices(); ++v) {
    std::size_t set = 0;
    for (std::size_t c = 0; c < k; ++c) set += bits[color_variable(v, c, k)];
    if (set != 1) s.violations.push_back({Violation::Kind::one_hot, v, set, 0});
  }
  for (const auto& [v, w] : g.edges())
    for (std::size_t c = 0; c < k; ++c)
      if (bits[color_variable(v, c, k)] && bits[color_variable(w, c, k)])
        s.violations.push_back({Violation::Kind::adjacency, v, w, c});
  s.valid = s.violations.empty();
  return s;
}

inline ColoringSolution validate_solution(const Graph& g, std::size_t k, const Bits& bits,
                                          const QuboMatrix& q) {
  auto s = validate_solution(g, k, bits);
  s.energy = qubo_energy(q, bits);
  return s;
}

/// Colors from a one-hot assignment. Run validate_solution first.
inline Coloring decode_coloring(const Bits& bits, std::size_t n_vertices, std::size_t k) {
  if (k == 0 || bits.size() != n_vertices * k)
    throw SizeMismatch("bitstring length does not match vertices * colors");
  Coloring out{std::vector<std::size_t>(n_vertices), k};
  for (std::size_t v = 0; v < n_vertices; ++v) {
    std::size_t found = SIZE_MAX;
    for (std::size_t c = 0; c < k; ++c) {
      if (!bits[color_variable(v, c, k)]) continue;
      if (found != SIZE_MAX)
        throw std::invalid_argument("vertex " + std::to_string(v) + " has several colors");
      found = c;
    }
    if (found == SIZE_MAX)
      throw std::invalid_argument("vertex " + std::to_string(v) + " has no color");
    out.color_of[v] = found;
  }
  return out;
}

inline Bits encode_coloring(const Coloring& c, std::size_t k) {
  Bits b(c.color_of.size() * k, 0);
  for (std::size_t v = 0; v < c.color_of.size(); ++v) {
    if (c.color_of[v] >= k) throw std::invalid_argument("color exceeds k");
    b[color_variable(v, c.color_of[v], k)] = 1;
  }
  return b;
}

/// `# dim <n>` then `<i> <j> <value>` per stored entry (i <= j).
inline std::string render_qubo(const QuboMatrix& q) {
  std::string out = "# dim " + std::to_string(q.dim()) + "\n";
  char buf[64];
  for (const auto& [ij, v] : q.entries()) {
    std::snprintf(buf, sizeof buf, "%#.17g", v);
    out += std::to_string(ij.first) + " " + std::to_string(ij.second) + " " + buf + "\n";
  }
  return out;
}

inline QuboMatrix parse_qubo(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::optional<QuboMatrix> q;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    if (line.starts_with("#")) {
      std::string hash, key;
      std::size_t n;
      if (ls >> hash >> key >> n && key == "dim") q.emplace(n);
      continue;
    }
    std::size_t i, j;
    double v;
    if (!(ls >> i)) continue;
    if (!q) throw ParseError(line_no, 1, "entry before '# dim' header");
    if (!(ls >> j >> v)) throw ParseError(line_no, 1, "expected '<i> <j> <value>'");
    q->add(i, j, v);
  }
  if (!q) throw ParseError(line_no, 1, "missing '# dim' header");
  return *q;
}

}  // namespace trihybrid
