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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "trihybrid/commgraph.hpp"
#include "trihybrid/models.hpp"

using namespace trihybrid;

namespace {

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

// X0X1 + X0 + Y1 + Z0Z1Z2 + X0Y1Z2
Hamiltonian five_term_example() {
  return parse_hamiltonian("1 X0 X1\n1 X0\n1 Y1\n1 Z0 Z1 Z2\n1 X0 Y1 Z2\n");
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

// Smallest k admitting a proper coloring, by trying every assignment.
std::size_t brute_chromatic(const Graph& g) {
  const std::size_t n = g.n_vertices();
  if (n == 0) return 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> c(n, 0);
    while (true) {
      bool ok = true;
      for (const auto& [i, j] : g.edges()) ok &= c[i] != c[j];
      if (ok) return k;
      std::size_t pos = 0;
      while (pos < n && ++c[pos] == k) c[pos++] = 0;
      if (pos == n) break;
    }
  }
  return n;
}

}  // namespace

TEST(Graph, Basics) {
  Graph g(4);
  g.add_edge(2, 0);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  EXPECT_EQ(g.n_edges(), 2u);
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.degree(2), 2u);
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 9), std::out_of_range);
}

TEST(NoncommutationGraph, FiveTermExampleEdgesFollowPredicate) {
  const auto h = five_term_example();
  const auto g = build_noncommutation_graph(h, CommuteMode::QWC);
  const EdgeSet expected{{0, 2}, {0, 3}, {0, 4}, {1, 3}, {2, 3}, {3, 4}};
  EXPECT_EQ(g.edges(), expected);
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j)
      EXPECT_EQ(g.has_edge(i, j), !qubit_wise_commutes(h[i].string, h[j].string));
}

TEST(NoncommutationGraph, H2IsAStar) {
  const auto g = build_noncommutation_graph(h2_hamiltonian(), CommuteMode::QWC);
  EXPECT_EQ(g.edges(), (EdgeSet{{0, 3}, {1, 3}, {2, 3}}));
  const auto gc = build_noncommutation_graph(h2_hamiltonian(), CommuteMode::GC);
  EXPECT_EQ(gc.edges(), (EdgeSet{{1, 3}, {2, 3}}));
}

TEST(NoncommutationGraph, AllCommutingIsEdgeless) {
  const auto h = parse_hamiltonian("1 Z0\n2 Z1\n3 Z0 Z1\n");
  const auto g = build_noncommutation_graph(h, CommuteMode::QWC);
  EXPECT_EQ(g.n_edges(), 0u);
  const auto c = greedy_coloring(g);
  EXPECT_EQ(c.n_colors, 1u);
}

TEST(GreedyColoring, KnownCounts) {
  EXPECT_EQ(greedy_coloring(build_noncommutation_graph(h2_hamiltonian(), CommuteMode::QWC))
                .n_colors,
            2u);
  const auto five = greedy_coloring(build_noncommutation_graph(five_term_example(),
                                                               CommuteMode::QWC));
  EXPECT_EQ(five.n_colors, 3u);
  EXPECT_EQ(five.color_of, (std::vector<std::size_t>{0, 0, 1, 2, 1}));

  auto colors = [](const LatticeSpec& s, CommuteMode m) {
    return greedy_coloring(build_noncommutation_graph(heisenberg_hamiltonian(s), m)).n_colors;
  };
  const auto chain = LatticeSpec::with_default_boundary(1, 20);
  const auto grid = LatticeSpec::with_default_boundary(3, 3);
  EXPECT_EQ(colors(chain, CommuteMode::QWC), 3u);
  EXPECT_EQ(colors(chain, CommuteMode::GC), 2u);
  EXPECT_EQ(colors(grid, CommuteMode::QWC), 3u);
  EXPECT_EQ(colors(grid, CommuteMode::GC), 4u);
}

TEST(GreedyColoring, IsDeterministicAndCompacted) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_graph(rng, 12, 0.3);
    const auto a = greedy_coloring(g), b = greedy_coloring(g);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, a.compacted());
  }
}

TEST(ExhaustiveChromatic, SmallGraphs) {
  Graph triangle(3);
  triangle.add_edge(0, 1);
  triangle.add_edge(1, 2);
  triangle.add_edge(0, 2);
  auto r = exhaustive_chromatic(triangle, 5);
  ASSERT_EQ(r.status, ChromaticResult::Status::optimal);
  EXPECT_EQ(r.coloring->n_colors, 3u);
  EXPECT_TRUE(validate_coloring(triangle, *r.coloring));

  EXPECT_EQ(exhaustive_chromatic(triangle, 2).status, ChromaticResult::Status::infeasible);
  EXPECT_EQ(exhaustive_chromatic(Graph(4), 3).coloring->n_colors, 1u);
  EXPECT_EQ(exhaustive_chromatic(Graph(0), 3).coloring->n_colors, 0u);
}

TEST(ExhaustiveChromatic, GridGeneralCommutationBeatsGreedy) {
  const auto h = heisenberg_hamiltonian(LatticeSpec::with_default_boundary(3, 3));
  const auto g = build_noncommutation_graph(h, CommuteMode::GC);
  const auto r = exhaustive_chromatic(g, greedy_coloring(g).n_colors);
  ASSERT_EQ(r.status, ChromaticResult::Status::optimal);
  EXPECT_EQ(r.coloring->n_colors, 3u);
  EXPECT_TRUE(validate_coloring(g, *r.coloring));
  EXPECT_NO_THROW(grouping_from_coloring(h, *r.coloring, CommuteMode::GC));
}

TEST(ExhaustiveChromatic, BudgetExhaustionIsUnknown) {
  std::mt19937_64 rng(9);
  const auto g = random_graph(rng, 40, 0.5);
  const auto r = exhaustive_chromatic(g, 40, 10);
  EXPECT_EQ(r.status, ChromaticResult::Status::unknown);
  EXPECT_FALSE(r.coloring.has_value());
}

TEST(Coloring, ValidateAndCompact) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_TRUE(validate_coloring(g, {{0, 1, 0}, 2}));
  EXPECT_FALSE(validate_coloring(g, {{0, 0, 1}, 2}));
  EXPECT_FALSE(validate_coloring(g, {{0, 1, 2}, 2}));
  EXPECT_THROW(validate_coloring(g, {{0, 1}, 2}), SizeMismatch);
  const Coloring sparse{{5, 2, 5}, 6};
  EXPECT_EQ(sparse.compacted(), (Coloring{{0, 1, 0}, 2}));
}

TEST(Grouping, H2Groups) {
  const auto h = h2_hamiltonian();
  const auto g = build_noncommutation_graph(h, CommuteMode::QWC);
  const auto grouping = grouping_from_coloring(h, greedy_coloring(g), CommuteMode::QWC);
  ASSERT_EQ(grouping.size(), 2u);
  std::set<std::vector<std::size_t>> groups(grouping.groups.begin(), grouping.groups.end());
  EXPECT_EQ(groups, (std::set<std::vector<std::size_t>>{{0, 1, 2}, {3}}));
  EXPECT_EQ(naive_grouping(h).size(), 4u);
}

TEST(Grouping, VerifyRejectsBadPartitions) {
  const auto h = h2_hamiltonian();
  try {
    verify_grouping(h, {{{0, 3}, {1}, {2}}, CommuteMode::QWC});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("X0 X1"), std::string::npos);
  }
  EXPECT_THROW(verify_grouping(h, {{{0, 1}, {3}}, CommuteMode::QWC}), std::invalid_argument);
  EXPECT_THROW(verify_grouping(h, {{{0, 1, 2}, {3, 3}}, CommuteMode::QWC}),
               std::invalid_argument);
  EXPECT_THROW(grouping_from_coloring(h, {{0, 0, 0}, 1}, CommuteMode::QWC), SizeMismatch);
  EXPECT_THROW(grouping_from_coloring(h, {{0, 0, 0, 0}, 1}, CommuteMode::QWC),
               std::invalid_argument);
}

TEST(Properties, RandomGraphsGreedyAndExact) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto g = random_graph(rng, n, 0.1 + 0.8 * (rng() % 100) / 100.0);
    const auto greedy = greedy_coloring(g);
    EXPECT_TRUE(validate_coloring(g, greedy));
    EXPECT_LE(greedy.n_colors, g.max_degree() + 1);
    const auto exact = exhaustive_chromatic(g, greedy.n_colors);
    ASSERT_EQ(exact.status, ChromaticResult::Status::optimal);
    EXPECT_TRUE(validate_coloring(g, *exact.coloring));
    EXPECT_LE(exact.coloring->n_colors, greedy.n_colors);
    EXPECT_EQ(exact.coloring->n_colors, brute_chromatic(g));
  }
}

TEST(Properties, RandomHamiltonianGroupsCommute) {
  std::mt19937_64 rng(8);
  const char axes[] = "IXYZ";
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Term> terms;
    for (int k = 0; k < 10; ++k) {
      std::string label(4, 'I');
      for (auto& ch : label) ch = axes[rng() % 4];
      terms.push_back({1.0, PauliString::from_label(label)});
    }
    const Hamiltonian h(terms);
    for (auto mode : {CommuteMode::QWC, CommuteMode::GC}) {
      const auto g = build_noncommutation_graph(h, mode);
      EXPECT_NO_THROW(verify_grouping(h, grouping_from_coloring(h, greedy_coloring(g), mode)));
    }
  }
}

TEST(GraphFile, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_graph(rng, 1 + rng() % 15, 0.4);
    const auto back = parse_graph(render_graph(g));
    EXPECT_EQ(back.n_vertices(), g.n_vertices());
    EXPECT_EQ(back.edges(), g.edges());
  }
  EXPECT_THROW(parse_graph("0 1\n"), ParseError);
  EXPECT_THROW(parse_graph(""), ParseError);
}
