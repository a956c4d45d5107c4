#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "textile/graph.hpp"

using textile::CountMatrix;

namespace {

CountMatrix random_matrix(std::mt19937& rng, std::size_t n, std::int64_t max_entry) {
  std::uniform_int_distribution<std::int64_t> entry(0, max_entry);
  CountMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  return m;
}

// Brute force: every simple cycle (as a vertex sequence starting at its
// minimum vertex) and whether some vertex on it has an edge not on the cycle.
bool every_cycle_has_exit(const CountMatrix& m) {
  const std::size_t n = m.rows();
  bool ok = true;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);
  auto has_exit = [&](const std::vector<std::size_t>& cycle) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const std::size_t v = cycle[k], next = cycle[(k + 1) % cycle.size()];
      for (std::size_t w = 0; w < n; ++w)
        if (m(v, w) > 0 && w != next) return true;
    }
    return false;
  };
  auto dfs = [&](auto&& self, std::size_t start, std::size_t v) -> void {
    for (std::size_t w = start; w < n; ++w) {
      if (m(v, w) == 0) continue;
      if (w == start) {
        if (!has_exit(path)) ok = false;
      } else if (!on_path[w]) {
        on_path[w] = true;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    on_path.assign(n, false);
    on_path[s] = true;
    dfs(dfs, s, s);
  }
  return ok;
}

} // namespace

TEST(GraphFromMatrix, SingleVertexLoops) {
  const auto g = textile::graph_from_matrix(CountMatrix{{2}}, 'A');
  EXPECT_EQ(g.vertex_count(), 1u);
  ASSERT_EQ(g.edge_count(), 2u);
  for (const auto& e : g.edges()) {
    EXPECT_EQ(e.source, 0u);
    EXPECT_EQ(e.range, 0u);
  }
  EXPECT_EQ(g.edge(0).id(), "(1,1,1)");
  EXPECT_EQ(g.edge(1).id(), "(1,1,2)");
}

TEST(GraphFromMatrix, Permutation) {
  const auto g = textile::graph_from_matrix(CountMatrix{{0, 1}, {1, 0}}, 'B');
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edge(0).id(), "(1,2,1)");
  EXPECT_EQ(g.edge(1).id(), "(2,1,1)");
  EXPECT_EQ(g.label(), 'B');
}

TEST(GraphFromMatrix, MultiplicitiesInCanonicalOrder) {
  const auto g = textile::graph_from_matrix(CountMatrix{{1, 2}, {0, 1}}, 'A');
  ASSERT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.edge(0).id(), "(1,1,1)");
  EXPECT_EQ(g.edge(1).id(), "(1,2,1)");
  EXPECT_EQ(g.edge(2).id(), "(1,2,2)");
  EXPECT_EQ(g.edge(3).id(), "(2,2,1)");
  EXPECT_TRUE(std::is_sorted(g.edges().begin(), g.edges().end()));
  EXPECT_EQ(g.find("(1,2,2)"), 2u);
  EXPECT_FALSE(g.find("(2,1,1)").has_value());
}

TEST(GraphFromMatrix, RejectsBadInput) {
  EXPECT_THROW(textile::graph_from_matrix(CountMatrix(2, 3), 'A'), textile::InputError);
  EXPECT_THROW(textile::graph_from_matrix(CountMatrix{{1, -1}, {0, 1}}, 'A'),
               textile::InputError);
  EXPECT_THROW(textile::graph_from_matrix(CountMatrix(), 'A'), textile::InputError);
}

TEST(GraphFromMatrix, RecountReproducesMatrix) {
  std::mt19937 rng(7);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = random_matrix(rng, n, 3);
      const auto g = textile::graph_from_matrix(m, 'A');
      EXPECT_EQ(g.adjacency(), m);
      // Identifiers are unique and survive a print/lookup round trip.
      for (textile::EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_EQ(g.find(g.edge(e).id()), e);
    }
}

TEST(Essential, Examples) {
  EXPECT_TRUE(textile::is_essential(CountMatrix{{0, 1}, {1, 0}}));
  EXPECT_FALSE(textile::is_essential(CountMatrix{{1, 1}, {0, 0}}));
  EXPECT_TRUE(textile::is_essential(CountMatrix{{2}}));
  EXPECT_EQ(textile::find_zero_line(CountMatrix{{1, 1}, {0, 0}}), "zero row 2");
  EXPECT_EQ(textile::find_zero_line(CountMatrix{{1, 0}, {1, 0}}), "zero column 2");
}

TEST(Irreducible, Examples) {
  EXPECT_TRUE(textile::is_irreducible(CountMatrix{{0, 1}, {1, 0}}));
  EXPECT_FALSE(textile::is_irreducible(CountMatrix{{1, 0}, {0, 1}}));
  EXPECT_TRUE(textile::is_irreducible(CountMatrix{{1, 1}, {1, 1}}));
  EXPECT_FALSE(textile::is_irreducible(CountMatrix{{0}}));
  EXPECT_TRUE(textile::is_irreducible(CountMatrix{{3}}));
  EXPECT_FALSE(textile::is_irreducible(CountMatrix{{1, 1}, {0, 1}}));
}

TEST(Irreducible, SearchAgreesWithBooleanPowers) {
  std::mt19937 rng(11);
  int irreducible = 0, reducible = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (int trial = 0; trial < 60; ++trial) {
      const auto m = random_matrix(rng, n, 1);
      const bool by_search = !textile::find_unreachable_pair(m).has_value();
      EXPECT_EQ(by_search, textile::is_irreducible_by_powers(m)) << "n=" << n;
      (by_search ? irreducible : reducible)++;
    }
  // The generator must exercise both outcomes.
  EXPECT_GT(irreducible, 50);
  EXPECT_GT(reducible, 50);
}

TEST(ConditionI, Examples) {
  EXPECT_FALSE(textile::satisfies_condition_I(CountMatrix{{0, 1}, {1, 0}}));
  EXPECT_TRUE(textile::satisfies_condition_I(CountMatrix{{1, 1}, {1, 1}}));
  const CountMatrix three{{1, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  EXPECT_TRUE(every_cycle_has_exit(three));
  EXPECT_TRUE(textile::satisfies_condition_I(three));
  const auto cycle = textile::find_exit_free_cycle(CountMatrix{{0, 1}, {1, 0}});
  ASSERT_TRUE(cycle.has_value());
  EXPECT_EQ(cycle->size(), 2u);
}

TEST(ConditionI, Preconditions) {
  EXPECT_THROW(textile::satisfies_condition_I(CountMatrix{{2}}), textile::PreconditionError);
  EXPECT_THROW(textile::satisfies_condition_I(CountMatrix{{1, 1}, {0, 0}}),
               textile::PreconditionError);
}

TEST(ConditionI, AgreesWithCycleEnumeration) {
  std::mt19937 rng(3);
  int tested = 0, failing = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 80; ++trial) {
      auto m = random_matrix(rng, n, 1);
      if (!textile::is_essential(m)) continue;
      ++tested;
      const bool expected = every_cycle_has_exit(m);
      if (!expected) ++failing;
      EXPECT_EQ(textile::satisfies_condition_I(m), expected);
    }
  EXPECT_GT(tested, 100);
  EXPECT_GT(failing, 5);
}

TEST(ConditionI, TwoOnesPerRowSuffice) {
  std::mt19937 rng(5);
  for (std::size_t n = 2; n <= 8; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      auto m = random_matrix(rng, n, 1);
      // Force at least two ones per row and one per column.
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
        m(i, (i + 1) % n) = 1;
      }
      ASSERT_TRUE(textile::is_essential(m));
      EXPECT_TRUE(textile::satisfies_condition_I(m));
    }
}
