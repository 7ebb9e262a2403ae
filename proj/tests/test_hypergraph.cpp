#include <gtest/gtest.h>

#include <bit>
#include <functional>
#include <random>

#include "kanno/error.hpp"
#include "kanno/hypergraph.hpp"
#include "kanno/schema.hpp"
#include "kanno/theoremlab.hpp"

using namespace kanno;

namespace {

Hypergraph graph_of(std::string_view alias) { return builtin_schema(alias)->graph; }

Hypergraph random_hypergraph(std::mt19937_64& rng, int nodes, int edges) {
  // nodes enter through edges, so none is isolated
  Hypergraph h;
  for (int e = 0; e < edges; ++e) {
    std::vector<std::string> ns;
    while (ns.empty())
      for (int v = 0; v < nodes; ++v)
        if (rng() % 3 == 0) ns.emplace_back(1, static_cast<char>('A' + v));
    h.add_edge(ns);
  }
  return h;
}

Graph adjacency(const Hypergraph& h) {
  Graph g(h.node_count(), 0);
  for (const auto& e : h.edges())
    for (int v = 0; v < static_cast<int>(h.node_count()); ++v)
      if (contains(e.nodes, v)) g[static_cast<std::size_t>(v)] |= e.nodes & ~singleton(v);
  return g;
}

// A cycle of length >= 4 without chords, by extending simple paths.
bool has_chordless_cycle(const Graph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> path;
  std::function<bool(NodeSet)> extend = [&](NodeSet used) -> bool {
    const int last = path.back();
    for (int v = path.front() + 1; v < n; ++v) {
      if (contains(used, v) || !contains(g[static_cast<std::size_t>(last)], v)) continue;
      // v may touch only its predecessor, and the start if it closes the cycle
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (contains(g[static_cast<std::size_t>(v)], path[i])) chord = true;
      if (chord) continue;
      path.push_back(v);
      if (path.size() > 2 && contains(g[static_cast<std::size_t>(v)], path.front())) {
        if (path.size() >= 4) return true;
      } else if (extend(used | singleton(v))) {
        return true;
      }
      path.pop_back();
    }
    return false;
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    if (extend(singleton(s))) return true;
  }
  return false;
}

// Every set of pairwise adjacent nodes lies in some edge.
bool conformal_oracle(const Hypergraph& h) {
  const auto g = adjacency(h);
  const int n = static_cast<int>(h.node_count());
  for (NodeSet s = 1; s < (NodeSet{1} << n); ++s) {
    if (std::popcount(s) < 2) continue;
    bool clique = true;
    for (int v = 0; v < n && clique; ++v)
      if (contains(s, v) && !is_subset(s & ~singleton(v), g[static_cast<std::size_t>(v)])) clique = false;
    if (!clique) continue;
    bool covered = false;
    for (const auto& e : h.edges()) covered = covered || is_subset(s, e.nodes);
    if (!covered) return false;
  }
  return true;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(Hypergraph, BuildsAndRejectsBadEdges) {
  Hypergraph h;
  EXPECT_EQ(h.add_edge({"A", "B"}, "X"), 0U);
  EXPECT_THROW(h.add_edge({}), Error);
  EXPECT_THROW(h.add_edge({"A", "A"}), Error);
  EXPECT_EQ(h.edge_by_name("X"), 0U);
  EXPECT_EQ(h.format_edge(0), "{A,B}");
  EXPECT_EQ(h.edge_label(0), "X");
  h.add_edge({"C", "B"});
  EXPECT_EQ(h.format_edge(1), "{C,B}");
  EXPECT_EQ(h.format_nodes(h.edge(1).nodes), "{B,C}");
  EXPECT_EQ(h.node_count(), 3U);
}

TEST(Hypergraph, NamedSchemasClassify) {
  EXPECT_FALSE(is_alpha_acyclic_gyo(graph_of("triangle")));
  EXPECT_FALSE(is_conformal(graph_of("triangle")));
  EXPECT_TRUE(is_chordal(graph_of("triangle")));
  EXPECT_FALSE(is_alpha_acyclic_gyo(graph_of("4cycle")));
  EXPECT_TRUE(is_conformal(graph_of("4cycle")));
  EXPECT_FALSE(is_chordal(graph_of("4cycle")));
  EXPECT_FALSE(is_alpha_acyclic_definitional(graph_of("4cycle")));
  EXPECT_TRUE(is_alpha_acyclic_gyo(graph_of("bfmy-acyclic")));
  EXPECT_TRUE(is_alpha_acyclic_gyo(graph_of("hstar")));
  for (const char* p : {"p2", "p3", "p4", "p5"}) {
    const auto h = graph_of(p);
    EXPECT_TRUE(is_alpha_acyclic_gyo(h)) << p;
    EXPECT_TRUE(is_conformal(h) && is_chordal(h)) << p;
    EXPECT_TRUE(is_alpha_acyclic_definitional(h)) << p;
  }
}

TEST(Hypergraph, GyoStuckStateForTriangle) {
  const auto r = gyo(graph_of("triangle"));
  EXPECT_FALSE(r.acyclic);
  EXPECT_EQ(r.stuck.size(), 3U);
  EXPECT_TRUE(r.rip_order.empty() || !r.acyclic);
}

TEST(Hypergraph, GyoOrderHasRunningIntersection) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = random_hypergraph(rng, 3 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 5));
    const auto g = gyo(h);
    if (!g.acyclic) continue;
    ASSERT_EQ(g.rip_order.size(), h.edge_count());
    ASSERT_TRUE(satisfies_running_intersection(h, g.rip_order)) << h.format();
  }
}

TEST(Hypergraph, ChordalityMatchesChordlessCycleSearch) {
  std::mt19937_64 rng(2);
  int nonchordal = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto h = random_hypergraph(rng, 4 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 5));
    if (trial % 2 == 0) {
      // sparse binary edges, where long chordless cycles are common
      h = Hypergraph();
      const int n = 4 + static_cast<int>(rng() % 3);
      for (int k = 0; k < n + 1; ++k) {
        const int a = static_cast<int>(rng() % static_cast<unsigned>(n));
        const int b = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (a != b) h.add_edge({std::string(1, static_cast<char>('A' + a)), std::string(1, static_cast<char>('A' + b))});
      }
      if (h.edge_count() == 0) continue;
    }
    const bool want = !has_chordless_cycle(adjacency(h));
    nonchordal += !want;
    ASSERT_EQ(is_chordal(h), want) << h.format();
  }
  EXPECT_GT(nonchordal, 5);
}

TEST(Hypergraph, ConformalityMatchesCliqueEnumeration) {
  std::mt19937_64 rng(3);
  int nonconformal = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto h = random_hypergraph(rng, 3 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 4));
    const bool want = conformal_oracle(h);
    nonconformal += !want;
    ASSERT_EQ(is_conformal(h), want) << h.format();
  }
  EXPECT_GT(nonconformal, 5);
}

TEST(Hypergraph, AlphaCharacterisationsAgreeOnLargerRandomInputs) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = random_hypergraph(rng, 5 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 5));
    const bool a = is_alpha_acyclic_gyo(h);
    ASSERT_EQ(a, is_conformal(h) && is_chordal(h)) << h.format();
    ASSERT_EQ(a, has_running_intersection(h).has_value()) << h.format();
    ASSERT_EQ(a, is_alpha_acyclic_definitional(h)) << h.format();
  }
}

TEST(Hypergraph, ReductionAndRestriction) {
  const auto h = Hypergraph::from_edges({{"A", "B", "C"}, {"A", "B"}, {"C", "D"}, {"D", "C"}});
  const auto r = reduction(h);
  EXPECT_EQ(r.format(), "{A,B,C} {C,D}");
  EXPECT_EQ(reduction(r).format(), r.format());
  const auto s = restriction(h, h.node_set({"A", "B", "D"}));
  EXPECT_EQ(s.format(), "{A,B} {D}");
  EXPECT_EQ(induced(h, h.node_set({"A", "B"})).edge_count(), 2U);
}

TEST(Hypergraph, ArticulationSetOfAPath) {
  const auto p3 = graph_of("p3");
  const auto a = find_articulation_set(p3);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(std::popcount(*a), 1);
  EXPECT_FALSE(find_articulation_set(graph_of("triangle")).has_value());
}

TEST(Hypergraph, ComponentsAndConnectivity) {
  const auto h = Hypergraph::from_edges({{"A", "B"}, {"C", "D"}, {"B", "E"}});
  EXPECT_FALSE(is_connected(h));
  EXPECT_EQ(connected_components(h).size(), 2U);
  EXPECT_TRUE(is_connected(graph_of("p5")));
}

TEST(Hypergraph, EnumerationCountMatchesInclusionExclusion) {
  // families of k distinct non-empty subsets of [n] covering [n]
  std::uint64_t want = 0;
  for (std::uint64_t n = 1; n <= 4; ++n)
    for (std::uint64_t k = 1; k <= 4; ++k) {
      std::int64_t c = 0;
      for (std::uint64_t j = 0; j <= n; ++j) {
        const auto term = static_cast<std::int64_t>(choose(n, j) * choose((1ULL << (n - j)) - 1, k));
        c += (j % 2 == 0) ? term : -term;
      }
      want += static_cast<std::uint64_t>(c);
    }
  const auto hs = enumerate_hypergraphs(4, 4);
  EXPECT_EQ(hs.size(), want);
  for (const auto& h : hs) {
    NodeSet all = 0;
    for (const auto& e : h.edges()) all |= e.nodes;
    ASSERT_EQ(all, h.vertices());
    ASSERT_EQ(reduction(h).edge_count() <= h.edge_count(), true);
  }
}

TEST(Hypergraph, BetaBruteForceOnNamedSchemas) {
  EXPECT_TRUE(is_beta_acyclic_bruteforce(graph_of("hstar")));
  EXPECT_FALSE(is_beta_acyclic_bruteforce(graph_of("bfmy-acyclic")));
  EXPECT_FALSE(is_beta_acyclic_bruteforce(graph_of("triangle")));
  EXPECT_TRUE(is_beta_acyclic_bruteforce(graph_of("p4")));
}

}  // namespace
