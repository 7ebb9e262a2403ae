#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "kanno/schema.hpp"
#include "kanno/weak_cycle.hpp"

using namespace kanno;

namespace {

Hypergraph graph_of(std::string_view alias) { return builtin_schema(alias)->graph; }

// Tries every arrangement of distinct edges and connecting nodes.
bool cycle_exists(const Hypergraph& h, CycleKind kind) {
  std::vector<NodeSet> sets;
  for (const auto& e : h.edges())
    if (std::find(sets.begin(), sets.end(), e.nodes) == sets.end()) sets.push_back(e.nodes);
  const auto m = sets.size();
  std::vector<std::size_t> perm;
  std::vector<int> nodes;
  auto valid = [&] {
    const auto k = perm.size();
    for (std::size_t i = 0; i < k; ++i) {
      const int a = nodes[i];
      if (!contains(sets[perm[i]], a) || !contains(sets[perm[(i + 1) % k]], a)) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (nodes[j] == a) return false;
      const bool excl = kind == CycleKind::beta || i < 2;
      if (!excl) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i && j != (i + 1) % k && contains(sets[perm[j]], a)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> pick_nodes = [&](std::size_t i) {
    if (i == perm.size()) return valid();
    for (int a = 0; a < static_cast<int>(h.node_count()); ++a) {
      nodes[i] = a;
      if (pick_nodes(i + 1)) return true;
    }
    return false;
  };
  for (std::size_t k = 3; k <= m; ++k) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    // ordered selections of k edges
    std::function<bool(std::uint64_t)> choose = [&](std::uint64_t used) {
      if (perm.size() == k) {
        nodes.assign(k, -1);
        return pick_nodes(0);
      }
      for (std::size_t e = 0; e < m; ++e) {
        if ((used >> e) & 1U) continue;
        perm.push_back(e);
        if (choose(used | (1ULL << e))) return true;
        perm.pop_back();
      }
      return false;
    };
    perm.clear();
    if (choose(0)) return true;
  }
  return false;
}

TEST(WeakCycle, BfmySchemaHasTheExpectedBetaCycle) {
  const auto h = graph_of("bfmy-acyclic");
  const auto r = find_weak_cycle(h, CycleKind::beta);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(format_weak_cycle(h, *r.value), "({A,B,C},C,{C,D,E},E,{E,F,A},A,{A,B,C})");
  EXPECT_FALSE(is_beta_acyclic(h));
}

TEST(WeakCycle, HStarHasTheExpectedGammaCycle) {
  const auto h = graph_of("hstar");
  EXPECT_TRUE(is_beta_acyclic(h));
  const auto r = find_weak_cycle(h, CycleKind::gamma);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(format_weak_cycle(h, *r.value), "({A,B},B,{A,B,C},C,{A,C},A,{A,B})");
  EXPECT_FALSE(is_gamma_acyclic_brault_baron(h));
  const auto hub = find_hub_triple(h);
  ASSERT_TRUE(hub.has_value());
  EXPECT_EQ(h.node_name(hub->a), "A");
}

TEST(WeakCycle, PathsAreGammaAcyclic) {
  for (const char* p : {"p2", "p3", "p4", "p5"}) {
    EXPECT_TRUE(find_weak_cycle(graph_of(p), CycleKind::gamma).absent()) << p;
    EXPECT_TRUE(is_gamma_acyclic_brault_baron(graph_of(p))) << p;
  }
  EXPECT_FALSE(is_gamma_acyclic(graph_of("triangle")));
  EXPECT_FALSE(is_beta_acyclic(graph_of("4cycle")));
}

TEST(WeakCycle, VerifierRejectsMalformedCycles) {
  const auto h = graph_of("hstar");
  // edge 0 = ABC, 1 = AB, 2 = AC; nodes A=0, B=1, C=2
  const WeakCycle good{CycleKind::gamma, {1, 0, 2}, {1, 2, 0}};
  EXPECT_TRUE(verify_weak_cycle(h, good));
  auto as_beta = good;
  as_beta.kind = CycleKind::beta;
  EXPECT_FALSE(verify_weak_cycle(h, as_beta));  // A lies in ABC too
  const WeakCycle short_cycle{CycleKind::gamma, {1, 0}, {1, 0}};
  EXPECT_FALSE(verify_weak_cycle(h, short_cycle));
  const WeakCycle repeated_node{CycleKind::gamma, {1, 0, 2}, {0, 0, 0}};
  EXPECT_FALSE(verify_weak_cycle(h, repeated_node));
  const WeakCycle wrong_edge{CycleKind::gamma, {1, 2, 0}, {1, 2, 0}};
  EXPECT_FALSE(verify_weak_cycle(h, wrong_edge));
}

TEST(WeakCycle, RepeatedEdgesCountOnce) {
  const auto h = Hypergraph::from_edges({{"A", "B"}, {"A", "B"}, {"B", "C"}});
  EXPECT_TRUE(find_weak_cycle(h, CycleKind::beta).absent());
  EXPECT_TRUE(find_weak_cycle(h, CycleKind::gamma).absent());
}

TEST(WeakCycle, SearchMatchesExhaustiveArrangements) {
  std::mt19937_64 rng(77);
  int beta_cyclic = 0, gamma_cyclic = 0;
  for (int trial = 0; trial < 250; ++trial) {
    Hypergraph h;
    const int n = 3 + static_cast<int>(rng() % 3);
    const int m = 2 + static_cast<int>(rng() % 3);
    for (int e = 0; e < m; ++e) {
      std::vector<std::string> ns;
      while (ns.size() < 2) {
        ns.clear();
        for (int v = 0; v < n; ++v)
          if (rng() % 2 == 0) ns.emplace_back(1, static_cast<char>('A' + v));
      }
      h.add_edge(ns);
    }
    for (auto kind : {CycleKind::beta, CycleKind::gamma}) {
      const auto r = find_weak_cycle(h, kind);
      ASSERT_FALSE(r.undecided());
      ASSERT_EQ(r.found(), cycle_exists(h, kind)) << to_string(kind) << " " << h.format();
      if (r.found()) {
        ASSERT_TRUE(verify_weak_cycle(h, *r.value));
        (kind == CycleKind::beta ? beta_cyclic : gamma_cyclic)++;
      }
    }
  }
  EXPECT_GT(beta_cyclic, 5);
  EXPECT_GT(gamma_cyclic, beta_cyclic);
}

TEST(WeakCycle, TinyBudgetIsUndecided) {
  const auto h = graph_of("bfmy-acyclic");
  EXPECT_TRUE(find_weak_cycle(h, CycleKind::beta, 1).undecided());
  EXPECT_THROW(is_beta_acyclic(h, 1), BudgetExhausted);
}

}  // namespace
