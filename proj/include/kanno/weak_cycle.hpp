#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kanno/error.hpp"
#include "kanno/hypergraph.hpp"

namespace kanno {

enum class CycleKind { beta, gamma };

const char* to_string(CycleKind kind);

/// Y1, A1, Y2, ..., Yk, Ak, Y1 with edges[i] = Y(i+1) and nodes[i] = A(i+1).
struct WeakCycle {
  CycleKind kind = CycleKind::beta;
  std::vector<std::size_t> edges;  // indices into the hypergraph's edge list
  std::vector<int> nodes;

  friend bool operator==(const WeakCycle&, const WeakCycle&) = default;
};

/// Checks the four defining conditions directly.
bool verify_weak_cycle(const Hypergraph& h, const WeakCycle& c);

/// Backtracking search. Edges with identical node sets are considered once
/// (the first occurrence). Returned cycles are verified.
SearchResult<WeakCycle> find_weak_cycle(const Hypergraph& h, CycleKind kind, std::size_t budget = kDefaultBudget);

/// "({A,B,C},C,{C,D,E},E,{E,F,A},A,{A,B,C})"
std::string format_weak_cycle(const Hypergraph& h, const WeakCycle& c);

/// No weak beta-cycle. Throws BudgetExhausted if the search is undecided.
bool is_beta_acyclic(const Hypergraph& h, std::size_t budget = kDefaultBudget);
/// No weak gamma-cycle. Throws BudgetExhausted if the search is undecided.
bool is_gamma_acyclic(const Hypergraph& h, std::size_t budget = kDefaultBudget);

/// Nodes A, B, C with {A,B,C}, {A,B}, {A,C} all edges of H[{A,B,C}], if any.
struct HubTriple {
  int a = -1, b = -1, c = -1;
};
std::optional<HubTriple> find_hub_triple(const Hypergraph& h);

/// Beta-acyclic (by the all-subsets test) and no hub triple.
bool is_gamma_acyclic_brault_baron(const Hypergraph& h);

}  // namespace kanno
