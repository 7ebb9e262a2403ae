#include "kanno/weak_cycle.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace kanno {

const char* to_string(CycleKind kind) { return kind == CycleKind::beta ? "beta" : "gamma"; }

namespace {

// Positions whose node must avoid every cycle edge except its two neighbours.
bool exclusive(CycleKind kind, std::size_t i) { return kind == CycleKind::beta || i < 2; }

}  // namespace

bool verify_weak_cycle(const Hypergraph& h, const WeakCycle& c) {
  const auto k = c.edges.size();
  if (k < 3 || c.nodes.size() != k) return false;
  // (1) distinct hyperedges
  std::set<std::size_t> edge_ids(c.edges.begin(), c.edges.end());
  std::set<NodeSet> edge_sets;
  for (auto e : c.edges) {
    if (e >= h.edge_count()) return false;
    edge_sets.insert(h.edge(e).nodes);
  }
  if (edge_ids.size() != k || edge_sets.size() != k) return false;
  // (2) distinct nodes
  std::set<int> node_ids(c.nodes.begin(), c.nodes.end());
  if (node_ids.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& yi = h.edge(c.edges[i]).nodes;
    const auto& ynext = h.edge(c.edges[(i + 1) % k]).nodes;
    // (3) A_i in Y_i ∩ Y_{i+1}
    if (!contains(yi, c.nodes[i]) || !contains(ynext, c.nodes[i])) return false;
    // (4) exclusivity
    if (!exclusive(c.kind, i)) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || j == (i + 1) % k) continue;
      if (contains(h.edge(c.edges[j]).nodes, c.nodes[i])) return false;
    }
  }
  return true;
}

namespace {

class CycleSearch {
 public:
  CycleSearch(const Hypergraph& h, CycleKind kind, std::size_t budget) : h_(h), kind_(kind), budget_(budget) {
    for (std::size_t i = 0; i < h.edge_count(); ++i)
      if (h.edge_by_nodes(h.edge(i).nodes) == i) distinct_.push_back(i);
  }

  SearchResult<WeakCycle> run() {
    for (auto y1 : distinct_) {
      edges_ = {y1};
      nodes_.clear();
      if (extend()) {
        WeakCycle c{kind_, edges_, nodes_};
        if (!verify_weak_cycle(h_, c)) throw ContractViolation("weak-cycle search produced an invalid cycle");
        return SearchResult<WeakCycle>::make_found(std::move(c), count_);
      }
      if (exhausted_) return SearchResult<WeakCycle>::make_undecided(count_);
    }
    return SearchResult<WeakCycle>::make_absent(count_);
  }

 private:
  NodeSet edge(std::size_t pos) const { return h_.edge(edges_[pos]).nodes; }

  bool used_edge(std::size_t e) const { return std::find(edges_.begin(), edges_.end(), e) != edges_.end(); }
  bool used_node(int n) const { return std::find(nodes_.begin(), nodes_.end(), n) != nodes_.end(); }

  // Edges Y_1..Y_i are placed and A_1..A_{i-1} chosen (i = edges_.size()).
  bool extend() {
    if (++count_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const auto i = edges_.size();
    const NodeSet last = edge(i - 1);

    // Close with A_i ∈ Y_i ∩ Y_1.
    if (i >= 3) {
      for (NodeSet cand = last & edge(0); cand; cand &= cand - 1) {
        const int a = std::countr_zero(cand);
        if (used_node(a)) continue;
        if (exclusive(kind_, i - 1) && in_other_edges(a, 0, i - 1)) continue;
        nodes_.push_back(a);
        return true;
      }
    }

    // Extend with a new edge Y_{i+1} and A_i ∈ Y_i ∩ Y_{i+1}.
    for (auto e : distinct_) {
      if (used_edge(e)) continue;
      const NodeSet next = h_.edge(e).nodes;
      // Earlier exclusive nodes must stay out of the new edge.
      bool blocked = false;
      for (std::size_t t = 0; t < nodes_.size() && !blocked; ++t)
        blocked = exclusive(kind_, t) && contains(next, nodes_[t]);
      if (blocked) continue;
      for (NodeSet cand = last & next; cand; cand &= cand - 1) {
        const int a = std::countr_zero(cand);
        if (used_node(a)) continue;
        if (exclusive(kind_, i - 1) && in_other_edges(a, i - 1, i)) continue;
        edges_.push_back(e);
        nodes_.push_back(a);
        if (extend()) return true;
        edges_.pop_back();
        nodes_.pop_back();
        if (exhausted_) return false;
      }
    }
    return false;
  }

  // Whether node a lies in some placed edge other than positions p and q.
  bool in_other_edges(int a, std::size_t p, std::size_t q) const {
    for (std::size_t j = 0; j < edges_.size(); ++j)
      if (j != p && j != q && contains(edge(j), a)) return true;
    return false;
  }

  const Hypergraph& h_;
  CycleKind kind_;
  std::size_t budget_;
  std::vector<std::size_t> distinct_;
  std::vector<std::size_t> edges_;
  std::vector<int> nodes_;
  std::size_t count_ = 0;
  bool exhausted_ = false;
};

}  // namespace

SearchResult<WeakCycle> find_weak_cycle(const Hypergraph& h, CycleKind kind, std::size_t budget) {
  return CycleSearch(h, kind, budget).run();
}

std::string format_weak_cycle(const Hypergraph& h, const WeakCycle& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.edges.size(); ++i) out += h.format_edge(c.edges[i]) + "," + h.node_name(c.nodes[i]) + ",";
  out += h.format_edge(c.edges.front()) + ")";
  return out;
}

namespace {

bool acyclic_by_search(const Hypergraph& h, CycleKind kind, std::size_t budget) {
  auto res = find_weak_cycle(h, kind, budget);
  if (res.undecided())
    throw BudgetExhausted(std::string("weak ") + to_string(kind) + "-cycle search ran out of budget");
  return res.absent();
}

}  // namespace

bool is_beta_acyclic(const Hypergraph& h, std::size_t budget) { return acyclic_by_search(h, CycleKind::beta, budget); }

bool is_gamma_acyclic(const Hypergraph& h, std::size_t budget) {
  return acyclic_by_search(h, CycleKind::gamma, budget);
}

std::optional<HubTriple> find_hub_triple(const Hypergraph& h) {
  const NodeSet v = h.vertices();
  for (NodeSet as = v; as; as &= as - 1) {
    const int a = std::countr_zero(as);
    for (NodeSet bs = v & ~singleton(a); bs; bs &= bs - 1) {
      const int b = std::countr_zero(bs);
      // B and C play symmetric roles, so b < c covers both assignments.
      for (NodeSet cs = v & ~singleton(a) & ~((singleton(b) << 1) - 1); cs; cs &= cs - 1) {
        const int c = std::countr_zero(cs);
        const NodeSet abc = singleton(a) | singleton(b) | singleton(c);
        const auto sub = induced(h, abc);
        bool full = false, ab = false, ac = false;
        for (const auto& e : sub.edges()) {
          full = full || e.nodes == abc;
          ab = ab || e.nodes == (singleton(a) | singleton(b));
          ac = ac || e.nodes == (singleton(a) | singleton(c));
        }
        if (full && ab && ac) return HubTriple{a, b, c};
      }
    }
  }
  return std::nullopt;
}

bool is_gamma_acyclic_brault_baron(const Hypergraph& h) {
  return is_beta_acyclic_bruteforce(h) && !find_hub_triple(h);
}

}  // namespace kanno
