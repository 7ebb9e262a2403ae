#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kanno {

/// Bitmask over the node table of a Hypergraph (at most 64 nodes).
using NodeSet = std::uint64_t;

inline constexpr std::size_t kMaxNodes = 64;

inline bool contains(NodeSet set, int node) { return (set >> node) & 1U; }
inline NodeSet singleton(int node) { return NodeSet{1} << node; }
inline bool is_subset(NodeSet a, NodeSet b) { return (a & ~b) == 0; }

struct Hyperedge {
  NodeSet nodes = 0;
  std::vector<int> order;  // display order, as declared
  std::string name;        // may be empty
};

/// H = (V, F). F keeps declaration order and may repeat a node set. Derived
/// hypergraphs (restrictions, sub-hypergraphs) share the node table, so a
/// NodeSet means the same thing in all of them.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Builds from node-name lists; nodes are numbered by first appearance.
  static Hypergraph from_edges(const std::vector<std::vector<std::string>>& edges,
                               const std::vector<std::string>& names = {});

  /// Returns the node index, adding the node (as isolated) if new.
  int add_node(const std::string& name);
  std::size_t add_edge(const std::vector<std::string>& nodes, std::string name = "");

  std::size_t node_count() const { return node_names_.size(); }
  const std::string& node_name(int i) const { return node_names_[static_cast<std::size_t>(i)]; }
  std::optional<int> node_index(std::string_view name) const;
  /// V. May be smaller than the node table for derived hypergraphs.
  NodeSet vertices() const { return vertices_; }

  const std::vector<Hyperedge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Hyperedge& edge(std::size_t i) const { return edges_[i]; }
  std::optional<std::size_t> edge_by_name(std::string_view name) const;
  /// First edge whose node set equals `nodes`.
  std::optional<std::size_t> edge_by_nodes(NodeSet nodes) const;

  NodeSet node_set(const std::vector<std::string>& names) const;
  std::vector<std::string> node_names(NodeSet set) const;

  /// "{A,B,C}", nodes in table order.
  std::string format_nodes(NodeSet set) const;
  /// Edge nodes in declared order.
  std::string format_edge(std::size_t i) const;
  /// Name if the edge has one, set literal otherwise.
  std::string edge_label(std::size_t i) const;
  /// "{A,B,C} {A,B} ..." using format_edge.
  std::string format() const;

  /// Same node table and V, with the given edges (sub-hypergraph).
  Hypergraph with_edges(const std::vector<std::size_t>& indices) const;
  /// Same node table, new V and edge list.
  Hypergraph derive(NodeSet vertices, std::vector<Hyperedge> edges) const;

 private:
  std::vector<std::string> node_names_;
  NodeSet vertices_ = 0;
  std::vector<Hyperedge> edges_;
};

/// Drops edges properly contained in another and repeated node sets.
Hypergraph reduction(const Hypergraph& h);
/// Reduction of {X ∩ U} minus the empty set, over V = U.
Hypergraph restriction(const Hypergraph& h, NodeSet u);
/// {X ∩ S} minus the empty set, over V = S, not reduced.
Hypergraph induced(const Hypergraph& h, NodeSet s);

/// Adjacency per node index of the node table.
using Graph = std::vector<NodeSet>;
Graph gaifman(const Hypergraph& h);

/// Edge indices grouped by connectivity through shared nodes.
std::vector<std::vector<std::size_t>> connected_components(const Hypergraph& h);
bool is_connected(const Hypergraph& h);

/// Y = X ∩ X' for distinct edges such that restriction(H, V \ Y) has more
/// components than H. H should be reduced.
std::optional<NodeSet> find_articulation_set(const Hypergraph& h);

struct GyoResult {
  bool acyclic = false;
  std::vector<std::string> trace;
  /// Edge indices in running-intersection order (reverse removal order);
  /// only meaningful when acyclic.
  std::vector<std::size_t> rip_order;
  /// What was left when no rule applied; empty when acyclic.
  std::vector<NodeSet> stuck;
};

GyoResult gyo(const Hypergraph& h);
inline bool is_alpha_acyclic_gyo(const Hypergraph& h) { return gyo(h).acyclic; }

/// Articulation-set condition over every U ⊆ V. Exponential in |V|.
bool is_alpha_acyclic_definitional(const Hypergraph& h);

bool is_conformal(const Hypergraph& h);
bool is_chordal(const Hypergraph& h);

bool satisfies_running_intersection(const Hypergraph& h, const std::vector<std::size_t>& order);
/// Exhaustive over orderings (dynamic programming over edge subsets).
std::optional<std::vector<std::size_t>> has_running_intersection(const Hypergraph& h);

/// Every non-empty set of distinct edges is GYO-acyclic.
bool is_beta_acyclic_bruteforce(const Hypergraph& h);

}  // namespace kanno
