#include "kanno/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "kanno/error.hpp"
#include "text_util.hpp"

namespace kanno {

Hypergraph Hypergraph::from_edges(const std::vector<std::vector<std::string>>& edges,
                                  const std::vector<std::string>& names) {
  Hypergraph h;
  for (std::size_t i = 0; i < edges.size(); ++i) h.add_edge(edges[i], i < names.size() ? names[i] : "");
  return h;
}

int Hypergraph::add_node(const std::string& name) {
  if (auto i = node_index(name)) return *i;
  if (node_names_.size() >= kMaxNodes) throw Error("hypergraph supports at most 64 nodes");
  if (name.empty()) throw Error("node name is empty");
  node_names_.push_back(name);
  const int idx = static_cast<int>(node_names_.size() - 1);
  vertices_ |= singleton(idx);
  return idx;
}

std::size_t Hypergraph::add_edge(const std::vector<std::string>& nodes, std::string name) {
  if (nodes.empty()) throw Error("hyperedge is empty");
  if (!name.empty() && edge_by_name(name)) throw Error("duplicate hyperedge name " + name);
  Hyperedge e;
  e.name = std::move(name);
  for (const auto& n : nodes) {
    const int idx = add_node(n);
    if (contains(e.nodes, idx)) throw Error("hyperedge repeats node " + n);
    e.nodes |= singleton(idx);
    e.order.push_back(idx);
  }
  edges_.push_back(std::move(e));
  return edges_.size() - 1;
}

std::optional<int> Hypergraph::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < node_names_.size(); ++i)
    if (node_names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<std::size_t> Hypergraph::edge_by_name(std::string_view name) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (!edges_[i].name.empty() && edges_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Hypergraph::edge_by_nodes(NodeSet nodes) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].nodes == nodes) return i;
  return std::nullopt;
}

NodeSet Hypergraph::node_set(const std::vector<std::string>& names) const {
  NodeSet s = 0;
  for (const auto& n : names) {
    auto i = node_index(n);
    if (!i) throw Error("unknown node " + n);
    s |= singleton(*i);
  }
  return s;
}

std::vector<std::string> Hypergraph::node_names(NodeSet set) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < node_names_.size(); ++i)
    if (contains(set, static_cast<int>(i))) out.push_back(node_names_[i]);
  return out;
}

std::string Hypergraph::format_nodes(NodeSet set) const {
  return "{" + join(node_names(set), ",", [](const std::string& s) { return s; }) + "}";
}

std::string Hypergraph::format_edge(std::size_t i) const {
  return "{" + join(edges_[i].order, ",", [&](int n) { return node_name(n); }) + "}";
}

std::string Hypergraph::edge_label(std::size_t i) const {
  return edges_[i].name.empty() ? format_edge(i) : edges_[i].name;
}

std::string Hypergraph::format() const {
  std::vector<std::size_t> idx(edges_.size());
  std::iota(idx.begin(), idx.end(), 0);
  return join(idx, " ", [&](std::size_t i) { return format_edge(i); });
}

Hypergraph Hypergraph::with_edges(const std::vector<std::size_t>& indices) const {
  std::vector<Hyperedge> es;
  for (auto i : indices) es.push_back(edges_.at(i));
  return derive(vertices_, std::move(es));
}

Hypergraph Hypergraph::derive(NodeSet vertices, std::vector<Hyperedge> edges) const {
  Hypergraph h;
  h.node_names_ = node_names_;
  h.vertices_ = vertices;
  h.edges_ = std::move(edges);
  return h;
}

namespace {

Hyperedge intersect_edge(const Hyperedge& e, NodeSet u) {
  Hyperedge out;
  out.nodes = e.nodes & u;
  out.name = e.name;
  for (int n : e.order)
    if (contains(u, n)) out.order.push_back(n);
  return out;
}

}  // namespace

Hypergraph reduction(const Hypergraph& h) {
  std::vector<Hyperedge> kept;
  const auto& es = h.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < es.size() && !drop; ++j) {
      if (i == j) continue;
      const bool proper = is_subset(es[i].nodes, es[j].nodes) && es[i].nodes != es[j].nodes;
      const bool repeat = es[i].nodes == es[j].nodes && j < i;
      drop = proper || repeat;
    }
    if (!drop) kept.push_back(es[i]);
  }
  return h.derive(h.vertices(), std::move(kept));
}

Hypergraph induced(const Hypergraph& h, NodeSet s) {
  if (!is_subset(s, h.vertices())) throw Error("node set is not contained in the hypergraph");
  std::vector<Hyperedge> es;
  for (const auto& e : h.edges()) {
    auto x = intersect_edge(e, s);
    if (x.nodes != 0) es.push_back(std::move(x));
  }
  return h.derive(s, std::move(es));
}

Hypergraph restriction(const Hypergraph& h, NodeSet u) { return reduction(induced(h, u)); }

Graph gaifman(const Hypergraph& h) {
  Graph g(h.node_count(), 0);
  for (const auto& e : h.edges())
    for (int n : e.order) g[static_cast<std::size_t>(n)] |= e.nodes & ~singleton(n);
  return g;
}

std::vector<std::vector<std::size_t>> connected_components(const Hypergraph& h) {
  const auto m = h.edge_count();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (h.edge(i).nodes & h.edge(j).nodes) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> out;
  std::vector<int> slot(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return out;
}

bool is_connected(const Hypergraph& h) { return connected_components(h).size() <= 1; }

std::optional<NodeSet> find_articulation_set(const Hypergraph& h) {
  const auto base = connected_components(h).size();
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    for (std::size_t j = i + 1; j < h.edge_count(); ++j) {
      const NodeSet y = h.edge(i).nodes & h.edge(j).nodes;
      if (connected_components(restriction(h, h.vertices() & ~y)).size() > base) return y;
    }
  return std::nullopt;
}

GyoResult gyo(const Hypergraph& h) {
  GyoResult res;
  const auto m = h.edge_count();
  std::vector<NodeSet> cur;
  for (const auto& e : h.edges()) cur.push_back(e.nodes);
  std::vector<bool> alive(m, true);
  std::vector<std::size_t> removed;

  while (true) {
    bool progressed = false;
    // Rule 1: a node that occurs in exactly one remaining edge.
    NodeSet all = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (alive[i]) all |= cur[i];
    for (int n = 0; n < static_cast<int>(h.node_count()) && !progressed; ++n) {
      if (!contains(all, n)) continue;
      std::size_t count = 0, owner = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (alive[i] && contains(cur[i], n)) {
          ++count;
          owner = i;
        }
      if (count == 1) {
        res.trace.push_back("delete node " + h.node_name(n) + " (only in " + h.format_nodes(cur[owner]) + ")");
        cur[owner] &= ~singleton(n);
        progressed = true;
      }
    }
    if (progressed) continue;
    // Rule 2: an edge contained in another remaining edge, or an empty one.
    for (std::size_t i = 0; i < m && !progressed; ++i) {
      if (!alive[i]) continue;
      if (cur[i] == 0) {
        res.trace.push_back("delete empty edge");
        alive[i] = false;
        removed.push_back(i);
        progressed = true;
        break;
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i || !alive[j] || !is_subset(cur[i], cur[j])) continue;
        res.trace.push_back("delete edge " + h.format_nodes(cur[i]) + " (contained in " + h.format_nodes(cur[j]) + ")");
        alive[i] = false;
        removed.push_back(i);
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }

  for (std::size_t i = 0; i < m; ++i)
    if (alive[i]) res.stuck.push_back(cur[i]);
  res.acyclic = res.stuck.empty();
  if (res.acyclic) res.rip_order.assign(removed.rbegin(), removed.rend());
  return res;
}

bool is_alpha_acyclic_definitional(const Hypergraph& h) {
  const auto r = reduction(h);
  const NodeSet v = r.vertices();
  if (std::popcount(v) > 24) throw Error("definitional acyclicity test is limited to 24 nodes");
  // Every submask U of V, including V itself and the empty set.
  NodeSet u = v;
  while (true) {
    const auto sub = restriction(r, u);
    if (sub.edge_count() >= 2 && is_connected(sub) && !find_articulation_set(sub)) return false;
    if (u == 0) break;
    u = (u - 1) & v;
  }
  return true;
}

namespace {

void bron_kerbosch(const Graph& g, NodeSet r, NodeSet p, NodeSet x, std::vector<NodeSet>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  // Pivot: the vertex of P ∪ X with most neighbours in P.
  int pivot = -1;
  int best = -1;
  for (NodeSet px = p | x; px; px &= px - 1) {
    const int u = std::countr_zero(px);
    const int c = std::popcount(p & g[static_cast<std::size_t>(u)]);
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (NodeSet cand = p & ~g[static_cast<std::size_t>(pivot)]; cand; cand &= cand - 1) {
    const int v = std::countr_zero(cand);
    const NodeSet nv = g[static_cast<std::size_t>(v)];
    bron_kerbosch(g, r | singleton(v), p & nv, x & nv, out);
    p &= ~singleton(v);
    x |= singleton(v);
  }
}

}  // namespace

bool is_conformal(const Hypergraph& h) {
  const auto g = gaifman(h);
  NodeSet covered = 0;
  for (const auto& e : h.edges()) covered |= e.nodes;
  std::vector<NodeSet> cliques;
  bron_kerbosch(g, 0, covered, 0, cliques);
  for (auto c : cliques) {
    if (c == 0) continue;
    const bool inside = std::any_of(h.edges().begin(), h.edges().end(),
                                    [&](const Hyperedge& e) { return is_subset(c, e.nodes); });
    if (!inside) return false;
  }
  return true;
}

bool is_chordal(const Hypergraph& h) {
  // Maximum cardinality search; the graph is chordal iff the neighbours of
  // each vertex visited before it form a clique.
  const auto g = gaifman(h);
  const NodeSet verts = h.vertices();
  NodeSet visited = 0;
  std::vector<int> weight(h.node_count(), 0);
  while (visited != verts) {
    int v = -1;
    for (NodeSet rest = verts & ~visited; rest; rest &= rest - 1) {
      const int u = std::countr_zero(rest);
      if (v < 0 || weight[static_cast<std::size_t>(u)] > weight[static_cast<std::size_t>(v)]) v = u;
    }
    const NodeSet earlier = g[static_cast<std::size_t>(v)] & visited;
    for (NodeSet a = earlier; a; a &= a - 1) {
      const int u = std::countr_zero(a);
      if (!is_subset(earlier & ~singleton(u), g[static_cast<std::size_t>(u)])) return false;
    }
    visited |= singleton(v);
    for (NodeSet n = g[static_cast<std::size_t>(v)] & ~visited; n; n &= n - 1)
      ++weight[static_cast<std::size_t>(std::countr_zero(n))];
  }
  return true;
}

bool satisfies_running_intersection(const Hypergraph& h, const std::vector<std::size_t>& order) {
  if (order.size() != h.edge_count()) return false;
  std::vector<bool> seen(h.edge_count(), false);
  NodeSet before = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto i = order[k];
    if (i >= h.edge_count() || seen[i]) return false;
    seen[i] = true;
    if (k > 0) {
      const NodeSet inter = before & h.edge(i).nodes;
      bool ok = false;
      for (std::size_t t = 0; t < k && !ok; ++t) ok = is_subset(inter, h.edge(order[t]).nodes);
      if (!ok) return false;
    }
    before |= h.edge(i).nodes;
  }
  return true;
}

std::optional<std::vector<std::size_t>> has_running_intersection(const Hypergraph& h) {
  const auto m = h.edge_count();
  if (m > 20) throw Error("running-intersection search is limited to 20 edges");
  if (m == 0) return std::vector<std::size_t>{};
  const std::size_t full = (std::size_t{1} << m) - 1;
  // last[S] = edge placed last in a valid ordering of S, or -1 if none.
  std::vector<int> last(full + 1, -1);
  std::vector<NodeSet> unions(full + 1, 0);
  for (std::size_t s = 1; s <= full; ++s) {
    const int low = std::countr_zero(s);
    unions[s] = unions[s & (s - 1)] | h.edge(static_cast<std::size_t>(low)).nodes;
  }
  for (std::size_t s = 1; s <= full; ++s) {
    for (std::size_t i = 0; i < m && last[s] < 0; ++i) {
      if (!((s >> i) & 1U)) continue;
      const std::size_t prev = s & ~(std::size_t{1} << i);
      if (prev == 0) {
        last[s] = static_cast<int>(i);
        break;
      }
      if (last[prev] < 0) continue;
      const NodeSet inter = unions[prev] & h.edge(i).nodes;
      for (std::size_t j = 0; j < m; ++j)
        if (((prev >> j) & 1U) && is_subset(inter, h.edge(j).nodes)) {
          last[s] = static_cast<int>(i);
          break;
        }
    }
  }
  if (last[full] < 0) return std::nullopt;
  std::vector<std::size_t> order;
  for (std::size_t s = full; s != 0; s &= ~(std::size_t{1} << last[s])) order.push_back(static_cast<std::size_t>(last[s]));
  std::reverse(order.begin(), order.end());
  return order;
}

bool is_beta_acyclic_bruteforce(const Hypergraph& h) {
  const auto r = [&] {
    // Distinct node sets only; a repeated edge never changes acyclicity.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < h.edge_count(); ++i)
      if (h.edge_by_nodes(h.edge(i).nodes) == i) keep.push_back(i);
    return h.with_edges(keep);
  }();
  const auto m = r.edge_count();
  if (m > 20) throw Error("brute-force beta test is limited to 20 edges");
  for (std::size_t s = 1; s < (std::size_t{1} << m); ++s) {
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < m; ++i)
      if ((s >> i) & 1U) pick.push_back(i);
    if (!is_alpha_acyclic_gyo(r.with_edges(pick))) return false;
  }
  return true;
}

}  // namespace kanno
