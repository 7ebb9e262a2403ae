#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "kanno/theoremlab.hpp"
#include "kanno/weak_cycle.hpp"

namespace kanno {
namespace {

// Tuple over `attrs` with the given domain positions; everything else is
// padded with the first domain value.
KTuple padded(const AttributeSet& attrs, const std::map<std::string, int>& values) {
  KTuple t(attrs.size(), 0);
  for (std::size_t i = 0; i < attrs.size(); ++i)
    if (auto it = values.find(attrs[i].name); it != values.end()) t[i] = it->second;
  return t;
}

std::vector<KRelation> empty_relations(const Schema& s, const Monoid& monoid) {
  std::vector<KRelation> out;
  for (std::size_t i = 0; i < s.graph.edge_count(); ++i) out.emplace_back(s.edge_attrs(i), monoid);
  return out;
}

struct CycleWalk {
  std::vector<std::size_t> edges;  // distinct edges in cycle order
  std::vector<int> nodes;          // nodes[k] is shared by edges[k-1] and edges[k]; nodes[0] closes the cycle
};

// The distinct edges form one simple cycle of binary edges.
std::optional<CycleWalk> as_cycle(const Hypergraph& h) {
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    if (h.edge_by_nodes(h.edge(i).nodes) == i) distinct.push_back(i);
  if (distinct.size() < 3) return std::nullopt;
  NodeSet covered = 0;
  for (auto e : distinct) {
    if (std::popcount(h.edge(e).nodes) != 2) return std::nullopt;
    covered |= h.edge(e).nodes;
  }
  if (static_cast<std::size_t>(std::popcount(covered)) != distinct.size()) return std::nullopt;
  for (NodeSet rest = covered; rest; rest &= rest - 1) {
    const int n = std::countr_zero(rest);
    const auto deg = std::count_if(distinct.begin(), distinct.end(),
                                   [&](std::size_t e) { return contains(h.edge(e).nodes, n); });
    if (deg != 2) return std::nullopt;
  }
  CycleWalk walk;
  const auto first = distinct.front();
  int node = h.edge(first).order.front();
  std::size_t edge = first;
  do {
    walk.edges.push_back(edge);
    walk.nodes.push_back(node);
    const int other = std::countr_zero(h.edge(edge).nodes & ~singleton(node));
    node = other;
    for (auto e : distinct)
      if (e != edge && contains(h.edge(e).nodes, node)) {
        edge = e;
        break;
      }
  } while (edge != first);
  if (walk.edges.size() != distinct.size()) return std::nullopt;  // more than one cycle
  return walk;
}

Instance parity_on_cycle(const Schema& s, const CycleWalk& walk, const Monoid& monoid, MonoidValue a) {
  Instance inst{s, empty_relations(s, monoid)};
  const auto k = walk.edges.size();
  for (std::size_t i = 0; i < k; ++i) {
    const auto& u = s.graph.node_name(walk.nodes[i]);
    const auto& v = s.graph.node_name(walk.nodes[(i + 1) % k]);
    auto& r = inst.relations[walk.edges[i]];
    const bool flip = i + 1 == k;
    for (int x = 0; x < 2; ++x) r.set(padded(r.attrs(), {{u, x}, {v, flip ? 1 - x : x}}), a);
  }
  // Repeated node sets carry a copy of their first occurrence.
  for (std::size_t i = 0; i < s.graph.edge_count(); ++i) {
    const auto first = *s.graph.edge_by_nodes(s.graph.edge(i).nodes);
    if (first != i) inst.relations[i] = inst.relations[first];
  }
  return inst;
}

bool domains_at_least(const Schema& s, std::size_t n) {
  return std::all_of(s.attrs.begin(), s.attrs.end(), [&](const Attribute& a) { return a.domain.size() >= n; });
}

}  // namespace

MonoidValue unit_element(const Monoid& monoid) {
  switch (monoid.kind()) {
    case MonoidKind::boolean:
    case MonoidKind::bag:
      return MonoidValue(1);
    case MonoidKind::numerical_semigroup:
      return MonoidValue(monoid.generators().front());
    case MonoidKind::tropical_min:
    case MonoidKind::max_unit_interval:
      return monoid.parse_element("1");
    case MonoidKind::powerset:
      if (monoid.ground_set().empty()) throw ElementError("pset() has no nonzero element");
      return MonoidValue(1);
  }
  return monoid.zero();
}

Instance triangle_counterexample() {
  const auto s = *builtin_schema("triangle");
  Instance inst{s, empty_relations(s, Monoid::boolean())};
  const MonoidValue one(1);
  // R1(A,B) and R3(C,A) hold equality, R2(B,C) inequality.
  for (int x = 0; x < 2; ++x) {
    inst.relations[0].set(padded(inst.relations[0].attrs(), {{"A", x}, {"B", x}}), one);
    inst.relations[1].set(padded(inst.relations[1].attrs(), {{"B", x}, {"C", 1 - x}}), one);
    inst.relations[2].set(padded(inst.relations[2].attrs(), {{"C", x}, {"A", x}}), one);
  }
  return inst;
}

Instance cycle_parity_counterexample(int n, const Monoid& monoid, std::optional<MonoidValue> a) {
  if (n < 3) throw Error("a cycle needs at least three edges");
  Hypergraph h;
  for (int i = 1; i <= n; ++i)
    h.add_edge({"A" + std::to_string(i), "A" + std::to_string(i % n + 1)}, "X" + std::to_string(i));
  auto s = make_schema(std::move(h));
  s.name = std::to_string(n) + "cycle";
  return parity_on_cycle(s, *as_cycle(s.graph), monoid, a.value_or(unit_element(monoid)));
}

Instance p3_counterexample(const Monoid& monoid, const TransportInstance& infeasible) {
  const auto& b = infeasible.rows;
  const auto& c = infeasible.cols;
  if (b.empty() || c.empty()) throw Error("transport instance needs rows and columns");
  const auto total = monoid.sum(b);
  if (total != monoid.sum(c)) throw Error("transport instance totals differ");
  const auto k = std::max(b.size(), c.size());
  std::vector<std::string> as, ds;
  for (std::size_t i = 1; i <= k; ++i) {
    as.push_back("a" + std::to_string(i));
    ds.push_back("d" + std::to_string(i));
  }
  auto s = make_schema(path_hypergraph(3), {{"A1", as}, {"A2", {"b1", "b2"}}, {"A3", {"c1", "c2"}}, {"A4", ds}});
  s.name = "p3";
  Instance inst{s, empty_relations(s, monoid)};
  auto& r1 = inst.relations[0];
  auto& r2 = inst.relations[1];
  auto& r3 = inst.relations[2];
  const int i_b1 = 0, i_b2 = 1, i_c1 = 0, i_c2 = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    r1.set(padded(r1.attrs(), {{"A1", static_cast<int>(i)}, {"A2", i_b1}}), b[i]);
    r3.set(padded(r3.attrs(), {{"A3", i_c2}, {"A4", static_cast<int>(i)}}), b[i]);
  }
  for (std::size_t j = 0; j < c.size(); ++j) {
    r1.set(padded(r1.attrs(), {{"A1", static_cast<int>(j)}, {"A2", i_b2}}), c[j]);
    r3.set(padded(r3.attrs(), {{"A3", i_c1}, {"A4", static_cast<int>(j)}}), c[j]);
  }
  r2.set(padded(r2.attrs(), {{"A2", i_b1}, {"A3", i_c1}}), total);
  r2.set(padded(r2.attrs(), {{"A2", i_b2}, {"A3", i_c2}}), total);
  return inst;
}

Instance nsg_p3_counterexample() {
  const auto k = Monoid::numerical_semigroup({3, 5});
  const TransportInstance inst{{MonoidValue(5), MonoidValue(5), MonoidValue(5)},
                               {MonoidValue(3), MonoidValue(3), MonoidValue(9)}};
  return p3_counterexample(k, inst);
}

std::optional<GammaRoles> find_gamma_roles(const Hypergraph& h) {
  const auto hub = find_hub_triple(h);
  if (!hub) return std::nullopt;
  const NodeSet abc = singleton(hub->a) | singleton(hub->b) | singleton(hub->c);
  const NodeSet ab = singleton(hub->a) | singleton(hub->b);
  const NodeSet ac = singleton(hub->a) | singleton(hub->c);
  GammaRoles roles{0, 0, 0, hub->a, hub->b, hub->c};
  bool f1 = false, f2 = false, f3 = false;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const NodeSet x = h.edge(i).nodes & abc;
    if (!f1 && x == ab) roles.y1 = i, f1 = true;
    if (!f2 && x == ac) roles.y2 = i, f2 = true;
    if (!f3 && x == abc) roles.y3 = i, f3 = true;
  }
  if (!(f1 && f2 && f3)) return std::nullopt;
  return roles;
}

Adversary gamma_adversarial(const WitnessFunction& w, const Schema& schema, const GammaRoles& roles,
                            const Monoid& monoid, MonoidValue a) {
  if (monoid.is_zero(a) || !monoid.is_element(a)) throw ElementError("adversary weight must be a nonzero element");
  const auto& g = schema.graph;
  const std::string A = g.node_name(roles.a), B = g.node_name(roles.b), C = g.node_name(roles.c);
  for (const auto& n : {A, B, C})
    if (schema.attrs[*schema.attrs.index_of(n)].domain.size() < 2)
      throw AttributeError("attribute " + n + " needs two domain values");
  const NodeSet abc = singleton(roles.a) | singleton(roles.b) | singleton(roles.c);
  if ((g.edge(roles.y1).nodes & abc) != (singleton(roles.a) | singleton(roles.b)) ||
      (g.edge(roles.y2).nodes & abc) != (singleton(roles.a) | singleton(roles.c)) ||
      (g.edge(roles.y3).nodes & abc) != abc)
    throw Error("edges do not play the Y1, Y2, Y3 roles for " + g.format_nodes(abc));

  constexpr int f = 0, t = 1;
  Instance inst{schema, empty_relations(schema, monoid)};
  auto& r1 = inst.relations[roles.y1];
  auto& r2 = inst.relations[roles.y2];
  r1.set(padded(r1.attrs(), {{A, f}, {B, f}}), a);
  r1.set(padded(r1.attrs(), {{A, f}, {B, t}}), a);
  r2.set(padded(r2.attrs(), {{A, f}, {C, f}}), a);
  r2.set(padded(r2.attrs(), {{A, f}, {C, t}}), a);

  const auto u = r1.attrs().unite(r2.attrs());
  KRelation s1(u, monoid), s2(u, monoid);
  s1.set(padded(u, {{A, f}, {B, f}, {C, f}}), a);
  s1.set(padded(u, {{A, f}, {B, t}, {C, t}}), a);
  s2.set(padded(u, {{A, f}, {B, f}, {C, t}}), a);
  s2.set(padded(u, {{A, f}, {B, t}, {C, f}}), a);

  auto w12 = w(r1, r2);
  if (!(w12.attrs() == u)) throw ContractViolation("witness function " + w.name() + " returned the wrong attributes");
  const auto abc_attrs = u.select({A, B, C});
  // Weighted comparison, not just supports.
  const int subcase = marginal(w12, abc_attrs) == marginal(s1, abc_attrs) ? 1 : 2;

  auto& r3 = inst.relations[roles.y3];
  if (subcase == 1) {
    r3.set(padded(r3.attrs(), {{A, f}, {B, f}, {C, t}}), a);
    r3.set(padded(r3.attrs(), {{A, f}, {B, t}, {C, f}}), a);
  } else {
    r3.set(padded(r3.attrs(), {{A, f}, {B, f}, {C, f}}), a);
    r3.set(padded(r3.attrs(), {{A, f}, {B, t}, {C, t}}), a);
  }
  auto expr = JoinExpr::join(JoinExpr::join(JoinExpr::leaf(roles.y1), JoinExpr::leaf(roles.y2)),
                             JoinExpr::leaf(roles.y3));
  return Adversary{std::move(inst), roles, std::move(s1), std::move(s2), std::move(w12), subcase, std::move(expr)};
}

Schema hstar_ft_schema() {
  auto s = make_schema(Hypergraph::from_edges({{"A", "B", "C"}, {"A", "B"}, {"A", "C"}}),
                       {{"A", {"f", "t"}}, {"B", {"f", "t"}}, {"C", {"f", "t"}}});
  s.name = "hstar";
  return s;
}

Adversary hstar_adversarial(const WitnessFunction& w, const Monoid& monoid, MonoidValue a) {
  const auto s = hstar_ft_schema();
  const GammaRoles roles{1, 2, 0, 0, 1, 2};
  return gamma_adversarial(w, s, roles, monoid, a);
}

AdversaryCheck verify_adversary(const Adversary& adv, std::size_t budget) {
  AdversaryCheck check;
  const std::vector<KRelation> triple{adv.r1(), adv.r2(), adv.r3()};
  check.pairwise = pairwise_consistent(triple, budget);
  const KRelation pair[] = {adv.r1(), adv.r2()};
  check.s1_witness = is_witness(adv.s1, pair);
  check.s2_witness = is_witness(adv.s2, pair);
  check.s_distinct = adv.s1 != adv.s2;
  check.w12_vs_r3 = consistent(adv.w12, adv.r3(), budget).status;
  return check;
}

std::optional<Instance> known_local_global_counterexample(const Schema& schema, const Monoid& monoid,
                                                          std::size_t budget) {
  if (auto walk = as_cycle(schema.graph)) {
    if (!domains_at_least(schema, 2)) return std::nullopt;
    return parity_on_cycle(schema, *walk, monoid, unit_element(monoid));
  }
  // P3 shape: three distinct binary edges forming a path.
  const auto& g = schema.graph;
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (g.edge_by_nodes(g.edge(i).nodes) == i) distinct.push_back(i);
  const bool binary = std::all_of(distinct.begin(), distinct.end(),
                                  [&](std::size_t e) { return std::popcount(g.edge(e).nodes) == 2; });
  if (distinct.size() != 3 || !binary || !is_connected(g.with_edges(distinct))) return std::nullopt;
  NodeSet all = 0;
  for (auto e : distinct) all |= g.edge(e).nodes;
  if (std::popcount(all) != 4) return std::nullopt;
  if (monoid.has_closed_form_transport()) return std::nullopt;
  const auto pool = default_probe_pool(monoid);
  const auto probe = probe_transportation_property(monoid, 3, 3, pool, budget, Execution::serial);
  if (!probe.counterexample) return std::nullopt;
  return p3_counterexample(monoid, *probe.counterexample);
}

std::vector<Hypergraph> enumerate_hypergraphs(std::size_t max_nodes, std::size_t max_edges) {
  std::vector<Hypergraph> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    const NodeSet full = (NodeSet{1} << n) - 1;
    std::vector<NodeSet> masks;
    for (NodeSet m = 1; m <= full; ++m) masks.push_back(m);
    std::vector<std::size_t> pick;
    // Combinations of masks in increasing index order.
    std::function<void(std::size_t, NodeSet)> go = [&](std::size_t from, NodeSet cover) {
      if (!pick.empty() && cover == full) {
        Hypergraph h;
        for (std::size_t v = 0; v < n; ++v) h.add_node(std::string(1, static_cast<char>('A' + v)));
        for (auto i : pick) {
          std::vector<std::string> nodes;
          for (std::size_t v = 0; v < n; ++v)
            if (contains(masks[i], static_cast<int>(v))) nodes.emplace_back(1, static_cast<char>('A' + v));
          h.add_edge(nodes);
        }
        out.push_back(std::move(h));
      }
      if (pick.size() == max_edges) return;
      for (std::size_t i = from; i < masks.size(); ++i) {
        pick.push_back(i);
        go(i + 1, cover | masks[i]);
        pick.pop_back();
      }
    };
    go(0, 0);
  }
  return out;
}

}  // namespace kanno
