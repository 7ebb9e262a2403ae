#include "kanno/schema.hpp"

#include "kanno/error.hpp"

namespace kanno {

AttributeSet Schema::attrs_of(NodeSet nodes) const { return attrs.select(graph.node_names(nodes)); }

Schema make_schema(Hypergraph graph, const std::map<std::string, std::vector<std::string>>& domains) {
  std::vector<Attribute> attrs;
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    const auto& name = graph.node_name(static_cast<int>(i));
    auto it = domains.find(name);
    attrs.push_back({name, it == domains.end() ? std::vector<std::string>{"0", "1"} : it->second});
  }
  for (const auto& [name, dom] : domains)
    if (!graph.node_index(name)) throw AttributeError("domain given for unknown attribute " + name);
  return Schema{std::move(graph), AttributeSet(std::move(attrs)), ""};
}

Hypergraph path_hypergraph(int n) {
  if (n < 1) throw Error("path hypergraph needs n >= 1");
  Hypergraph h;
  for (int i = 1; i <= n; ++i)
    h.add_edge({"A" + std::to_string(i), "A" + std::to_string(i + 1)}, "X" + std::to_string(i));
  return h;
}

namespace {

std::optional<Schema> builtin_graph(std::string_view alias) {
  if (alias == "triangle")
    return make_schema(Hypergraph::from_edges({{"A", "B"}, {"B", "C"}, {"C", "A"}}, {"X1", "X2", "X3"}));
  if (alias == "4cycle")
    return make_schema(
        Hypergraph::from_edges({{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "A"}}, {"X1", "X2", "X3", "X4"}));
  if (alias.size() == 2 && alias[0] == 'p' && alias[1] >= '2' && alias[1] <= '5')
    return make_schema(path_hypergraph(alias[1] - '0'));
  if (alias == "hstar") return make_schema(Hypergraph::from_edges({{"A", "B", "C"}, {"A", "B"}, {"A", "C"}}));
  if (alias == "bfmy-acyclic")
    return make_schema(
        Hypergraph::from_edges({{"A", "B", "C"}, {"C", "D", "E"}, {"E", "F", "A"}, {"A", "C", "E"}}));
  return std::nullopt;
}

}  // namespace

std::optional<Schema> builtin_schema(std::string_view alias) {
  auto s = builtin_graph(alias);
  if (s) s->name = std::string(alias);
  return s;
}

std::vector<std::string> builtin_schema_names() {
  return {"triangle", "4cycle", "p2", "p3", "p4", "p5", "hstar", "bfmy-acyclic"};
}

}  // namespace kanno
