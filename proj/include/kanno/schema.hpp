#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kanno/hypergraph.hpp"
#include "kanno/krelation.hpp"

namespace kanno {

/// A hypergraph whose nodes are attributes with finite domains.
struct Schema {
  Hypergraph graph;
  AttributeSet attrs;
  std::string name;  // alias or file name, for reports

  AttributeSet attrs_of(NodeSet nodes) const;
  AttributeSet edge_attrs(std::size_t i) const { return attrs_of(graph.edge(i).nodes); }
};

/// Attributes without an entry in `domains` get {0,1}.
Schema make_schema(Hypergraph graph, const std::map<std::string, std::vector<std::string>>& domains = {});

/// triangle, 4cycle, p2..p5, hstar, bfmy-acyclic
std::optional<Schema> builtin_schema(std::string_view alias);
std::vector<std::string> builtin_schema_names();

/// P_n: edges X1..Xn = {A1,A2}, ..., {An,An+1}.
Hypergraph path_hypergraph(int n);

}  // namespace kanno
