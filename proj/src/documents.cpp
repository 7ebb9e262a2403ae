#include "kanno/documents.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "kanno/error.hpp"
#include "text_util.hpp"

namespace kanno {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::vector<std::string> set_literal(std::string_view tok) {
  if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}') return {};
  std::vector<std::string> out;
  for (auto part : split(tok.substr(1, tok.size() - 2), ',')) out.emplace_back(trim(part));
  return out;
}

// Collects declarations, then builds the schema and relations in order.
class Builder {
 public:
  explicit Builder(const Schema* base) : base_(base) {}

  void attr(const std::string& name, std::vector<std::string> domain, std::size_t line, std::size_t col) {
    if (relations_started_) throw ParseError("attr after the first relation", line, col);
    if (base_) throw ParseError("schema declarations are not allowed here; the schema is given separately", line, col);
    if (domain.empty()) throw ParseError("attribute " + name + " needs at least one value", line, col);
    if (domains_.count(name)) throw ParseError("duplicate attribute " + name, line, col);
    std::set<std::string> uniq(domain.begin(), domain.end());
    if (uniq.size() != domain.size()) throw ParseError("attribute " + name + " repeats a value", line, col);
    order_.push_back(name);
    domains_[name] = std::move(domain);
  }

  void edge(const std::string& name, const std::vector<std::string>& nodes, std::size_t line, std::size_t col) {
    if (relations_started_) throw ParseError("edge after the first relation", line, col);
    if (base_) throw ParseError("schema declarations are not allowed here; the schema is given separately", line, col);
    if (nodes.empty()) throw ParseError("edge needs at least one node", line, col);
    std::set<std::string> uniq(nodes.begin(), nodes.end());
    if (uniq.size() != nodes.size()) throw ParseError("edge repeats a node", line, col);
    for (const auto& e : edges_)
      if (!name.empty() && e.first == name) throw ParseError("duplicate edge name " + name, line, col);
    edges_.push_back({name, nodes});
  }

  void monoid(std::string_view spec, std::size_t line, std::size_t col) {
    if (monoid_) throw ParseError("monoid declared twice", line, col);
    try {
      monoid_ = Monoid::parse(spec);
    } catch (const Error& e) {
      throw ParseError(e.what(), line, col);
    }
  }

  void relation(std::string_view ref, std::size_t line, std::size_t col) {
    const auto& s = schema(line, col);
    if (!monoid_) throw ParseError("relation before monoid", line, col);
    std::optional<std::size_t> idx;
    if (auto lit = set_literal(ref); !lit.empty()) {
      NodeSet set = 0;
      for (const auto& n : lit) {
        auto i = s.graph.node_index(n);
        if (!i) throw ParseError("unknown node " + n, line, col);
        set |= singleton(*i);
      }
      idx = s.graph.edge_by_nodes(set);
    } else {
      idx = s.graph.edge_by_name(ref);
    }
    if (!idx) throw ParseError("unknown edge " + std::string(ref), line, col);
    for (const auto& [e, r] : relations_)
      if (e == *idx) throw ParseError("second relation for edge " + s.graph.edge_label(*idx), line, col);
    relations_.emplace_back(*idx, KRelation(s.edge_attrs(*idx), *monoid_));
  }

  // `col` locates the row, `wcol` its weight
  void row(const std::map<std::string, std::string>& values, std::string_view weight, std::size_t line,
           std::size_t col, std::size_t wcol) {
    if (relations_.empty()) throw ParseError("row before any relation", line, col);
    auto& r = relations_.back().second;
    std::vector<std::string> ordered;
    for (const auto& a : r.attrs()) {
      auto it = values.find(a.name);
      if (it == values.end()) throw ParseError("row is missing attribute " + a.name, line, col);
      ordered.push_back(it->second);
    }
    if (values.size() != r.attrs().size()) throw ParseError("row assigns an attribute outside the edge", line, col);
    KTuple t;
    try {
      t = r.tuple(ordered);
    } catch (const Error& e) {
      throw ParseError(e.what(), line, col);
    }
    if (r.support().count(t)) throw ParseError("duplicate tuple " + r.format_tuple(t), line, col);
    MonoidValue w;
    try {
      w = r.monoid().parse_element(weight);
    } catch (const Error& e) {
      throw ParseError(e.what(), line, wcol);
    }
    if (r.monoid().is_zero(w)) throw ParseError("zero weight; leave the tuple out instead", line, wcol);
    r.set(t, w);
  }

  Document finish() {
    Document doc;
    if (built_ && !base_) doc.schema = *built_;
    if (!built_ && !base_ && (!order_.empty() || !edges_.empty())) doc.schema = build();
    doc.monoid = monoid_;
    doc.relations = std::move(relations_);
    return doc;
  }

 private:
  const Schema& schema(std::size_t line, std::size_t col) {
    relations_started_ = true;
    if (base_) return *base_;
    if (!built_) {
      if (edges_.empty()) throw ParseError("relation without a schema", line, col);
      built_ = build();
    }
    return *built_;
  }

  Schema build() {
    Hypergraph h;
    for (const auto& n : order_) h.add_node(n);
    for (const auto& [name, nodes] : edges_) h.add_edge(nodes, name);
    return make_schema(std::move(h), domains_);
  }

  const Schema* base_;
  std::vector<std::string> order_;
  std::map<std::string, std::vector<std::string>> domains_;
  std::vector<std::pair<std::string, std::vector<std::string>>> edges_;
  std::optional<Monoid> monoid_;
  std::optional<Schema> built_;
  std::vector<std::pair<std::size_t, KRelation>> relations_;
  bool relations_started_ = false;
};

Document parse_text(std::string_view text, const Schema* base) {
  Builder b(base);
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw.substr(0, raw.find('#'));
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const auto kw = toks[0].text;
    const auto col = toks[0].column;
    auto need = [&](std::size_t n) {
      if (toks.size() < n) throw ParseError("'" + std::string(kw) + "' needs more arguments", line_no, col);
    };
    try {
      if (kw == "attr") {
        need(3);
        std::vector<std::string> dom;
        for (std::size_t i = 2; i < toks.size(); ++i) dom.emplace_back(toks[i].text);
        b.attr(std::string(toks[1].text), std::move(dom), line_no, toks[1].column);
      } else if (kw == "edge") {
        need(2);
        if (auto lit = set_literal(toks[1].text); !lit.empty()) {
          if (toks.size() != 2) throw ParseError("unexpected text after edge literal", line_no, toks[2].column);
          b.edge("", lit, line_no, toks[1].column);
        } else {
          need(3);
          std::vector<std::string> nodes;
          for (std::size_t i = 2; i < toks.size(); ++i) nodes.emplace_back(toks[i].text);
          b.edge(std::string(toks[1].text), nodes, line_no, toks[1].column);
        }
      } else if (kw == "monoid") {
        need(2);
        b.monoid(trim(line.substr(toks[1].column - 1)), line_no, toks[1].column);
      } else if (kw == "relation") {
        need(2);
        if (toks.size() != 2) throw ParseError("unexpected text after relation edge", line_no, toks[2].column);
        b.relation(toks[1].text, line_no, toks[1].column);
      } else if (kw == "row") {
        std::map<std::string, std::string> values;
        std::size_t i = 1;
        for (; i < toks.size() && toks[i].text != ":"; ++i) {
          const auto eq = toks[i].text.find('=');
          if (eq == std::string_view::npos || eq == 0)
            throw ParseError("expected NAME=VALUE", line_no, toks[i].column);
          std::string name(toks[i].text.substr(0, eq));
          if (values.count(name)) throw ParseError("attribute " + name + " assigned twice", line_no, toks[i].column);
          values[name] = std::string(toks[i].text.substr(eq + 1));
        }
        if (i + 2 != toks.size()) throw ParseError("expected ': WEIGHT' at the end of the row", line_no, col);
        b.row(values, toks[i + 1].text, line_no, col, toks[i + 1].column);
      } else {
        throw ParseError("unknown keyword '" + std::string(kw) + "'", line_no, col);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no, col);
    }
  }
  return b.finish();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string json_scalar(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number() || j.is_boolean()) return j.dump();
  throw Error("expected a string or number, got " + j.dump());
}

Document parse_json(std::string_view text, const Schema* base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, col);
  }
  Builder b(base);
  // JSON input has no useful positions after parsing; report the section.
  auto fail = [](const std::string& where, const std::string& msg) -> ParseError {
    return ParseError(where + ": " + msg, 1, 1);
  };
  try {
    if (!j.is_object()) throw fail("document", "expected an object");
    if (j.contains("attributes")) {
      for (const auto& a : j.at("attributes")) {
        std::vector<std::string> dom;
        for (const auto& v : a.at("domain")) dom.push_back(json_scalar(v));
        b.attr(a.at("name").get<std::string>(), std::move(dom), 1, 1);
      }
    }
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        std::vector<std::string> nodes;
        for (const auto& n : e.at("nodes")) nodes.push_back(n.get<std::string>());
        b.edge(e.value("name", std::string{}), nodes, 1, 1);
      }
    }
    if (j.contains("monoid")) b.monoid(j.at("monoid").get<std::string>(), 1, 1);
    if (j.contains("relations")) {
      for (const auto& r : j.at("relations")) {
        b.relation(r.at("edge").get<std::string>(), 1, 1);
        for (const auto& row : r.at("rows")) {
          std::map<std::string, std::string> values;
          for (const auto& [k, v] : row.at("tuple").items()) values[k] = json_scalar(v);
          b.row(values, json_scalar(row.at("weight")), 1, 1, 1);
        }
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw fail("document", e.what());
  } catch (const Error& e) {
    throw fail("document", e.what());
  }
  return b.finish();
}

std::string edge_ref(const Schema& s, std::size_t i) {
  const auto& e = s.graph.edge(i);
  if (!e.name.empty()) return e.name;
  return "{" + join(e.order, ",", [&](int n) { return s.graph.node_name(n); }) + "}";
}

}  // namespace

Document parse_document(std::string_view text, DocFormat format, const Schema* base) {
  return format == DocFormat::json ? parse_json(text, base) : parse_text(text, base);
}

std::string format_schema(const Schema& s) {
  std::string out;
  for (std::size_t i = 0; i < s.graph.node_count(); ++i) {
    const auto& name = s.graph.node_name(static_cast<int>(i));
    const auto& a = s.attrs[*s.attrs.index_of(name)];
    out += "attr " + name + " " + join(a.domain, " ", [](const std::string& v) { return v; }) + "\n";
  }
  for (std::size_t i = 0; i < s.graph.edge_count(); ++i) {
    const auto& e = s.graph.edge(i);
    if (e.name.empty())
      out += "edge " + edge_ref(s, i) + "\n";
    else
      out += "edge " + e.name + " " + join(e.order, " ", [&](int n) { return s.graph.node_name(n); }) + "\n";
  }
  return out;
}

std::string format_relations(const Schema& s, std::span<const KRelation> rs, bool with_schema) {
  std::string out = with_schema ? format_schema(s) : "";
  bool monoid_written = false;
  for (std::size_t i = 0; i < rs.size() && i < s.graph.edge_count(); ++i) {
    const auto& r = rs[i];
    if (r.empty()) continue;
    if (!monoid_written) {
      out += "monoid " + r.monoid().name() + "\n";
      monoid_written = true;
    }
    out += "relation " + edge_ref(s, i) + "\n";
    for (const auto& [t, w] : r.support()) {
      out += "row";
      const auto vals = r.values(t);
      for (std::size_t k = 0; k < vals.size(); ++k) out += " " + r.attrs()[k].name + "=" + vals[k];
      out += " : " + r.monoid().format(w) + "\n";
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json schema_json(const Schema& s) {
  nlohmann::ordered_json j;
  auto attrs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.graph.node_count(); ++i) {
    const auto& name = s.graph.node_name(static_cast<int>(i));
    attrs.push_back({{"name", name}, {"domain", s.attrs[*s.attrs.index_of(name)].domain}});
  }
  j["attributes"] = attrs;
  auto edges = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.graph.edge_count(); ++i) {
    const auto& e = s.graph.edge(i);
    nlohmann::ordered_json je;
    if (!e.name.empty()) je["name"] = e.name;
    std::vector<std::string> nodes;
    for (int n : e.order) nodes.push_back(s.graph.node_name(n));
    je["nodes"] = nodes;
    edges.push_back(je);
  }
  j["edges"] = edges;
  return j;
}

}  // namespace

std::string format_schema_json(const Schema& s) { return schema_json(s).dump(2) + "\n"; }

std::string format_relations_json(const Schema& s, std::span<const KRelation> rs, bool with_schema) {
  nlohmann::ordered_json j = with_schema ? schema_json(s) : nlohmann::ordered_json::object();
  auto rels = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rs.size() && i < s.graph.edge_count(); ++i) {
    const auto& r = rs[i];
    if (r.empty()) continue;
    if (!j.contains("monoid")) j["monoid"] = r.monoid().name();
    nlohmann::ordered_json jr;
    jr["edge"] = edge_ref(s, i);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& [t, w] : r.support()) {
      nlohmann::ordered_json tuple;
      const auto vals = r.values(t);
      for (std::size_t k = 0; k < vals.size(); ++k) tuple[r.attrs()[k].name] = vals[k];
      rows.push_back({{"tuple", tuple}, {"weight", r.monoid().format(w)}});
    }
    jr["rows"] = rows;
    rels.push_back(jr);
  }
  j["relations"] = rels;
  return j.dump(2) + "\n";
}

}  // namespace kanno
