#include "kanno/joinexpr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace kanno {

JoinExpr JoinExpr::leaf(std::size_t edge) {
  auto n = std::make_shared<Node>();
  n->edge = edge;
  return JoinExpr(std::move(n));
}

JoinExpr JoinExpr::join(JoinExpr left, JoinExpr right) {
  auto n = std::make_shared<Node>();
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return JoinExpr(std::move(n));
}

std::vector<std::size_t> JoinExpr::leaves() const {
  if (is_leaf()) return {edge()};
  auto out = left().leaves();
  auto r = right().leaves();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

bool operator==(const JoinExpr& a, const JoinExpr& b) {
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf() && a.edge() == b.edge();
  return a.left() == b.left() && a.right() == b.right();
}

JoinExpr sequential_expr(const std::vector<std::size_t>& edges) {
  if (edges.empty()) throw Error("sequential expression needs at least one edge");
  JoinExpr e = JoinExpr::leaf(edges.front());
  for (std::size_t i = 1; i < edges.size(); ++i) e = JoinExpr::join(e, JoinExpr::leaf(edges[i]));
  return e;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Hypergraph& h) : text_(text), h_(h) {}

  JoinExpr parse() {
    auto e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '\'';
  }

  std::string name() {
    const auto start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a hyperedge name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  JoinExpr expr() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (text_[pos_] == '(') {
      ++pos_;
      auto l = expr();
      expect('*');
      auto r = expr();
      expect(')');
      return JoinExpr::join(std::move(l), std::move(r));
    }
    const auto start = pos_;
    if (text_[pos_] == '{') {
      ++pos_;
      std::vector<std::string> nodes;
      skip_ws();
      nodes.push_back(name());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        skip_ws();
        nodes.push_back(name());
        skip_ws();
      }
      expect('}');
      NodeSet set = 0;
      for (const auto& n : nodes) {
        auto i = h_.node_index(n);
        if (!i) {
          pos_ = start;
          fail("unknown node " + n);
        }
        set |= singleton(*i);
      }
      auto e = h_.edge_by_nodes(set);
      if (!e) {
        pos_ = start;
        fail("no hyperedge " + h_.format_nodes(set));
      }
      return JoinExpr::leaf(*e);
    }
    auto n = name();
    auto e = h_.edge_by_name(n);
    if (!e) {
      pos_ = start;
      fail("unknown hyperedge " + n);
    }
    return JoinExpr::leaf(*e);
  }

  std::string_view text_;
  const Hypergraph& h_;
  std::size_t pos_ = 0;
};

}  // namespace

JoinExpr parse_join_expr(std::string_view text, const Hypergraph& h) { return ExprParser(text, h).parse(); }

std::string format(const JoinExpr& e, const Hypergraph& h) {
  if (e.is_leaf()) return h.edge_label(e.edge());
  return "(" + format(e.left(), h) + " * " + format(e.right(), h) + ")";
}

bool is_sequential(const JoinExpr& e) {
  if (e.is_leaf()) return true;
  return e.right().is_leaf() && is_sequential(e.left());
}

NodeSet expr_nodes(const JoinExpr& e, const Hypergraph& h) {
  if (e.is_leaf()) return h.edge(e.edge()).nodes;
  return expr_nodes(e.left(), h) | expr_nodes(e.right(), h);
}

bool is_connected(const JoinExpr& e, const Hypergraph& h) {
  if (e.is_leaf()) return true;
  return (expr_nodes(e.left(), h) & expr_nodes(e.right(), h)) != 0 && is_connected(e.left(), h) &&
         is_connected(e.right(), h);
}

namespace {

void check_inputs(const JoinExpr& e, const Hypergraph& h, std::span<const KRelation> rs) {
  for (auto i : e.leaves()) {
    if (i >= h.edge_count()) throw Error("expression refers to a missing hyperedge");
    if (i >= rs.size()) throw Error("no relation for hyperedge " + h.edge_label(i));
    auto want = h.node_names(h.edge(i).nodes);
    std::sort(want.begin(), want.end());
    if (rs[i].attrs().names() != want)
      throw AttributeError("relation for " + h.edge_label(i) + " is over " + rs[i].attrs().format());
  }
}

KRelation apply(const WitnessFunction& w, const KRelation& l, const KRelation& r, const std::string& where) {
  auto out = w(l, r);
  if (!(out.attrs() == l.attrs().unite(r.attrs())))
    throw ContractViolation("witness function " + w.name() + " returned a relation over " + out.attrs().format() +
                            " at " + where);
  return out;
}

}  // namespace

KRelation evaluate(const JoinExpr& e, const Hypergraph& h, const WitnessFunction& w, std::span<const KRelation> rs) {
  check_inputs(e, h, rs);
  std::function<KRelation(const JoinExpr&)> go = [&](const JoinExpr& x) -> KRelation {
    if (x.is_leaf()) return rs[x.edge()];
    auto l = go(x.left());
    auto r = go(x.right());
    return apply(w, l, r, format(x, h));
  };
  return go(e);
}

MonotonicityResult check_monotone(const JoinExpr& e, const Hypergraph& h, const WitnessFunction& w,
                                  std::span<const KRelation> rs, std::size_t budget) {
  check_inputs(e, h, rs);
  MonotonicityResult res;
  bool stop = false;
  std::function<std::optional<KRelation>(const JoinExpr&)> go = [&](const JoinExpr& x) -> std::optional<KRelation> {
    if (x.is_leaf()) return rs[x.edge()];
    auto l = go(x.left());
    if (stop) return std::nullopt;
    auto r = go(x.right());
    if (stop) return std::nullopt;
    const auto text = format(x, h);
    const auto c = consistent(*l, *r, budget);
    NodeCheck check{text, c.found() ? Verdict::yes : c.absent() ? Verdict::no : Verdict::undecided};
    res.trace.push_back(check);
    if (c.absent()) {
      res.monotone = Verdict::no;
      res.failing = x;
      stop = true;
      return std::nullopt;
    }
    if (c.undecided()) res.monotone = Verdict::undecided;
    auto out = apply(w, *l, *r, text);
    if (c.found()) {
      const KRelation pair[] = {*l, *r};
      if (!is_witness(out, pair))
        throw ContractViolation("witness function " + w.name() + " returned a non-witness at " + text);
    }
    return out;
  };
  go(e);
  return res;
}

std::vector<JoinExpr> enumerate_connected_sequential(const Hypergraph& h, std::size_t max_len) {
  std::vector<JoinExpr> out;
  const auto m = h.edge_count();
  // Breadth by length; each level extends the previous one's sequences.
  std::vector<std::pair<std::vector<std::size_t>, NodeSet>> level;
  for (std::size_t i = 0; i < m; ++i) level.push_back({{i}, h.edge(i).nodes});
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    for (const auto& [seq, nodes] : level) out.push_back(sequential_expr(seq));
    if (len == max_len) break;
    std::vector<std::pair<std::vector<std::size_t>, NodeSet>> next;
    for (const auto& [seq, nodes] : level)
      for (std::size_t i = 0; i < m; ++i) {
        if ((nodes & h.edge(i).nodes) == 0) continue;
        auto s = seq;
        s.push_back(i);
        next.push_back({std::move(s), nodes | h.edge(i).nodes});
      }
    level = std::move(next);
  }
  return out;
}

}  // namespace kanno
