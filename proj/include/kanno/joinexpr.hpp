#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kanno/consistency.hpp"
#include "kanno/hypergraph.hpp"

namespace kanno {

/// A c-join expression. Leaves are hyperedge indices, so repeated node sets
/// stay distinguishable. Immutable; copies share structure.
class JoinExpr {
 public:
  static JoinExpr leaf(std::size_t edge);
  static JoinExpr join(JoinExpr left, JoinExpr right);

  bool is_leaf() const { return node_->left == nullptr; }
  std::size_t edge() const { return node_->edge; }
  JoinExpr left() const { return JoinExpr(node_->left); }
  JoinExpr right() const { return JoinExpr(node_->right); }

  /// Leaf edges, left to right.
  std::vector<std::size_t> leaves() const;

  friend bool operator==(const JoinExpr& a, const JoinExpr& b);

 private:
  struct Node {
    std::size_t edge = 0;
    std::shared_ptr<const Node> left, right;
  };
  explicit JoinExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// expr := name | "{" node ("," node)* "}" | "(" expr "*" expr ")"
/// Throws ParseError with line and column.
JoinExpr parse_join_expr(std::string_view text, const Hypergraph& h);
/// "((X1 * X2) * X3)"; unnamed edges print as set literals.
std::string format(const JoinExpr& e, const Hypergraph& h);

/// Left-deep with a leaf as every right child.
bool is_sequential(const JoinExpr& e);
NodeSet expr_nodes(const JoinExpr& e, const Hypergraph& h);
/// The two children of every internal node share a node.
bool is_connected(const JoinExpr& e, const Hypergraph& h);

/// Leaves take rs[edge]; internal nodes apply w. rs[i] must be over edge i.
/// Throws ContractViolation if w returns the wrong attribute set.
KRelation evaluate(const JoinExpr& e, const Hypergraph& h, const WitnessFunction& w, std::span<const KRelation> rs);

struct NodeCheck {
  std::string expr;  // formatted subexpression
  Verdict consistent = Verdict::yes;
};

struct MonotonicityResult {
  Verdict monotone = Verdict::yes;
  /// First inconsistent internal node in post-order.
  std::optional<JoinExpr> failing;
  /// One entry per internal node visited, post-order.
  std::vector<NodeCheck> trace;
};

/// Checks that the children of every internal node evaluate to consistent
/// relations. Stops at the first failure. Throws ContractViolation if w
/// returns a non-witness on consistent input.
MonotonicityResult check_monotone(const JoinExpr& e, const Hypergraph& h, const WitnessFunction& w,
                                  std::span<const KRelation> rs, std::size_t budget = kDefaultBudget);

/// Connected sequential expressions with 1..max_len leaves; edges may repeat.
/// Ordered by length, then lexicographically by leaf sequence.
std::vector<JoinExpr> enumerate_connected_sequential(const Hypergraph& h, std::size_t max_len);

/// ((Y1 * Y2) * ...) * Yt
JoinExpr sequential_expr(const std::vector<std::size_t>& edges);

}  // namespace kanno
