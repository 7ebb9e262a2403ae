#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kanno/consistency.hpp"
#include "kanno/joinexpr.hpp"
#include "kanno/parallel.hpp"
#include "kanno/report.hpp"
#include "kanno/schema.hpp"
#include "kanno/transport.hpp"

namespace kanno {

/// A schema with one relation per edge (relations[i] is over edge i).
struct Instance {
  Schema schema;
  std::vector<KRelation> relations;
};

/// Boolean triangle: R1 = R3 = {(0,0),(1,1)}, R2 = {(0,1),(1,0)}.
Instance triangle_counterexample();

/// n-cycle {A1,A2},...,{An,A1}: equality on every edge but the last, which
/// carries inequality. Every tuple weighs `a` (a nonzero element of the
/// monoid). Pairwise consistent, not globally consistent, for every
/// positive monoid.
Instance cycle_parity_counterexample(int n, const Monoid& monoid = Monoid::boolean(),
                                     std::optional<MonoidValue> a = std::nullopt);

/// P3 relations that are pairwise but not globally consistent whenever
/// `infeasible` has no transport solution under `monoid`. With row sums b
/// (length m) and column sums c (length n), S their common total and
/// k = max(m, n):
///   R1(A1,A2) = {(a_i,b1) -> b_i} + {(a_j,b2) -> c_j}
///   R2(A2,A3) = {(b1,c1) -> S, (b2,c2) -> S}
///   R3(A3,A4) = {(c1,d_j) -> c_j} + {(c2,d_i) -> b_i}
/// Any witness restricted to (b1,c1) would solve `infeasible`.
Instance p3_counterexample(const Monoid& monoid, const TransportInstance& infeasible);
/// p3_counterexample over nsg(3,5) with b = (5,5,5), c = (3,3,9).
Instance nsg_p3_counterexample();

/// Edges Y1, Y2, Y3 and nodes A, B, C with Y1 ∩ ABC = AB, Y2 ∩ ABC = AC and
/// ABC ⊆ Y3.
struct GammaRoles {
  std::size_t y1 = 0, y2 = 0, y3 = 0;
  int a = -1, b = -1, c = -1;
};
std::optional<GammaRoles> find_gamma_roles(const Hypergraph& h);

struct Adversary {
  Instance instance;  // relations for Y1, Y2, Y3; other edges empty
  GammaRoles roles;
  KRelation s1, s2;   // the two witnesses of (R1, R2)
  KRelation w12;      // W(R1, R2)
  int subcase = 0;    // 1: W(R1,R2)[ABC] = S1[ABC], so R3 takes S2's shape; 2 otherwise
  JoinExpr expr;      // ((Y1 * Y2) * Y3)

  const KRelation& r1() const { return instance.relations[roles.y1]; }
  const KRelation& r2() const { return instance.relations[roles.y2]; }
  const KRelation& r3() const { return instance.relations[roles.y3]; }
};

/// Relations defeating `w` on ((Y1 * Y2) * Y3). The first two values of each
/// domain play f and t; other attributes are padded with f.
Adversary gamma_adversarial(const WitnessFunction& w, const Schema& schema, const GammaRoles& roles,
                            const Monoid& monoid, MonoidValue a);
/// H* = {A,B,C}, {A,B}, {A,C} with domains {f,t}.
Schema hstar_ft_schema();
Adversary hstar_adversarial(const WitnessFunction& w, const Monoid& monoid, MonoidValue a);

struct AdversaryCheck {
  Verdict pairwise = Verdict::no;
  bool s1_witness = false;
  bool s2_witness = false;
  bool s_distinct = false;
  SearchStatus w12_vs_r3 = SearchStatus::found;  // absent is the goal
  bool ok() const {
    return pairwise == Verdict::yes && s1_witness && s2_witness && s_distinct && w12_vs_r3 == SearchStatus::absent;
  }
};
/// Re-derives every claim about the adversary through marginals and
/// transport search rather than trusting the construction.
AdversaryCheck verify_adversary(const Adversary& adv, std::size_t budget = kDefaultBudget);

/// A nonzero element used for constructions.
MonoidValue unit_element(const Monoid& monoid);

/// Known pairwise-but-not-globally-consistent relations for this hypergraph
/// and monoid: cycle parity on simple cycles of binary edges, and the P3
/// construction for monoids whose TP probe finds an infeasible instance.
std::optional<Instance> known_local_global_counterexample(const Schema& schema, const Monoid& monoid,
                                                          std::size_t budget = kDefaultBudget);

/// Every hypergraph on nodes A, B, ... (at most max_nodes) whose edge set
/// is a set of 1..max_edges distinct non-empty node sets covering all nodes.
std::vector<Hypergraph> enumerate_hypergraphs(std::size_t max_nodes, std::size_t max_edges);

struct SuiteOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t budget = 200'000;
  std::size_t max_len = 3;
  std::size_t attempts = 200;  // sampler rejections per trial
  Execution exec = Execution::parallel;
};

VerificationReport verify_structural_equivalences(std::size_t max_nodes, std::size_t max_edges,
                                                  Execution exec = Execution::parallel);
VerificationReport verify_local_to_global(const Schema& schema, const Monoid& monoid, const SuiteOptions& options);
VerificationReport verify_gamma_monotonicity(const Schema& schema, const Monoid& monoid, const SuiteOptions& options);
/// TP probe, local-to-global on P3 and gamma-monotone on P3 must agree.
VerificationReport verify_tp_characterization(const Monoid& monoid, const SuiteOptions& options);

}  // namespace kanno
