#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kanno/error.hpp"
#include "kanno/krelation.hpp"

namespace kanno {

/// R[X ∩ Y] = S[X ∩ Y]. With no shared attributes this compares totals.
bool inner_consistent(const KRelation& r, const KRelation& s);

/// A witness T over X ∪ Y with T[X] = R and T[Y] = S, assembled from one
/// transport instance per shared-attribute block.
SearchResult<KRelation> consistent(const KRelation& r, const KRelation& s, std::size_t budget = kDefaultBudget);

/// T[attrs(R)] = R for every R in rs.
bool is_witness(const KRelation& t, std::span<const KRelation> rs);

/// A total function that returns a witness whenever its inputs are consistent.
class WitnessFunction {
 public:
  using Fn = std::function<KRelation(const KRelation&, const KRelation&)>;

  WitnessFunction(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  KRelation operator()(const KRelation& r, const KRelation& s) const { return fn_(r, s); }

 private:
  std::string name_;
  Fn fn_;
};

/// Block-assembled witness via the closed-form transport solvers; the empty
/// relation over X ∪ Y on inconsistent input. Throws UnsupportedMonoid for
/// monoids without a closed form.
WitnessFunction generic_witness(const Monoid& monoid);

/// Natural join of the supports. Boolean relations only.
WitnessFunction standard_join();

/// Like generic_witness but solves each block by exhaustive search, so it
/// works for every monoid. Throws BudgetExhausted when a block is undecided.
WitnessFunction search_witness(const Monoid& monoid, std::size_t budget = kDefaultBudget);

/// Every pair consistent. `undecided` if some pair ran out of budget and no
/// pair was found inconsistent.
Verdict pairwise_consistent(std::span<const KRelation> rs, std::size_t budget = kDefaultBudget);

struct GlobalOptions {
  std::size_t budget = kDefaultBudget;
  /// Pairwise pre-check plus the boolean join-of-supports and acyclic/TP
  /// expression shortcuts. Off gives plain exhaustive search, used as an
  /// oracle in tests.
  bool fast_paths = true;
};

/// A global witness over the union of all attributes, or absent.
SearchResult<KRelation> globally_consistent(std::span<const KRelation> rs, const GlobalOptions& options = {});

/// Throws MonoidMismatch unless all relations share one monoid.
void require_same_monoid(std::span<const KRelation> rs);

}  // namespace kanno
