#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "kanno/error.hpp"
#include "kanno/krelation.hpp"
#include "kanno/schema.hpp"

namespace kanno {

using Rng = std::mt19937_64;

/// splitmix64 of (seed, index): independent per-trial seeds.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// A small nonzero element; the value range is chosen per monoid so that
/// sums stay in the interesting region.
MonoidValue random_nonzero(const Monoid& monoid, Rng& rng);

/// Random relation where each tuple is present with probability `density`.
KRelation random_relation(const AttributeSet& attrs, const Monoid& monoid, Rng& rng, double density = 0.4);

/// Relations for each schema edge, in edge order.
std::vector<KRelation> edge_marginals(const Schema& schema, const KRelation& t);

/// Marginals of a random T over all schema attributes with at most `size`
/// support tuples. Globally consistent by construction.
std::vector<KRelation> sample_globally_consistent(const Schema& schema, const Monoid& monoid, std::uint64_t seed,
                                                  std::size_t size = 4);

/// Rejection sampling: proposals are drawn until one is pairwise consistent.
/// Proposals alternate between marginals of a random T, independent sparse
/// relations, and (numerical semigroups) bag marginals that happen to land in
/// the semigroup. nullopt after `attempts` rejections.
std::optional<std::vector<KRelation>> sample_pairwise_consistent(const Schema& schema, const Monoid& monoid,
                                                                 std::uint64_t seed, std::size_t attempts = 200,
                                                                 std::size_t budget = kDefaultBudget);

/// Re-reads every weight of `rs` under `monoid` through the text form.
std::vector<KRelation> with_monoid(const std::vector<KRelation>& rs, const Monoid& monoid);

}  // namespace kanno
