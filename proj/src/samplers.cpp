#include "kanno/samplers.hpp"

#include <algorithm>

#include "kanno/consistency.hpp"

namespace kanno {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

template <class T>
const T& pick(const std::vector<T>& xs, Rng& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

}  // namespace

MonoidValue random_nonzero(const Monoid& monoid, Rng& rng) {
  switch (monoid.kind()) {
    case MonoidKind::boolean:
      return MonoidValue(1);
    case MonoidKind::bag:
      return MonoidValue(std::uniform_int_distribution<std::int64_t>(1, 3)(rng));
    case MonoidKind::numerical_semigroup: {
      std::vector<MonoidValue> small;
      for (std::int64_t x = 1; small.size() < 4; ++x)
        if (monoid.is_element(MonoidValue(x))) small.emplace_back(x);
      return pick(small, rng);
    }
    case MonoidKind::tropical_min: {
      static const std::vector<std::string> vals{"0", "0.5", "1", "2", "3.5"};
      return monoid.parse_element(pick(vals, rng));
    }
    case MonoidKind::max_unit_interval: {
      static const std::vector<std::string> vals{"0.25", "0.5", "0.75", "1"};
      return monoid.parse_element(pick(vals, rng));
    }
    case MonoidKind::powerset: {
      const auto n = monoid.ground_set().size();
      if (n == 0) throw ElementError("powerset over an empty ground set has no nonzero element");
      return MonoidValue(std::uniform_int_distribution<std::int64_t>(1, (std::int64_t{1} << n) - 1)(rng));
    }
  }
  return monoid.zero();
}

KRelation random_relation(const AttributeSet& attrs, const Monoid& monoid, Rng& rng, double density) {
  KRelation r(attrs, monoid);
  std::bernoulli_distribution keep(density);
  for (const auto& t : all_tuples(attrs))
    if (keep(rng)) r.set(t, random_nonzero(monoid, rng));
  return r;
}

std::vector<KRelation> edge_marginals(const Schema& schema, const KRelation& t) {
  std::vector<KRelation> out;
  for (std::size_t i = 0; i < schema.graph.edge_count(); ++i) out.push_back(marginal(t, schema.edge_attrs(i)));
  return out;
}

namespace {

KRelation random_sparse(const AttributeSet& attrs, const Monoid& monoid, Rng& rng, std::size_t size) {
  KRelation t(attrs, monoid);
  const auto tuples = all_tuples(attrs);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(size, 1))(rng);
  for (std::size_t k = 0; k < n; ++k) t.accumulate(pick(tuples, rng), random_nonzero(monoid, rng));
  return t;
}

// Bag marginals of a random bag T, kept only if every weight is in K.
std::optional<std::vector<KRelation>> lifted_proposal(const Schema& schema, const Monoid& monoid, Rng& rng) {
  const auto t = random_sparse(schema.attrs, Monoid::bag(), rng, 6);
  std::vector<KRelation> out;
  for (const auto& r : edge_marginals(schema, t)) {
    KRelation k(r.attrs(), monoid);
    for (const auto& [tuple, w] : r.support()) {
      if (!monoid.is_element(w)) return std::nullopt;
      k.set(tuple, w);
    }
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace

std::vector<KRelation> sample_globally_consistent(const Schema& schema, const Monoid& monoid, std::uint64_t seed,
                                                  std::size_t size) {
  Rng rng(seed);
  return edge_marginals(schema, random_sparse(schema.attrs, monoid, rng, size));
}

std::optional<std::vector<KRelation>> sample_pairwise_consistent(const Schema& schema, const Monoid& monoid,
                                                                 std::uint64_t seed, std::size_t attempts,
                                                                 std::size_t budget) {
  Rng rng(seed);
  const bool lifted = monoid.kind() == MonoidKind::numerical_semigroup && monoid.generators().front() != 1;
  std::uniform_int_distribution<int> kind(0, 2);
  for (std::size_t k = 0; k < attempts; ++k) {
    std::optional<std::vector<KRelation>> proposal;
    switch (kind(rng)) {
      case 0:
        proposal = edge_marginals(schema, random_sparse(schema.attrs, monoid, rng, 4));
        break;
      case 1: {
        std::vector<KRelation> rs;
        for (std::size_t i = 0; i < schema.graph.edge_count(); ++i)
          rs.push_back(random_relation(schema.edge_attrs(i), monoid, rng, 0.35));
        proposal = std::move(rs);
        break;
      }
      default:
        if (lifted)
          proposal = lifted_proposal(schema, monoid, rng);
        else
          proposal = edge_marginals(schema, random_sparse(schema.attrs, monoid, rng, 6));
        break;
    }
    if (!proposal) continue;
    if (std::any_of(proposal->begin(), proposal->end(), [](const KRelation& r) { return r.empty(); })) continue;
    if (pairwise_consistent(*proposal, budget) == Verdict::yes) return proposal;
  }
  return std::nullopt;
}

std::vector<KRelation> with_monoid(const std::vector<KRelation>& rs, const Monoid& monoid) {
  std::vector<KRelation> out;
  for (const auto& r : rs) {
    KRelation k(r.attrs(), monoid);
    for (const auto& [t, w] : r.support()) k.set(t, monoid.parse_element(r.monoid().format(w)));
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace kanno
