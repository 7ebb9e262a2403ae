#pragma once

// Helpers shared by the unit tests: relation builders and element samplers
// that do not go through the library's own samplers.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kanno/krelation.hpp"
#include "kanno/monoid.hpp"

namespace kanno::test {

using Rows = std::vector<std::pair<std::vector<std::string>, std::string>>;

inline AttributeSet attrs(const std::vector<std::string>& names, std::vector<std::string> domain = {"0", "1"}) {
  std::vector<Attribute> out;
  for (const auto& n : names) out.push_back({n, domain});
  return AttributeSet(std::move(out));
}

/// Rows list values in the (sorted) attribute order.
inline KRelation rel(const AttributeSet& a, const Monoid& m, const Rows& rows) {
  KRelation r(a, m);
  for (const auto& [vals, w] : rows) r.set(r.tuple(vals), m.parse_element(w));
  return r;
}

/// Uniform-ish draw from a monoid, including zero.
inline MonoidValue draw(const Monoid& m, std::mt19937_64& rng) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  switch (m.kind()) {
    case MonoidKind::boolean:
      return MonoidValue(pick(0, 1));
    case MonoidKind::bag:
      return MonoidValue(pick(0, 1000));
    case MonoidKind::numerical_semigroup: {
      std::int64_t x = 0;
      for (auto g : m.generators()) x += g * pick(0, 6);
      return MonoidValue(x);
    }
    case MonoidKind::tropical_min:
      if (pick(0, 9) == 0) return m.zero();
      return MonoidValue(pick(-5'000, 5'000) * (kDecimalScale / 1000));
    case MonoidKind::max_unit_interval:
      return MonoidValue(pick(0, 1000) * (kDecimalScale / 1000));
    case MonoidKind::powerset:
      return MonoidValue(pick(0, (std::int64_t{1} << m.ground_set().size()) - 1));
  }
  return m.zero();
}

inline MonoidValue draw_nonzero(const Monoid& m, std::mt19937_64& rng) {
  while (true) {
    const auto x = draw(m, rng);
    if (!m.is_zero(x)) return x;
  }
}

}  // namespace kanno::test
