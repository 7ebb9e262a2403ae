#include <gtest/gtest.h>

#include "kanno/transport.hpp"
#include "support.hpp"

using namespace kanno;

namespace {

std::vector<MonoidValue> vals(std::initializer_list<std::int64_t> xs) {
  std::vector<MonoidValue> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

// Textbook northwest corner on plain integers.
std::vector<std::vector<std::int64_t>> northwest(std::vector<std::int64_t> b, std::vector<std::int64_t> c) {
  std::vector<std::vector<std::int64_t>> d(b.size(), std::vector<std::int64_t>(c.size(), 0));
  std::size_t i = 0, j = 0;
  while (i < b.size() && j < c.size()) {
    const auto q = std::min(b[i], c[j]);
    d[i][j] = q;
    b[i] -= q;
    c[j] -= q;
    if (b[i] == 0)
      ++i;
    else
      ++j;
  }
  return d;
}

// Random instance with equal totals: split a random matrix into its sums.
TransportInstance random_instance(const Monoid& m, std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  TransportInstance inst{std::vector<MonoidValue>(rows, m.zero()), std::vector<MonoidValue>(cols, m.zero())};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const auto x = std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? m.zero() : test::draw(m, rng);
      inst.rows[i] = m.add(inst.rows[i], x);
      inst.cols[j] = m.add(inst.cols[j], x);
    }
  return inst;
}

TEST(Transport, NorthwestCornerMatchesTextbook) {
  std::mt19937_64 rng(11);
  const auto bag = Monoid::bag();
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = static_cast<std::size_t>(1 + rng() % 6), n = static_cast<std::size_t>(1 + rng() % 6);
    const auto inst = random_instance(bag, rng, m, n);
    const auto d = solve_closed_form(bag, inst);
    ASSERT_TRUE(d.has_value());
    std::vector<std::int64_t> b, c;
    for (auto x : inst.rows) b.push_back(x.raw());
    for (auto x : inst.cols) c.push_back(x.raw());
    const auto want = northwest(b, c);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(d->at(i, j).raw(), want[i][j]);
  }
}

TEST(Transport, ClosedFormsSatisfyEquations) {
  std::mt19937_64 rng(23);
  for (const auto& k : builtin_monoids()) {
    if (!k.has_closed_form_transport()) continue;
    for (int trial = 0; trial < 400; ++trial) {
      const auto m = static_cast<std::size_t>(1 + rng() % 6), n = static_cast<std::size_t>(1 + rng() % 6);
      const auto inst = random_instance(k, rng, m, n);
      const auto d = solve_closed_form(k, inst);
      ASSERT_TRUE(d.has_value()) << k.name();
      ASSERT_TRUE(satisfies(k, inst, *d)) << k.name();
    }
  }
}

TEST(Transport, UnequalTotalsHaveNoSolution) {
  const auto bag = Monoid::bag();
  const TransportInstance inst{vals({2, 3}), vals({4})};
  EXPECT_FALSE(solve_closed_form(bag, inst).has_value());
  EXPECT_TRUE(solve_exhaustive(bag, inst).absent());
  EXPECT_TRUE(solve_transport(bag, inst).absent());
}

TEST(Transport, ClosedFormRejectsNumericalSemigroup) {
  EXPECT_THROW(solve_closed_form(Monoid::numerical_semigroup({3, 5}), TransportInstance{vals({3}), vals({3})}),
               UnsupportedMonoid);
}

TEST(Transport, ThreeFiveCounterexampleIsInfeasible) {
  const auto k = Monoid::numerical_semigroup({3, 5});
  const TransportInstance inst{vals({5, 5, 5}), vals({3, 3, 9})};
  const auto r = solve_transport(k, inst);
  EXPECT_TRUE(r.absent());
  // same sums as a bag instance are solvable
  EXPECT_TRUE(solve_transport(Monoid::bag(), inst).found());
  // and the transpose is infeasible too
  EXPECT_TRUE(solve_transport(k, TransportInstance{inst.cols, inst.rows}).absent());
}

TEST(Transport, ExhaustiveAgreesWithClosedFormOnFeasibility) {
  std::mt19937_64 rng(31);
  for (const auto& k : builtin_monoids()) {
    if (!k.has_closed_form_transport()) continue;
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = static_cast<std::size_t>(1 + rng() % 3), n = static_cast<std::size_t>(1 + rng() % 3);
      auto inst = random_instance(k, rng, m, n);
      if (k.kind() == MonoidKind::bag)
        for (auto* side : {&inst.rows, &inst.cols})
          for (auto& x : *side) x = MonoidValue(x.raw() % 13);
      const bool closed = solve_closed_form(k, inst).has_value();
      const auto ex = solve_exhaustive(k, inst, 5'000'000);
      ASSERT_FALSE(ex.undecided()) << k.name();
      ASSERT_EQ(closed, ex.found()) << k.name();
      if (ex.found()) ASSERT_TRUE(satisfies(k, inst, *ex.value));
    }
  }
}

TEST(Transport, ExhaustiveReportsUndecidedOnTinyBudget) {
  // any solution fills six cells, one search node each
  const TransportInstance inst{vals({2, 2, 2}), vals({3, 3})};
  EXPECT_TRUE(solve_exhaustive(Monoid::bag(), inst, 3).undecided());
  EXPECT_TRUE(solve_exhaustive(Monoid::bag(), inst, 100).found());
}

TEST(Transport, ProbeFindsThreeFiveCounterexample) {
  const auto k = Monoid::numerical_semigroup({3, 5});
  const auto pool = default_probe_pool(k);
  const auto r = probe_transportation_property(k, 3, 3, pool);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.undecided, 0U);
  EXPECT_TRUE(solve_exhaustive(k, *r.counterexample).absent());
  EXPECT_EQ(k.sum(r.counterexample->rows), k.sum(r.counterexample->cols));
}

TEST(Transport, ProbeFindsNothingForTpMonoids) {
  for (const auto& k : builtin_monoids()) {
    if (!k.has_closed_form_transport()) continue;
    const auto pool = default_probe_pool(k);
    const auto r = probe_transportation_property(k, 2, 3, pool);
    EXPECT_FALSE(r.counterexample.has_value()) << k.name();
    EXPECT_EQ(r.undecided, 0U);
    EXPECT_GT(r.instances, 0U);
  }
}

TEST(Transport, ProbeSerialMatchesParallel) {
  for (const auto& k : {Monoid::numerical_semigroup({3, 5}), Monoid::numerical_semigroup({2, 3}), Monoid::bag()}) {
    const auto pool = default_probe_pool(k);
    const auto a = probe_transportation_property(k, 3, 3, pool, kDefaultBudget, Execution::serial);
    const auto b = probe_transportation_property(k, 3, 3, pool, kDefaultBudget, Execution::parallel);
    EXPECT_EQ(a.counterexample, b.counterexample) << k.name();
    EXPECT_EQ(a.instances, b.instances);
  }
}

}  // namespace
