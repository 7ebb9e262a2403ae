#include <gtest/gtest.h>

#include <map>

#include "kanno/consistency.hpp"
#include "kanno/error.hpp"
#include "support.hpp"

using namespace kanno;

namespace {

// Marginal by attribute names and value symbols, no shared code with the
// library's projection maps.
std::map<std::vector<std::string>, MonoidValue> naive_marginal(const KRelation& r, const std::vector<std::string>& names) {
  std::map<std::vector<std::string>, MonoidValue> out;
  const auto all = r.attrs().names();
  for (const auto& [t, w] : r.support()) {
    const auto vs = r.values(t);
    std::vector<std::string> key;
    for (const auto& n : names) key.push_back(vs[static_cast<std::size_t>(std::find(all.begin(), all.end(), n) - all.begin())]);
    auto it = out.find(key);
    out[key] = it == out.end() ? w : r.monoid().add(it->second, w);
  }
  for (auto it = out.begin(); it != out.end();)
    it = r.monoid().is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

std::map<std::vector<std::string>, MonoidValue> as_map(const KRelation& r) {
  std::map<std::vector<std::string>, MonoidValue> out;
  for (const auto& [t, w] : r.support()) out[r.values(t)] = w;
  return out;
}

struct Universe {
  std::vector<Attribute> attrs;
  AttributeSet subset(std::uint32_t mask) const {
    std::vector<Attribute> out;
    for (std::size_t i = 0; i < attrs.size(); ++i)
      if ((mask >> i) & 1U) out.push_back(attrs[i]);
    return AttributeSet(out);
  }
};

Universe random_universe(std::mt19937_64& rng, std::size_t n = 4) {
  Universe u;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = 1 + rng() % 3;
    std::vector<std::string> dom;
    for (std::size_t v = 0; v < d; ++v) dom.push_back(std::to_string(v));
    u.attrs.push_back({std::string(1, static_cast<char>('A' + i)), dom});
  }
  return u;
}

KRelation random_rel(const AttributeSet& a, const Monoid& m, std::mt19937_64& rng, double density = 0.4) {
  KRelation r(a, m);
  std::bernoulli_distribution coin(density);
  for (const auto& t : all_tuples(a))
    if (coin(rng)) r.set(t, test::draw_nonzero(m, rng));
  return r;
}

TEST(AttributeSet, SortedAndValidated) {
  const auto a = test::attrs({"C", "A", "B"});
  EXPECT_EQ(a.format(), "{A,B,C}");
  EXPECT_THROW(test::attrs({"A", "A"}), AttributeError);
  EXPECT_THROW(AttributeSet(std::vector<Attribute>{{"A", {}}}), AttributeError);
  EXPECT_THROW(AttributeSet({{"A", {"x", "x"}}}), AttributeError);
  EXPECT_THROW(a.unite(test::attrs({"A"}, {"x", "y"})), AttributeError);
  EXPECT_EQ(a.intersect(test::attrs({"B", "D"})).format(), "{B}");
  EXPECT_TRUE(test::attrs({"A"}).is_subset_of(a));
}

TEST(KRelation, ZeroWeightsLeaveTheSupport) {
  const auto m = Monoid::bag();
  auto r = test::rel(test::attrs({"A", "B"}), m, {{{"0", "1"}, "2"}});
  EXPECT_EQ(r.size(), 1U);
  r.set(r.tuple({"0", "1"}), m.zero());
  EXPECT_TRUE(r.empty());
  r.accumulate(r.tuple({"1", "1"}), MonoidValue(3));
  r.accumulate(r.tuple({"1", "1"}), MonoidValue(4));
  EXPECT_EQ(r.weight(r.tuple({"1", "1"})), MonoidValue(7));
  EXPECT_EQ(r.total(), MonoidValue(7));
}

TEST(KRelation, RejectsBadTuplesAndWeights) {
  KRelation r(test::attrs({"A"}), Monoid::numerical_semigroup({3, 5}));
  EXPECT_THROW(r.tuple({"2"}), AttributeError);
  EXPECT_THROW(r.tuple({"0", "1"}), AttributeError);
  EXPECT_THROW(r.set(KTuple{5}, MonoidValue(3)), AttributeError);
  EXPECT_THROW(r.set(KTuple{0}, MonoidValue(4)), ElementError);
}

TEST(KRelation, MarginalOntoNothingIsTheTotal) {
  const auto m = Monoid::bag();
  const auto r = test::rel(test::attrs({"A", "B"}), m, {{{"0", "1"}, "2"}, {{"1", "1"}, "5"}});
  const auto e = marginal(r, AttributeSet{});
  ASSERT_EQ(e.size(), 1U);
  EXPECT_EQ(e.weight(KTuple{}), MonoidValue(7));
  EXPECT_THROW(marginal(r, test::attrs({"C"})), AttributeError);
}

class RelationProperties : public ::testing::TestWithParam<Monoid> {};

TEST_P(RelationProperties, MarginalMatchesNaiveAndComposes) {
  const auto& m = GetParam();
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_universe(rng);
    const std::uint32_t x = 1 + rng() % 15;
    const std::uint32_t y = x & static_cast<std::uint32_t>(rng());
    const std::uint32_t z = y & static_cast<std::uint32_t>(rng());
    const auto r = random_rel(u.subset(x), m, rng);
    const auto ry = marginal(r, u.subset(y));
    ASSERT_EQ(as_map(ry), naive_marginal(r, u.subset(y).names()));
    ASSERT_EQ(marginal(ry, u.subset(z)), marginal(r, u.subset(z)));
  }
}

TEST_P(RelationProperties, SupportCommutesWithMarginal) {
  const auto& m = GetParam();
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_universe(rng);
    const std::uint32_t x = 1 + rng() % 15;
    const std::uint32_t y = x & static_cast<std::uint32_t>(rng());
    const auto r = random_rel(u.subset(x), m, rng);
    ASSERT_EQ(support_relation(marginal(r, u.subset(y))), marginal(support_relation(r), u.subset(y)));
  }
}

TEST_P(RelationProperties, ConsistentReturnsAVerifiedWitness) {
  const auto& m = GetParam();
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 150; ++trial) {
    const auto u = random_universe(rng);
    const std::uint32_t xy = 1 + rng() % 15;
    const std::uint32_t x = xy & static_cast<std::uint32_t>(rng());
    const std::uint32_t y = (xy & ~x) | (xy & static_cast<std::uint32_t>(rng()));
    const auto t = random_rel(u.subset(x | y), m, rng, 0.3);
    const auto r = marginal(t, u.subset(x)), s = marginal(t, u.subset(y));
    const auto res = consistent(r, s);
    ASSERT_TRUE(res.found()) << m.name();
    ASSERT_EQ(as_map(marginal(*res.value, r.attrs())), as_map(r));
    ASSERT_EQ(naive_marginal(*res.value, s.attrs().names()), as_map(s));
  }
}

// Without TP only consistent => inner consistent is guaranteed.
TEST_P(RelationProperties, InnerConsistencyDecidesConsistencyUnderTp) {
  const auto& m = GetParam();
  const bool tp = m.has_closed_form_transport();
  std::mt19937_64 rng(404);
  int agreeing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_universe(rng, 3);
    const std::uint32_t x = 1 + rng() % 7, y = 1 + rng() % 7;
    KRelation r(u.subset(x), m), s(u.subset(y), m);
    if (trial % 2 == 0) {
      const auto t = random_rel(u.subset(x | y), m, rng, 0.3);
      r = marginal(t, r.attrs());
      s = marginal(t, s.attrs());
    } else {
      r = random_rel(r.attrs(), m, rng, 0.3);
      s = random_rel(s.attrs(), m, rng, 0.3);
    }
    const bool inner = inner_consistent(r, s);
    agreeing += inner;
    const auto res = consistent(r, s);
    ASSERT_FALSE(res.undecided()) << m.name();
    if (tp) ASSERT_EQ(inner, res.found()) << m.name();
    else if (res.found()) ASSERT_TRUE(inner) << m.name();
  }
  EXPECT_GT(agreeing, 50);
}

INSTANTIATE_TEST_SUITE_P(Builtin, RelationProperties, ::testing::ValuesIn(builtin_monoids()),
                         [](const auto& info) {
                           std::string n;
                           for (char c : info.param.name())
                             if (std::isalnum(static_cast<unsigned char>(c))) n += c;
                           return n;
                         });

TEST(KRelation, JoinOfSupports) {
  const auto b = Monoid::bag();
  const auto r = test::rel(test::attrs({"A", "B"}), b, {{{"0", "0"}, "2"}, {{"1", "1"}, "1"}});
  const auto s = test::rel(test::attrs({"B", "C"}), b, {{{"0", "1"}, "4"}});
  const auto j = join_supports({r, s});
  EXPECT_EQ(j.attrs().format(), "{A,B,C}");
  EXPECT_EQ(j.monoid(), Monoid::boolean());
  ASSERT_EQ(j.size(), 1U);
  EXPECT_EQ(j.values(j.support().begin()->first), (std::vector<std::string>{"0", "0", "1"}));
}

TEST(KRelation, FormatRelationIsSortedByTuple) {
  const auto b = Monoid::bag();
  const auto r = test::rel(test::attrs({"A"}), b, {{{"1"}, "2"}, {{"0"}, "3"}});
  EXPECT_EQ(format_relation(r), "(0) : 3\n(1) : 2\n");
}

}  // namespace
