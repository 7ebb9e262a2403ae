#include <gtest/gtest.h>

#include "kanno/documents.hpp"
#include "kanno/samplers.hpp"
#include "kanno/theoremlab.hpp"

using namespace kanno;

namespace {

std::vector<KRelation> relations_of(const Document& d, std::size_t edges, const Monoid& m, const Schema& s) {
  std::vector<KRelation> rs;
  for (std::size_t i = 0; i < edges; ++i) rs.emplace_back(s.edge_attrs(i), m);
  for (const auto& [i, r] : d.relations) rs[i] = r;
  return rs;
}

void expect_parse_error(std::string_view text, std::size_t line, std::size_t col, const Schema* base = nullptr) {
  try {
    parse_document(text, DocFormat::text, base);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), col) << e.what();
  }
}

TEST(Documents, TextRoundTripAcrossMonoids) {
  for (const auto& m : builtin_monoids()) {
    for (const char* alias : {"triangle", "p3", "hstar"}) {
      auto s = *builtin_schema(alias);
      const auto rs = sample_globally_consistent(s, m, 5, 4);
      const auto text = format_relations(s, rs);
      const auto doc = parse_document(text);
      ASSERT_TRUE(doc.schema.has_value());
      EXPECT_EQ(doc.schema->graph.format(), s.graph.format());
      EXPECT_EQ(doc.monoid, m);
      EXPECT_EQ(relations_of(doc, rs.size(), m, *doc.schema), rs) << text;
      // relations only, against a given schema
      const auto bare = parse_document(format_relations(s, rs, false), DocFormat::text, &s);
      EXPECT_FALSE(bare.schema.has_value());
      EXPECT_EQ(relations_of(bare, rs.size(), m, s), rs);
    }
  }
}

TEST(Documents, JsonRoundTrip) {
  for (const auto& m : builtin_monoids()) {
    auto s = *builtin_schema("p3");
    const auto rs = sample_globally_consistent(s, m, 9, 4);
    const auto doc = parse_document(format_relations_json(s, rs), DocFormat::json);
    ASSERT_TRUE(doc.schema.has_value());
    EXPECT_EQ(relations_of(doc, rs.size(), m, *doc.schema), rs);
    const auto schema_only = parse_document(format_schema_json(s), DocFormat::json);
    EXPECT_EQ(schema_only.schema->graph.format(), s.graph.format());
  }
}

TEST(Documents, TextAndJsonAgree) {
  const auto inst = nsg_p3_counterexample();
  const auto a = parse_document(format_relations(inst.schema, inst.relations));
  const auto b = parse_document(format_relations_json(inst.schema, inst.relations), DocFormat::json);
  ASSERT_EQ(a.relations.size(), b.relations.size());
  for (std::size_t i = 0; i < a.relations.size(); ++i) EXPECT_EQ(a.relations[i], b.relations[i]);
  EXPECT_EQ(a.schema->attrs, b.schema->attrs);
}

TEST(Documents, HandWrittenText) {
  const auto doc = parse_document(
      "# comment\n"
      "attr A x y\n"
      "edge R A B   # B defaults to {0,1}\n"
      "edge {B,C}\n"
      "monoid nsg(3, 5)\n"
      "relation R\n"
      "row B=1 A=y : 8\n"
      "relation {C,B}\n"
      "row B=0 C=1 : 3\n");
  ASSERT_TRUE(doc.schema.has_value());
  EXPECT_EQ(doc.monoid->name(), "nsg(3,5)");
  ASSERT_EQ(doc.relations.size(), 2U);
  const auto& r = doc.relations[0].second;
  EXPECT_EQ(r.weight(r.tuple({"y", "1"})), MonoidValue(8));
  EXPECT_EQ(doc.relations[1].first, 1U);
}

TEST(Documents, ErrorsPointAtTheProblem) {
  expect_parse_error("edge R A B\nmonoid bag\nrelation R\nrow A=0 : 1\n", 4, 1);
  expect_parse_error("edge R A B\nmonoid bag\nrelation R\nrow A=0 B=1 C=0 : 1\n", 4, 1);
  expect_parse_error("edge R A B\nmonoid bag\nrelation R\nrow A=0 B=1 : 1\nrow A=0 B=1 : 2\n", 5, 1);
  expect_parse_error("edge R A B\nmonoid bag\nrelation R\nrow A=0 B=1 : 0\n", 4, 15);
  expect_parse_error("edge R A B\nmonoid nsg(3,5)\nrelation R\nrow A=0 B=1 : 7\n", 4, 15);
  expect_parse_error("edge R A B\nmonoid bag\nrelation S\n", 3, 10);
  expect_parse_error("edge R A B\nmonoid bag\nrelation R\nrow A=2 B=1 : 1\n", 4, 1);
  expect_parse_error("edge R A B\nmonoid frob\n", 2, 8);
  expect_parse_error("edge R A B\nrelation R\n", 2, 10);
  expect_parse_error("edge R A B\nmonoid bag\nrelation R\nrow A0 B=1 : 1\n", 4, 5);
  expect_parse_error("edge R A A\n", 1, 6);
  expect_parse_error("frobnicate\n", 1, 1);
  expect_parse_error("  monoid bag\n  monoid bag\n", 2, 10);
  const auto s = *builtin_schema("p2");
  expect_parse_error("attr A1 0 1\n", 1, 6, &s);
}

TEST(Documents, JsonErrors) {
  EXPECT_THROW(parse_document("{\"edges\": [", DocFormat::json), ParseError);
  try {
    parse_document("{\n  \"edges\": [}\n", DocFormat::json);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
  EXPECT_THROW(parse_document(R"({"edges":[{"name":"R","nodes":["A","B"]}],"monoid":"bag",
      "relations":[{"edge":"R","rows":[{"tuple":{"A":"0"},"weight":"1"}]}]})",
                              DocFormat::json),
               ParseError);
  EXPECT_THROW(parse_document("[1,2]", DocFormat::json), ParseError);
}

TEST(Documents, EmptyRelationsAreSkipped) {
  auto s = *builtin_schema("p2");
  std::vector<KRelation> rs{KRelation(s.edge_attrs(0), Monoid::bag()), KRelation(s.edge_attrs(1), Monoid::bag())};
  EXPECT_EQ(format_relations(s, rs, false), "");
  EXPECT_EQ(format_schema(s), "attr A1 0 1\nattr A2 0 1\nattr A3 0 1\nedge X1 A1 A2\nedge X2 A2 A3\n");
}

}  // namespace
