#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kanno/krelation.hpp"
#include "kanno/schema.hpp"

namespace kanno {

enum class DocFormat { text, json };

/// Text grammar, one declaration per line, `#` starts a comment:
///
///   attr NAME v1 v2 ...          attribute with its domain (default {0,1})
///   edge NAME N1 N2 ...          named hyperedge
///   edge {N1,N2,...}             unnamed hyperedge
///   monoid SPEC                  boolean | bag | nsg(3,5) | tmin | vmax | pset(a,b)
///   relation EDGE                EDGE is a name or a {N1,N2} literal
///   row N1=v1 N2=v2 : WEIGHT     one support tuple of the current relation
///
/// The JSON form carries the same content:
///   {"attributes":[{"name":..,"domain":[..]}], "edges":[{"name":..,"nodes":[..]}],
///    "monoid":"..", "relations":[{"edge":"..","rows":[{"tuple":{..},"weight":".."}]}]}
struct Document {
  std::optional<Schema> schema;  // present if the document declares attrs or edges
  std::optional<Monoid> monoid;
  std::vector<std::pair<std::size_t, KRelation>> relations;  // edge index, relation
};

/// `base` supplies the schema for documents that only carry relations.
/// Throws ParseError (line:column) on malformed input.
Document parse_document(std::string_view text, DocFormat format = DocFormat::text, const Schema* base = nullptr);

/// Schema-only document.
std::string format_schema(const Schema& schema);
/// Relations by edge index (empty relations are skipped), preceded by the
/// schema when `with_schema` is set.
std::string format_relations(const Schema& schema, std::span<const KRelation> rs, bool with_schema = true);

std::string format_schema_json(const Schema& schema);
std::string format_relations_json(const Schema& schema, std::span<const KRelation> rs, bool with_schema = true);

}  // namespace kanno
