#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kanno/monoid.hpp"

namespace kanno {

struct Attribute {
  std::string name;
  std::vector<std::string> domain;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Attributes kept sorted by name. Names are unique and domains non-empty.
class AttributeSet {
 public:
  AttributeSet() = default;
  explicit AttributeSet(std::vector<Attribute> attrs);

  std::size_t size() const { return attrs_.size(); }
  bool empty() const { return attrs_.empty(); }
  const Attribute& operator[](std::size_t i) const { return attrs_[i]; }
  auto begin() const { return attrs_.begin(); }
  auto end() const { return attrs_.end(); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }
  std::vector<std::string> names() const;

  bool is_subset_of(const AttributeSet& other) const;
  /// Throws AttributeError if a shared name carries two different domains.
  AttributeSet unite(const AttributeSet& other) const;
  AttributeSet intersect(const AttributeSet& other) const;
  /// The attributes of this set whose names appear in `names`.
  AttributeSet select(const std::vector<std::string>& names) const;

  /// "{A,B,C}"
  std::string format() const;

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::vector<Attribute> attrs_;
};

/// Domain indices, one per attribute of the owning AttributeSet, in its order.
using KTuple = std::vector<int>;

/// Positions of `sub`'s attributes inside `super`. Throws AttributeError if
/// sub is not a subset.
std::vector<std::size_t> projection_map(const AttributeSet& super, const AttributeSet& sub);
KTuple project(const KTuple& t, const std::vector<std::size_t>& map);

/// A finitely supported map from tuples to nonzero monoid values.
class KRelation {
 public:
  KRelation(AttributeSet attrs, Monoid monoid) : attrs_(std::move(attrs)), monoid_(std::move(monoid)) {}

  const AttributeSet& attrs() const { return attrs_; }
  const Monoid& monoid() const { return monoid_; }
  const std::map<KTuple, MonoidValue>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  bool empty() const { return support_.empty(); }

  MonoidValue weight(const KTuple& t) const;
  /// Overwrites the weight; zero removes the tuple.
  void set(const KTuple& t, MonoidValue w);
  /// Adds w to the current weight.
  void accumulate(const KTuple& t, MonoidValue w);

  /// Tuple from value symbols listed in attribute order.
  KTuple tuple(const std::vector<std::string>& values) const;
  std::vector<std::string> values(const KTuple& t) const;
  /// "(a1,b2)"
  std::string format_tuple(const KTuple& t) const;

  MonoidValue total() const;

  friend bool operator==(const KRelation& a, const KRelation& b) {
    return a.attrs_ == b.attrs_ && a.monoid_ == b.monoid_ && a.support_ == b.support_;
  }

 private:
  void check_tuple(const KTuple& t) const;

  AttributeSet attrs_;
  Monoid monoid_;
  std::map<KTuple, MonoidValue> support_;
};

/// R[Y]: sums weights of tuples agreeing on Y.
KRelation marginal(const KRelation& r, const AttributeSet& y);
KRelation marginal(const KRelation& r, const std::vector<std::string>& names);

/// Boolean relation with weight 1 exactly on Supp(R).
KRelation support_relation(const KRelation& r);

/// Natural join of supports as a boolean relation over the union of attributes.
KRelation join_supports(const std::vector<KRelation>& rs);

/// Every tuple over `attrs`, in lexicographic order.
std::vector<KTuple> all_tuples(const AttributeSet& attrs);

/// One "tuple : weight" line per support entry, sorted by tuple.
std::string format_relation(const KRelation& r);

}  // namespace kanno
