#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kanno {

enum class MonoidKind {
  boolean,              // ({0,1}, or, 0)
  bag,                  // (N, +, 0)
  numerical_semigroup,  // submonoid of N generated by a finite set
  tropical_min,         // (R u {inf}, min, inf)
  max_unit_interval,    // ([0,1], max, 0)
  powerset,             // (P(A), union, {}) over a finite ground set
};

/// An element of some monoid. The raw encoding only has meaning together with
/// the Monoid that produced it; equality is representational.
///
/// Encodings: boolean 0/1; bag and numerical semigroups the integer itself;
/// tropical_min and max_unit_interval a fixed-point decimal scaled by
/// kDecimalScale (tropical infinity is INT64_MAX); powerset a bitmask over the
/// ground set.
class MonoidValue {
 public:
  constexpr MonoidValue() = default;
  constexpr explicit MonoidValue(std::int64_t raw) : raw_(raw) {}

  constexpr std::int64_t raw() const { return raw_; }

  friend constexpr auto operator<=>(MonoidValue, MonoidValue) = default;

 private:
  std::int64_t raw_ = 0;
};

inline constexpr std::int64_t kDecimalScale = 1'000'000'000;
inline constexpr int kDecimalDigits = 9;

/// A positive commutative monoid. Immutable; cheap to copy.
class Monoid {
 public:
  static Monoid boolean();
  static Monoid bag();
  static Monoid numerical_semigroup(std::vector<std::int64_t> generators);
  static Monoid tropical_min();
  static Monoid max_unit_interval();
  static Monoid powerset(std::vector<std::string> ground_set);

  /// Text syntax: `boolean`, `bag`, `nsg(3,5)`, `tmin`, `vmax`, `pset(a,b,c)`.
  static Monoid parse(std::string_view text);

  MonoidKind kind() const { return kind_; }
  /// Canonical text form, parseable by Monoid::parse.
  const std::string& name() const { return name_; }
  const std::vector<std::int64_t>& generators() const { return generators_; }
  const std::vector<std::string>& ground_set() const { return ground_; }

  MonoidValue zero() const;
  bool is_zero(MonoidValue x) const { return x == zero(); }

  MonoidValue add(MonoidValue x, MonoidValue y) const;
  MonoidValue sum(std::span<const MonoidValue> xs) const;

  bool is_element(MonoidValue x) const;
  bool is_element(std::string_view repr) const;
  MonoidValue parse_element(std::string_view repr) const;
  std::string format(MonoidValue x) const;

  /// x fits under y: some z in K has x + z = y. For positive monoids every
  /// summand of y fits under y.
  bool fits_under(MonoidValue x, MonoidValue y) const;

  /// Whether a constructive transport solver exists (these monoids have the
  /// transportation property).
  bool has_closed_form_transport() const;

  /// Finite candidate set for exhaustive searches whose targets are `entries`:
  /// every value that can appear in a solution is represented. Sorted.
  std::vector<MonoidValue> search_pool(std::span<const MonoidValue> entries) const;

  /// Members of K in [0, bound]; only for bag and numerical semigroups.
  std::vector<MonoidValue> elements_up_to(std::int64_t bound) const;

  bool is_numeric() const {
    return kind_ == MonoidKind::bag || kind_ == MonoidKind::numerical_semigroup;
  }

  friend bool operator==(const Monoid& a, const Monoid& b) { return a.name_ == b.name_; }

 private:
  Monoid() = default;
  void require(MonoidValue x) const;
  bool nsg_member(std::int64_t x) const;

  MonoidKind kind_ = MonoidKind::boolean;
  std::string name_;
  std::vector<std::int64_t> generators_;
  std::vector<std::string> ground_;
  // Numerical semigroup membership, normalized by the gcd of the generators.
  std::int64_t gcd_ = 1;
  std::shared_ptr<const std::vector<bool>> member_table_;
};

std::vector<Monoid> builtin_monoids();

}  // namespace kanno
