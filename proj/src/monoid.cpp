#include "kanno/monoid.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>

#include "kanno/error.hpp"
#include "text_util.hpp"

namespace kanno {
namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kDecimalLimit = 9'000'000'000;  // integer-part bound

std::optional<std::int64_t> parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Parses [-]digits[.digits] into a value scaled by kDecimalScale.
std::optional<std::int64_t> parse_decimal(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (frac.size() > static_cast<std::size_t>(kDecimalDigits)) return std::nullopt;
  auto all_digits = [](std::string_view t) {
    return std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
  if (dot != std::string_view::npos && frac.empty()) return std::nullopt;
  std::int64_t w = 0;
  for (char c : whole) {
    w = w * 10 + (c - '0');
    if (w >= kDecimalLimit) return std::nullopt;
  }
  std::int64_t f = 0;
  for (char c : frac) f = f * 10 + (c - '0');
  for (auto i = frac.size(); i < static_cast<std::size_t>(kDecimalDigits); ++i) f *= 10;
  const std::int64_t v = w * kDecimalScale + f;
  return negative ? -v : v;
}

std::string format_decimal(std::int64_t v) {
  std::string out;
  if (v < 0) {
    out.push_back('-');
    v = -v;
  }
  out += std::to_string(v / kDecimalScale);
  std::int64_t frac = v % kDecimalScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, static_cast<std::size_t>(kDecimalDigits) - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

}  // namespace

Monoid Monoid::boolean() {
  Monoid m;
  m.kind_ = MonoidKind::boolean;
  m.name_ = "boolean";
  return m;
}

Monoid Monoid::bag() {
  Monoid m;
  m.kind_ = MonoidKind::bag;
  m.name_ = "bag";
  return m;
}

Monoid Monoid::numerical_semigroup(std::vector<std::int64_t> generators) {
  if (generators.empty()) throw ElementError("numerical semigroup needs at least one generator");
  for (auto g : generators)
    if (g <= 0) throw ElementError("numerical semigroup generators must be positive");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  Monoid m;
  m.kind_ = MonoidKind::numerical_semigroup;
  m.generators_ = generators;
  m.name_ = "nsg(" + join(generators, ",", [](auto g) { return std::to_string(g); }) + ")";

  m.gcd_ = 0;
  for (auto g : generators) m.gcd_ = std::gcd(m.gcd_, g);
  std::vector<std::int64_t> reduced;
  for (auto g : generators) reduced.push_back(g / m.gcd_);
  // Above max^2 every multiple of the gcd is a member (Frobenius bound).
  const std::int64_t limit = reduced.back() * reduced.back() + reduced.back();
  auto table = std::make_shared<std::vector<bool>>(static_cast<std::size_t>(limit + 1), false);
  (*table)[0] = true;
  for (std::int64_t x = 1; x <= limit; ++x)
    for (auto g : reduced)
      if (g <= x && (*table)[static_cast<std::size_t>(x - g)]) {
        (*table)[static_cast<std::size_t>(x)] = true;
        break;
      }
  m.member_table_ = std::move(table);
  return m;
}

Monoid Monoid::tropical_min() {
  Monoid m;
  m.kind_ = MonoidKind::tropical_min;
  m.name_ = "tmin";
  return m;
}

Monoid Monoid::max_unit_interval() {
  Monoid m;
  m.kind_ = MonoidKind::max_unit_interval;
  m.name_ = "vmax";
  return m;
}

Monoid Monoid::powerset(std::vector<std::string> ground_set) {
  std::sort(ground_set.begin(), ground_set.end());
  if (std::adjacent_find(ground_set.begin(), ground_set.end()) != ground_set.end())
    throw ElementError("powerset ground set has duplicate symbols");
  if (ground_set.size() > 62) throw ElementError("powerset ground set limited to 62 symbols");
  for (const auto& g : ground_set)
    if (g.empty() || g.find_first_of("{},() \t") != std::string::npos)
      throw ElementError("invalid powerset symbol '" + g + "'");
  Monoid m;
  m.kind_ = MonoidKind::powerset;
  m.ground_ = ground_set;
  m.name_ = "pset(" + join(ground_set, ",", [](const auto& s) { return s; }) + ")";
  return m;
}

Monoid Monoid::parse(std::string_view text) {
  text = trim(text);
  if (text == "boolean" || text == "bool") return boolean();
  if (text == "bag") return bag();
  if (text == "tmin") return tropical_min();
  if (text == "vmax") return max_unit_interval();
  auto args_of = [&](std::string_view prefix) -> std::optional<std::vector<std::string>> {
    if (!text.starts_with(prefix) || !text.ends_with(")")) return std::nullopt;
    auto inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    std::vector<std::string> parts;
    for (auto p : split(inner, ',')) {
      auto t = trim(p);
      if (!t.empty()) parts.emplace_back(t);
    }
    return parts;
  };
  if (auto args = args_of("nsg(")) {
    std::vector<std::int64_t> gens;
    for (const auto& a : *args) {
      auto v = parse_integer(a);
      if (!v) throw ElementError("bad generator '" + a + "' in monoid '" + std::string(text) + "'");
      gens.push_back(*v);
    }
    return numerical_semigroup(std::move(gens));
  }
  if (auto args = args_of("pset(")) return powerset(*args);
  throw ElementError("unknown monoid '" + std::string(text) + "'");
}

MonoidValue Monoid::zero() const {
  return MonoidValue(kind_ == MonoidKind::tropical_min ? kInfinity : 0);
}

bool Monoid::nsg_member(std::int64_t x) const {
  if (x < 0 || x % gcd_ != 0) return false;
  const auto y = x / gcd_;
  const auto& table = *member_table_;
  if (y < static_cast<std::int64_t>(table.size())) return table[static_cast<std::size_t>(y)];
  return true;
}

bool Monoid::is_element(MonoidValue x) const {
  const auto v = x.raw();
  switch (kind_) {
    case MonoidKind::boolean: return v == 0 || v == 1;
    case MonoidKind::bag: return v >= 0;
    case MonoidKind::numerical_semigroup: return nsg_member(v);
    case MonoidKind::tropical_min:
      return v == kInfinity || (v > -kDecimalLimit * kDecimalScale && v < kDecimalLimit * kDecimalScale);
    case MonoidKind::max_unit_interval: return v >= 0 && v <= kDecimalScale;
    case MonoidKind::powerset: {
      const auto n = ground_.size();
      const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
      return v >= 0 && (static_cast<std::uint64_t>(v) & ~mask) == 0;
    }
  }
  return false;
}

void Monoid::require(MonoidValue x) const {
  if (!is_element(x))
    throw ElementError("raw value " + std::to_string(x.raw()) + " is not an element of " + name_);
}

MonoidValue Monoid::add(MonoidValue x, MonoidValue y) const {
  require(x);
  require(y);
  switch (kind_) {
    case MonoidKind::boolean: return MonoidValue(x.raw() | y.raw());
    case MonoidKind::bag:
    case MonoidKind::numerical_semigroup: {
      std::int64_t r = 0;
      if (__builtin_add_overflow(x.raw(), y.raw(), &r)) throw ElementError("integer overflow in " + name_);
      return MonoidValue(r);
    }
    case MonoidKind::tropical_min: return std::min(x, y);
    case MonoidKind::max_unit_interval: return std::max(x, y);
    case MonoidKind::powerset: return MonoidValue(x.raw() | y.raw());
  }
  return x;
}

MonoidValue Monoid::sum(std::span<const MonoidValue> xs) const {
  MonoidValue acc = zero();
  for (auto x : xs) acc = add(acc, x);
  return acc;
}

MonoidValue Monoid::parse_element(std::string_view repr) const {
  const auto text = trim(repr);
  auto fail = [&]() -> ElementError {
    return ElementError("'" + std::string(text) + "' is not an element of " + name_);
  };
  std::optional<std::int64_t> v;
  switch (kind_) {
    case MonoidKind::boolean:
      if (text == "0" || text == "false") return MonoidValue(0);
      if (text == "1" || text == "true") return MonoidValue(1);
      throw fail();
    case MonoidKind::bag:
    case MonoidKind::numerical_semigroup:
      v = parse_integer(text);
      break;
    case MonoidKind::tropical_min:
      if (text == "inf" || text == "infinity" || text == "∞") return zero();
      v = parse_decimal(text);
      break;
    case MonoidKind::max_unit_interval:
      v = parse_decimal(text);
      break;
    case MonoidKind::powerset: {
      if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw fail();
      std::int64_t bits = 0;
      for (auto part : split(text.substr(1, text.size() - 2), ',')) {
        auto sym = trim(part);
        if (sym.empty()) continue;
        auto it = std::find(ground_.begin(), ground_.end(), sym);
        if (it == ground_.end()) throw fail();
        bits |= std::int64_t{1} << (it - ground_.begin());
      }
      return MonoidValue(bits);
    }
  }
  if (!v || !is_element(MonoidValue(*v))) throw fail();
  return MonoidValue(*v);
}

bool Monoid::is_element(std::string_view repr) const {
  try {
    parse_element(repr);
    return true;
  } catch (const ElementError&) {
    return false;
  }
}

std::string Monoid::format(MonoidValue x) const {
  require(x);
  switch (kind_) {
    case MonoidKind::boolean:
    case MonoidKind::bag:
    case MonoidKind::numerical_semigroup:
      return std::to_string(x.raw());
    case MonoidKind::tropical_min:
      if (x.raw() == kInfinity) return "inf";
      return format_decimal(x.raw());
    case MonoidKind::max_unit_interval:
      return format_decimal(x.raw());
    case MonoidKind::powerset: {
      std::string out = "{";
      bool first = true;
      for (std::size_t i = 0; i < ground_.size(); ++i)
        if (x.raw() & (std::int64_t{1} << i)) {
          if (!first) out += ",";
          out += ground_[i];
          first = false;
        }
      return out + "}";
    }
  }
  return {};
}

bool Monoid::fits_under(MonoidValue x, MonoidValue y) const {
  switch (kind_) {
    case MonoidKind::boolean:
    case MonoidKind::bag:
    case MonoidKind::max_unit_interval:
      return x <= y;
    case MonoidKind::numerical_semigroup:
      return x <= y && nsg_member(y.raw() - x.raw());
    case MonoidKind::tropical_min:
      return x >= y;
    case MonoidKind::powerset:
      return (x.raw() & ~y.raw()) == 0;
  }
  return false;
}

bool Monoid::has_closed_form_transport() const {
  if (kind_ == MonoidKind::numerical_semigroup) return generators_.front() == 1;
  return true;
}

std::vector<MonoidValue> Monoid::elements_up_to(std::int64_t bound) const {
  if (!is_numeric()) throw UnsupportedMonoid("elements_up_to needs a numeric monoid, got " + name_);
  std::vector<MonoidValue> out;
  for (std::int64_t x = 0; x <= bound; ++x)
    if (kind_ == MonoidKind::bag || nsg_member(x)) out.emplace_back(x);
  return out;
}

std::vector<MonoidValue> Monoid::search_pool(std::span<const MonoidValue> entries) const {
  for (auto e : entries) require(e);
  std::vector<MonoidValue> pool;
  switch (kind_) {
    case MonoidKind::boolean:
      pool = {MonoidValue(0), MonoidValue(1)};
      break;
    case MonoidKind::bag:
    case MonoidKind::numerical_semigroup: {
      std::int64_t top = 0;
      for (auto e : entries) top = std::max(top, e.raw());
      pool = elements_up_to(top);
      break;
    }
    case MonoidKind::tropical_min:
    case MonoidKind::max_unit_interval:
      // min and max never create values: a solution can always be rewritten
      // to use only target values and the neutral element.
      pool.assign(entries.begin(), entries.end());
      pool.push_back(zero());
      break;
    case MonoidKind::powerset: {
      std::uint64_t all = 0;
      for (auto e : entries) all |= static_cast<std::uint64_t>(e.raw());
      if (std::popcount(all) > 20) throw BudgetExhausted("powerset search pool too large");
      // Enumerate submasks of `all`.
      std::uint64_t sub = all;
      while (true) {
        pool.emplace_back(static_cast<std::int64_t>(sub));
        if (sub == 0) break;
        sub = (sub - 1) & all;
      }
      break;
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

std::vector<Monoid> builtin_monoids() {
  return {Monoid::boolean(),      Monoid::bag(),
          Monoid::numerical_semigroup({3, 5}), Monoid::tropical_min(),
          Monoid::max_unit_interval(), Monoid::powerset({"a", "b", "c"})};
}

}  // namespace kanno
