#include "kanno/krelation.hpp"

#include <algorithm>
#include <set>

#include "kanno/error.hpp"
#include "text_util.hpp"

namespace kanno {

AttributeSet::AttributeSet(std::vector<Attribute> attrs) : attrs_(std::move(attrs)) {
  std::sort(attrs_.begin(), attrs_.end(), [](const Attribute& a, const Attribute& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < attrs_.size(); ++i) {
    if (attrs_[i].name.empty()) throw AttributeError("attribute name is empty");
    if (attrs_[i].domain.empty()) throw AttributeError("attribute " + attrs_[i].name + " has an empty domain");
    if (i > 0 && attrs_[i - 1].name == attrs_[i].name)
      throw AttributeError("duplicate attribute " + attrs_[i].name);
    std::set<std::string> seen(attrs_[i].domain.begin(), attrs_[i].domain.end());
    if (seen.size() != attrs_[i].domain.size())
      throw AttributeError("attribute " + attrs_[i].name + " repeats a domain value");
  }
}

std::optional<std::size_t> AttributeSet::index_of(std::string_view name) const {
  auto it = std::lower_bound(attrs_.begin(), attrs_.end(), name,
                             [](const Attribute& a, std::string_view n) { return a.name < n; });
  if (it == attrs_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - attrs_.begin());
}

std::vector<std::string> AttributeSet::names() const {
  std::vector<std::string> out;
  for (const auto& a : attrs_) out.push_back(a.name);
  return out;
}

bool AttributeSet::is_subset_of(const AttributeSet& other) const {
  return std::all_of(attrs_.begin(), attrs_.end(), [&](const Attribute& a) { return other.contains(a.name); });
}

AttributeSet AttributeSet::unite(const AttributeSet& other) const {
  std::vector<Attribute> all = attrs_;
  for (const auto& a : other) {
    if (auto i = index_of(a.name)) {
      if (attrs_[*i].domain != a.domain) throw AttributeError("attribute " + a.name + " has conflicting domains");
    } else {
      all.push_back(a);
    }
  }
  return AttributeSet(std::move(all));
}

AttributeSet AttributeSet::intersect(const AttributeSet& other) const {
  std::vector<Attribute> out;
  for (const auto& a : attrs_)
    if (other.contains(a.name)) out.push_back(a);
  return AttributeSet(std::move(out));
}

AttributeSet AttributeSet::select(const std::vector<std::string>& names) const {
  std::vector<Attribute> out;
  for (const auto& n : names) {
    auto i = index_of(n);
    if (!i) throw AttributeError("unknown attribute " + n);
    out.push_back(attrs_[*i]);
  }
  return AttributeSet(std::move(out));
}

std::string AttributeSet::format() const {
  return "{" + join(attrs_, ",", [](const Attribute& a) { return a.name; }) + "}";
}

std::vector<std::size_t> projection_map(const AttributeSet& super, const AttributeSet& sub) {
  std::vector<std::size_t> map;
  for (const auto& a : sub) {
    auto i = super.index_of(a.name);
    if (!i) throw AttributeError("attribute " + a.name + " is not in " + super.format());
    if (super[*i].domain != a.domain) throw AttributeError("attribute " + a.name + " has conflicting domains");
    map.push_back(*i);
  }
  return map;
}

KTuple project(const KTuple& t, const std::vector<std::size_t>& map) {
  KTuple out;
  out.reserve(map.size());
  for (auto i : map) out.push_back(t[i]);
  return out;
}

void KRelation::check_tuple(const KTuple& t) const {
  if (t.size() != attrs_.size()) throw AttributeError("tuple arity does not match " + attrs_.format());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || static_cast<std::size_t>(t[i]) >= attrs_[i].domain.size())
      throw AttributeError("value index out of domain for attribute " + attrs_[i].name);
}

MonoidValue KRelation::weight(const KTuple& t) const {
  auto it = support_.find(t);
  return it == support_.end() ? monoid_.zero() : it->second;
}

void KRelation::set(const KTuple& t, MonoidValue w) {
  check_tuple(t);
  if (!monoid_.is_element(w)) throw ElementError("weight is not an element of " + monoid_.name());
  if (monoid_.is_zero(w))
    support_.erase(t);
  else
    support_[t] = w;
}

void KRelation::accumulate(const KTuple& t, MonoidValue w) {
  set(t, monoid_.add(weight(t), w));
}

KTuple KRelation::tuple(const std::vector<std::string>& values) const {
  if (values.size() != attrs_.size()) throw AttributeError("tuple arity does not match " + attrs_.format());
  KTuple t;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& dom = attrs_[i].domain;
    auto it = std::find(dom.begin(), dom.end(), values[i]);
    if (it == dom.end()) throw AttributeError("value " + values[i] + " is not in the domain of " + attrs_[i].name);
    t.push_back(static_cast<int>(it - dom.begin()));
  }
  return t;
}

std::vector<std::string> KRelation::values(const KTuple& t) const {
  check_tuple(t);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(attrs_[i].domain[static_cast<std::size_t>(t[i])]);
  return out;
}

std::string KRelation::format_tuple(const KTuple& t) const {
  return "(" + join(values(t), ",", [](const std::string& s) { return s; }) + ")";
}

MonoidValue KRelation::total() const {
  MonoidValue acc = monoid_.zero();
  for (const auto& [t, w] : support_) acc = monoid_.add(acc, w);
  return acc;
}

KRelation marginal(const KRelation& r, const AttributeSet& y) {
  const auto map = projection_map(r.attrs(), y);
  KRelation out(y, r.monoid());
  for (const auto& [t, w] : r.support()) out.accumulate(project(t, map), w);
  return out;
}

KRelation marginal(const KRelation& r, const std::vector<std::string>& names) {
  return marginal(r, r.attrs().select(names));
}

KRelation support_relation(const KRelation& r) {
  KRelation out(r.attrs(), Monoid::boolean());
  for (const auto& [t, w] : r.support()) out.set(t, MonoidValue(1));
  return out;
}

std::vector<KTuple> all_tuples(const AttributeSet& attrs) {
  std::vector<KTuple> out;
  KTuple t(attrs.size(), 0);
  while (true) {
    out.push_back(t);
    std::size_t k = attrs.size();
    while (k > 0) {
      --k;
      if (static_cast<std::size_t>(++t[k]) < attrs[k].domain.size()) break;
      t[k] = 0;
      if (k == 0) return out;
    }
    if (attrs.empty()) return out;
  }
}

KRelation join_supports(const std::vector<KRelation>& rs) {
  AttributeSet u;
  for (const auto& r : rs) u = u.unite(r.attrs());
  // Extend partial tuples relation by relation; keys are full tuples over u
  // with -1 for attributes not yet bound.
  std::vector<KTuple> partial{KTuple(u.size(), -1)};
  for (const auto& r : rs) {
    const auto map = projection_map(u, r.attrs());
    std::vector<KTuple> next;
    for (const auto& p : partial)
      for (const auto& [t, w] : r.support()) {
        KTuple q = p;
        bool ok = true;
        for (std::size_t k = 0; k < map.size() && ok; ++k) {
          if (q[map[k]] == -1)
            q[map[k]] = t[k];
          else
            ok = q[map[k]] == t[k];
        }
        if (ok) next.push_back(std::move(q));
      }
    partial = std::move(next);
  }
  KRelation out(u, Monoid::boolean());
  for (const auto& p : partial) {
    if (std::find(p.begin(), p.end(), -1) != p.end()) continue;  // only when rs is empty
    out.set(p, MonoidValue(1));
  }
  return out;
}

std::string format_relation(const KRelation& r) {
  std::string out;
  for (const auto& [t, w] : r.support()) out += r.format_tuple(t) + " : " + r.monoid().format(w) + "\n";
  return out;
}

}  // namespace kanno
