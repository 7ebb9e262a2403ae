#include <algorithm>

#include "kanno/consistency.hpp"
#include "kanno/hypergraph.hpp"

namespace kanno {
namespace {

// Weighted constraint search over the join of the supports: every tuple of a
// witness projects into each Supp(R_i) by positivity, so those are the only
// cells. Each support tuple of each R_i is one equality constraint.
class GlobalSearch {
 public:
  GlobalSearch(std::span<const KRelation> rs, std::size_t budget)
      : rs_(rs), monoid_(rs.front().monoid()), budget_(budget) {
    std::vector<KRelation> copies(rs.begin(), rs.end());
    const auto joined = join_supports(copies);
    attrs_ = joined.attrs();
    for (const auto& [t, w] : joined.support()) cells_.push_back(t);

    std::vector<MonoidValue> weights;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const auto map = projection_map(attrs_, rs[i].attrs());
      std::map<KTuple, std::size_t> slot;
      for (const auto& [t, w] : rs[i].support()) {
        slot[t] = targets_.size();
        targets_.push_back(w);
        weights.push_back(w);
      }
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        if (i == 0) cell_constraints_.emplace_back();
        cell_constraints_[c].push_back(slot.at(project(cells_[c], map)));
      }
    }
    remaining_.assign(targets_.size(), 0);
    for (const auto& cs : cell_constraints_)
      for (auto k : cs) ++remaining_[k];
    sums_.assign(targets_.size(), monoid_.zero());

    const auto pool = monoid_.search_pool(weights);
    for (const auto& cs : cell_constraints_) {
      std::vector<MonoidValue> cand;
      for (auto x : pool)
        if (std::all_of(cs.begin(), cs.end(), [&](std::size_t k) { return monoid_.fits_under(x, targets_[k]); }))
          cand.push_back(x);
      std::reverse(cand.begin(), cand.end());
      candidates_.push_back(std::move(cand));
    }
    values_.assign(cells_.size(), monoid_.zero());
  }

  SearchResult<KRelation> run() {
    // A support tuple that no cell reaches can never be matched.
    if (std::any_of(remaining_.begin(), remaining_.end(), [](std::size_t r) { return r == 0; }))
      return SearchResult<KRelation>::make_absent();
    const bool ok = dfs(0);
    if (exhausted_) return SearchResult<KRelation>::make_undecided(nodes_);
    if (!ok) return SearchResult<KRelation>::make_absent(nodes_);
    KRelation t(attrs_, monoid_);
    for (std::size_t c = 0; c < cells_.size(); ++c) t.set(cells_[c], values_[c]);
    if (!is_witness(t, rs_)) throw ContractViolation("global witness search produced an invalid witness");
    return SearchResult<KRelation>::make_found(std::move(t), nodes_);
  }

 private:
  bool dfs(std::size_t c) {
    if (c == cells_.size()) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const auto& cs = cell_constraints_[c];
    std::vector<MonoidValue> saved;
    for (auto k : cs) saved.push_back(sums_[k]);
    for (auto k : cs) --remaining_[k];
    bool found = false;
    for (auto x : candidates_[c]) {
      bool ok = true;
      for (std::size_t q = 0; q < cs.size() && ok; ++q) {
        const auto k = cs[q];
        const auto s = monoid_.add(saved[q], x);
        ok = remaining_[k] == 0 ? s == targets_[k] : monoid_.fits_under(s, targets_[k]);
        sums_[k] = s;
      }
      if (!ok) continue;
      values_[c] = x;
      if (dfs(c + 1)) {
        found = true;
        break;
      }
      if (exhausted_) break;
    }
    if (!found) {
      for (std::size_t q = 0; q < cs.size(); ++q) sums_[cs[q]] = saved[q];
      values_[c] = monoid_.zero();
    }
    for (auto k : cs) ++remaining_[k];
    return found;
  }

  std::span<const KRelation> rs_;
  Monoid monoid_;
  std::size_t budget_;
  AttributeSet attrs_;
  std::vector<KTuple> cells_;
  std::vector<MonoidValue> targets_;
  std::vector<std::vector<std::size_t>> cell_constraints_;
  std::vector<std::vector<MonoidValue>> candidates_;
  std::vector<std::size_t> remaining_;
  std::vector<MonoidValue> sums_;
  std::vector<MonoidValue> values_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

std::optional<KRelation> boolean_route(std::span<const KRelation> rs) {
  // Any witness has support inside the join, and the join itself projects
  // into every support, so the join is a witness iff one exists.
  std::vector<KRelation> copies(rs.begin(), rs.end());
  auto j = join_supports(copies);
  if (is_witness(j, rs)) return j;
  return std::nullopt;
}

std::optional<KRelation> acyclic_route(std::span<const KRelation> rs) {
  Hypergraph h;
  for (const auto& r : rs) {
    if (r.attrs().empty()) return std::nullopt;
    h.add_edge(r.attrs().names());
  }
  const auto g = gyo(h);
  if (!g.acyclic) return std::nullopt;
  const auto w = generic_witness(rs.front().monoid());
  KRelation t = rs[g.rip_order.front()];
  for (std::size_t k = 1; k < g.rip_order.size(); ++k) t = w(t, rs[g.rip_order[k]]);
  if (is_witness(t, rs)) return t;
  return std::nullopt;
}

}  // namespace

SearchResult<KRelation> globally_consistent(std::span<const KRelation> rs, const GlobalOptions& options) {
  if (rs.empty()) throw Error("global consistency needs at least one relation");
  require_same_monoid(rs);
  const auto& monoid = rs.front().monoid();

  if (!options.fast_paths) return GlobalSearch(rs, options.budget).run();

  const auto pairwise = pairwise_consistent(rs, options.budget);
  if (pairwise == Verdict::no) return SearchResult<KRelation>::make_absent();

  if (pairwise == Verdict::yes) {
    if (monoid.kind() == MonoidKind::boolean) {
      auto t = boolean_route(rs);
      return t ? SearchResult<KRelation>::make_found(std::move(*t)) : SearchResult<KRelation>::make_absent();
    }
    if (monoid.has_closed_form_transport())
      if (auto t = acyclic_route(rs)) return SearchResult<KRelation>::make_found(std::move(*t));
  }
  return GlobalSearch(rs, options.budget).run();
}

}  // namespace kanno
