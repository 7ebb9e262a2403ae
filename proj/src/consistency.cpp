#include "kanno/consistency.hpp"

#include <map>

#include "kanno/transport.hpp"

namespace kanno {

void require_same_monoid(std::span<const KRelation> rs) {
  for (const auto& r : rs)
    if (!(r.monoid() == rs.front().monoid()))
      throw MonoidMismatch("relations use different monoids: " + rs.front().monoid().name() + " and " +
                           r.monoid().name());
}

bool inner_consistent(const KRelation& r, const KRelation& s) {
  const KRelation pair[] = {r, s};
  require_same_monoid(pair);
  const auto shared = r.attrs().intersect(s.attrs());
  return marginal(r, shared) == marginal(s, shared);
}

namespace {

using Solver = std::function<SearchResult<TransportMatrix>(const TransportInstance&)>;

// Groups R and S tuples by their shared-attribute key and solves one
// transport instance per key. Rows are R tuples, columns S tuples.
SearchResult<KRelation> block_witness(const KRelation& r, const KRelation& s, const Solver& solve) {
  const KRelation pair[] = {r, s};
  require_same_monoid(pair);
  const auto& monoid = r.monoid();
  const auto u = r.attrs().unite(s.attrs());
  const auto shared = r.attrs().intersect(s.attrs());
  KRelation out(u, monoid);
  if (!inner_consistent(r, s)) return SearchResult<KRelation>::make_absent();

  const auto r_key = projection_map(r.attrs(), shared);
  const auto s_key = projection_map(s.attrs(), shared);
  std::map<KTuple, std::vector<const std::pair<const KTuple, MonoidValue>*>> r_blocks, s_blocks;
  for (const auto& e : r.support()) r_blocks[project(e.first, r_key)].push_back(&e);
  for (const auto& e : s.support()) s_blocks[project(e.first, s_key)].push_back(&e);

  // Position of each union attribute in R (preferred) or S.
  std::vector<std::pair<int, std::size_t>> source;
  for (const auto& a : u) {
    if (auto i = r.attrs().index_of(a.name))
      source.emplace_back(0, *i);
    else
      source.emplace_back(1, *s.attrs().index_of(a.name));
  }

  std::size_t nodes = 0;
  for (const auto& [key, rows] : r_blocks) {
    const auto& cols = s_blocks.at(key);  // present: marginals agree
    TransportInstance inst;
    for (auto* e : rows) inst.rows.push_back(e->second);
    for (auto* e : cols) inst.cols.push_back(e->second);
    auto solved = solve(inst);
    nodes += solved.nodes;
    if (solved.undecided()) return SearchResult<KRelation>::make_undecided(nodes);
    if (solved.absent()) return SearchResult<KRelation>::make_absent(nodes);
    const auto& d = *solved.value;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (monoid.is_zero(d.at(i, j))) continue;
        KTuple t;
        for (const auto& [which, pos] : source) t.push_back(which == 0 ? rows[i]->first[pos] : cols[j]->first[pos]);
        out.set(t, d.at(i, j));
      }
  }
  const KRelation check[] = {r, s};
  if (!is_witness(out, check)) throw ContractViolation("block-assembled witness does not marginalize to its inputs");
  return SearchResult<KRelation>::make_found(std::move(out), nodes);
}

}  // namespace

SearchResult<KRelation> consistent(const KRelation& r, const KRelation& s, std::size_t budget) {
  const auto monoid = r.monoid();
  return block_witness(r, s, [&](const TransportInstance& inst) { return solve_transport(monoid, inst, budget); });
}

bool is_witness(const KRelation& t, std::span<const KRelation> rs) {
  for (const auto& r : rs) {
    if (!(r.monoid() == t.monoid())) return false;
    if (!r.attrs().is_subset_of(t.attrs())) return false;
    if (marginal(t, r.attrs()) != r) return false;
  }
  return true;
}

WitnessFunction generic_witness(const Monoid& monoid) {
  if (!monoid.has_closed_form_transport())
    throw UnsupportedMonoid("generic witness needs the transportation property; " + monoid.name() + " lacks it");
  return WitnessFunction("generic(" + monoid.name() + ")", [monoid](const KRelation& r, const KRelation& s) {
    auto res = block_witness(r, s, [&](const TransportInstance& inst) {
      auto d = solve_closed_form(monoid, inst);
      return d ? SearchResult<TransportMatrix>::make_found(std::move(*d)) : SearchResult<TransportMatrix>::make_absent();
    });
    if (res.found()) return std::move(*res.value);
    return KRelation(r.attrs().unite(s.attrs()), monoid);
  });
}

WitnessFunction standard_join() {
  return WitnessFunction("standard-join", [](const KRelation& r, const KRelation& s) {
    if (r.monoid().kind() != MonoidKind::boolean || s.monoid().kind() != MonoidKind::boolean)
      throw UnsupportedMonoid("standard join is defined for boolean relations only");
    return join_supports({r, s});
  });
}

WitnessFunction search_witness(const Monoid& monoid, std::size_t budget) {
  return WitnessFunction("search(" + monoid.name() + ")", [monoid, budget](const KRelation& r, const KRelation& s) {
    auto res = block_witness(r, s, [&](const TransportInstance& inst) { return solve_exhaustive(monoid, inst, budget); });
    if (res.undecided()) throw BudgetExhausted("witness search ran out of budget");
    if (res.found()) return std::move(*res.value);
    return KRelation(r.attrs().unite(s.attrs()), monoid);
  });
}

Verdict pairwise_consistent(std::span<const KRelation> rs, std::size_t budget) {
  if (rs.empty()) return Verdict::yes;
  require_same_monoid(rs);
  bool undecided = false;
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      auto res = consistent(rs[i], rs[j], budget);
      if (res.absent()) return Verdict::no;
      if (res.undecided()) undecided = true;
    }
  return undecided ? Verdict::undecided : Verdict::yes;
}

}  // namespace kanno
