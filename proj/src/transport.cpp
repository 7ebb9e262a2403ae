#include "kanno/transport.hpp"

#include <algorithm>

namespace kanno {

bool satisfies(const Monoid& monoid, const TransportInstance& inst, const TransportMatrix& d) {
  if (d.rows() != inst.rows.size() || d.cols() != inst.cols.size()) return false;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    MonoidValue acc = monoid.zero();
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (!monoid.is_element(d.at(i, j))) return false;
      acc = monoid.add(acc, d.at(i, j));
    }
    if (acc != inst.rows[i]) return false;
  }
  for (std::size_t j = 0; j < d.cols(); ++j) {
    MonoidValue acc = monoid.zero();
    for (std::size_t i = 0; i < d.rows(); ++i) acc = monoid.add(acc, d.at(i, j));
    if (acc != inst.cols[j]) return false;
  }
  return true;
}

namespace {

TransportMatrix northwest_corner(const TransportInstance& inst) {
  const auto m = inst.rows.size();
  const auto n = inst.cols.size();
  TransportMatrix d(m, n, MonoidValue(0));
  std::vector<std::int64_t> supply, demand;
  for (auto b : inst.rows) supply.push_back(b.raw());
  for (auto c : inst.cols) demand.push_back(c.raw());
  std::size_t i = 0, j = 0;
  while (i < m && j < n) {
    const auto q = std::min(supply[i], demand[j]);
    d.at(i, j) = MonoidValue(q);
    supply[i] -= q;
    demand[j] -= q;
    if (supply[i] == 0 && i + 1 < m)
      ++i;
    else if (demand[j] == 0)
      ++j;
    else
      ++i;
  }
  return d;
}

template <class Cell>
TransportMatrix pointwise(const TransportInstance& inst, Cell cell) {
  TransportMatrix d(inst.rows.size(), inst.cols.size(), MonoidValue(0));
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) = cell(inst.rows[i], inst.cols[j]);
  return d;
}

}  // namespace

std::optional<TransportMatrix> solve_closed_form(const Monoid& monoid, const TransportInstance& inst) {
  if (!monoid.has_closed_form_transport())
    throw UnsupportedMonoid("no closed-form transport solver for " + monoid.name());
  if (inst.rows.empty() || inst.cols.empty()) throw ElementError("transport instance needs m, n >= 1");
  if (monoid.sum(inst.rows) != monoid.sum(inst.cols)) return std::nullopt;

  TransportMatrix d;
  switch (monoid.kind()) {
    case MonoidKind::bag:
    case MonoidKind::numerical_semigroup:  // only nsg(1,...), which is N
      d = northwest_corner(inst);
      break;
    case MonoidKind::boolean:
      d = pointwise(inst, [](MonoidValue b, MonoidValue c) { return MonoidValue(b.raw() & c.raw()); });
      break;
    case MonoidKind::tropical_min:
      d = pointwise(inst, [](MonoidValue b, MonoidValue c) { return std::max(b, c); });
      break;
    case MonoidKind::max_unit_interval:
      d = pointwise(inst, [](MonoidValue b, MonoidValue c) { return std::min(b, c); });
      break;
    case MonoidKind::powerset:
      d = pointwise(inst, [](MonoidValue b, MonoidValue c) { return MonoidValue(b.raw() & c.raw()); });
      break;
  }
  if (!satisfies(monoid, inst, d))
    throw ContractViolation("closed-form transport solver produced an invalid matrix for " + monoid.name());
  return d;
}

namespace {

class TransportSearch {
 public:
  TransportSearch(const Monoid& monoid, const TransportInstance& inst, std::size_t budget)
      : monoid_(monoid), inst_(inst), budget_(budget), m_(inst.rows.size()), n_(inst.cols.size()) {
    std::vector<MonoidValue> entries = inst.rows;
    entries.insert(entries.end(), inst.cols.begin(), inst.cols.end());
    const auto pool = monoid.search_pool(entries);
    candidates_.resize(m_ * n_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        auto& cand = candidates_[i * n_ + j];
        for (auto x : pool)
          if (monoid.fits_under(x, inst.rows[i]) && monoid.fits_under(x, inst.cols[j])) cand.push_back(x);
        // Larger values first: the search tends to close rows sooner.
        std::reverse(cand.begin(), cand.end());
      }
    row_sum_.assign(m_, monoid.zero());
    col_sum_.assign(n_, monoid.zero());
    current_ = TransportMatrix(m_, n_, monoid.zero());
  }

  SearchResult<TransportMatrix> run() {
    if (monoid_.sum(inst_.rows) != monoid_.sum(inst_.cols)) return SearchResult<TransportMatrix>::make_absent();
    const bool ok = dfs(0);
    if (exhausted_) return SearchResult<TransportMatrix>::make_undecided(nodes_);
    if (!ok) return SearchResult<TransportMatrix>::make_absent(nodes_);
    return SearchResult<TransportMatrix>::make_found(current_, nodes_);
  }

 private:
  bool dfs(std::size_t cell) {
    if (cell == m_ * n_) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const auto i = cell / n_;
    const auto j = cell % n_;
    const auto saved_row = row_sum_[i];
    const auto saved_col = col_sum_[j];
    for (auto x : candidates_[cell]) {
      const auto r = monoid_.add(saved_row, x);
      const auto c = monoid_.add(saved_col, x);
      if (!monoid_.fits_under(r, inst_.rows[i]) || !monoid_.fits_under(c, inst_.cols[j])) continue;
      if (j + 1 == n_ && r != inst_.rows[i]) continue;
      if (i + 1 == m_ && c != inst_.cols[j]) continue;
      row_sum_[i] = r;
      col_sum_[j] = c;
      current_.at(i, j) = x;
      if (dfs(cell + 1)) return true;
      if (exhausted_) return false;
    }
    row_sum_[i] = saved_row;
    col_sum_[j] = saved_col;
    current_.at(i, j) = monoid_.zero();
    return false;
  }

  const Monoid& monoid_;
  const TransportInstance& inst_;
  std::size_t budget_;
  std::size_t m_, n_;
  std::vector<std::vector<MonoidValue>> candidates_;
  std::vector<MonoidValue> row_sum_, col_sum_;
  TransportMatrix current_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

SearchResult<TransportMatrix> solve_exhaustive(const Monoid& monoid, const TransportInstance& inst,
                                               std::size_t budget) {
  if (inst.rows.empty() || inst.cols.empty()) throw ElementError("transport instance needs m, n >= 1");
  auto result = TransportSearch(monoid, inst, budget).run();
  if (result.found() && !satisfies(monoid, inst, *result.value))
    throw ContractViolation("exhaustive transport search produced an invalid matrix");
  return result;
}

SearchResult<TransportMatrix> solve_transport(const Monoid& monoid, const TransportInstance& inst,
                                              std::size_t budget) {
  for (auto v : inst.rows)
    if (!monoid.is_element(v)) throw ElementError("row sum is not an element of " + monoid.name());
  for (auto v : inst.cols)
    if (!monoid.is_element(v)) throw ElementError("column sum is not an element of " + monoid.name());
  if (monoid.has_closed_form_transport()) {
    auto d = solve_closed_form(monoid, inst);
    if (!d) return SearchResult<TransportMatrix>::make_absent();
    return SearchResult<TransportMatrix>::make_found(std::move(*d));
  }
  return solve_exhaustive(monoid, inst, budget);
}

namespace {

// Odometer over pool^len.
bool advance(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < base) return true;
    digits[k] = 0;
  }
  return false;
}

std::vector<std::vector<MonoidValue>> all_vectors(std::span<const MonoidValue> pool, std::size_t len) {
  std::vector<std::vector<MonoidValue>> out;
  std::vector<std::size_t> digits(len, 0);
  do {
    std::vector<MonoidValue> v;
    for (auto d : digits) v.push_back(pool[d]);
    out.push_back(std::move(v));
  } while (advance(digits, pool.size()));
  return out;
}

struct ShapeOutcome {
  std::optional<TransportInstance> counterexample;
  std::size_t instances = 0;
  std::size_t undecided = 0;
};

}  // namespace

ProbeResult probe_transportation_property(const Monoid& monoid, std::size_t max_m, std::size_t max_n,
                                          std::span<const MonoidValue> pool, std::size_t budget,
                                          Execution exec) {
  if (max_m == 0 || max_n == 0) throw ElementError("probe needs max_m, max_n >= 1");
  if (pool.empty()) throw ElementError("probe needs a non-empty element pool");
  for (auto v : pool)
    if (!monoid.is_element(v)) throw ElementError("probe pool value is not an element of " + monoid.name());

  ProbeResult result;
  for (std::size_t m = 1; m <= max_m; ++m) {
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto row_vectors = all_vectors(pool, m);
      const auto col_vectors = all_vectors(pool, n);
      std::vector<MonoidValue> col_totals;
      for (const auto& c : col_vectors) col_totals.push_back(monoid.sum(c));

      // One task per row vector; the first counterexample is the lowest index.
      auto outcomes = ordered_map(
          row_vectors.size(),
          [&](std::size_t r) {
            ShapeOutcome out;
            const auto total = monoid.sum(row_vectors[r]);
            for (std::size_t c = 0; c < col_vectors.size(); ++c) {
              if (col_totals[c] != total) continue;
              ++out.instances;
              TransportInstance inst{row_vectors[r], col_vectors[c]};
              auto solved = solve_exhaustive(monoid, inst, budget);
              if (solved.undecided()) {
                ++out.undecided;
              } else if (solved.absent()) {
                out.counterexample = std::move(inst);
                return out;
              }
            }
            return out;
          },
          exec);
      for (auto& out : outcomes) {
        result.instances += out.instances;
        result.undecided += out.undecided;
        if (out.counterexample) {
          result.counterexample = std::move(out.counterexample);
          return result;
        }
      }
    }
  }
  return result;
}

std::vector<MonoidValue> default_probe_pool(const Monoid& monoid) {
  switch (monoid.kind()) {
    case MonoidKind::boolean:
      return {MonoidValue(0), MonoidValue(1)};
    case MonoidKind::bag:
      return monoid.elements_up_to(3);
    case MonoidKind::numerical_semigroup: {
      // Elements up to twice the largest generator; the first few elements
      // alone miss nsg(4,7), whose smallest failure is (14,14)/(4,12,12).
      const auto top = *std::max_element(monoid.generators().begin(), monoid.generators().end());
      return monoid.elements_up_to(std::min<std::int64_t>(2 * top, 24));
    }
    case MonoidKind::tropical_min:
      return {monoid.zero(), monoid.parse_element("0"), monoid.parse_element("1"),
              monoid.parse_element("2.5")};
    case MonoidKind::max_unit_interval:
      return {monoid.parse_element("0"), monoid.parse_element("0.25"), monoid.parse_element("0.5"),
              monoid.parse_element("1")};
    case MonoidKind::powerset: {
      std::vector<MonoidValue> out;
      const auto n = std::min<std::size_t>(monoid.ground_set().size(), 3);
      for (std::int64_t bits = 0; bits < (std::int64_t{1} << n); ++bits) out.emplace_back(bits);
      return out;
    }
  }
  return {};
}

}  // namespace kanno
