#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kanno/error.hpp"
#include "kanno/monoid.hpp"
#include "kanno/parallel.hpp"

namespace kanno {

/// Row sums `rows` (length m) and column sums `cols` (length n).
struct TransportInstance {
  std::vector<MonoidValue> rows;
  std::vector<MonoidValue> cols;

  friend bool operator==(const TransportInstance&, const TransportInstance&) = default;
};

class TransportMatrix {
 public:
  TransportMatrix() = default;
  TransportMatrix(std::size_t rows, std::size_t cols, MonoidValue fill)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  MonoidValue& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  MonoidValue at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

  friend bool operator==(const TransportMatrix&, const TransportMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MonoidValue> cells_;
};

/// Every row i sums to rows[i] and every column j to cols[j].
bool satisfies(const Monoid& monoid, const TransportInstance& inst, const TransportMatrix& d);

/// Constructive solver for monoids with the transportation property:
///   bag                 northwest corner
///   boolean             d_ij = b_i and c_j
///   tropical_min        d_ij = max(b_i, c_j)
///   max_unit_interval   d_ij = min(b_i, c_j)
///   powerset            d_ij = b_i intersect c_j
/// Returns nullopt when the totals differ. Throws UnsupportedMonoid otherwise.
std::optional<TransportMatrix> solve_closed_form(const Monoid& monoid, const TransportInstance& inst);

/// Backtracking over cell values drawn from Monoid::search_pool. Works for
/// every monoid; `budget` bounds the number of search nodes.
SearchResult<TransportMatrix> solve_exhaustive(const Monoid& monoid, const TransportInstance& inst,
                                               std::size_t budget = kDefaultBudget);

/// Closed form where available, exhaustive search otherwise. A returned
/// matrix always satisfies the row and column equations.
SearchResult<TransportMatrix> solve_transport(const Monoid& monoid, const TransportInstance& inst,
                                              std::size_t budget = kDefaultBudget);

struct ProbeResult {
  std::optional<TransportInstance> counterexample;
  std::size_t instances = 0;   // equal-total instances examined
  std::size_t undecided = 0;   // instances whose search ran out of budget
  bool budget_exhausted() const { return undecided > 0; }
};

/// Searches all m x n instances (m <= max_m, n <= max_n) with entries from
/// `pool` and equal totals for one without a solution. Uses the exhaustive
/// solver so the answer does not depend on the closed forms. The first
/// counterexample in (m, n, rows, cols) lexicographic order is reported.
ProbeResult probe_transportation_property(const Monoid& monoid, std::size_t max_m, std::size_t max_n,
                                          std::span<const MonoidValue> pool,
                                          std::size_t budget = kDefaultBudget,
                                          Execution exec = Execution::parallel);

/// Small element pool used by the probe when none is given.
std::vector<MonoidValue> default_probe_pool(const Monoid& monoid);

}  // namespace kanno
