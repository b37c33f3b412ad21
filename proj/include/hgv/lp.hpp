#pragma once

#include <cstdint>
#include <vector>

#include "hgv/numeric.hpp"

namespace hgv {

/// Exact covering LP over subsets of at most 64 rows:
///
///     minimize  sum_c x_c   subject to  sum_{c : j in c} x_c >= 1 for every row j,  x >= 0.
///
/// Solved by the revised simplex method in rational arithmetic with Bland's
/// rule. The singleton columns {j} are always present, which makes the
/// identity a feasible starting basis. Columns may be added between solves
/// (column generation); the previous basis is kept as a warm start.
class SetCoverLp {
  public:
    explicit SetCoverLp(int rows);

    /// Returns the column index. Adding a column already present returns the
    /// existing index.
    int add_column(std::uint64_t mask);
    void solve();

    int rows() const { return rows_; }
    int num_columns() const { return static_cast<int>(columns_.size()); }
    std::uint64_t column(int c) const { return columns_.at(c); }
    const Rational &objective() const { return objective_; }
    /// Primal value of a set column after solve().
    Rational primal(int c) const;
    /// Dual prices y_j (one per row) of the current basis.
    const std::vector<Rational> &duals() const { return duals_; }
    long pivots() const { return pivots_; }

  private:
    // Variable ids: c for set column c, kSurplusBase + j for the surplus of
    // row j. Bland's rule uses this numeric order.
    static bool is_surplus(long var) { return var >= kSurplusBase; }
    std::vector<Rational> column_vector(long var) const;
    static Rational cost(long var) { return is_surplus(var) ? Rational(0) : Rational(1); }
    void compute_duals();

    static constexpr long kSurplusBase = 1L << 40;

    int rows_;
    std::vector<std::uint64_t> columns_;
    std::vector<long> basis_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<Rational> xb_;
    std::vector<Rational> duals_;
    Rational objective_;
    long pivots_ = 0;
};

}  // namespace hgv
