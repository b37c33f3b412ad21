#include "hgv/lp.hpp"

#include <algorithm>

#include "hgv/error.hpp"

namespace hgv {

SetCoverLp::SetCoverLp(int rows) : rows_(rows) {
    if (rows < 1 || rows > 64) fail(ErrorCode::BudgetExceeded, "covering LP supports 1..64 rows");
    binv_.assign(rows, std::vector<Rational>(rows));
    for (int j = 0; j < rows; ++j) {
        columns_.push_back(std::uint64_t{1} << j);
        basis_.push_back(j);
        binv_[j][j] = 1;
    }
    xb_.assign(rows, Rational(1));
    objective_ = rows;
    compute_duals();
}

int SetCoverLp::add_column(std::uint64_t mask) {
    if (mask == 0) fail(ErrorCode::Internal, "empty LP column");
    if (rows_ < 64 && (mask >> rows_) != 0) fail(ErrorCode::Internal, "LP column outside row range");
    auto it = std::find(columns_.begin(), columns_.end(), mask);
    if (it != columns_.end()) return static_cast<int>(it - columns_.begin());
    columns_.push_back(mask);
    return num_columns() - 1;
}

std::vector<Rational> SetCoverLp::column_vector(long var) const {
    std::vector<Rational> a(rows_);
    if (is_surplus(var)) {
        a[var - kSurplusBase] = -1;
    } else {
        std::uint64_t mask = columns_[var];
        for (int j = 0; j < rows_; ++j) {
            if ((mask >> j) & 1U) a[j] = 1;
        }
    }
    return a;
}

void SetCoverLp::compute_duals() {
    duals_.assign(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
        Rational cb = cost(basis_[i]);
        if (cb == 0) continue;
        for (int j = 0; j < rows_; ++j) duals_[j] += cb * binv_[i][j];
    }
}

void SetCoverLp::solve() {
    for (;;) {
        compute_duals();

        // Bland: the lowest-numbered improving variable enters.
        long entering = -1;
        for (long c = 0; c < num_columns() && entering < 0; ++c) {
            if (std::find(basis_.begin(), basis_.end(), c) != basis_.end()) continue;
            Rational reduced = 1;
            std::uint64_t mask = columns_[c];
            for (int j = 0; j < rows_; ++j) {
                if ((mask >> j) & 1U) reduced -= duals_[j];
            }
            if (reduced < 0) entering = c;
        }
        for (int j = 0; j < rows_ && entering < 0; ++j) {
            long var = kSurplusBase + j;
            if (std::find(basis_.begin(), basis_.end(), var) != basis_.end()) continue;
            if (duals_[j] < 0) entering = var;
        }
        if (entering < 0) break;

        std::vector<Rational> a = column_vector(entering);
        std::vector<Rational> dir(rows_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < rows_; ++j) {
                if (a[j] != 0) dir[i] += binv_[i][j] * a[j];
            }
        }

        int leave = -1;
        Rational best_ratio;
        for (int i = 0; i < rows_; ++i) {
            if (dir[i] <= 0) continue;
            Rational ratio = xb_[i] / dir[i];
            if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        // The objective is bounded below by 0, so an improving direction
        // always meets a blocking row.
        if (leave < 0) fail(ErrorCode::Internal, "covering LP reported unbounded");

        Rational pivot = dir[leave];
        for (int j = 0; j < rows_; ++j) binv_[leave][j] /= pivot;
        xb_[leave] /= pivot;
        for (int i = 0; i < rows_; ++i) {
            if (i == leave || dir[i] == 0) continue;
            Rational factor = dir[i];
            for (int j = 0; j < rows_; ++j) {
                if (binv_[leave][j] != 0) binv_[i][j] -= factor * binv_[leave][j];
            }
            xb_[i] -= factor * xb_[leave];
        }
        basis_[leave] = entering;
        ++pivots_;
    }

    objective_ = 0;
    for (int i = 0; i < rows_; ++i) objective_ += cost(basis_[i]) * xb_[i];
}

Rational SetCoverLp::primal(int c) const {
    for (int i = 0; i < rows_; ++i) {
        if (basis_[i] == c) return xb_[i];
    }
    return Rational(0);
}

}  // namespace hgv
