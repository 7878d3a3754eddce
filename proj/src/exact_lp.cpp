#include "bfc/exact_lp.hpp"

#include <stdexcept>

namespace bfc {

std::optional<RatVector> solve_linear(RatMatrix a, RatVector b) {
    std::size_t n = a.size();
    if (n == 0 || a[0].size() != n || b.size() != n) {
        throw std::invalid_argument("solve_linear expects a square system");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        Rational inv = a[col][col];
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rational factor = a[row][col] / inv;
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

namespace {

// Dense phase-one simplex tableau. Variables: y split into y+ / y-, one
// surplus per row, one artificial per row. Bland's rule throughout, so the
// walk terminates.
struct Tableau {
    std::size_t rows, cols;  // cols excludes the rhs column
    std::vector<RatVector> t;
    std::vector<std::size_t> basis;

    Tableau(std::size_t r, std::size_t c) : rows(r), cols(c), t(r + 1, RatVector(c + 1, 0)), basis(r) {}

    Rational& at(std::size_t r, std::size_t c) { return t[r][c]; }
    Rational& rhs(std::size_t r) { return t[r][cols]; }
    RatVector& objective() { return t[rows]; }

    void pivot(std::size_t prow, std::size_t pcol) {
        Rational inv = t[prow][pcol];
        for (auto& v : t[prow]) v /= inv;
        for (std::size_t r = 0; r <= rows; ++r) {
            if (r == prow || t[r][pcol] == 0) continue;
            Rational factor = t[r][pcol];
            for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= factor * t[prow][c];
        }
        basis[prow] = pcol;
    }

    // Minimizes the objective row; returns false only on unboundedness,
    // which cannot occur in phase one.
    bool run() {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t c = 0; c < cols; ++c) {
                if (t[rows][c] < 0) {
                    enter = c;
                    break;
                }
            }
            if (enter == cols) return true;
            std::size_t leave = rows;
            Rational best;
            for (std::size_t r = 0; r < rows; ++r) {
                if (t[r][enter] <= 0) continue;
                Rational ratio = t[r][cols] / t[r][enter];
                if (leave == rows || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
            if (leave == rows) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

bool lp_feasible(const RatMatrix& a, const RatVector& b, RatVector* point) {
    std::size_t m = a.size();
    if (m == 0) {
        if (point) point->clear();
        return true;
    }
    std::size_t d = a[0].size();
    if (b.size() != m) throw std::invalid_argument("lp_feasible shape mismatch");

    // Row i: sum_j A_ij (y+_j - y-_j) - s_i + sign(b_i) t_i = b_i.
    std::size_t cols = 2 * d + 2 * m;
    Tableau tab(m, cols);
    for (std::size_t i = 0; i < m; ++i) {
        int flip = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < d; ++j) {
            tab.at(i, j) = flip * a[i][j];
            tab.at(i, d + j) = -flip * a[i][j];
        }
        tab.at(i, 2 * d + i) = -flip;          // surplus
        tab.at(i, 2 * d + m + i) = 1;          // artificial
        tab.rhs(i) = flip * b[i];
        tab.basis[i] = 2 * d + m + i;
    }
    // Phase-one objective: minimize the artificial sum. With the artificials
    // basic, reduced cost of column c is cost_c - sum_i tab(i,c); the rhs cell
    // of the row tracks the negated objective value.
    for (std::size_t c = 0; c <= cols; ++c) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) s += tab.at(i, c);
        Rational cost = (c >= 2 * d + m && c < cols) ? 1 : 0;
        tab.objective()[c] = cost - s;
    }

    if (!tab.run()) return false;
    if (tab.objective()[cols] != 0) return false;  // artificials stuck > 0

    if (point) {
        point->assign(d, Rational(0));
        RatVector full(cols, Rational(0));
        for (std::size_t r = 0; r < m; ++r) {
            if (tab.basis[r] < cols) full[tab.basis[r]] = tab.rhs(r);
        }
        for (std::size_t j = 0; j < d; ++j) (*point)[j] = full[j] - full[d + j];
    }
    return true;
}

}  // namespace bfc
