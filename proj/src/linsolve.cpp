#include "greendiag/linsolve.hpp"

#include <cmath>
#include <cstdlib>

namespace greendiag {

std::vector<Rational> solve_linear_exact(std::vector<std::vector<Rational>> A,
                                         std::vector<Rational> b) {
    const std::size_t rows = A.size();
    if (b.size() != rows) throw InadmissibleInput("solve_linear_exact: |b| != row count");
    std::size_t cols = 0;
    for (const auto& row : A) cols = std::max(cols, row.size());
    for (auto& row : A) row.resize(cols);

    const auto original_A = A;
    const auto original_b = b;

    // Forward elimination with column pivoting by |double| magnitude.
    std::vector<std::size_t> pivot_row_of_col(cols, SIZE_MAX);
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < cols && next_row < rows; ++col) {
        std::size_t best = SIZE_MAX;
        double best_mag = 0.0;
        for (std::size_t r = next_row; r < rows; ++r) {
            if (A[r][col].is_zero()) continue;
            const double mag = std::fabs(A[r][col].to_double());
            // mag can underflow to 0 for a nonzero rational; any nonzero
            // entry must stay eligible, so compare with >=.
            if (best == SIZE_MAX || mag >= best_mag) {
                best = r;
                best_mag = mag;
            }
        }
        if (best == SIZE_MAX) continue;  // no pivot in this column
        std::swap(A[best], A[next_row]);
        std::swap(b[best], b[next_row]);
        pivot_row_of_col[col] = next_row;
        for (std::size_t r = next_row + 1; r < rows; ++r) {
            if (A[r][col].is_zero()) continue;
            const Rational factor = A[r][col] / A[next_row][col];
            for (std::size_t c = col; c < cols; ++c) A[r][c] -= factor * A[next_row][c];
            b[r] -= factor * b[next_row];
        }
        ++next_row;
    }

    // Inconsistency: a fully eliminated row with nonzero right-hand side.
    for (std::size_t r = next_row; r < rows; ++r) {
        if (!b[r].is_zero()) throw InconsistentSystem("linear system has no solution");
    }
    // Rank deficiency: some column never acquired a pivot.
    for (std::size_t col = 0; col < cols; ++col) {
        if (pivot_row_of_col[col] == SIZE_MAX)
            throw SingularSystem("linear system is rank-deficient (free variables remain)");
    }

    // Back substitution (pivots run down the diagonal after the sweep above).
    std::vector<Rational> x(cols);
    for (std::size_t col = cols; col-- > 0;) {
        const std::size_t r = pivot_row_of_col[col];
        Rational acc = b[r];
        for (std::size_t c = col + 1; c < cols; ++c) acc -= A[r][c] * x[c];
        x[col] = acc / A[r][col];
    }

    // Exact verification against the untouched input.
    for (std::size_t r = 0; r < rows; ++r) {
        Rational acc;
        for (std::size_t c = 0; c < cols; ++c) acc += original_A[r][c] * x[c];
        if (!(acc == original_b[r]))
            throw InconsistentSystem("linear system verification failed");
    }
    return x;
}

}  // namespace greendiag
