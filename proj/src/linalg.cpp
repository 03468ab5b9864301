#include "qshilov/linalg.hpp"

namespace qshilov {

SolveResult solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> rhs) {
    const size_t rows = a.size();
    if (rhs.size() != rows) throw MathError("solve_linear: rhs size mismatch");
    const size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != cols) throw MathError("solve_linear: ragged matrix");

    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(rhs[p], rhs[r]);
        Scalar inv = a[r][c].inv();
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }

    SolveResult res;
    res.rank = r;
    for (size_t i = r; i < rows; ++i) {
        if (!rhs[i].is_zero()) {
            res.status = SolveResult::Status::Inconsistent;
            return res;
        }
    }
    res.solution.assign(cols, Scalar(0));
    for (size_t i = 0; i < r; ++i) res.solution[pivot_col[i]] = rhs[i];
    res.status = r == cols ? SolveResult::Status::Unique
                           : SolveResult::Status::Underdetermined;
    return res;
}

} // namespace qshilov
