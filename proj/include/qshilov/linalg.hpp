#pragma once

// Exact Gaussian elimination over the scalar fraction field.

#include <vector>

#include "qshilov/scalar.hpp"

namespace qshilov {

struct SolveResult {
    enum class Status { Unique, Underdetermined, Inconsistent };
    Status status = Status::Inconsistent;
    std::vector<Scalar> solution; // valid unless Inconsistent (free vars set to 0)
    size_t rank = 0;

    bool ok() const { return status != Status::Inconsistent; }
};

// Solve A x = rhs; A is row-major, rows may outnumber columns.
SolveResult solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> rhs);

} // namespace qshilov
