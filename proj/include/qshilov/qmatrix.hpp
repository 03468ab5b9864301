#pragma once

// The quantum n×n matrix algebra C[Mat_n]_q in generators z_a^b (named
// z[a][b], ordered row-major), its q-minors and quantum determinant, the
// localization at det_q z, the *-involution, and the point evaluation p.
//
// Relations, with q-hat = q - q^{-1}:
//   z_a^{b1} z_a^{b2} = q z_a^{b2} z_a^{b1}            (b1 < b2)
//   z_{a1}^b z_{a2}^b = q z_{a2}^b z_{a1}^b            (a1 < a2)
//   z_{a1}^{b1} z_{a2}^{b2} = z_{a2}^{b2} z_{a1}^{b1}  (b1 < b2, a1 > a2)
//   z_{a1}^{b1} z_{a2}^{b2} - z_{a2}^{b2} z_{a1}^{b1} = q-hat z_{a1}^{b2} z_{a2}^{b1}
//                                                      (b1 < b2, a1 < a2)

#include <vector>

#include "qshilov/localized.hpp"

namespace qshilov {

struct QMatrixAlgebra {
    int n = 0;
    PresPtr pres;
    LocPtr loc;             // localization at det_q z (central; verified)
    AlgebraElement det;     // det_q z in normal form
    Scalar point_of_det;    // p(det_q z) = q^{-n(n-1)/2}

    size_t gen(int a, int b) const; // index of z_a^b, 1-based
    AlgebraElement z(int a, int b) const;
};

// Cached factory (presentations are shared so elements stay compatible).
const QMatrixAlgebra& qmatrix_algebra(int n);

// Alternating q-sum over column permutations: rows/cols are 1-based strictly
// increasing index sets of equal size.
AlgebraElement q_minor(const QMatrixAlgebra& A, const std::vector<int>& rows,
                       const std::vector<int>& cols);

// Scalar sigma with det·z_a^b = sigma·z_a^b·det, by normal-form computation.
Scalar det_commutant_scalar(const QMatrixAlgebra& A, int a, int b);

// Closed involution formula on a generator:
//   (z_a^b)^* = (-q)^{a+b-2n} (det_q z)^{-1} det_q z_a^b
// with det_q z_a^b the complementary q-minor over rows {1..n}\{a} and
// columns {1..n}\{b}.
LocalizedElement star_generator(const QMatrixAlgebra& A, int a, int b);

// Antilinear anti-homomorphic extension to the localization; restricted to
// parameter-free coefficients.
LocalizedElement star(const QMatrixAlgebra& A, const LocalizedElement& f);

// Multiplicative character p: p(z_a^b) = q^{a-n} for a = b, else 0.
// (The sign of the exponent is forced: with the involution and action
// conventions above, p(f^*) = conj(p(f)) holds for q^{a-n} and fails for
// q^{n-a}; see the star-compatibility tests.)
Scalar point_eval(const QMatrixAlgebra& A, const AlgebraElement& f);
Scalar point_eval(const QMatrixAlgebra& A, const LocalizedElement& f);

} // namespace qshilov
