#pragma once

// The quantum symmetric n×n matrix algebra C[Mat_n^sym]_q in lower-triangular
// generators z_ij (named z[i][j], 1 <= j <= i <= n, ordered lexicographically
// by (i,j)), with its eleven relation families, the symmetric quantum
// determinant, the localization at it, the involution seed at z_nn, and the
// point evaluation p.
//
// Entries above the diagonal follow the mirror convention z_kl = q^{-2} z_lk
// for l > k and are rewritten on sight.

#include <vector>

#include "qshilov/localized.hpp"

namespace qshilov {

struct QSymMatrixAlgebra {
    int n = 0;
    PresPtr pres;
    LocPtr loc;            // localization at det_q^sym z (quasi-central)
    AlgebraElement sdet;   // det_q^sym z in normal form
    Scalar point_of_sdet;  // p(det_q^sym z)

    size_t gen(int i, int j) const; // index of z_ij, requires j <= i
    AlgebraElement z(int i, int j) const;
    // Mirror-aware single entry: z_ij for j > i becomes q^{-2} z_ji.
    AlgebraElement entry(int i, int j) const;
};

const QSymMatrixAlgebra& qsymmatrix_algebra(int n);

// det_q^sym of the leading principal m×m block:
//   sum over s in S_m of (-q)^{-l(s)} q^{m - #fixed(s)} z_{s(m) m} ... z_{s(1) 1}
// with the mirror convention applied factor-wise.
AlgebraElement sym_det_principal(const QSymMatrixAlgebra& A, int m);
inline AlgebraElement sym_det(const QSymMatrixAlgebra& A) { return A.sdet; }
// The minor deleting row n and column n (requires n >= 2 unless the empty
// product is wanted; for n = 1 this is the unit).
AlgebraElement sym_det_minor_nn(const QSymMatrixAlgebra& A);

// Scalar sigma_ij with sdet·z_ij = sigma_ij·z_ij·sdet (throws with the
// residual attached when no scalar relation holds).
Scalar sym_det_commutant_scalar(const QSymMatrixAlgebra& A, int i, int j);

// The involution seed: z_nn^* = det_q^sym z_nn · (det_q^sym z)^{-1}.
LocalizedElement star_seed(const QSymMatrixAlgebra& A);

// Multiplicative character p: p(z_ij) = q^{i-n} for i = j, else 0 (the same
// exponent convention as the A_n algebra; the opposite sign breaks
// p(f^*) = conj(p(f)) for the star derived from the z_nn seed).
Scalar point_eval(const QSymMatrixAlgebra& A, const AlgebraElement& f);
Scalar point_eval(const QSymMatrixAlgebra& A, const LocalizedElement& f);

} // namespace qshilov
