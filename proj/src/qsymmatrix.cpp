#include "qshilov/qsymmatrix.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qshilov {

size_t QSymMatrixAlgebra::gen(int i, int j) const {
    if (j < 1 || i < j || i > n) throw MathError("z_ij index out of range (need j <= i <= n)");
    return (size_t)i * (i - 1) / 2 + (j - 1);
}

AlgebraElement QSymMatrixAlgebra::z(int i, int j) const {
    return AlgebraElement::generator(pres, gen(i, j));
}

AlgebraElement QSymMatrixAlgebra::entry(int i, int j) const {
    if (j > i) return z(j, i).scaled(Scalar::q_power(-4));
    return z(i, j);
}

namespace {

// The eleven families oriented as rewrite rules hi·lo -> combination, where
// hi = z_{i2 j2} > lo = z_{i1 j1} in the (i,j)-lex generator order.
PresPtr build_qsym_presentation(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j)
            names.push_back("z[" + std::to_string(i) + "][" + std::to_string(j) + "]");

    auto idx = [](int i, int j) { return (unsigned char)(i * (i - 1) / 2 + (j - 1)); };
    const Scalar qm2 = Scalar::q_power(-4);
    const Scalar qinv = Scalar::q_power(-2);
    const Scalar qhat = Scalar::q_power(2) - Scalar::q_power(-2);   // q - q^-1
    const Scalar qhat2 = Scalar::q_power(4) - Scalar::q_power(-4);  // q^2 - q^-2

    std::vector<RewriteRule> rules;
    for (int i2 = 1; i2 <= n; ++i2)
        for (int j2 = 1; j2 <= i2; ++j2)
            for (int i1 = 1; i1 <= n; ++i1)
                for (int j1 = 1; j1 <= i1; ++j1) {
                    unsigned char hi = idx(i2, j2), lo = idx(i1, j1);
                    if (hi <= lo) continue;
                    RewriteRule r;
                    r.hi = hi;
                    r.lo = lo;
                    Word sorted{(char)lo, (char)hi};
                    bool diag1 = i1 == j1, diag2 = i2 == j2;
                    if (i1 == i2) {
                        // same row, j1 < j2
                        if (diag2) // z_ri z_rr = q^2 z_rr z_ri
                            r.rhs.emplace_back(qm2, sorted);
                        else       // z_rj z_rk = q z_rk z_rj, j < k < r
                            r.rhs.emplace_back(qinv, sorted);
                    } else if (j1 == j2) {
                        // same column, i1 < i2
                        if (diag1) // z_cc z_kc = q^2 z_kc z_cc
                            r.rhs.emplace_back(qm2, sorted);
                        else       // z_ic z_kc = q z_kc z_ic, c < i < k
                            r.rhs.emplace_back(qinv, sorted);
                    } else if (diag1 && diag2) {
                        // z_ii z_jj = z_jj z_ii + q(q^2-q^-2) z_ji^2, i < j
                        r.rhs.emplace_back(Scalar(1), sorted);
                        Word corr{(char)idx(i2, i1), (char)idx(i2, i1)};
                        r.rhs.emplace_back(-(Scalar::q_power(2) * qhat2), corr);
                    } else if (diag1) {
                        // lo = z_ii; hi = z_{i2 j2}, j2 != i
                        if (j2 > i1) {
                            // z_ii z_jk = z_jk z_ii + (q^2-q^-2) z_ki z_ji, i < k < j
                            r.rhs.emplace_back(Scalar(1), sorted);
                            Word corr{(char)idx(j2, i1), (char)idx(i2, i1)};
                            r.rhs.emplace_back(-qhat2, corr);
                        } else {
                            // j2 < i1: disjoint, commute (j < l <= k < i family)
                            r.rhs.emplace_back(Scalar(1), sorted);
                        }
                    } else if (diag2) {
                        // z_ik z_jj = z_jj z_ik + (q^2-q^-2) z_jk z_ji, k < i < j
                        r.rhs.emplace_back(Scalar(1), sorted);
                        Word corr{(char)idx(i2, j1), (char)idx(i2, i1)};
                        r.rhs.emplace_back(-qhat2, corr);
                    } else if (j1 > j2) {
                        // z_ij z_kl = z_kl z_ij, j < l <= k < i
                        r.rhs.emplace_back(Scalar(1), sorted);
                    } else if (i1 < j2) {
                        // z_ij z_kl = z_kl z_ij + (q-q^-1)(q z_li z_kj + z_ki z_lj),
                        // j < i < l < k
                        r.rhs.emplace_back(Scalar(1), sorted);
                        Word c1{(char)idx(j2, i1), (char)idx(i2, j1)};
                        r.rhs.emplace_back(-(qhat * Scalar::q_power(2)), c1);
                        Word c2{(char)idx(i2, i1), (char)idx(j2, j1)}; // descending; rewritten again
                        r.rhs.emplace_back(-qhat, c2);
                    } else if (i1 == j2) {
                        // z_ij z_kl = q z_kl z_ij + (q-q^-1) z_il z_kj, j < i = l < k
                        r.rhs.emplace_back(qinv, sorted);
                        Word corr{(char)idx(i1, i1), (char)idx(i2, j1)};
                        r.rhs.emplace_back(-(qinv * qhat), corr);
                    } else {
                        // z_ij z_kl = z_kl z_ij + (q-q^-1) z_il z_kj, j < l < i < k
                        r.rhs.emplace_back(Scalar(1), sorted);
                        Word corr{(char)idx(i1, j2), (char)idx(i2, j1)};
                        r.rhs.emplace_back(-qhat, corr);
                    }
                    rules.push_back(std::move(r));
                }
    return Presentation::create(std::move(names), std::move(rules));
}

} // namespace

AlgebraElement sym_det_principal(const QSymMatrixAlgebra& A, int m) {
    if (m < 0 || m > A.n) throw MathError("sym_det_principal: bad block size");
    if (m == 0) return AlgebraElement::unit(A.pres);
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i + 1;
    AlgebraElement acc(A.pres);
    do {
        long inv = 0, fixed = 0;
        for (int i = 0; i < m; ++i) {
            if (perm[i] == i + 1) ++fixed;
            for (int j = i + 1; j < m; ++j)
                if (perm[i] > perm[j]) ++inv;
        }
        // factors z_{s(m) m} ... z_{s(1) 1}, mirrored above the diagonal
        Scalar coef = minus_q_pow(-inv) * Scalar::q_power((int)(2 * (m - fixed)));
        Word w;
        for (int col = m; col >= 1; --col) {
            int row = perm[col - 1];
            if (row < col) {
                coef *= Scalar::q_power(-4);
                w.push_back((char)A.gen(col, row));
            } else {
                w.push_back((char)A.gen(row, col));
            }
        }
        acc += normal_form(A.pres, w, coef);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

AlgebraElement sym_det_minor_nn(const QSymMatrixAlgebra& A) {
    return sym_det_principal(A, A.n - 1);
}

const QSymMatrixAlgebra& qsymmatrix_algebra(int n) {
    if (n < 1 || n > 6) throw MathError("qsymmatrix_algebra: n out of supported range");
    static std::mutex mu;
    static std::map<int, QSymMatrixAlgebra> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    QSymMatrixAlgebra A;
    A.n = n;
    A.pres = build_qsym_presentation(n);
    A.sdet = sym_det_principal(A, n);
    A.loc = Localization::create(A.sdet);
    A.point_of_sdet = point_eval(A, A.sdet);
    if (A.point_of_sdet.is_zero()) throw MathError("p(det_q^sym) vanished");
    return cache.emplace(n, std::move(A)).first->second;
}

Scalar sym_det_commutant_scalar(const QSymMatrixAlgebra& A, int i, int j) {
    return A.loc->commutant(A.gen(i, j));
}

LocalizedElement star_seed(const QSymMatrixAlgebra& A) {
    return LocalizedElement(A.loc, sym_det_minor_nn(A), 1);
}

Scalar point_eval(const QSymMatrixAlgebra& A, const AlgebraElement& f) {
    Scalar acc(0);
    for (const auto& [w, c] : f.terms()) {
        Scalar prod = c;
        for (char gc : w) {
            unsigned char g = (unsigned char)gc;
            // invert the triangular index
            int i = 1;
            while ((size_t)i * (i + 1) / 2 <= g) ++i;
            int j = (int)(g - (size_t)i * (i - 1) / 2) + 1;
            if (i != j) {
                prod = Scalar(0);
                break;
            }
            prod *= Scalar::q_power(2 * (i - A.n));
        }
        acc += prod;
    }
    return acc;
}

Scalar point_eval(const QSymMatrixAlgebra& A, const LocalizedElement& f) {
    return point_eval(A, f.num()) * A.point_of_sdet.pow(-f.power());
}

} // namespace qshilov
