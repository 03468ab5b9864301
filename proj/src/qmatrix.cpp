#include "qshilov/qmatrix.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qshilov {

size_t QMatrixAlgebra::gen(int a, int b) const {
    if (a < 1 || a > n || b < 1 || b > n) throw MathError("z index out of range");
    return (size_t)(a - 1) * n + (b - 1);
}

AlgebraElement QMatrixAlgebra::z(int a, int b) const {
    return AlgebraElement::generator(pres, gen(a, b));
}

namespace {

PresPtr build_qmatrix_presentation(int n) {
    std::vector<std::string> names;
    names.reserve((size_t)n * n);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            names.push_back("z[" + std::to_string(a) + "][" + std::to_string(b) + "]");

    const Scalar qinv = Scalar::q_power(-2);
    const Scalar qhat = Scalar::q_power(2) - Scalar::q_power(-2);
    std::vector<RewriteRule> rules;
    auto idx = [n](int a, int b) { return (unsigned char)((a - 1) * n + (b - 1)); };
    for (int a2 = 1; a2 <= n; ++a2)
        for (int b2 = 1; b2 <= n; ++b2)
            for (int a1 = 1; a1 <= n; ++a1)
                for (int b1 = 1; b1 <= n; ++b1) {
                    unsigned char hi = idx(a2, b2), lo = idx(a1, b1);
                    if (hi <= lo) continue;
                    RewriteRule r;
                    r.hi = hi;
                    r.lo = lo;
                    Word sorted{(char)lo, (char)hi};
                    if (a1 == a2 || b1 == b2) {
                        r.rhs.emplace_back(qinv, sorted);
                    } else if (a1 < a2 && b1 > b2) {
                        r.rhs.emplace_back(Scalar(1), sorted);
                    } else {
                        // a1 < a2, b1 < b2 (hi is row-major larger, so a2 >= a1)
                        r.rhs.emplace_back(Scalar(1), sorted);
                        Word corr{(char)idx(a1, b2), (char)idx(a2, b1)};
                        r.rhs.emplace_back(-qhat, corr);
                    }
                    rules.push_back(std::move(r));
                }
    return Presentation::create(std::move(names), std::move(rules));
}

} // namespace

AlgebraElement q_minor(const QMatrixAlgebra& A, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw MathError("q_minor: index sets of unequal size");
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 1 || rows[i] > A.n || cols[i] < 1 || cols[i] > A.n)
            throw MathError("q_minor: index out of range");
        if (i > 0 && (rows[i] <= rows[i - 1] || cols[i] <= cols[i - 1]))
            throw MathError("q_minor: index sets must be strictly increasing");
    }
    const size_t k = rows.size();
    AlgebraElement acc(A.pres);
    if (k == 0) return AlgebraElement::unit(A.pres);
    std::vector<size_t> perm(k);
    for (size_t i = 0; i < k; ++i) perm[i] = i;
    do {
        long inv = 0;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inv;
        Word w;
        w.reserve(k);
        for (size_t i = 0; i < k; ++i) w.push_back((char)A.gen(rows[i], cols[perm[i]]));
        acc += normal_form(A.pres, w, minus_q_pow(inv));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

const QMatrixAlgebra& qmatrix_algebra(int n) {
    if (n < 1 || n > 6) throw MathError("qmatrix_algebra: n out of supported range");
    static std::mutex mu;
    static std::map<int, QMatrixAlgebra> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    QMatrixAlgebra A;
    A.n = n;
    A.pres = build_qmatrix_presentation(n);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    A.det = q_minor(A, all, all);
    A.loc = Localization::create(A.det);
    A.point_of_det = Scalar::q_power(-n * (n - 1));
    return cache.emplace(n, std::move(A)).first->second;
}

Scalar det_commutant_scalar(const QMatrixAlgebra& A, int a, int b) {
    return A.loc->commutant(A.gen(a, b));
}

LocalizedElement star_generator(const QMatrixAlgebra& A, int a, int b) {
    A.gen(a, b); // range check
    std::vector<int> rows, cols;
    for (int i = 1; i <= A.n; ++i) {
        if (i != a) rows.push_back(i);
        if (i != b) cols.push_back(i);
    }
    AlgebraElement minor = q_minor(A, rows, cols);
    return LocalizedElement(A.loc, minor, 1).scaled(minus_q_pow(a + b - 2 * A.n));
}

namespace {

// star(det_q z) = sigma·det^{-1}; computed once per n.
const LocalizedElement& star_of_det(const QMatrixAlgebra& A) {
    static std::mutex mu;
    static std::map<int, LocalizedElement> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(A.n);
    if (it != cache.end()) return it->second;
    LocalizedElement acc = LocalizedElement::zero(A.loc);
    for (const auto& [w, c] : A.det.terms()) {
        LocalizedElement prod = LocalizedElement::unit(A.loc);
        for (auto g = w.rbegin(); g != w.rend(); ++g) {
            unsigned char gi = (unsigned char)*g;
            prod = prod * star_generator(A, (int)(gi / A.n) + 1, (int)(gi % A.n) + 1);
        }
        acc = acc + prod.scaled(c.conj());
    }
    return cache.emplace(A.n, std::move(acc)).first->second;
}

} // namespace

LocalizedElement star(const QMatrixAlgebra& A, const LocalizedElement& f) {
    LocalizedElement acc = LocalizedElement::zero(A.loc);
    for (const auto& [w, c] : f.num().terms()) {
        LocalizedElement prod = LocalizedElement::unit(A.loc);
        for (auto g = w.rbegin(); g != w.rend(); ++g) {
            unsigned char gi = (unsigned char)*g;
            prod = prod * star_generator(A, (int)(gi / A.n) + 1, (int)(gi % A.n) + 1);
        }
        acc = acc + prod.scaled(c.conj());
    }
    // star(D^{-m}) = star(D)^{-m}
    return acc * star_of_det(A).pow(-f.power());
}

Scalar point_eval(const QMatrixAlgebra& A, const AlgebraElement& f) {
    Scalar acc(0);
    for (const auto& [w, c] : f.terms()) {
        Scalar prod = c;
        for (char gc : w) {
            unsigned char g = (unsigned char)gc;
            int a = (int)(g / A.n) + 1, b = (int)(g % A.n) + 1;
            if (a != b) {
                prod = Scalar(0);
                break;
            }
            prod *= Scalar::q_power(2 * (a - A.n));
        }
        acc += prod;
    }
    return acc;
}

Scalar point_eval(const QMatrixAlgebra& A, const LocalizedElement& f) {
    return point_eval(A, f.num()) * A.point_of_det.pow(-f.power());
}

} // namespace qshilov
