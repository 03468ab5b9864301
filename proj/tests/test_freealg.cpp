#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qshilov/freealg.hpp"
#include "qshilov/qmatrix.hpp"
#include "qshilov/qsymmatrix.hpp"

using namespace qshilov;

namespace {

Scalar qp(int h) { return Scalar::q_power(h); }

// 2x2 quantum matrix presentation in the t_ij letters of the classical
// relation system; same shape as the z-relations.
PresPtr tmatrix2() {
    std::vector<std::string> names = {"t[1][1]", "t[1][2]", "t[2][1]", "t[2][2]"};
    auto idx = [](int i, int j) { return (unsigned char)(2 * (i - 1) + (j - 1)); };
    Scalar qinv = qp(-2), qhat = qp(2) - qp(-2);
    std::vector<RewriteRule> rules;
    for (int i2 = 1; i2 <= 2; ++i2)
        for (int j2 = 1; j2 <= 2; ++j2)
            for (int i1 = 1; i1 <= 2; ++i1)
                for (int j1 = 1; j1 <= 2; ++j1) {
                    unsigned char hi = idx(i2, j2), lo = idx(i1, j1);
                    if (hi <= lo) continue;
                    RewriteRule r{hi, lo, {}};
                    Word sorted{(char)lo, (char)hi};
                    if (i1 == i2 || j1 == j2) {
                        r.rhs.emplace_back(qinv, sorted);
                    } else if (j1 > j2) {
                        r.rhs.emplace_back(Scalar(1), sorted);
                    } else {
                        r.rhs.emplace_back(Scalar(1), sorted);
                        r.rhs.emplace_back(-qhat, Word{(char)idx(i1, j2), (char)idx(i2, j1)});
                    }
                    rules.push_back(std::move(r));
                }
    return Presentation::create(std::move(names), std::move(rules));
}

} // namespace

TEST_CASE("normal form straightens the quantum matrix relations") {
    PresPtr p = tmatrix2();
    auto t = [&](int i, int j) { return Word(1, (char)(2 * (i - 1) + (j - 1))); };

    // t21·t11 -> q^{-1} t11 t21 (same column)
    AlgebraElement r1 = normal_form(p, t(2, 1) + t(1, 1));
    AlgebraElement e1 = normal_form(p, t(1, 1) + t(2, 1), qp(-2));
    CHECK(r1 == e1);

    // t12·t21 -> t21 t12 (antidiagonal commute)... stored ascending as t12.t21
    AlgebraElement r2 = normal_form(p, t(2, 1) + t(1, 2));
    CHECK(r2 == normal_form(p, t(1, 2) + t(2, 1)));

    // t22·t11 -> t11 t22 - (q - q^-1) t12 t21
    AlgebraElement r3 = normal_form(p, t(2, 2) + t(1, 1));
    AlgebraElement e3 = normal_form(p, t(1, 1) + t(2, 2)) -
                        normal_form(p, t(1, 2) + t(2, 1), qp(2) - qp(-2));
    CHECK(r3 == e3);
}

TEST_CASE("multiplication basics") {
    const auto& A = qmatrix_algebra(2);
    AlgebraElement one = AlgebraElement::unit(A.pres);
    AlgebraElement z11 = A.z(1, 1), z12 = A.z(1, 2);
    CHECK(one * z11 == z11);
    CHECK(z11 * z11 == normal_form(A.pres, Word{(char)0, (char)0}));
    // z_1^2 · z_1^1 = q^{-1} z_1^1 z_1^2 (same row)
    CHECK(z12 * z11 == normal_form(A.pres, Word{(char)0, (char)1}, qp(-2)));
}

TEST_CASE("presentation mismatch is an error") {
    const auto& A2 = qmatrix_algebra(2);
    PresPtr other = tmatrix2();
    AlgebraElement a = A2.z(1, 1), b = AlgebraElement::generator(other, 0);
    CHECK_THROWS_AS(a * b, MathError);
    CHECK_THROWS_AS(a + b, MathError);
}

TEST_CASE("rules violating the termination order are rejected at construction") {
    std::vector<std::string> names = {"x", "y"};
    std::vector<RewriteRule> rules;
    RewriteRule r{1, 0, {}};
    r.rhs.emplace_back(Scalar(1), Word{(char)1, (char)0}); // y·x -> y·x : not smaller
    rules.push_back(r);
    CHECK_THROWS_AS(Presentation::create(names, rules), MathError);

    std::vector<RewriteRule> missing; // no rule at all for (y,x)
    CHECK_THROWS_AS(Presentation::create(names, missing), MathError);
}

TEST_CASE("confluence of the quantum matrix presentations") {
    CHECK(confluence_check(qmatrix_algebra(2).pres, 3).empty());
    CHECK(confluence_check(qsymmatrix_algebra(2).pres, 3).empty());
    CHECK_THROWS_AS(confluence_check(qmatrix_algebra(2).pres, 2), MathError);
}

TEST_CASE("corrupted rule is caught by the confluence check") {
    // Dropping the exchange correction outright still leaves a confluent
    // (multiparameter quantum matrix) system, so corrupt a straightening
    // coefficient instead: t12·t11 -> q^{-2} t11 t12 while columns keep q^{-1}.
    std::vector<std::string> names = {"t[1][1]", "t[1][2]", "t[2][1]", "t[2][2]"};
    auto idx = [](int i, int j) { return (unsigned char)(2 * (i - 1) + (j - 1)); };
    Scalar qinv = qp(-2), qhat = qp(2) - qp(-2);
    std::vector<RewriteRule> rules;
    for (int i2 = 1; i2 <= 2; ++i2)
        for (int j2 = 1; j2 <= 2; ++j2)
            for (int i1 = 1; i1 <= 2; ++i1)
                for (int j1 = 1; j1 <= 2; ++j1) {
                    unsigned char hi = idx(i2, j2), lo = idx(i1, j1);
                    if (hi <= lo) continue;
                    RewriteRule r{hi, lo, {}};
                    Word sorted{(char)lo, (char)hi};
                    if (i1 == i2 || j1 == j2) {
                        bool corrupt = (i2 == 1 && j2 == 2 && i1 == 1 && j1 == 1);
                        r.rhs.emplace_back(corrupt ? qp(-4) : qinv, sorted);
                    } else if (j1 > j2) {
                        r.rhs.emplace_back(Scalar(1), sorted);
                    } else {
                        r.rhs.emplace_back(Scalar(1), sorted);
                        r.rhs.emplace_back(-qhat, Word{(char)idx(i1, j2), (char)idx(i2, j1)});
                    }
                    rules.push_back(std::move(r));
                }
    PresPtr bad = Presentation::create(std::move(names), std::move(rules));
    CHECK_FALSE(confluence_check(bad, 3).empty());
}

TEST_CASE("associativity on generator triples when confluent") {
    for (int n = 1; n <= 3; ++n) {
        for (PresPtr p : {qmatrix_algebra(n).pres, qsymmatrix_algebra(n).pres}) {
            for (size_t a = 0; a < p->size(); ++a)
                for (size_t b = 0; b < p->size(); ++b)
                    for (size_t c = 0; c < p->size(); ++c) {
                        AlgebraElement ga = AlgebraElement::generator(p, a);
                        AlgebraElement gb = AlgebraElement::generator(p, b);
                        AlgebraElement gc = AlgebraElement::generator(p, c);
                        CHECK((ga * gb) * gc == ga * (gb * gc));
                    }
        }
    }
}

TEST_CASE("lex tie-break in the termination order") {
    // same length and inversion count: the rhs must be lex-smaller
    std::vector<std::string> names = {"w", "x", "y", "z"};
    auto rule = [](unsigned hi, unsigned lo, Word rhs) {
        RewriteRule r{(unsigned char)hi, (unsigned char)lo, {}};
        r.rhs.emplace_back(Scalar(1), std::move(rhs));
        return r;
    };
    // (z,x) -> y·w is fine ([2,0] < [3,1] lex at equal inversions) but
    // (y,w) -> z·x is not
    CHECK(word_smaller(Word{(char)2, (char)0}, Word{(char)3, (char)1}));
    std::vector<RewriteRule> bad;
    for (unsigned hi = 1; hi < 4; ++hi)
        for (unsigned lo = 0; lo < hi; ++lo) {
            if (hi == 2 && lo == 0)
                bad.push_back(rule(hi, lo, Word{(char)3, (char)1}));
            else
                bad.push_back(rule(hi, lo, Word{(char)lo, (char)hi}));
        }
    CHECK_THROWS_AS(Presentation::create(names, bad), MathError);
}

namespace {

// Test-only oracle: rightmost-innermost reduction, independent of the
// engine's leftmost strategy.
AlgebraElement rightmost_normal_form(const PresPtr& p, const Word& w0) {
    AlgebraElement out(p);
    std::vector<std::pair<Word, Scalar>> work{{w0, Scalar(1)}};
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        bool reduced = false;
        for (size_t i = w.size(); i-- > 1;) {
            unsigned char hi = w[i - 1], lo = w[i];
            if (hi > lo) {
                for (const auto& [rc, rw] : p->rule(hi, lo)) {
                    Word nw = w.substr(0, i - 1);
                    nw += rw;
                    nw += w.substr(i + 1);
                    work.emplace_back(std::move(nw), c * rc);
                }
                reduced = true;
                break;
            }
        }
        if (!reduced) out.add_term_raw(w, c);
    }
    return out;
}

} // namespace

TEST_CASE("left and right reduction strategies agree on random words") {
    std::mt19937 rng(2024);
    for (int n = 2; n <= 3; ++n) {
        for (PresPtr p : {qmatrix_algebra(n).pres, qsymmatrix_algebra(n).pres}) {
            std::uniform_int_distribution<int> len(0, 6), gen(0, (int)p->size() - 1);
            for (int trial = 0; trial < 40; ++trial) {
                Word w;
                int L = len(rng);
                for (int i = 0; i < L; ++i) w.push_back((char)gen(rng));
                CHECK(normal_form(p, w) == rightmost_normal_form(p, w));
            }
        }
    }
}

TEST_CASE("strategy independence on degree-4 words") {
    const auto& A = qsymmatrix_algebra(2);
    // multiply in two different association orders
    std::vector<size_t> gens = {0, 1, 2};
    for (size_t a : gens)
        for (size_t b : gens)
            for (size_t c : gens)
                for (size_t d : gens) {
                    auto g = [&](size_t i) { return AlgebraElement::generator(A.pres, i); };
                    CHECK(((g(a) * g(b)) * (g(c) * g(d))) ==
                          (g(a) * (g(b) * (g(c) * g(d)))));
                }
}

TEST_CASE("graded dimensions match commutative counts") {
    CHECK(graded_dimension(qmatrix_algebra(2).pres, 2) == 10); // C(4+2-1,2)
    CHECK(graded_dimension(qmatrix_algebra(2).pres, 0) == 1);
    CHECK(graded_dimension(qsymmatrix_algebra(2).pres, 2) == 6); // C(3+2-1,2)
    auto binom = [](long n, long k) {
        long r = 1;
        for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (int n = 1; n <= 3; ++n)
        for (int d = 0; d <= 4; ++d) {
            long nv = (long)n * n;
            CHECK(graded_dimension(qmatrix_algebra(n).pres, d) == binom(nv + d - 1, d));
            long sv = (long)n * (n + 1) / 2;
            CHECK(graded_dimension(qsymmatrix_algebra(n).pres, d) == binom(sv + d - 1, d));
        }
}

TEST_CASE("element text round-trip") {
    const auto& A = qmatrix_algebra(2);
    AlgebraElement e = A.z(2, 2) * A.z(1, 1);
    std::string s = render(e);
    CHECK(s == "z[1][1].z[2][2] - (q - q^-1) * z[1][2].z[2][1]");
    CHECK(parse_element(A.pres, s) == e);

    AlgebraElement f = A.det.scaled(qp(-1)) + AlgebraElement::unit(A.pres).scaled(Scalar(3));
    CHECK(parse_element(A.pres, render(f)) == f);

    CHECK(parse_element(A.pres, "z[2][2]*z[1][1]") == e);
    CHECK_THROWS_AS(parse_element(A.pres, "z[3][1]"), ParseError);
    CHECK_THROWS_AS(parse_element(A.pres, "z[1][1] +"), ParseError);
    CHECK(render(AlgebraElement::zero(A.pres)) == "0");
}

TEST_CASE("empty word is the unit") {
    const auto& A = qmatrix_algebra(2);
    AlgebraElement u = normal_form(A.pres, Word{});
    CHECK(u == AlgebraElement::unit(A.pres));
    CHECK(u.degree() == 0);
    CHECK((u.scaled(qp(2)) * u.scaled(qp(-2))) == u);
}
