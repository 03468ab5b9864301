#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qshilov/uqaction.hpp"

using namespace qshilov;

namespace {
Scalar qp(int h) { return Scalar::q_power(h); }
}

TEST_CASE("generator action table entries") {
    const auto& A = qmatrix_algebra(2);
    const auto& t = an_action(2);
    size_t znn = A.gen(2, 2);
    // E_n z_n^n = -q^{1/2} (z_n^n)^2
    CHECK(t.e_image(2, znn) == (A.z(2, 2) * A.z(2, 2)).scaled(-qp(1)));
    // F_n z_n^n = q^{1/2} · 1
    CHECK(t.f_image(2, znn) == AlgebraElement::unit(A.pres).scaled(qp(1)));
    // K_n eigenvalues
    CHECK(t.k_eigen(2, znn) == qp(4));
    CHECK(t.k_eigen(2, A.gen(1, 2)) == qp(2));
    CHECK(t.k_eigen(2, A.gen(1, 1)) == Scalar(1));
    // E_n z_1^1 = -q^{1/2} q^{-1} z_1^2 z_2^1
    CHECK(t.e_image(2, A.gen(1, 1)) == (A.z(1, 2) * A.z(2, 1)).scaled(-qp(-1)));
}

TEST_CASE("Leibniz rule through the coproduct") {
    const auto& A = qmatrix_algebra(2);
    const auto& t = an_action(2);
    // K_n(z_1^1 z_2^2) = q^2 z_1^1 z_2^2
    AlgebraElement f = A.z(1, 1) * A.z(2, 2);
    CHECK(act(t, ChevOp::Kp(2), f) == f.scaled(qp(4)));
    // E(fg) = (Ef)g + (Kf)(Eg) on a raw word
    Word w{(char)A.gen(1, 1), (char)A.gen(2, 2)};
    AlgebraElement lhs = act_word(t, ChevOp::E(2), w);
    AlgebraElement rhs =
        t.e_image(2, A.gen(1, 1)) * A.z(2, 2) +
        (A.z(1, 1) * t.e_image(2, A.gen(2, 2))).scaled(t.k_eigen(2, A.gen(1, 1)));
    CHECK(lhs == rhs);
}

TEST_CASE("module-algebra property holds for the paper tables") {
    CHECK(verify_module_algebra(an_action(2)).empty());
    CHECK(verify_module_algebra(cn_action(2)).empty());
}

TEST_CASE("flipped sign in a table entry is detected") {
    const auto& A = qmatrix_algebra(2);
    ActionTable t = an_action(2); // copy
    size_t znn = A.gen(2, 2);
    t.set_e(2, znn, (A.z(2, 2) * A.z(2, 2)).scaled(qp(1))); // sign flipped
    CHECK_FALSE(verify_module_algebra(t).empty());
}

TEST_CASE("Serre, commutator and K-conjugation identities") {
    CHECK(verify_serre_and_commutator(an_action(2), 2).empty());
    CHECK(verify_serre_and_commutator(cn_action(2), 1).empty());
}

TEST_CASE("commuting nodes") {
    // a_ij = 0: E_i E_j - E_j E_i vanishes as an operator on generators
    const auto& t = an_action(2);
    const auto& A = qmatrix_algebra(2);
    for (size_t g = 0; g < A.pres->size(); ++g) {
        AlgebraElement f = AlgebraElement::generator(A.pres, g);
        CHECK(act(t, ChevOp::E(1), act(t, ChevOp::E(3), f)) ==
              act(t, ChevOp::E(3), act(t, ChevOp::E(1), f)));
    }
}

TEST_CASE("weights") {
    const auto& A = qmatrix_algebra(2);
    const auto& t = an_action(2);
    auto w1 = weight_of(t, AlgebraElement::unit(A.pres));
    for (const auto& s : w1) CHECK(s == Scalar(1));

    auto w2 = weight_of(t, A.z(2, 2));
    CHECK(w2[0] == qp(-2)); // K_1
    CHECK(w2[1] == qp(4));  // K_n
    CHECK(w2[2] == qp(-2)); // K_3

    CHECK_THROWS_AS(weight_of(t, A.z(1, 1) + A.z(2, 2)), MathError);
    CHECK_THROWS_AS(weight_of(t, AlgebraElement::zero(A.pres)), MathError);
}

TEST_CASE("F_n annihilates every generator except the corner") {
    for (int n : {2, 3}) {
        const auto& A = qmatrix_algebra(n);
        const auto& t = an_action(n);
        for (size_t g = 0; g < A.pres->size(); ++g) {
            bool corner = g == A.gen(n, n);
            CHECK(t.f_image(n, g).is_zero() == !corner);
        }
        const auto& S = qsymmatrix_algebra(n);
        const auto& tc = cn_action(n);
        for (size_t g = 0; g < S.pres->size(); ++g) {
            bool corner = g == S.gen(n, n);
            CHECK(tc.f_image(n, g).is_zero() == !corner);
        }
    }
}

TEST_CASE("derive_star reproduces the closed A_n involution") {
    for (int n : {1, 2}) {
        const auto& A = qmatrix_algebra(n);
        const auto& t = an_action(n);
        auto derived = derive_star(t, A.loc, {{A.gen(n, n), star_generator(A, n, n)}});
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                CHECK(derived[A.gen(a, b)] == star_generator(A, a, b));
    }
}

TEST_CASE("derive_star on the symmetric algebra (regression values)") {
    const auto& A = qsymmatrix_algebra(2);
    const auto& t = cn_action(2);
    auto derived = derive_star(t, A.loc, {{A.gen(2, 2), star_seed(A)}});
    CHECK(derived[A.gen(2, 2)] == LocalizedElement(A.loc, A.z(1, 1), 1));
    CHECK(derived[A.gen(2, 1)] ==
          LocalizedElement(A.loc, A.z(2, 1), 1).scaled(-qp(-2)));
    CHECK(derived[A.gen(1, 1)] ==
          LocalizedElement(A.loc, A.z(2, 2), 1).scaled(qp(-4)));

    // involutivity of the derived star, extended anti-homomorphically
    auto star_el = [&](const LocalizedElement& f) {
        LocalizedElement acc = LocalizedElement::zero(A.loc);
        for (const auto& [w, c] : f.num().terms()) {
            LocalizedElement prod = LocalizedElement::unit(A.loc);
            for (auto g = w.rbegin(); g != w.rend(); ++g)
                prod = prod * derived[(unsigned char)*g];
            acc = acc + prod.scaled(c.conj());
        }
        LocalizedElement sd = LocalizedElement::zero(A.loc);
        for (const auto& [w, c] : A.sdet.terms()) {
            LocalizedElement prod = LocalizedElement::unit(A.loc);
            for (auto g = w.rbegin(); g != w.rend(); ++g)
                prod = prod * derived[(unsigned char)*g];
            sd = sd + prod.scaled(c.conj());
        }
        return acc * sd.pow(-f.power());
    };
    for (size_t g = 0; g < A.pres->size(); ++g) {
        LocalizedElement zg(A.loc, AlgebraElement::generator(A.pres, g), 0);
        CHECK(star_el(derived[g]) == zg);
    }
    // p is a *-character for the derived star as well
    for (size_t g = 0; g < A.pres->size(); ++g) {
        LocalizedElement zg(A.loc, AlgebraElement::generator(A.pres, g), 0);
        CHECK(point_eval(A, derived[g]) == point_eval(A, zg));
    }
}

TEST_CASE("derive_star flags inconsistent seeds") {
    const auto& A = qmatrix_algebra(2);
    const auto& t = an_action(2);
    // seed both the corner and a wrong value for z_1^1
    std::vector<std::pair<size_t, LocalizedElement>> seeds = {
        {A.gen(2, 2), star_generator(A, 2, 2)},
        {A.gen(1, 1), star_generator(A, 1, 1).scaled(qp(2))}};
    CHECK_THROWS_AS(derive_star(t, A.loc, seeds), MathError);
}

TEST_CASE("localized action requires an invariant denominator") {
    const auto& A = qmatrix_algebra(2);
    LocalizedAction lact(an_action(2), A.loc);
    LocalizedElement dinv = LocalizedElement::den_power(A.loc, -1);
    // j != n acts trivially on det powers
    CHECK(lact.act(ChevOp::E(1), dinv).is_zero());
    CHECK(lact.act(ChevOp::Kp(1), dinv) == dinv);
    // node n is rejected: E_n det != 0
    CHECK_THROWS_AS(lact.act(ChevOp::E(2), dinv), MathError);
}
