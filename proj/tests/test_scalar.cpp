#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qshilov/linalg.hpp"
#include "qshilov/scalar.hpp"

using namespace qshilov;

namespace {

Scalar qp(int half) { return Scalar::q_power(half); }

// Random scalar from a small pool of building blocks; products/sums thereof.
Scalar random_scalar(std::mt19937& rng, bool with_params = true) {
    std::uniform_int_distribution<int> pick(0, 5), exp(-3, 3), coef(-4, 4);
    Scalar s(coef(rng));
    for (int i = 0; i < 3; ++i) {
        switch (pick(rng)) {
            case 0: s += qp(exp(rng)); break;
            case 1: s *= qp(2 * exp(rng)); break;
            case 2: s += Scalar(coef(rng)) * qp(exp(rng)); break;
            case 3:
                if (with_params) s *= Scalar::u_power(exp(rng));
                break;
            case 4:
                if (with_params) s += Scalar::v_power(exp(rng));
                break;
            default: {
                Scalar d = Scalar(1) - qp(2 * (1 + std::abs(exp(rng))));
                s = s / d;
                break;
            }
        }
    }
    return s;
}

} // namespace

TEST_CASE("field identities") {
    Scalar one_minus_q2 = Scalar(1) - qp(4);
    CHECK(one_minus_q2 * one_minus_q2.inv() == Scalar(1));
    CHECK(qp(1) * qp(1) == qp(2)); // q^(1/2) * q^(1/2) = q
    // u * v at alpha = beta = 0 specializes to 1
    NumericParams p;
    p.q = 0.5;
    auto z = (Scalar::u_power(1) * Scalar::v_power(1)).evaluate(p);
    CHECK(std::abs(z - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("canonical form is stable under commutation and cancellation") {
    std::mt19937 rng(42);
    for (int i = 0; i < 60; ++i) {
        Scalar a = random_scalar(rng), b = random_scalar(rng);
        CHECK(a * b == b * a);
        CHECK((a + (-a)).is_zero());
        CHECK(a + b == b + a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("inversion of zero errors") {
    CHECK_THROWS_AS(Scalar(0).inv(), MathError);
    Scalar z = qp(2) - qp(2);
    CHECK_THROWS_AS(z.inv(), MathError);
}

TEST_CASE("q-integers and q-binomials") {
    CHECK(q_int(2) == qp(2) + qp(-2));
    CHECK(q_binomial(1, 0) == Scalar(1));
    Scalar expected = (qp(4) + Scalar(1) + qp(-4)) * (qp(2) + qp(-2));
    CHECK(q_factorial(3) == expected);
    CHECK(q_int(0).is_zero());
    CHECK(q_int(1) == Scalar(1));
    CHECK_THROWS_AS(q_binomial(1, 2), MathError);
    CHECK_THROWS_AS(q_binomial(2, -1), MathError);
    // q_i = q^2 variant
    CHECK(q_int(2, 2) == qp(4) + qp(-4));
}

TEST_CASE("q-binomials are Laurent polynomials") {
    for (int d : {1, 2})
        for (long m = 0; m <= 6; ++m)
            for (long n = 0; n <= m; ++n) {
                Scalar b = q_binomial(m, n, d);
                CHECK(b.is_polynomial());
            }
}

TEST_CASE("numeric specialization") {
    NumericParams p;
    p.q = 0.5;
    CHECK(std::abs(q_int(2).evaluate(p) - 2.5) < 1e-12);

    NumericParams pa = p;
    pa.alpha_x = 1;
    CHECK(std::abs(Scalar::u_power(1).evaluate(pa) - 0.5) < 1e-12);

    NumericParams pb = p;
    pb.alpha_y = 1; // alpha = i pi/h: q^alpha = e^{-i pi/2} = -i
    auto z = Scalar::u_power(1).evaluate(pb);
    CHECK(std::abs(z - std::complex<double>(0, -1)) < 1e-12);
}

TEST_CASE("specialization is a ring homomorphism") {
    std::mt19937 rng(7);
    NumericParams p;
    p.q = 0.37;
    p.alpha_x = Rat(1, 3);
    p.alpha_y = Rat(1, 2);
    p.beta_x = Rat(-2, 5);
    p.beta_y = Rat(3, 2);
    for (int i = 0; i < 40; ++i) {
        Scalar a = random_scalar(rng), b = random_scalar(rng);
        auto va = a.evaluate(p), vb = b.evaluate(p);
        auto vab = (a * b).evaluate(p);
        double scale = std::max(1.0, std::abs(va * vb));
        CHECK(std::abs(vab - va * vb) < 1e-12 * scale);
        auto vsum = (a + b).evaluate(p);
        CHECK(std::abs(vsum - (va + vb)) < 1e-12 * std::max(1.0, std::abs(va + vb)));
    }
}

TEST_CASE("pole detection at specialization") {
    Scalar s = Scalar(1) / (Scalar(1) - Scalar::u_power(2));
    NumericParams p;
    p.q = 0.5; // alpha = 0 -> u = 1 -> pole of 1/(1-u^2)
    CHECK_THROWS_AS(s.evaluate(p), MathError);
    p.alpha_x = Rat(1, 3);
    CHECK_NOTHROW(s.evaluate(p));
}

TEST_CASE("parameter substitutions") {
    // swap: u -> q^{-n} v^{-1}, v -> q^{-n} u^{-1}
    Scalar uv = Scalar::u_power(1) * Scalar::v_power(1);
    Scalar swapped = uv.swap_params(2);
    CHECK(swapped == qp(-8) * uv.inv());
    // integer specialization u -> q^2, v -> q^{-1}
    Scalar s = Scalar::u_power(1) + Scalar::v_power(2);
    CHECK(s.substitute_integer_params(2, -1) == qp(4) + qp(-4));
}

TEST_CASE("conjugation is identity on parameter-free scalars") {
    Scalar s = qp(3) - Scalar(2) * qp(-1);
    CHECK(s.conj() == s);
    CHECK_THROWS_AS(Scalar::u_power(1).conj(), MathError);
}

TEST_CASE("text round-trip") {
    std::mt19937 rng(99);
    for (int i = 0; i < 80; ++i) {
        Scalar s = random_scalar(rng);
        CHECK(parse_scalar(render(s)) == s);
    }
    CHECK(render(qp(2)) == "q");
    CHECK(render(qp(1)) == "q^(1/2)");
    CHECK(render(Scalar::u_power(1)) == "q^a");
    CHECK(render(Scalar::v_power(-1)) == "q^(-b)");
    CHECK(parse_scalar("q + q^-1") == q_int(2));
    CHECK(parse_scalar("(1 - q^2) / (1 - q^-2)") ==
          (Scalar(1) - qp(4)) / (Scalar(1) - qp(-4)));
}

TEST_CASE("solve_linear basics") {
    using Status = SolveResult::Status;
    SUBCASE("identity system") {
        std::vector<std::vector<Scalar>> a = {{Scalar(1), Scalar(0)},
                                              {Scalar(0), Scalar(1)}};
        auto r = solve_linear(a, {Scalar(1), qp(2)});
        REQUIRE(r.status == Status::Unique);
        CHECK(r.solution[0] == Scalar(1));
        CHECK(r.solution[1] == qp(2));
    }
    SUBCASE("1x1 with polynomial coefficient") {
        Scalar c = Scalar(1) - qp(4);
        auto r = solve_linear({{c}}, {c});
        REQUIRE(r.status == Status::Unique);
        CHECK(r.solution[0] == Scalar(1));
    }
    SUBCASE("singular inconsistent") {
        std::vector<std::vector<Scalar>> a = {{Scalar(1), Scalar(1)},
                                              {Scalar(2), Scalar(2)}};
        auto r = solve_linear(a, {Scalar(1), Scalar(3)});
        CHECK(r.status == Status::Inconsistent);
    }
    SUBCASE("underdetermined consistent") {
        std::vector<std::vector<Scalar>> a = {{Scalar(1), Scalar(1)}};
        auto r = solve_linear(a, {Scalar(2)});
        REQUIRE(r.status == Status::Underdetermined);
        CHECK(r.rank == 1);
        CHECK(r.solution[0] + r.solution[1] == Scalar(2));
    }
}

TEST_CASE("solve_linear random round-trip") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        size_t n = 3;
        std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n, Scalar(0)));
        std::vector<Scalar> x(n);
        for (size_t i = 0; i < n; ++i) {
            x[i] = qp(coef(rng)) * Scalar(coef(rng));
            for (size_t j = 0; j < n; ++j) a[i][j] = Scalar(coef(rng)) + qp(2) * Scalar(coef(rng));
        }
        std::vector<Scalar> rhs(n, Scalar(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) rhs[i] += a[i][j] * x[j];
        auto r = solve_linear(a, rhs);
        REQUIRE(r.ok());
        if (r.status == SolveResult::Status::Unique)
            for (size_t i = 0; i < n; ++i) CHECK(r.solution[i] == x[i]);
    }
}
