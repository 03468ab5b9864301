#pragma once

// Exact coefficient arithmetic for the whole engine.
//
// The base field is Q(s, u, v), the fraction field of Laurent polynomials in
//   s  ... formal square root of q  (s^2 = q, so q^{1/2} = s, q^{-3/2} = s^-3)
//   u  ... q^alpha
//   v  ... q^beta
// with arbitrary-precision rational coefficients.  Exponents of s count
// half-powers of q: a monomial q^k is stored with s-exponent 2k.

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qshilov/error.hpp"

namespace qshilov {

using Rat = mpq_class;

long rat_floor(const Rat& x);
Rat parse_rat(const std::string& text);

// Exponent triple of a monomial s^s u^u v^v.
struct Expo {
    int s = 0;
    int u = 0;
    int v = 0;

    friend bool operator==(const Expo& a, const Expo& b) {
        return a.s == b.s && a.u == b.u && a.v == b.v;
    }
    // Plain lexicographic order; used as the map key order.
    friend bool operator<(const Expo& a, const Expo& b) {
        if (a.s != b.s) return a.s < b.s;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    }
    long total_degree() const { return (long)s + u + v; }
};

// Graded-lex order used for leading terms and canonical normalization.
bool grlex_less(const Expo& a, const Expo& b);

class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return monomial(Expo{}, 1); }
    static LaurentPoly monomial(const Expo& e, const Rat& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_rational() const;
    size_t term_count() const { return terms_.size(); }
    const std::map<Expo, Rat>& terms() const { return terms_; }

    // Leading monomial under grlex; poly must be nonzero.
    const Expo& leading_expo() const;
    const Rat& leading_coeff() const;

    // Componentwise minimum of exponents over all terms (0 for the zero poly).
    Expo min_expo() const;
    long degree_in(int var) const; // var: 0 = s, 1 = u, 2 = v
    bool uses_params() const;      // any nonzero u or v exponent?

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly operator-() const;
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    LaurentPoly shifted(const Expo& by) const;      // multiply by monomial s^.. u^.. v^..
    LaurentPoly scaled(const Rat& c) const;
    LaurentPoly mapped(const std::function<Expo(const Expo&)>& f) const;

    void add_term(const Expo& e, const Rat& c);

private:
    std::map<Expo, Rat> terms_; // no zero coefficients stored
};

// gcd of two polynomials with nonnegative exponents, normalized monic under
// grlex.  Returns 1 when either argument is a nonzero constant.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);
// Exact division; throws MathError if b does not divide a.
LaurentPoly poly_div_exact(const LaurentPoly& a, const LaurentPoly& b);

// Numeric specialization data: q in (0,1) and exact parameter descriptions
//   alpha = x + i y (pi/h),  q = e^{-h/2}, so q^alpha = q^x e^{-i pi y / 2}.
struct NumericParams {
    double q = 0.5;
    Rat alpha_x = 0, alpha_y = 0;
    Rat beta_x = 0, beta_y = 0;
};

// Element of the fraction field, kept in canonical reduced form: the
// denominator is a genuine polynomial (min exponent 0 in every variable),
// monic under grlex, coprime to the polynomial part of the numerator; all
// monomial units sit in the numerator.
class Scalar {
public:
    Scalar() : num_(), den_(LaurentPoly::one()) {}
    Scalar(int n) : Scalar(Rat(n)) {}
    Scalar(const Rat& r);
    Scalar(LaurentPoly num, LaurentPoly den);
    explicit Scalar(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}

    static Scalar q_power(int half_exponent);  // q^{half_exponent/2} = s^half_exponent
    static Scalar q_int_power(int k) { return q_power(2 * k); }
    static Scalar u_power(int k);
    static Scalar v_power(int k);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool uses_params() const { return num_.uses_params() || den_.uses_params(); }
    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inv() const;       // throws MathError on zero
    Scalar pow(long e) const; // integral powers, negative allowed for nonzero

    // Complex conjugation for real q.  Defined only for parameter-free
    // scalars (u, v conjugation is a numeric-specialization concern).
    Scalar conj() const;

    // Apply an exponent substitution to every monomial of num and den.
    Scalar mapped(const std::function<Expo(const Expo&)>& f) const;
    // u -> q^{-n} v^{-1}, v -> q^{-n} u^{-1}  (the partner substitution).
    Scalar swap_params(int n) const;
    // u -> q^{a0}, v -> q^{b0} for integers a0, b0 (exact specialization).
    Scalar substitute_integer_params(long a0, long b0) const;

    std::complex<double> evaluate(const NumericParams& p) const; // throws on pole

private:
    void normalize();
    LaurentPoly num_, den_;
};

// (-q)^k as a scalar.
Scalar minus_q_pow(long k);

// q-combinatorics; d selects q_i = q^d.
Scalar q_int(long n, int d = 1);
Scalar q_factorial(long n, int d = 1);
Scalar q_binomial(long m, long n, int d = 1); // requires 0 <= n <= m

// Text rendering / parsing; parse accepts any +,-,*,/,^ expression over
// rationals and q-power atoms and round-trips render exactly.
std::string render(const Scalar& s);
Scalar parse_scalar(const std::string& text);

} // namespace qshilov
