#include "qshilov/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qshilov/detail/lexer.hpp"

namespace qshilov {

long rat_floor(const Rat& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw MathError("rat_floor: out of range");
    return q.get_si();
}

Rat parse_rat(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw MathError("bad rational literal: " + text);
    r.canonicalize();
    return r;
}

bool grlex_less(const Expo& a, const Expo& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a < b;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(const Expo& e, const Rat& c) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(e, c);
    return p;
}

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Expo{} &&
           terms_.begin()->second == 1;
}

bool LaurentPoly::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Expo{});
}

const Expo& LaurentPoly::leading_expo() const {
    if (terms_.empty()) throw MathError("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (grlex_less(best->first, it->first)) best = it;
    return best->first;
}

const Rat& LaurentPoly::leading_coeff() const {
    return terms_.at(leading_expo());
}

Expo LaurentPoly::min_expo() const {
    if (terms_.empty()) return Expo{};
    Expo m = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        m.s = std::min(m.s, e.s);
        m.u = std::min(m.u, e.u);
        m.v = std::min(m.v, e.v);
    }
    return m;
}

long LaurentPoly::degree_in(int var) const {
    long d = 0;
    for (const auto& [e, c] : terms_) {
        long k = var == 0 ? e.s : var == 1 ? e.u : e.v;
        d = std::max(d, k);
    }
    return d;
}

bool LaurentPoly::uses_params() const {
    for (const auto& [e, c] : terms_)
        if (e.u != 0 || e.v != 0) return true;
    return false;
}

void LaurentPoly::add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (&o == this) {
        for (auto& [e, c] : terms_) c *= 2;
        return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    if (&o == this) {
        terms_.clear();
        return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term(Expo{ea.s + eb.s, ea.u + eb.u, ea.v + eb.v}, ca * cb);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::shifted(const Expo& by) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(Expo{e.s + by.s, e.u + by.u, e.v + by.v}, c);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
    LaurentPoly r;
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

LaurentPoly LaurentPoly::mapped(const std::function<Expo(const Expo&)>& f) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add_term(f(e), c);
    return r;
}

// ------------------------------------------------------------- gcd machinery
//
// gcd over Q[s,u,v].  Univariate pairs use monic Euclid; multivariate pairs
// use primitive PRS in a common variable of smallest degree, collapsing via
// contents when the variable supports are disjoint.  All helpers assume
// nonnegative exponents.

namespace {

int get_var(const Expo& e, int var) { return var == 0 ? e.s : var == 1 ? e.u : e.v; }

Expo with_var(Expo e, int var, int k) {
    (var == 0 ? e.s : var == 1 ? e.u : e.v) = k;
    return e;
}

// Coefficient of x_var^k, as a polynomial in the remaining variables.
LaurentPoly coeff_of(const LaurentPoly& p, int var, int k) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms())
        if (get_var(e, var) == k) r.add_term(with_var(e, var, 0), c);
    return r;
}

LaurentPoly times_var_power(const LaurentPoly& p, int var, int k) {
    Expo sh{};
    (var == 0 ? sh.s : var == 1 ? sh.u : sh.v) = k;
    return p.shifted(sh);
}

LaurentPoly make_monic(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(Rat(1) / p.leading_coeff());
}

bool only_var(const LaurentPoly& p, int var) {
    for (const auto& [e, c] : p.terms())
        for (int x = 0; x < 3; ++x)
            if (x != var && get_var(e, x) != 0) return false;
    return true;
}

// Euclid with monic remainders for polynomials in the single variable var.
LaurentPoly gcd_univar(LaurentPoly a, LaurentPoly b, int var) {
    while (!b.is_zero()) {
        long db = b.degree_in(var);
        Rat lcb = b.terms().at(with_var(Expo{}, var, (int)db));
        while (!a.is_zero() && a.degree_in(var) >= db) {
            long da = a.degree_in(var);
            Rat lca = a.terms().at(with_var(Expo{}, var, (int)da));
            a -= times_var_power(b, var, (int)(da - db)).scaled(lca / lcb);
        }
        std::swap(a, b);
        b = make_monic(b);
    }
    return make_monic(a);
}

LaurentPoly gcd_multi(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly content_in(const LaurentPoly& p, int var) {
    LaurentPoly g;
    for (long k = 0; k <= p.degree_in(var); ++k) {
        LaurentPoly c = coeff_of(p, var, (int)k);
        if (c.is_zero()) continue;
        g = g.is_zero() ? make_monic(c) : gcd_multi(g, c);
        if (g.is_rational()) break;
    }
    return g;
}

// Pseudo-remainder of a by b in the variable var: lc(b)^(da-db+1) a = q b + r.
LaurentPoly prem(LaurentPoly a, const LaurentPoly& b, int var) {
    long db = b.degree_in(var);
    LaurentPoly lcb = coeff_of(b, var, (int)db);
    while (!a.is_zero()) {
        long da = a.degree_in(var);
        if (da < db) break;
        LaurentPoly lca = coeff_of(a, var, (int)da);
        a = a * lcb - times_var_power(lca * b, var, (int)(da - db));
    }
    return a;
}

LaurentPoly gcd_multi(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_rational() || b.is_rational()) return LaurentPoly::one();

    long da[3], db[3];
    for (int x = 0; x < 3; ++x) {
        da[x] = a.degree_in(x);
        db[x] = b.degree_in(x);
    }
    // A common divisor is free of every variable appearing on one side only;
    // collapse those through contents so the PRS runs on a shared support.
    for (int x = 0; x < 3; ++x) {
        if (da[x] > 0 && db[x] == 0) return gcd_multi(content_in(a, x), b);
        if (db[x] > 0 && da[x] == 0) return gcd_multi(a, content_in(b, x));
    }
    int main_var = -1;
    long best = 0;
    for (int x = 0; x < 3; ++x) {
        if (da[x] > 0 && db[x] > 0) {
            long m = std::min(da[x], db[x]);
            if (main_var < 0 || m < best) {
                main_var = x;
                best = m;
            }
        }
    }
    if (main_var < 0) return LaurentPoly::one();
    if (only_var(a, main_var) && only_var(b, main_var))
        return gcd_univar(a, b, main_var);

    LaurentPoly cont_a = content_in(a, main_var);
    LaurentPoly cont_b = content_in(b, main_var);
    LaurentPoly A = poly_div_exact(a, cont_a);
    LaurentPoly B = poly_div_exact(b, cont_b);
    if (A.degree_in(main_var) < B.degree_in(main_var)) std::swap(A, B);
    while (!B.is_zero()) {
        LaurentPoly r = prem(A, B, main_var);
        A = B;
        if (r.is_zero()) {
            B = LaurentPoly::zero();
        } else if (r.degree_in(main_var) == 0) {
            // Nonzero remainder of degree 0: primitive parts are coprime.
            A = LaurentPoly::one();
            B = LaurentPoly::zero();
        } else {
            B = poly_div_exact(r, content_in(r, main_var));
        }
    }
    LaurentPoly g = gcd_multi(cont_a, cont_b);
    if (!A.is_rational()) g = g * poly_div_exact(A, content_in(A, main_var));
    return make_monic(g);
}

} // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    return gcd_multi(a, b);
}

LaurentPoly poly_div_exact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    LaurentPoly rem = a, quot;
    const Expo lb = b.leading_expo();
    const Rat& cb = b.leading_coeff();
    while (!rem.is_zero()) {
        Expo la = rem.leading_expo();
        Expo m{la.s - lb.s, la.u - lb.u, la.v - lb.v};
        if (m.s < 0 || m.u < 0 || m.v < 0)
            throw MathError("inexact polynomial division");
        Rat c = rem.leading_coeff() / cb;
        quot.add_term(m, c);
        rem -= b.shifted(m).scaled(c);
    }
    return quot;
}

// --------------------------------------------------------------------- Scalar

Scalar::Scalar(const Rat& r)
    : num_(LaurentPoly::monomial(Expo{}, r)), den_(LaurentPoly::one()) {}

Scalar::Scalar(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw MathError("scalar with zero denominator");
    normalize();
}

Scalar Scalar::q_power(int half_exponent) {
    return Scalar(LaurentPoly::monomial(Expo{half_exponent, 0, 0}, 1));
}

Scalar Scalar::u_power(int k) {
    return Scalar(LaurentPoly::monomial(Expo{0, k, 0}, 1));
}

Scalar Scalar::v_power(int k) {
    return Scalar(LaurentPoly::monomial(Expo{0, 0, k}, 1));
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly::one();
        return;
    }
    // Strip monomial units so gcd runs on genuine polynomials.
    Expo sn = num_.min_expo(), sd = den_.min_expo();
    LaurentPoly N = num_.shifted(Expo{-sn.s, -sn.u, -sn.v});
    LaurentPoly D = den_.shifted(Expo{-sd.s, -sd.u, -sd.v});
    if (!N.is_rational() && !D.is_rational()) {
        LaurentPoly g = poly_gcd(N, D);
        if (!g.is_one()) {
            N = poly_div_exact(N, g);
            D = poly_div_exact(D, g);
            Expo en = N.min_expo(), ed = D.min_expo();
            N = N.shifted(Expo{-en.s, -en.u, -en.v});
            D = D.shifted(Expo{-ed.s, -ed.u, -ed.v});
            sn.s += en.s; sn.u += en.u; sn.v += en.v;
            sd.s += ed.s; sd.u += ed.u; sd.v += ed.v;
        }
    }
    Rat lc = D.leading_coeff();
    num_ = N.scaled(Rat(1) / lc).shifted(Expo{sn.s - sd.s, sn.u - sd.u, sn.v - sd.v});
    den_ = D.scaled(Rat(1) / lc);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.den_ == b.den_) return Scalar(a.num_ - b.num_, a.den_);
    return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.den_.is_one() && b.den_.is_one()) {
        Scalar r;
        r.num_ = a.num_ * b.num_;
        return r;
    }
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

Scalar Scalar::inv() const {
    if (is_zero()) throw MathError("inversion of zero scalar");
    return Scalar(den_, num_);
}

Scalar Scalar::pow(long e) const {
    if (e == 0) return Scalar(1);
    Scalar base = e < 0 ? inv() : *this;
    unsigned long k = (unsigned long)(e < 0 ? -e : e);
    Scalar acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Scalar Scalar::conj() const {
    if (uses_params())
        throw MathError("conjugation of parameter-dependent scalar is numeric-only");
    return *this; // q real: rational coefficients and s-powers are fixed
}

Scalar Scalar::mapped(const std::function<Expo(const Expo&)>& f) const {
    return Scalar(num_.mapped(f), den_.mapped(f));
}

Scalar Scalar::swap_params(int n) const {
    return mapped([n](const Expo& e) {
        return Expo{e.s - 2 * n * (e.u + e.v), -e.v, -e.u};
    });
}

Scalar Scalar::substitute_integer_params(long a0, long b0) const {
    return mapped([a0, b0](const Expo& e) {
        return Expo{(int)(e.s + 2 * a0 * e.u + 2 * b0 * e.v), 0, 0};
    });
}

namespace {

std::complex<double> eval_poly(const LaurentPoly& p, const NumericParams& np) {
    const double pi = 3.14159265358979323846264338327950288;
    std::complex<double> acc = 0;
    double ax = Rat(np.alpha_x).get_d(), ay = Rat(np.alpha_y).get_d();
    double bx = Rat(np.beta_x).get_d(), by = Rat(np.beta_y).get_d();
    for (const auto& [e, c] : p.terms()) {
        double mag = std::pow(np.q, e.s / 2.0 + ax * e.u + bx * e.v);
        double arg = -pi / 2.0 * (ay * e.u + by * e.v);
        acc += c.get_d() * mag * std::polar(1.0, arg);
    }
    return acc;
}

double poly_eval_scale(const LaurentPoly& p, const NumericParams& np) {
    double scale = 0;
    double ax = Rat(np.alpha_x).get_d(), bx = Rat(np.beta_x).get_d();
    for (const auto& [e, c] : p.terms()) {
        double mag = std::pow(np.q, e.s / 2.0 + ax * e.u + bx * e.v);
        scale += std::abs(c.get_d()) * mag;
    }
    return scale;
}

std::string render_poly(const LaurentPoly& p);

} // namespace

std::complex<double> Scalar::evaluate(const NumericParams& p) const {
    if (p.q <= 0.0 || p.q >= 1.0) throw MathError("q must lie in (0,1)");
    std::complex<double> d = eval_poly(den_, p);
    double scale = poly_eval_scale(den_, p);
    if (std::abs(d) <= 1e-12 * std::max(scale, 1e-300))
        throw MathError("pole at specialization point: denominator " +
                        render_poly(den_) + " vanishes");
    return eval_poly(num_, p) / d;
}

// ------------------------------------------------------------ q-combinatorics

Scalar minus_q_pow(long k) {
    Scalar s = Scalar::q_power((int)(2 * k));
    return (k % 2 == 0) ? s : -s;
}

Scalar q_int(long n, int d) {
    if (n < 0) throw MathError("q_int of negative integer");
    LaurentPoly p;
    for (long j = 0; j < n; ++j)
        p.add_term(Expo{(int)(2 * d * (n - 1 - 2 * j)), 0, 0}, 1);
    return Scalar(p);
}

Scalar q_factorial(long n, int d) {
    if (n < 0) throw MathError("q_factorial of negative integer");
    Scalar r(1);
    for (long j = 2; j <= n; ++j) r *= q_int(j, d);
    return r;
}

Scalar q_binomial(long m, long n, int d) {
    if (n < 0 || n > m) throw MathError("q_binomial requires 0 <= n <= m");
    return q_factorial(m, d) / (q_factorial(n, d) * q_factorial(m - n, d));
}

// ------------------------------------------------------------------- text I/O

namespace {

void append_power(std::ostringstream& os, const char* sym, int k, bool& first) {
    if (k == 0) return;
    if (!first) os << " * ";
    first = false;
    if (std::string(sym) == "q") {
        // k counts half-powers of q
        if (k == 2) { os << "q"; return; }
        if (k % 2 == 0) { os << "q^" << k / 2; return; }
        os << "q^(" << k << "/2)";
        return;
    }
    if (k == 1) { os << "q^" << sym; return; }
    if (k == -1) { os << "q^(-" << sym << ")"; return; }
    os << "q^(" << k << sym << ")";
}

std::string render_mono(const Expo& e, const Rat& c) {
    std::ostringstream os;
    bool first = true;
    Rat a = c < 0 ? Rat(-c) : c;
    if (a != 1 || (e.s == 0 && e.u == 0 && e.v == 0)) {
        os << a.get_str();
        first = false;
    }
    append_power(os, "q", e.s, first);
    append_power(os, "a", e.u, first);
    append_power(os, "b", e.v, first);
    return os.str();
}

namespace {
std::vector<std::pair<Expo, Rat>> sorted_terms(const LaurentPoly& p) {
    std::vector<std::pair<Expo, Rat>> ts(p.terms().begin(), p.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
        return grlex_less(y.first, x.first); // descending
    });
    return ts;
}
} // namespace

std::string render_poly(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted_terms(p)) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << render_mono(e, c);
    }
    return os.str();
}

} // namespace

std::string render(const Scalar& s) {
    if (s.is_polynomial()) return render_poly(s.num());
    return "(" + render_poly(s.num()) + ") / (" + render_poly(s.den()) + ")";
}

namespace {

using detail::Lexer;
using detail::Tok;

Scalar parse_sc_sum(Lexer& lx);

Scalar parse_sc_atom(Lexer& lx) {
    auto t = lx.next();
    switch (t.kind) {
        case Tok::Number: return Scalar(t.value);
        case Tok::QPower: return Scalar(LaurentPoly::monomial(t.expo, 1));
        case Tok::Minus: return -parse_sc_atom(lx);
        case Tok::LParen: {
            Scalar s = parse_sc_sum(lx);
            if (lx.next().kind != Tok::RParen) throw ParseError("expected ')'", t.pos);
            return s;
        }
        default: throw ParseError("unexpected token in scalar", t.pos);
    }
}

Scalar parse_sc_factor(Lexer& lx) {
    Scalar s = parse_sc_atom(lx);
    while (lx.peek().kind == Tok::Caret) {
        lx.next();
        bool neg = false;
        if (lx.peek().kind == Tok::Minus) {
            lx.next();
            neg = true;
        }
        auto t = lx.next();
        if (t.kind != Tok::Number || t.value.get_den() != 1)
            throw ParseError("expected integer exponent", t.pos);
        long e = t.value.get_num().get_si();
        s = s.pow(neg ? -e : e);
    }
    return s;
}

Scalar parse_sc_product(Lexer& lx) {
    Scalar s = parse_sc_factor(lx);
    while (true) {
        if (lx.peek().kind == Tok::Star) {
            lx.next();
            s *= parse_sc_factor(lx);
        } else if (lx.peek().kind == Tok::Slash) {
            lx.next();
            s = s / parse_sc_factor(lx);
        } else {
            return s;
        }
    }
}

Scalar parse_sc_sum(Lexer& lx) {
    Scalar s = parse_sc_product(lx);
    while (true) {
        if (lx.peek().kind == Tok::Plus) {
            lx.next();
            s += parse_sc_product(lx);
        } else if (lx.peek().kind == Tok::Minus) {
            lx.next();
            s -= parse_sc_product(lx);
        } else {
            return s;
        }
    }
}

} // namespace

Scalar parse_scalar(const std::string& text) {
    detail::Lexer lx(text);
    Scalar s = parse_sc_sum(lx);
    if (lx.peek().kind != Tok::End)
        throw ParseError("trailing input after scalar", lx.peek().pos);
    return s;
}

} // namespace qshilov
