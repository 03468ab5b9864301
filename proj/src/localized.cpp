#include "qshilov/localized.hpp"

#include <functional>

namespace qshilov {

// ---------------------------------------------------------------- Localization

LocPtr Localization::create(AlgebraElement den) {
    if (den.is_zero()) throw MathError("cannot localize at zero");
    auto loc = std::shared_ptr<Localization>(new Localization());
    loc->den_ = std::move(den);
    const PresPtr& p = loc->den_.presentation();
    loc->commutant_.reserve(p->size());
    for (size_t g = 0; g < p->size(); ++g) {
        Word gw(1, (char)g);
        AlgebraElement dg = loc->den_.times_word(gw);  // D·g
        AlgebraElement gd = loc->den_.word_times(gw);  // g·D
        if (gd.is_zero()) throw MathError("localization denominator is a zero divisor");
        const auto& [w0, c0] = *gd.terms().begin();
        auto it = dg.terms().find(w0);
        if (it == dg.terms().end())
            throw MathError("denominator does not quasi-commute with " + p->name(g) +
                            "; residual " + render(dg - gd));
        Scalar sigma = it->second / c0;
        if (dg != gd.scaled(sigma))
            throw MathError("denominator does not quasi-commute with " + p->name(g) +
                            "; residual " + render(dg - gd.scaled(sigma)));
        if (!sigma.is_one()) loc->central_ = false;
        loc->commutant_.push_back(std::move(sigma));
    }
    return loc;
}

Scalar Localization::commutant_of_word(const Word& w) const {
    Scalar s(1);
    for (char g : w) s *= commutant_[(unsigned char)g];
    return s;
}

// ------------------------------------------------------------ LocalizedElement

LocalizedElement::LocalizedElement(LocPtr loc, AlgebraElement num, long power)
    : loc_(std::move(loc)), num_(std::move(num)), power_(power) {
    if (power_ < 0) {
        // fold negative denominator powers into the numerator
        AlgebraElement dpow = AlgebraElement::unit(loc_->presentation());
        for (long i = 0; i < -power_; ++i) dpow = dpow * loc_->den();
        num_ = num_ * dpow;
        power_ = 0;
    }
    if (num_.is_zero()) power_ = 0;
}

LocalizedElement LocalizedElement::zero(LocPtr loc) {
    auto p = loc->presentation();
    return LocalizedElement(std::move(loc), AlgebraElement::zero(p), 0);
}

LocalizedElement LocalizedElement::unit(LocPtr loc) {
    auto p = loc->presentation();
    return LocalizedElement(std::move(loc), AlgebraElement::unit(p), 0);
}

LocalizedElement LocalizedElement::den_power(LocPtr loc, long k) {
    auto p = loc->presentation();
    if (k >= 0) {
        AlgebraElement e = AlgebraElement::unit(p);
        for (long i = 0; i < k; ++i) e = e * loc->den();
        return LocalizedElement(std::move(loc), std::move(e), 0);
    }
    return LocalizedElement(std::move(loc), AlgebraElement::unit(p), -k);
}

LocalizedElement LocalizedElement::operator-() const {
    LocalizedElement r = *this;
    r.num_ = -r.num_;
    return r;
}

namespace {

void check_same_loc(const LocalizedElement& a, const LocalizedElement& b) {
    if (a.localization() && b.localization() && a.localization() != b.localization())
        throw MathError("localized elements over different localizations");
}

AlgebraElement raise_power(const Localization& loc, const AlgebraElement& e, long by) {
    AlgebraElement r = e;
    for (long i = 0; i < by; ++i) r = r * loc.den();
    return r;
}

} // namespace

LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
    check_same_loc(a, b);
    LocPtr loc = a.localization() ? a.localization() : b.localization();
    long m = std::max(a.power(), b.power());
    AlgebraElement na = raise_power(*loc, a.num(), m - a.power());
    AlgebraElement nb = raise_power(*loc, b.num(), m - b.power());
    return LocalizedElement(loc, na + nb, m);
}

LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) {
    return a + (-b);
}

LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
    check_same_loc(a, b);
    LocPtr loc = a.localization() ? a.localization() : b.localization();
    // (A·D^{-m})(B·D^{-k}) = A·(D^{-m} B)·D^{-m-k}; moving D^{-m} across a
    // word of B contributes commutant(word)^{-m}.
    AlgebraElement moved(loc->presentation());
    if (loc->central() || a.power() == 0) {
        moved = b.num();
    } else {
        for (const auto& [w, c] : b.num().terms())
            moved.add_term_raw(w, c * loc->commutant_of_word(w).pow(-a.power()));
    }
    return LocalizedElement(loc, a.num() * moved, a.power() + b.power());
}

LocalizedElement LocalizedElement::scaled(const Scalar& c) const {
    LocalizedElement r = *this;
    r.num_ = r.num_.scaled(c);
    if (r.num_.is_zero()) r.power_ = 0;
    return r;
}

bool operator==(const LocalizedElement& a, const LocalizedElement& b) {
    check_same_loc(a, b);
    if (a.power() == b.power()) return a.num() == b.num();
    LocPtr loc = a.localization() ? a.localization() : b.localization();
    long m = std::max(a.power(), b.power());
    return raise_power(*loc, a.num(), m - a.power()) ==
           raise_power(*loc, b.num(), m - b.power());
}

std::optional<AlgebraElement> divide_exact(const AlgebraElement& f, const AlgebraElement& d) {
    if (f.is_zero()) return AlgebraElement::zero(f.presentation());
    if (d.is_zero() || !d.is_homogeneous()) return std::nullopt;
    const PresPtr& p = f.presentation();
    long dd = d.degree();
    // Solve x·d = f_k per homogeneous component f_k.
    AlgebraElement quotient(p);
    long fmax = f.degree();
    for (long k = 0; k <= fmax; ++k) {
        AlgebraElement fk = f.homogeneous_part(k);
        if (fk.is_zero()) continue;
        long xd = k - dd;
        if (xd < 0) return std::nullopt;
        // basis of normal words of degree xd
        std::vector<Word> basis;
        Word w;
        std::function<void(unsigned, long)> walk = [&](unsigned min_g, long remaining) {
            if (remaining == 0) {
                basis.push_back(w);
                return;
            }
            for (unsigned g = min_g; g < p->size(); ++g) {
                w.push_back((char)g);
                walk(g, remaining - 1);
                w.pop_back();
            }
        };
        walk(0, xd);
        // images and equation rows
        std::map<Word, size_t, WordLess> row_of;
        std::vector<AlgebraElement> images;
        images.reserve(basis.size());
        for (const auto& bw : basis) {
            AlgebraElement img = d.word_times(bw);
            for (const auto& [iw, ic] : img.terms()) row_of.emplace(iw, row_of.size());
            images.push_back(std::move(img));
        }
        for (const auto& [fw, fc] : fk.terms()) row_of.emplace(fw, row_of.size());
        std::vector<std::vector<Scalar>> mat(row_of.size(),
                                             std::vector<Scalar>(basis.size(), Scalar(0)));
        std::vector<Scalar> rhs(row_of.size(), Scalar(0));
        for (size_t j = 0; j < basis.size(); ++j)
            for (const auto& [iw, ic] : images[j].terms()) mat[row_of[iw]][j] = ic;
        for (const auto& [fw, fc] : fk.terms()) rhs[row_of[fw]] = fc;
        auto sol = solve_linear(std::move(mat), std::move(rhs));
        if (!sol.ok()) return std::nullopt;
        for (size_t j = 0; j < basis.size(); ++j)
            if (!sol.solution[j].is_zero()) quotient.add_term_raw(basis[j], sol.solution[j]);
    }
    return quotient;
}

LocalizedElement LocalizedElement::canonical() const {
    LocalizedElement r = *this;
    while (r.power_ > 0) {
        auto q = divide_exact(r.num_, loc_->den());
        if (!q) break;
        r.num_ = std::move(*q);
        --r.power_;
    }
    return r;
}

std::optional<LocalizedElement> LocalizedElement::inverse_if_den_monomial() const {
    if (is_zero()) return std::nullopt;
    long dd = loc_->den().degree();
    long nd = num_.degree();
    if (nd % dd != 0) return std::nullopt;
    long j = nd / dd;
    AlgebraElement dj = AlgebraElement::unit(loc_->presentation());
    for (long i = 0; i < j; ++i) dj = dj * loc_->den();
    const auto& [w0, c0] = *num_.terms().begin();
    auto it = dj.terms().find(w0);
    if (it == dj.terms().end()) return std::nullopt;
    Scalar c = c0 / it->second;
    if (num_ != dj.scaled(c)) return std::nullopt;
    // (c·D^j·D^{-m})^{-1} = c^{-1}·D^{m-j}
    return LocalizedElement(loc_, AlgebraElement::unit(loc_->presentation()).scaled(c.inv()),
                            j - power_);
}

LocalizedElement LocalizedElement::pow(long e) const {
    if (e == 0) return unit(loc_);
    LocalizedElement base = *this;
    if (e < 0) {
        auto inv = inverse_if_den_monomial();
        if (!inv)
            throw MathError("cannot invert localized element (not a denominator monomial)");
        base = *inv;
        e = -e;
    }
    LocalizedElement acc = unit(loc_);
    for (long i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

std::string render(const LocalizedElement& e) {
    LocalizedElement c = e.canonical();
    if (c.power() == 0) return render(c.num());
    std::string inner = render(c.num());
    bool compound = c.num().terms().size() > 1;
    std::string head = compound ? "(" + inner + ")" : inner;
    if (c.num().terms().size() == 1 && c.num().terms().begin()->first.empty() &&
        c.num().terms().begin()->second.is_one())
        head.clear();
    std::string tail = "det^-" + std::to_string(c.power());
    return head.empty() ? tail : head + " * " + tail;
}

} // namespace qshilov
