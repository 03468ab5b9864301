#include "qshilov/freealg.hpp"

#include <algorithm>
#include <sstream>

#include "qshilov/detail/lexer.hpp"

namespace qshilov {

long word_inversions(const Word& w) {
    long n = 0;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if ((unsigned char)w[i] > (unsigned char)w[j]) ++n;
    return n;
}

bool word_smaller(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    long ia = word_inversions(a), ib = word_inversions(b);
    if (ia != ib) return ia < ib;
    return a < b;
}

// --------------------------------------------------------------- Presentation

std::shared_ptr<const Presentation> Presentation::create(std::vector<std::string> names,
                                                         std::vector<RewriteRule> rules) {
    if (names.size() > 200) throw MathError("too many generators");
    auto p = std::shared_ptr<Presentation>(new Presentation());
    const size_t n = names.size();
    p->names_ = std::move(names);
    p->rules_.assign(n * n, {});
    std::vector<bool> seen(n * n, false);
    for (auto& r : rules) {
        if (r.hi >= n || r.lo >= n || r.hi <= r.lo)
            throw MathError("rule must rewrite a strictly descending pair");
        size_t idx = (size_t)r.hi * n + r.lo;
        if (seen[idx]) throw MathError("duplicate rule for pair (" +
                                       p->names_[r.hi] + ", " + p->names_[r.lo] + ")");
        seen[idx] = true;
        Word lhs;
        lhs.push_back((char)r.hi);
        lhs.push_back((char)r.lo);
        for (auto& [c, w] : r.rhs) {
            for (char g : w)
                if ((unsigned char)g >= n) throw MathError("rule rhs uses unknown generator");
            if (!word_smaller(w, lhs))
                throw MathError("non-terminating rule: rhs word not smaller for pair (" +
                                p->names_[r.hi] + ", " + p->names_[r.lo] + ")");
        }
        p->rules_[idx] = std::move(r.rhs);
    }
    for (unsigned hi = 1; hi < n; ++hi)
        for (unsigned lo = 0; lo < hi; ++lo)
            if (!seen[hi * n + lo])
                throw MathError("missing rule for pair (" + p->names_[hi] + ", " +
                                p->names_[lo] + ")");
    return p;
}

int Presentation::generator_index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return (int)i;
    return -1;
}

const std::vector<std::pair<Scalar, Word>>& Presentation::rule(unsigned char hi,
                                                               unsigned char lo) const {
    return rules_.at((size_t)hi * names_.size() + lo);
}

// ------------------------------------------------------------- AlgebraElement

AlgebraElement AlgebraElement::unit(PresPtr p) {
    AlgebraElement e(std::move(p));
    e.terms_.emplace(Word{}, Scalar(1));
    return e;
}

AlgebraElement AlgebraElement::generator(PresPtr p, size_t g) {
    if (g >= p->size()) throw MathError("generator index out of range");
    AlgebraElement e(std::move(p));
    e.terms_.emplace(Word(1, (char)g), Scalar(1));
    return e;
}

AlgebraElement AlgebraElement::monomial(PresPtr p, const Word& w, const Scalar& c) {
    return normal_form(std::move(p), w, c);
}

long AlgebraElement::degree() const {
    long d = -1;
    for (const auto& [w, c] : terms_) d = std::max(d, (long)w.size());
    return d;
}

bool AlgebraElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    size_t d = terms_.begin()->first.size();
    for (const auto& [w, c] : terms_)
        if (w.size() != d) return false;
    return true;
}

void AlgebraElement::add_term_raw(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {

void check_same_presentation(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.presentation() && b.presentation() && a.presentation() != b.presentation())
        throw MathError("elements belong to different presentations");
}

} // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    check_same_presentation(*this, o);
    if (!pres_) pres_ = o.pres_;
    if (&o == this) {
        for (auto& [w, c] : terms_) c *= Scalar(2);
        return *this;
    }
    for (const auto& [w, c] : o.terms_) add_term_raw(w, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    check_same_presentation(*this, o);
    if (!pres_) pres_ = o.pres_;
    if (&o == this) {
        terms_.clear();
        return *this;
    }
    for (const auto& [w, c] : o.terms_) add_term_raw(w, -c);
    return *this;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r(pres_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement r(pres_);
    if (c.is_zero()) return r;
    for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
    return r;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_presentation(a, b);
    PresPtr p = a.presentation() ? a.presentation() : b.presentation();
    AlgebraElement r(p);
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms())
            r += normal_form(p, wa + wb, ca * cb);
    return r;
}

AlgebraElement AlgebraElement::times_word(const Word& w) const {
    AlgebraElement r(pres_);
    for (const auto& [wa, ca] : terms_) r += normal_form(pres_, wa + w, ca);
    return r;
}

AlgebraElement AlgebraElement::word_times(const Word& w) const {
    AlgebraElement r(pres_);
    for (const auto& [wa, ca] : terms_) r += normal_form(pres_, w + wa, ca);
    return r;
}

AlgebraElement AlgebraElement::homogeneous_part(long d) const {
    AlgebraElement r(pres_);
    for (const auto& [w, c] : terms_)
        if ((long)w.size() == d) r.terms_.emplace(w, c);
    return r;
}

AlgebraElement AlgebraElement::mapped_coeffs(const std::function<Scalar(const Scalar&)>& f) const {
    AlgebraElement r(pres_);
    for (const auto& [w, c] : terms_) r.add_term_raw(w, f(c));
    return r;
}

// ----------------------------------------------------------------- rewriting

AlgebraElement normal_form(PresPtr p, const Word& w0, const Scalar& c0) {
    AlgebraElement out(p);
    if (c0.is_zero()) return out;
    for (char g : w0)
        if ((unsigned char)g >= p->size()) throw MathError("word uses unknown generator");

    // Leftmost-innermost: rewrite the first descending adjacent pair.
    std::vector<std::pair<Word, Scalar>> work;
    work.emplace_back(w0, c0);
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        size_t i = 0;
        bool reduced = false;
        for (; i + 1 < w.size(); ++i) {
            unsigned char hi = w[i], lo = w[i + 1];
            if (hi > lo) {
                for (const auto& [rc, rw] : p->rule(hi, lo)) {
                    Word nw;
                    nw.reserve(w.size() - 2 + rw.size());
                    nw.append(w, 0, i);
                    nw.append(rw);
                    nw.append(w, i + 2, Word::npos);
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

std::vector<OverlapFailure> confluence_check(const PresPtr& p, int max_degree) {
    if (max_degree < 3) throw MathError("confluence_check requires max_degree >= 3");
    std::vector<OverlapFailure> failures;
    const size_t n = p->size();
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < a; ++b)
            for (unsigned c = 0; c < b; ++c) {
                // overlap word a·b·c with a > b > c: both pairs rewritable
                Word w;
                w.push_back((char)a);
                w.push_back((char)b);
                w.push_back((char)c);
                AlgebraElement left(p), right(p);
                for (const auto& [rc, rw] : p->rule((unsigned char)a, (unsigned char)b))
                    left += normal_form(p, rw + Word(1, (char)c), rc);
                for (const auto& [rc, rw] : p->rule((unsigned char)b, (unsigned char)c))
                    right += normal_form(p, Word(1, (char)a) + rw, rc);
                if (left != right) failures.push_back({w, left, right});
            }
    return failures;
}

long graded_dimension(const PresPtr& p, int d) {
    if (d < 0) throw MathError("graded_dimension of negative degree");
    // Normal words are the non-decreasing sequences; count by walking them.
    long count = 0;
    std::function<void(unsigned, int)> walk = [&](unsigned min_g, int remaining) {
        if (remaining == 0) {
            ++count;
            return;
        }
        for (unsigned g = min_g; g < p->size(); ++g) walk(g, remaining - 1);
    };
    walk(0, d);
    return count;
}

// ------------------------------------------------------------------- text I/O

std::string render(const AlgebraElement& e) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        // pull a leading minus out of the coefficient for readability
        Scalar coef = c;
        bool neg = false;
        if (coef.num().leading_coeff() < 0) {
            neg = true;
            coef = -coef;
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string cs = render(coef);
        bool compound = !coef.is_polynomial() || coef.num().term_count() > 1;
        if (w.empty()) {
            os << (compound ? "(" + cs + ")" : cs);
            continue;
        }
        if (!coef.is_one()) os << (compound ? "(" + cs + ")" : cs) << " * ";
        bool first_gen = true;
        for (char g : w) {
            if (!first_gen) os << ".";
            first_gen = false;
            os << e.presentation()->name((unsigned char)g);
        }
    }
    return os.str();
}

// Generator names like "z[1][2]" come out of the lexer as Name followed by
// bracketed numbers; reassemble them here.
namespace {

using detail::Lexer;
using detail::Tok;

AlgebraElement parse_el_sum(const PresPtr& p, Lexer& lx);

AlgebraElement parse_el_atom(const PresPtr& p, Lexer& lx) {
    auto t = lx.next();
    switch (t.kind) {
        case Tok::Number: return AlgebraElement::unit(p).scaled(Scalar(t.value));
        case Tok::QPower:
            return AlgebraElement::unit(p).scaled(Scalar(LaurentPoly::monomial(t.expo, 1)));
        case Tok::Minus: return -parse_el_atom(p, lx);
        case Tok::LParen: {
            AlgebraElement e = parse_el_sum(p, lx);
            if (lx.next().kind != Tok::RParen) throw ParseError("expected ')'", t.pos);
            return e;
        }
        case Tok::Name: {
            std::string name = t.text;
            while (lx.peek().kind == Tok::LBracket) {
                lx.next();
                auto num = lx.next();
                if (num.kind != Tok::Number) throw ParseError("expected index", num.pos);
                auto rb = lx.next();
                if (rb.kind != Tok::RBracket) throw ParseError("expected ']'", rb.pos);
                name += "[" + num.value.get_str() + "]";
            }
            int g = p->generator_index(name);
            if (g < 0) throw ParseError("unknown generator '" + name + "'", t.pos);
            AlgebraElement e = AlgebraElement::generator(p, (size_t)g);
            while (lx.peek().kind == Tok::Dot) {
                lx.next();
                e = e * parse_el_atom(p, lx);
            }
            return e;
        }
        default: throw ParseError("unexpected token in element", t.pos);
    }
}

AlgebraElement parse_el_factor(const PresPtr& p, Lexer& lx) {
    AlgebraElement e = parse_el_atom(p, lx);
    while (lx.peek().kind == Tok::Caret) {
        lx.next();
        auto t = lx.next();
        if (t.kind != Tok::Number || t.value.get_den() != 1)
            throw ParseError("expected nonnegative integer exponent", t.pos);
        long k = t.value.get_num().get_si();
        AlgebraElement r = AlgebraElement::unit(p);
        for (long i = 0; i < k; ++i) r = r * e;
        e = r;
    }
    return e;
}

AlgebraElement parse_el_product(const PresPtr& p, Lexer& lx) {
    AlgebraElement e = parse_el_factor(p, lx);
    while (lx.peek().kind == Tok::Star) {
        lx.next();
        e = e * parse_el_factor(p, lx);
    }
    return e;
}

AlgebraElement parse_el_sum(const PresPtr& p, Lexer& lx) {
    AlgebraElement e = parse_el_product(p, lx);
    while (true) {
        if (lx.peek().kind == Tok::Plus) {
            lx.next();
            e += parse_el_product(p, lx);
        } else if (lx.peek().kind == Tok::Minus) {
            lx.next();
            e -= parse_el_product(p, lx);
        } else {
            return e;
        }
    }
}

} // namespace

AlgebraElement parse_element(const PresPtr& p, const std::string& text) {
    detail::Lexer lx(text);
    AlgebraElement e = parse_el_sum(p, lx);
    if (lx.peek().kind != Tok::End)
        throw ParseError("trailing input after element", lx.peek().pos);
    return e;
}

} // namespace qshilov
