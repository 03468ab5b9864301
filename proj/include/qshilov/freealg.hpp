#pragma once

// Engine for finitely presented quadratic algebras with PBW-style
// straightening: words in ordered generators, rewriting of out-of-order
// adjacent pairs to normal form, diamond-lemma confluence checking, and
// graded dimension counts.
//
// A normal word is a non-decreasing sequence of generator indices.  Every
// strictly descending adjacent pair (hi, lo) must carry exactly one rewrite
// rule whose right-hand side is strictly smaller in the termination order
// (length, then inversion count, then lex).

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qshilov/scalar.hpp"

namespace qshilov {

// A word in the generators; each char is a generator index.
using Word = std::string;

long word_inversions(const Word& w);
// Termination order: (length, inversions, lex).
bool word_smaller(const Word& a, const Word& b);

// Shortlex; used as the term order inside elements (deterministic rendering).
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

struct RewriteRule {
    unsigned char hi = 0, lo = 0; // applies to the 2-letter word hi·lo, hi > lo
    std::vector<std::pair<Scalar, Word>> rhs;
};

class Presentation {
public:
    // Validates: every descending pair covered exactly once, generators in
    // range, every rule decreasing in the termination order.  Throws
    // MathError otherwise.
    static std::shared_ptr<const Presentation> create(std::vector<std::string> names,
                                                      std::vector<RewriteRule> rules);

    size_t size() const { return names_.size(); }
    const std::string& name(size_t g) const { return names_.at(g); }
    int generator_index(const std::string& name) const; // -1 if unknown
    const std::vector<std::pair<Scalar, Word>>& rule(unsigned char hi,
                                                     unsigned char lo) const;

private:
    Presentation() = default;
    std::vector<std::string> names_;
    std::vector<std::vector<std::pair<Scalar, Word>>> rules_; // hi*N+lo
};

using PresPtr = std::shared_ptr<const Presentation>;

class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(PresPtr p) : pres_(std::move(p)) {}

    static AlgebraElement zero(PresPtr p) { return AlgebraElement(std::move(p)); }
    static AlgebraElement unit(PresPtr p);
    static AlgebraElement generator(PresPtr p, size_t g);
    // Normal form of an arbitrary word with coefficient.
    static AlgebraElement monomial(PresPtr p, const Word& w, const Scalar& c = Scalar(1));

    const PresPtr& presentation() const { return pres_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, Scalar, WordLess>& terms() const { return terms_; }
    long degree() const; // max word length, -1 for zero
    bool is_homogeneous() const;

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement operator-() const;
    AlgebraElement scaled(const Scalar& c) const;
    friend AlgebraElement operator*(const Scalar& c, const AlgebraElement& a) { return a.scaled(c); }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

    // Right/left multiplication by a raw word (normalizes the result).
    AlgebraElement times_word(const Word& w) const;
    AlgebraElement word_times(const Word& w) const;

    // Keep only terms of the given degree.
    AlgebraElement homogeneous_part(long d) const;
    // Apply f to every coefficient (dropping zeros).
    AlgebraElement mapped_coeffs(const std::function<Scalar(const Scalar&)>& f) const;

    void add_term_raw(const Word& normal_word, const Scalar& c); // w must be normal

private:
    PresPtr pres_;
    std::map<Word, Scalar, WordLess> terms_;
};

// Rewrite a raw word (times coefficient) to normal form.
AlgebraElement normal_form(PresPtr p, const Word& w, const Scalar& c = Scalar(1));

struct OverlapFailure {
    Word word; // the degree-3 overlap a·b·c
    // normal forms obtained by resolving the left pair first / right pair first
    AlgebraElement via_left, via_right;
};

// Diamond-lemma audit: resolves every degree-3 overlap ambiguity both ways
// and returns the mismatches (empty means locally, hence globally, confluent
// for a quadratic system).  max_degree must be >= 3; critical pairs of a
// quadratic system all live in degree 3.
std::vector<OverlapFailure> confluence_check(const PresPtr& p, int max_degree = 3);

// Number of normal words of length d, by enumeration.
long graded_dimension(const PresPtr& p, int d);

// Element text format: "c1 * g1.g2 + c2 * g3 - ..." with scalar rendering
// from scalar.hpp; parse accepts general +,-,*,^ expressions over generator
// names, 'det'-style names resolved by the caller via the name table.
std::string render(const AlgebraElement& e);
AlgebraElement parse_element(const PresPtr& p, const std::string& text);

} // namespace qshilov
