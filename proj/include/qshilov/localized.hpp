#pragma once

// Localization of a presented algebra at a single quasi-central element D:
// every generator g must satisfy D·g = sigma_g·g·D for a scalar sigma_g
// (computed and verified at construction).  Elements are numerator·D^{-m}
// with m >= 0; m is kept minimal by exact division, which is solved
// coefficient-wise per graded component.

#include <memory>
#include <optional>
#include <vector>

#include "qshilov/freealg.hpp"
#include "qshilov/linalg.hpp"

namespace qshilov {

class Localization;
using LocPtr = std::shared_ptr<const Localization>;

class Localization {
public:
    // Throws MathError (with the offending residual rendered) when D fails
    // to quasi-commute with some generator.
    static LocPtr create(AlgebraElement den);

    const PresPtr& presentation() const { return den_.presentation(); }
    const AlgebraElement& den() const { return den_; }
    const Scalar& commutant(size_t g) const { return commutant_.at(g); }
    // Product of commutant scalars over the letters of w.
    Scalar commutant_of_word(const Word& w) const;
    bool central() const { return central_; }

private:
    Localization() = default;
    AlgebraElement den_;
    std::vector<Scalar> commutant_;
    bool central_ = true;
};

class LocalizedElement {
public:
    LocalizedElement() = default;
    LocalizedElement(LocPtr loc, AlgebraElement num, long power = 0);

    static LocalizedElement zero(LocPtr loc);
    static LocalizedElement unit(LocPtr loc);
    // D^{-1} and general D^k for k of either sign.
    static LocalizedElement den_power(LocPtr loc, long k);

    const LocPtr& localization() const { return loc_; }
    const AlgebraElement& num() const { return num_; }
    long power() const { return power_; }
    bool is_zero() const { return num_.is_zero(); }

    LocalizedElement operator-() const;
    friend LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b);
    friend LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b);
    friend LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b);
    LocalizedElement scaled(const Scalar& c) const;
    // Exact equality (cross-multiplied; no division needed).
    friend bool operator==(const LocalizedElement& a, const LocalizedElement& b);
    friend bool operator!=(const LocalizedElement& a, const LocalizedElement& b) {
        return !(a == b);
    }

    // Minimal denominator power; divides the numerator by D while possible.
    LocalizedElement canonical() const;
    // If this element equals c·D^j, return its inverse; nullopt otherwise.
    std::optional<LocalizedElement> inverse_if_den_monomial() const;
    LocalizedElement pow(long e) const; // requires den-monomial shape for e<0

private:
    LocPtr loc_;
    AlgebraElement num_;
    long power_ = 0;
};

// Exact division f = q·D in the presented algebra (solves the linear system
// per graded component); returns nullopt when D does not divide f.
std::optional<AlgebraElement> divide_exact(const AlgebraElement& f, const AlgebraElement& d);

std::string render(const LocalizedElement& e);

} // namespace qshilov
