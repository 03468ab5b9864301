#pragma once

// The degenerate principal series pi_{alpha,beta} of U_q sl_{2n} on the
// localized quantum matrix algebra, with symbolic parameters u = q^alpha,
// v = q^beta: vectors are carried in the conjugation frame
//     (z-polynomial) · det^{alpha+c} · t^{alpha+beta},  c in Z,
// where det powers and t stay formal (the quantum determinant is central
// among the z-generators, machine-verified, so the frame order is stable).
// On top of the representation sit the isotypic decomposition into
// U_q k-components V_k, the diagonal intertwiner with eigenvalues
// a_k(alpha,beta), parameter canonicalization, the central-character
// scalar, and the reducibility/unitarity classifiers.

#include <optional>
#include <string>
#include <vector>

#include "qshilov/qmatrix.hpp"
#include "qshilov/uqaction.hpp"

namespace qshilov {

using KVector = std::vector<long>; // k_1 >= k_2 >= ... >= k_n

// One parameter alpha = x + i y (pi/h), exact.
struct ParamPair {
    Rat x = 0;
    Rat y = 0;
    friend bool operator==(const ParamPair& a, const ParamPair& b) {
        return a.x == b.x && a.y == b.y;
    }
    bool is_integral() const { return y == 0 && x.get_den() == 1; }
};

struct Params {
    ParamPair alpha, beta;
    friend bool operator==(const Params& a, const Params& b) {
        return a.alpha == b.alpha && a.beta == b.beta;
    }
};

std::string to_string(const ParamPair& p);
ParamPair parse_param(const std::string& text); // "x" or "x+y*pi/h*i"

struct PrinContext {
    int n = 0;
    const QMatrixAlgebra* A = nullptr;
    const ActionTable* table = nullptr;
    std::vector<AlgebraElement> leading_minor; // z^{wedge j}, j = 0..n
};

const PrinContext& prin_context(int n);

class BoundaryVector {
public:
    BoundaryVector() = default;
    BoundaryVector(const PrinContext* ctx, AlgebraElement poly, long det_offset);

    static BoundaryVector zero(const PrinContext& ctx);
    static BoundaryVector one(const PrinContext& ctx); // poly 1, offset 0

    const PrinContext* context() const { return ctx_; }
    const AlgebraElement& poly() const { return poly_; }
    long det_offset() const { return offset_; }
    bool is_zero() const { return poly_.is_zero(); }

    BoundaryVector operator-() const;
    friend BoundaryVector operator+(const BoundaryVector& a, const BoundaryVector& b);
    friend BoundaryVector operator-(const BoundaryVector& a, const BoundaryVector& b);
    BoundaryVector scaled(const Scalar& c) const;
    friend bool operator==(const BoundaryVector& a, const BoundaryVector& b);
    friend bool operator!=(const BoundaryVector& a, const BoundaryVector& b) {
        return !(a == b);
    }

    // Apply f to every coefficient (e.g. parameter substitution).
    BoundaryVector mapped_coeffs(const std::function<Scalar(const Scalar&)>& f) const;

private:
    const PrinContext* ctx_ = nullptr;
    AlgebraElement poly_;
    long offset_ = 0;
};

std::string render(const BoundaryVector& w);

// The representation: coproduct-Leibniz across the three frame factors.
BoundaryVector pi_act(const PrinContext& ctx, ChevOp op, const BoundaryVector& w);

// v^h_k = (z^{w1})^{k1-k2} ... (z^{w(n-1)})^{k_{n-1}-k_n} (z^{wn})^{k_n}.
BoundaryVector highest_vector(const PrinContext& ctx, const KVector& k);

// K_j eigenvalues of a framed vector (frame contributions included).
std::vector<Scalar> weight_of(const PrinContext& ctx, const BoundaryVector& w);
// The expected eigenvalues of v^h_k:
//   (k1-k2, ..., k_{n-1}-k_n, 2k_n + alpha - beta, k_{n-1}-k_n, ..., k1-k2).
std::vector<Scalar> highest_weight_eigenvalues(const PrinContext& ctx, const KVector& k);

// Split w into isotypic components V_k; candidate components are built from
// highest vectors by F_j-words (j != n) inside the window |k_i| <= window
// and matched by an exact linear solve.  Throws when a residual remains.
std::vector<std::pair<KVector, BoundaryVector>> isotypic_decompose(
    const PrinContext& ctx, const BoundaryVector& w, long window);

// Intertwiner eigenvalue a_k(alpha,beta), normalized a_0 = 1.
Scalar intertwiner_coeff(const KVector& k, int n);

struct IntertwinerViolation {
    KVector k;
    ChevOp op;
    std::string detail;
};

// Exact check of A pi_{alpha,beta}(xi) = pi_{-n-beta,-n-alpha}(xi) A on
// highest vectors in the window, for xi in {E_n, F_n, K_n}.  Runs at the
// documented scale n <= 2 (throws beyond it).
std::vector<IntertwinerViolation> verify_intertwiner(int n, long window);

// ------------------------------------------------------------- classification

struct WallConstraint {
    enum class Rel { LE, GE, EQ };
    int j = 1; // 1-based coordinate
    Rel rel = Rel::LE;
    long bound = 0;
    bool holds(const KVector& k) const;
    friend bool operator==(const WallConstraint& a, const WallConstraint& b) {
        return a.j == b.j && a.rel == b.rel && a.bound == b.bound;
    }
};

struct SubmodulePredicate {
    std::string name;
    std::vector<WallConstraint> constraints;
    bool contains(const KVector& k) const;
    friend bool operator==(const SubmodulePredicate& a, const SubmodulePredicate& b) {
        return a.name == b.name && a.constraints == b.constraints;
    }
};

enum class CaseLabel { Nonintegral, Case1, Case2, Case3, Case4 };
enum class UnitaritySeries { Principal, Complementary, Strange, None, SubmodulesOnly };

std::string to_string(CaseLabel);
std::string to_string(UnitaritySeries);

struct CaseReport {
    int n = 0;
    Params input;
    Params canonical;
    std::optional<Params> partner; // non-integral parameters only
    bool irreducible = false;
    CaseLabel label = CaseLabel::Nonintegral;
    std::vector<SubmodulePredicate> submodules;
    bool completely_reducible = false;
    UnitaritySeries series = UnitaritySeries::None;
    std::vector<std::string> unitarizable; // submodule names

    friend bool operator==(const CaseReport& a, const CaseReport& b) {
        return a.n == b.n && a.input == b.input && a.canonical == b.canonical &&
               a.partner == b.partner && a.irreducible == b.irreducible &&
               a.label == b.label && a.submodules == b.submodules &&
               a.completely_reducible == b.completely_reducible &&
               a.series == b.series && a.unitarizable == b.unitarizable;
    }
};

// Reduce into the fundamental set: y mod 4 per parameter, the joint
// 2*pi/h shift into y in [0,2), and det-twist shifts until
// alpha - beta in {0,1}.  Throws MathError unless alpha - beta is integral
// (the Harish-Chandra condition).
Params canonicalize_params(const Params& p, int n);
std::optional<Params> equivalence_partner(const Params& canonical, int n);

// 4 ch(h/2 (alpha+beta+n)) sum_{j<n} ch(h/2 j) as an exact scalar in u, v.
Scalar central_scalar(int n);
std::complex<double> central_scalar_numeric(const Params& p, double q, int n);

CaseReport classify(const Params& p, int n);

struct InvarianceViolation {
    std::string submodule;
    KVector from, to;
    ChevOp op;
    Scalar coefficient; // nonvanishing escaping coefficient, specialized
};

// For integral parameters: every predicted submodule region is invariant
// under E_n and F_n inside the window (escaping component coefficients
// vanish exactly at the integral specialization).
std::vector<InvarianceViolation> submodule_invariance_check(const Params& p, int n,
                                                            const CaseReport& report,
                                                            long window);

NumericParams to_numeric(const Params& p, double q);

} // namespace qshilov
