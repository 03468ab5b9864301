#pragma once

// Chevalley-generator actions on the quantum matrix algebras, extended from
// the generator tables by the coproduct
//   E(fg) = (Ef)g + (Kf)(Eg),  F(fg) = (Ff)(K^{-1}g) + f(Fg),
//   K^{±}(fg) = (K^{±}f)(K^{±}g),
// plus the structural verifiers (module-algebra property, Serre and
// commutator relations, K-conjugation), weight extraction, and the
// derivation of the *-involution from a seed via star-equivariance
//   (xi f)^* = (S(xi))^* f^*.

#include <optional>
#include <vector>

#include "qshilov/localized.hpp"
#include "qshilov/qmatrix.hpp"
#include "qshilov/qsymmatrix.hpp"

namespace qshilov {

enum class ChevType { E, F, Kp, Km };

struct ChevOp {
    ChevType type;
    int k; // 1-based node index

    static ChevOp E(int k) { return {ChevType::E, k}; }
    static ChevOp F(int k) { return {ChevType::F, k}; }
    static ChevOp Kp(int k) { return {ChevType::Kp, k}; }
    static ChevOp Km(int k) { return {ChevType::Km, k}; }
};

std::string to_string(const ChevOp& op);

// Cartan data with symmetrizers and the distinguished node l0.
struct UqSpec {
    int rank = 0;
    std::vector<std::vector<int>> cartan;
    std::vector<int> d;
    int l0 = 0;

    static UqSpec type_a(int rank, int l0); // A_rank, all d_i = 1
    static UqSpec type_c(int rank);         // C_rank, d = (1,...,1,2), l0 = rank
    Scalar q_i(int i) const;                // q^{d_i} as a scalar
};

// Generator action tables; K actions are diagonal and stored as eigenvalues.
class ActionTable {
public:
    ActionTable(PresPtr pres, UqSpec spec);

    const PresPtr& presentation() const { return pres_; }
    const UqSpec& spec() const { return spec_; }
    int rank() const { return spec_.rank; }

    void set_e(int k, size_t g, AlgebraElement img);
    void set_f(int k, size_t g, AlgebraElement img);
    void set_k(int k, size_t g, Scalar eigen);

    const AlgebraElement& e_image(int k, size_t g) const;
    const AlgebraElement& f_image(int k, size_t g) const;
    const Scalar& k_eigen(int k, size_t g) const;
    Scalar k_eigen_word(int k, const Word& w, bool inverse) const;

private:
    PresPtr pres_;
    UqSpec spec_;
    std::vector<AlgebraElement> e_, f_;
    std::vector<Scalar> keig_;
};

// Tables straight from the explicit A_n / C_n actions.
const ActionTable& an_action(int n); // U_q sl_{2n} acting on C[Mat_n]_q
const ActionTable& cn_action(int n); // U_q sp_{2n} acting on C[Mat_n^sym]_q

// Coproduct-Leibniz action on a raw word / an element.
AlgebraElement act_word(const ActionTable& t, ChevOp op, const Word& w);
AlgebraElement act(const ActionTable& t, ChevOp op, const AlgebraElement& f);

struct ModuleAlgebraViolation {
    Word pair; // the descending product whose rule fails
    ChevOp op;
    AlgebraElement residual;
};

// act(op, lhs) - act(op, rhs) over every rewrite rule and every Chevalley
// generator; empty result = the table respects the defining relations.
std::vector<ModuleAlgebraViolation> verify_module_algebra(const ActionTable& t);

struct OperatorViolation {
    std::string relation;
    Word word;
    AlgebraElement residual;
};

// Commutator [E_i,F_j] = delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1}),
// K-conjugation K_i E_j = q_i^{a_ij} E_j K_i (and F with inverse powers),
// and both q-Serre relations, all as operator identities on every normal
// word of degree <= max_degree.
std::vector<OperatorViolation> verify_serre_and_commutator(const ActionTable& t,
                                                           int max_degree);

// K-eigenvalue vector of f; throws (listing mixed weights) when f is not a
// weight vector.
std::vector<Scalar> weight_of(const ActionTable& t, const AlgebraElement& f);

// Action on the localization at D; requires E_k D = F_k D = 0 and
// K_k D = c_k D for the node used (checked once, throws otherwise).
class LocalizedAction {
public:
    LocalizedAction(const ActionTable& t, LocPtr loc);
    LocalizedElement act(ChevOp op, const LocalizedElement& f) const;
    const Scalar& den_eigen(int k) const { return den_eig_.at(k - 1); }

private:
    const ActionTable& table_;
    LocPtr loc_;
    std::vector<Scalar> den_eig_;
    std::vector<bool> usable_;
};

// Transport the involution from seed generators through the ladder
//   star(E_k g) = (S(E_k))^* star(g) = -(K_k F_k K_k^{-1}) star(g),  k != l0,
// reaching every generator; inconsistent derivation paths throw.
std::vector<LocalizedElement> derive_star(
    const ActionTable& t, LocPtr loc,
    const std::vector<std::pair<size_t, LocalizedElement>>& seeds);

} // namespace qshilov
