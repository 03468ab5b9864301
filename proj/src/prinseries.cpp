#include "qshilov/prinseries.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "qshilov/linalg.hpp"

namespace qshilov {

// ------------------------------------------------------------------ parameters

std::string to_string(const ParamPair& p) {
    std::string s = p.x.get_str();
    if (p.y != 0) s += "+" + p.y.get_str() + "*pi/h*i";
    return s;
}

ParamPair parse_param(const std::string& text) {
    // grammar: x | x+y*pi/h*i | x-y*pi/h*i with rational x, y
    auto fail = [&](size_t pos) { throw ParseError("bad parameter '" + text + "'", pos); };
    size_t i = 0;
    auto read_rat = [&]() -> Rat {
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        size_t start = i;
        while (i < text.size() && (std::isdigit((unsigned char)text[i]) || text[i] == '/')) ++i;
        if (i == start || text[i - 1] == '/') fail(start);
        Rat r;
        try {
            r = parse_rat(text.substr(start, i - start));
        } catch (const MathError&) {
            fail(start);
        }
        return neg ? Rat(-r) : r;
    };
    ParamPair p;
    p.x = read_rat();
    if (i == text.size()) return p;
    if (text[i] != '+' && text[i] != '-') fail(i);
    Rat y = read_rat(); // consumes the sign
    if (text.compare(i, std::string::npos, "*pi/h*i") != 0) fail(i);
    p.y = y;
    return p;
}

NumericParams to_numeric(const Params& p, double q) {
    NumericParams np;
    np.q = q;
    np.alpha_x = p.alpha.x;
    np.alpha_y = p.alpha.y;
    np.beta_x = p.beta.x;
    np.beta_y = p.beta.y;
    return np;
}

// --------------------------------------------------------------------- context

const PrinContext& prin_context(int n) {
    static std::mutex mu;
    static std::map<int, PrinContext> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PrinContext ctx;
    ctx.n = n;
    ctx.A = &qmatrix_algebra(n);
    ctx.table = &an_action(n);
    ctx.leading_minor.push_back(AlgebraElement::unit(ctx.A->pres));
    for (int j = 1; j <= n; ++j) {
        std::vector<int> idx(j);
        for (int i = 0; i < j; ++i) idx[i] = i + 1;
        ctx.leading_minor.push_back(q_minor(*ctx.A, idx, idx));
    }
    return cache.emplace(n, std::move(ctx)).first->second;
}

// -------------------------------------------------------------- BoundaryVector

BoundaryVector::BoundaryVector(const PrinContext* ctx, AlgebraElement poly, long det_offset)
    : ctx_(ctx), poly_(std::move(poly)), offset_(det_offset) {
    if (poly_.is_zero()) offset_ = 0;
}

BoundaryVector BoundaryVector::zero(const PrinContext& ctx) {
    return BoundaryVector(&ctx, AlgebraElement::zero(ctx.A->pres), 0);
}

BoundaryVector BoundaryVector::one(const PrinContext& ctx) {
    return BoundaryVector(&ctx, AlgebraElement::unit(ctx.A->pres), 0);
}

BoundaryVector BoundaryVector::operator-() const {
    return BoundaryVector(ctx_, -poly_, offset_);
}

namespace {

const PrinContext* common_ctx(const BoundaryVector& a, const BoundaryVector& b) {
    if (a.context() && b.context() && a.context() != b.context())
        throw MathError("boundary vectors from different contexts");
    return a.context() ? a.context() : b.context();
}

AlgebraElement det_raise(const PrinContext& ctx, const AlgebraElement& p, long by) {
    AlgebraElement r = p;
    for (long i = 0; i < by; ++i) r = r * ctx.A->det;
    return r;
}

} // namespace

BoundaryVector operator+(const BoundaryVector& a, const BoundaryVector& b) {
    const PrinContext* ctx = common_ctx(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long c = std::min(a.det_offset(), b.det_offset());
    AlgebraElement pa = det_raise(*ctx, a.poly(), a.det_offset() - c);
    AlgebraElement pb = det_raise(*ctx, b.poly(), b.det_offset() - c);
    return BoundaryVector(ctx, pa + pb, c);
}

BoundaryVector operator-(const BoundaryVector& a, const BoundaryVector& b) {
    return a + (-b);
}

BoundaryVector BoundaryVector::scaled(const Scalar& c) const {
    return BoundaryVector(ctx_, poly_.scaled(c), offset_);
}

bool operator==(const BoundaryVector& a, const BoundaryVector& b) {
    const PrinContext* ctx = common_ctx(a, b);
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    long c = std::min(a.det_offset(), b.det_offset());
    return det_raise(*ctx, a.poly(), a.det_offset() - c) ==
           det_raise(*ctx, b.poly(), b.det_offset() - c);
}

BoundaryVector BoundaryVector::mapped_coeffs(
    const std::function<Scalar(const Scalar&)>& f) const {
    return BoundaryVector(ctx_, poly_.mapped_coeffs(f), offset_);
}

std::string render(const BoundaryVector& w) {
    if (w.is_zero()) return "0";
    std::ostringstream os;
    bool paren = w.poly().terms().size() > 1;
    os << (paren ? "(" + render(w.poly()) + ")" : render(w.poly()));
    os << " * det^(a";
    if (w.det_offset() > 0) os << "+" << w.det_offset();
    if (w.det_offset() < 0) os << w.det_offset();
    os << ") * t^(a+b)";
    return os.str();
}

// ---------------------------------------------------------------------- pi_act

namespace {

// q^{2(alpha+c)} = u^2 q^{2c}
Scalar q2mu(long c) { return Scalar::u_power(2) * Scalar::q_power((int)(4 * c)); }

// q^{alpha+beta} = u v
Scalar q_lambda() { return Scalar::u_power(1) * Scalar::v_power(1); }

} // namespace

BoundaryVector pi_act(const PrinContext& ctx, ChevOp op, const BoundaryVector& w) {
    const ActionTable& t = *ctx.table;
    const int n = ctx.n;
    if (w.is_zero()) return w;
    const long c = w.det_offset();
    const AlgebraElement& P = w.poly();

    if (op.k != n) {
        // frame factors are invariant under the j != n operators
        return BoundaryVector(&ctx, act(t, op, P), c);
    }

    const Scalar one(1);
    const Scalar qh = Scalar::q_power(1);   // q^{1/2}
    const Scalar q2 = Scalar::q_power(4);   // q^2
    const Scalar qm2 = Scalar::q_power(-4); // q^{-2}
    switch (op.type) {
        case ChevType::Kp: {
            // K_n(P det^mu t^l) = (K_n P) q^{2mu} q^{-l} det^mu t^l
            Scalar s = q2mu(c) * q_lambda().inv();
            return BoundaryVector(&ctx, act(t, op, P).scaled(s), c);
        }
        case ChevType::Km: {
            Scalar s = q2mu(c).inv() * q_lambda();
            return BoundaryVector(&ctx, act(t, op, P).scaled(s), c);
        }
        case ChevType::E: {
            // E(P det^mu t^l) = (E P) det^mu t^l
            //                 + (K P)(E det^mu) t^l + (K P)(K det^mu)(E t^l),
            // where both frame pieces contribute z_n^n on the right:
            //   E det^mu = -q^{1/2} (1-q^{2mu})/(1-q^2) z_n^n det^mu
            //   E t^l    = q^{-3/2} (1-q^{-2l})/(1-q^{-2}) z_n^n t^l
            Scalar coef_det = -qh * (one - q2mu(c)) / (one - q2);
            Scalar coef_t =
                Scalar::q_power(-3) * (one - q_lambda().pow(-2)) / (one - qm2);
            Scalar zfac = coef_det + q2mu(c) * coef_t;
            AlgebraElement out = act(t, op, P);
            if (!zfac.is_zero()) {
                Word znn(1, (char)ctx.A->gen(n, n));
                AlgebraElement kp = act(t, ChevOp::Kp(n), P);
                out += kp.times_word(znn).scaled(zfac);
            }
            return BoundaryVector(&ctx, std::move(out), c);
        }
        case ChevType::F: {
            // F(P det^mu t^l) = (F P) q^{-2mu} q^{l} det^mu t^l
            //   + P q^{1/2}(1-q^{-2mu})/(1-q^{-2}) z^{w(n-1)} q^{l} det^{mu-1} t^l
            Scalar s_a = q2mu(c).inv() * q_lambda();
            BoundaryVector part_a(&ctx, act(t, op, P).scaled(s_a), c);
            Scalar coef = qh * (one - q2mu(c).inv()) / (one - qm2) * q_lambda();
            BoundaryVector part_b(&ctx, (P * ctx.leading_minor[n - 1]).scaled(coef),
                                  c - 1);
            return part_a + part_b;
        }
    }
    throw MathError("unreachable");
}

// ------------------------------------------------------------- highest vectors

BoundaryVector highest_vector(const PrinContext& ctx, const KVector& k) {
    if ((int)k.size() != ctx.n) throw MathError("k has wrong length");
    for (size_t i = 1; i < k.size(); ++i)
        if (k[i - 1] < k[i]) throw MathError("k must be nonincreasing");
    AlgebraElement poly = AlgebraElement::unit(ctx.A->pres);
    for (int j = 1; j < ctx.n; ++j) {
        long e = k[j - 1] - k[j];
        for (long i = 0; i < e; ++i) poly = poly * ctx.leading_minor[j];
    }
    return BoundaryVector(&ctx, std::move(poly), k[ctx.n - 1]);
}

std::vector<Scalar> weight_of(const PrinContext& ctx, const BoundaryVector& w) {
    if (w.is_zero()) throw MathError("weight of zero vector");
    std::vector<Scalar> eig = weight_of(*ctx.table, w.poly());
    // frame contributions: only K_n sees det^{alpha+c} and t^{alpha+beta}
    eig[ctx.n - 1] = eig[ctx.n - 1] * q2mu(w.det_offset()) * q_lambda().inv();
    return eig;
}

std::vector<Scalar> highest_weight_eigenvalues(const PrinContext& ctx, const KVector& k) {
    std::vector<Scalar> eig;
    for (int j = 1; j <= 2 * ctx.n - 1; ++j) {
        if (j == ctx.n) {
            eig.push_back(Scalar::q_power((int)(4 * k[ctx.n - 1])) * Scalar::u_power(1) *
                          Scalar::v_power(-1));
        } else {
            int i = j < ctx.n ? j : 2 * ctx.n - j;
            eig.push_back(Scalar::q_power((int)(2 * (k[i - 1] - k[i]))));
        }
    }
    return eig;
}

// ------------------------------------------------------------------- isotypics

namespace {

std::vector<KVector> k_window(int n, long window) {
    std::vector<KVector> out;
    KVector k(n);
    std::function<void(int, long)> walk = [&](int pos, long maxv) {
        if (pos == n) {
            out.push_back(k);
            return;
        }
        for (long v = -window; v <= maxv; ++v) {
            k[pos] = v;
            walk(pos + 1, v);
        }
    };
    walk(0, window);
    return out;
}

// All distinct words over the nodes with prescribed multiplicities.
void lowering_words(const std::vector<std::pair<int, long>>& mult, std::vector<int>& cur,
                    std::vector<long>& left, std::vector<std::vector<int>>& out) {
    bool done = true;
    for (long l : left)
        if (l > 0) done = false;
    if (done) {
        out.push_back(cur);
        return;
    }
    for (size_t i = 0; i < mult.size(); ++i) {
        if (left[i] == 0) continue;
        left[i]--;
        cur.push_back(mult[i].first);
        lowering_words(mult, cur, left, out);
        cur.pop_back();
        left[i]++;
    }
}

} // namespace

std::vector<std::pair<KVector, BoundaryVector>> isotypic_decompose(
    const PrinContext& ctx, const BoundaryVector& w, long window) {
    std::vector<std::pair<KVector, BoundaryVector>> out;
    if (w.is_zero()) return out;
    const int n = ctx.n, rank = 2 * n - 1;
    std::vector<Scalar> target = weight_of(ctx, w);

    // candidate components: the weight of w must be reachable from the
    // highest weight of V_k by lowering with the simple roots j != n
    struct Candidate {
        KVector k;
        std::vector<BoundaryVector> basis;
    };
    std::vector<Candidate> cands;
    const UqSpec& spec = ctx.table->spec();
    for (const KVector& k : k_window(n, window)) {
        std::vector<Scalar> hw = highest_weight_eigenvalues(ctx, k);
        // each ratio hw_i / target_i must be q^{d_i}, d_i = sum_j c_j a_{ij}
        std::vector<long> dexp(rank);
        bool ok = true;
        for (int i = 0; i < rank && ok; ++i) {
            Scalar ratio = hw[i] / target[i];
            const auto& nm = ratio.num();
            if (!ratio.is_polynomial() || nm.term_count() != 1) {
                ok = false;
                break;
            }
            Expo e = nm.terms().begin()->first;
            if (e.u != 0 || e.v != 0 || nm.terms().begin()->second != 1 || e.s % 2 != 0) {
                ok = false;
                break;
            }
            dexp[i] = e.s / 2;
        }
        if (!ok) continue;
        // solve sum_{j != n} c_j a_{ij} = d_i over the nonnegative integers
        std::vector<int> free_nodes;
        for (int j = 1; j <= rank; ++j)
            if (j != n) free_nodes.push_back(j);
        std::vector<std::vector<Scalar>> mat(
            rank, std::vector<Scalar>(free_nodes.size(), Scalar(0)));
        std::vector<Scalar> rhs(rank, Scalar(0));
        for (int i = 0; i < rank; ++i) {
            for (size_t jj = 0; jj < free_nodes.size(); ++jj)
                mat[i][jj] = Scalar(Rat(spec.cartan[i][free_nodes[jj] - 1]));
            rhs[i] = Scalar(Rat(dexp[i]));
        }
        auto sol = solve_linear(std::move(mat), std::move(rhs));
        if (!sol.ok()) continue;
        std::vector<std::pair<int, long>> mult;
        bool nonneg = true;
        for (size_t jj = 0; jj < free_nodes.size() && nonneg; ++jj) {
            const Scalar& s = sol.solution[jj];
            if (s.is_zero()) continue;
            if (!s.is_polynomial() || !s.num().is_rational()) {
                nonneg = false;
                break;
            }
            Rat r = s.num().terms().begin()->second;
            if (r.get_den() != 1 || r < 0) {
                nonneg = false;
                break;
            }
            mult.emplace_back(free_nodes[jj], r.get_num().get_si());
        }
        if (!nonneg) continue;

        // basis of the target-weight subspace of V_k: all F-words of the
        // prescribed multidegree applied to v^h_k
        Candidate cand;
        cand.k = k;
        BoundaryVector vh = highest_vector(ctx, k);
        std::vector<std::vector<int>> words;
        std::vector<long> left;
        for (auto& [node, m] : mult) left.push_back(m);
        std::vector<int> cur;
        lowering_words(mult, cur, left, words);
        for (const auto& word : words) {
            BoundaryVector v = vh;
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                v = pi_act(ctx, ChevOp::F(*it), v);
            if (!v.is_zero()) cand.basis.push_back(std::move(v));
        }
        if (!cand.basis.empty()) cands.push_back(std::move(cand));
    }

    // exact solve: express w in the union of the candidate bases
    long minoff = w.det_offset();
    for (const auto& cd : cands)
        for (const auto& b : cd.basis) minoff = std::min(minoff, b.det_offset());
    std::map<Word, size_t, WordLess> row_of;
    std::vector<AlgebraElement> cols;
    std::vector<std::pair<size_t, size_t>> col_origin;
    for (size_t ci = 0; ci < cands.size(); ++ci)
        for (size_t bi = 0; bi < cands[ci].basis.size(); ++bi) {
            const BoundaryVector& b = cands[ci].basis[bi];
            AlgebraElement e = det_raise(ctx, b.poly(), b.det_offset() - minoff);
            for (const auto& [wd, cc] : e.terms()) row_of.emplace(wd, row_of.size());
            cols.push_back(std::move(e));
            col_origin.emplace_back(ci, bi);
        }
    AlgebraElement wal = det_raise(ctx, w.poly(), w.det_offset() - minoff);
    for (const auto& [wd, cc] : wal.terms()) row_of.emplace(wd, row_of.size());

    std::vector<std::vector<Scalar>> mat(row_of.size(),
                                         std::vector<Scalar>(cols.size(), Scalar(0)));
    std::vector<Scalar> rhs(row_of.size(), Scalar(0));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [wd, cc] : cols[j].terms()) mat[row_of[wd]][j] = cc;
    for (const auto& [wd, cc] : wal.terms()) rhs[row_of[wd]] = cc;
    auto sol = solve_linear(std::move(mat), std::move(rhs));
    if (!sol.ok())
        throw MathError("isotypic residual outside spanned candidates (window too small?)");

    for (size_t ci = 0; ci < cands.size(); ++ci) {
        BoundaryVector comp = BoundaryVector::zero(ctx);
        for (size_t j = 0; j < cols.size(); ++j)
            if (col_origin[j].first == ci && !sol.solution[j].is_zero())
                comp = comp + cands[ci].basis[col_origin[j].second].scaled(sol.solution[j]);
        if (!comp.is_zero()) out.emplace_back(cands[ci].k, std::move(comp));
    }

    // the decomposition must recompose exactly
    BoundaryVector sum = BoundaryVector::zero(ctx);
    for (const auto& [k, comp] : out) sum = sum + comp;
    if (sum != w) throw MathError("isotypic decomposition failed to recompose");
    return out;
}

// ----------------------------------------------------------------- intertwiner

Scalar intertwiner_coeff(const KVector& k, int n) {
    if ((int)k.size() != n) throw MathError("k has wrong length");
    for (size_t i = 1; i < k.size(); ++i)
        if (k[i - 1] < k[i]) throw MathError("k must be nonincreasing");
    Scalar prod(1);
    const Scalar one(1);
    for (int j = 1; j <= n; ++j) {
        long kj = k[j - 1];
        if (kj > 0) {
            for (long i = 0; i <= kj - 1; ++i) {
                Scalar num =
                    one - Scalar::u_power(2) * Scalar::q_power((int)(4 * (n + i - j + 1)));
                Scalar den =
                    one - Scalar::v_power(-2) * Scalar::q_power((int)(4 * (i - j + 1)));
                prod = prod * num / den;
            }
        } else if (kj < 0) {
            for (long i = 1 + kj; i <= 0; ++i) {
                Scalar num =
                    one - Scalar::v_power(-2) * Scalar::q_power((int)(4 * (i - j)));
                Scalar den =
                    one - Scalar::u_power(2) * Scalar::q_power((int)(4 * (n + i - j)));
                prod = prod * num / den;
            }
        }
    }
    return prod;
}

std::vector<IntertwinerViolation> verify_intertwiner(int n, long window) {
    if (n > 2)
        throw MathError("verify_intertwiner runs at the documented scale n <= 2 "
                        "(the symbolic solves grow too fast beyond it)");
    std::vector<IntertwinerViolation> out;
    const PrinContext& ctx = prin_context(n);
    auto swap_sub = [n](const Scalar& s) { return s.swap_params(n); };
    for (const KVector& k : k_window(n, window)) {
        Scalar ak = intertwiner_coeff(k, n);
        BoundaryVector vh = highest_vector(ctx, k);
        for (ChevOp op : {ChevOp::E(n), ChevOp::F(n), ChevOp::Kp(n)}) {
            BoundaryVector image = pi_act(ctx, op, vh);
            // lhs: A applied componentwise to the decomposition of the image
            BoundaryVector lhs = BoundaryVector::zero(ctx);
            for (const auto& [m, comp] : isotypic_decompose(ctx, image, window + 1))
                lhs = lhs + comp.scaled(intertwiner_coeff(m, n));
            // rhs: a_k(alpha,beta) · pi_{-n-beta,-n-alpha}(op)(v^h_k)
            BoundaryVector rhs = image.mapped_coeffs(swap_sub).scaled(ak);
            if (lhs != rhs) out.push_back({k, op, "A·pi(xi) != pi'(xi)·A on v^h_k"});
        }
    }
    return out;
}

// -------------------------------------------------------------- classification

bool WallConstraint::holds(const KVector& k) const {
    long v = k.at(j - 1);
    switch (rel) {
        case Rel::LE: return v <= bound;
        case Rel::GE: return v >= bound;
        case Rel::EQ: return v == bound;
    }
    return false;
}

bool SubmodulePredicate::contains(const KVector& k) const {
    for (const auto& c : constraints)
        if (!c.holds(k)) return false;
    return true;
}

std::string to_string(CaseLabel l) {
    switch (l) {
        case CaseLabel::Nonintegral: return "nonintegral";
        case CaseLabel::Case1: return "case1";
        case CaseLabel::Case2: return "case2";
        case CaseLabel::Case3: return "case3";
        case CaseLabel::Case4: return "case4";
    }
    return "?";
}

std::string to_string(UnitaritySeries s) {
    switch (s) {
        case UnitaritySeries::Principal: return "principal";
        case UnitaritySeries::Complementary: return "complementary";
        case UnitaritySeries::Strange: return "strange";
        case UnitaritySeries::None: return "none";
        case UnitaritySeries::SubmodulesOnly: return "submodules-only";
    }
    return "?";
}

namespace {

Rat mod4(const Rat& y) {
    Rat r = y;
    while (r < 0) r += 4;
    while (r >= 4) r -= 4;
    return r;
}

} // namespace

Params canonicalize_params(const Params& p, int n) {
    (void)n;
    Params c = p;
    // parameter-level periodicity: q^alpha has period 4 in y
    c.alpha.y = mod4(c.alpha.y);
    c.beta.y = mod4(c.beta.y);
    // Harish-Chandra condition: alpha - beta integral
    Rat dx = c.alpha.x - c.beta.x;
    if (c.alpha.y != c.beta.y || dx.get_den() != 1)
        throw MathError("not a Harish-Chandra module: alpha - beta is not an integer");
    // joint 2*pi/h shift into the strip Im in [0, 2*pi/h), i.e. y in [0,2)
    if (c.alpha.y >= 2) {
        c.alpha.y -= 2;
        c.beta.y -= 2;
    }
    // det-twist shifts: (alpha,beta) ~ (alpha-1, beta+1) until delta in {0,1}
    long delta = dx.get_num().get_si();
    long m = delta >= 0 ? delta / 2 : -((-delta + 1) / 2); // floor(delta/2)
    c.alpha.x -= m;
    c.beta.x += m;
    return c;
}

std::optional<Params> equivalence_partner(const Params& c, int n) {
    bool integral = c.alpha.is_integral() && c.beta.is_integral();
    if (integral) return std::nullopt; // integral pairs are never equivalent
    Params q;
    q.alpha.x = -n - c.beta.x;
    q.beta.x = -n - c.alpha.x;
    // y -> (2 - y) mod 2 inside the canonical strip
    q.alpha.y = c.beta.y == 0 ? Rat(0) : Rat(2) - c.beta.y;
    q.beta.y = c.alpha.y == 0 ? Rat(0) : Rat(2) - c.alpha.y;
    Params canon = canonicalize_params(q, n);
    if (canon == c) return std::nullopt; // self-partnered
    return canon;
}

Scalar central_scalar(int n) {
    // 2 (uvq^n + (uvq^n)^{-1}) sum_{j=0}^{n-1} (q^j + q^{-j})/2
    Scalar ch_sum(0);
    for (int j = 0; j < n; ++j)
        ch_sum += (Scalar::q_power(2 * j) + Scalar::q_power(-2 * j)) * Scalar(Rat(1, 2));
    Scalar uvqn = Scalar::u_power(1) * Scalar::v_power(1) * Scalar::q_power(2 * n);
    return (uvqn + uvqn.inv()) * Scalar(2) * ch_sum;
}

std::complex<double> central_scalar_numeric(const Params& p, double q, int n) {
    return central_scalar(n).evaluate(to_numeric(p, q));
}

CaseReport classify(const Params& p, int n) {
    CaseReport r;
    r.n = n;
    r.input = p;
    r.canonical = canonicalize_params(p, n);
    r.partner = equivalence_partner(r.canonical, n);
    const ParamPair &al = r.canonical.alpha, &be = r.canonical.beta;
    bool integral = al.is_integral() && be.is_integral();
    r.irreducible = !integral;
    if (!integral) {
        r.label = CaseLabel::Nonintegral;
        r.completely_reducible = true; // irreducible
        if (al.x + be.x == Rat(-n)) {
            r.series = UnitaritySeries::Principal;
        } else if (al.y == 0 && rat_floor(-al.x - n) == rat_floor(be.x)) {
            r.series = UnitaritySeries::Complementary;
        } else if (al.y == 1) {
            r.series = UnitaritySeries::Strange;
        } else {
            r.series = UnitaritySeries::None;
        }
        return r;
    }
    long a = al.x.get_num().get_si(), b = be.x.get_num().get_si();
    long s = a + b + n - 1;
    using Rel = WallConstraint::Rel;
    if (s >= 1) {
        r.label = CaseLabel::Case1;
        SubmodulePredicate v;
        v.name = "Vs";
        for (int j = 1; j <= n; ++j) {
            v.constraints.push_back({j, Rel::GE, -a - n + j});
            v.constraints.push_back({j, Rel::LE, b + j - 1});
        }
        r.submodules.push_back(std::move(v));
        r.completely_reducible = false;
        r.series = UnitaritySeries::None; // neither the module nor its socle
    } else if (s == 0) {
        r.label = CaseLabel::Case2;
        for (int j = 1; j <= n; ++j) {
            SubmodulePredicate v;
            v.name = "Vs_" + std::to_string(j);
            v.constraints.push_back({j, Rel::EQ, b + j - 1});
            r.submodules.push_back(std::move(v));
        }
        r.completely_reducible = false;
        r.series = UnitaritySeries::SubmodulesOnly;
    } else {
        r.label = s == -1 ? CaseLabel::Case3 : CaseLabel::Case4;
        for (int i = 1; i <= n + 1; ++i) {
            SubmodulePredicate v;
            v.name = "Ks_" + std::to_string(i);
            if (i == 1) {
                v.constraints.push_back({1, Rel::LE, b});
            } else if (i == n + 1) {
                v.constraints.push_back({n, Rel::GE, -a});
            } else {
                v.constraints.push_back({i - 1, Rel::GE, -a - n + i - 1});
                v.constraints.push_back({i, Rel::LE, b + i - 1});
            }
            r.submodules.push_back(std::move(v));
        }
        r.completely_reducible = s == -1;
        r.series = UnitaritySeries::SubmodulesOnly;
    }
    if (r.series == UnitaritySeries::SubmodulesOnly)
        for (const auto& v : r.submodules) r.unitarizable.push_back(v.name);
    return r;
}

std::vector<InvarianceViolation> submodule_invariance_check(const Params& p, int n,
                                                            const CaseReport& report,
                                                            long window) {
    if (n > 2)
        throw MathError("submodule_invariance_check runs at the documented scale n <= 2");
    Params c = canonicalize_params(p, n);
    if (!c.alpha.is_integral() || !c.beta.is_integral())
        throw MathError("submodule invariance check needs integral parameters");
    long a = c.alpha.x.get_num().get_si(), b = c.beta.x.get_num().get_si();

    std::vector<InvarianceViolation> out;
    const PrinContext& ctx = prin_context(n);
    for (const auto& sub : report.submodules) {
        for (const KVector& k : k_window(n, window)) {
            if (!sub.contains(k)) continue;
            BoundaryVector vh = highest_vector(ctx, k);
            for (ChevOp op : {ChevOp::E(n), ChevOp::F(n)}) {
                BoundaryVector img = pi_act(ctx, op, vh);
                if (img.is_zero()) continue;
                for (const auto& [m, comp] : isotypic_decompose(ctx, img, window + 1)) {
                    if (sub.contains(m)) continue;
                    // escaping component: every coefficient must vanish at
                    // the exact integral specialization u = q^a, v = q^b
                    for (const auto& [wd, coef] : comp.poly().terms()) {
                        Scalar sp = coef.substitute_integer_params(a, b);
                        if (!sp.is_zero()) {
                            out.push_back({sub.name, k, m, op, sp});
                            break;
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace qshilov
