#include "qshilov/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qshilov/detail/lexer.hpp"
#include "qshilov/prinseries.hpp"
#include "qshilov/qsymmatrix.hpp"

namespace qshilov {

using nlohmann::json;

unsigned cli_thread_count() {
    if (const char* env = std::getenv("QSHILOV_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return (unsigned)v;
        return 1;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

namespace {

// Run fn(i) for i in [0, count) across the configured worker threads.
void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    unsigned threads = std::min<size_t>(cli_thread_count(), count);
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// ------------------------------------------------------------------ reports

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    json to_json() const {
        json arr = json::array();
        for (const auto& c : checks) {
            json jc{{"name", c.name}, {"pass", c.pass}};
            if (!c.detail.empty()) jc["detail"] = c.detail;
            arr.push_back(std::move(jc));
        }
        return json{{"schema", 1},
                    {"suite", suite},
                    {"passed", all_pass()},
                    {"checks", std::move(arr)}};
    }
    void print_text(std::ostream& out) const {
        for (const auto& c : checks) {
            out << (c.pass ? "pass" : "FAIL") << "  " << c.name;
            if (!c.detail.empty()) out << "  [" << c.detail << "]";
            out << "\n";
        }
        out << (all_pass() ? "all checks passed" : "CHECKS FAILED") << " ("
            << checks.size() << " checks, suite " << suite << ")\n";
    }
};

// -------------------------------------------------------------- verify suites

Report suite_confluence(const PresPtr& pres, const std::string& label, int n,
                        long nvars) {
    Report rep;
    rep.suite = label + ":confluence";
    auto failures = confluence_check(pres, 3);
    std::set<Word> bad;
    for (const auto& f : failures) bad.insert(f.word);
    for (unsigned a = 0; a < pres->size(); ++a)
        for (unsigned b = 0; b < a; ++b)
            for (unsigned c = 0; c < b; ++c) {
                Word w{(char)a, (char)b, (char)c};
                rep.checks.push_back({"overlap " + pres->name(a) + "·" + pres->name(b) +
                                          "·" + pres->name(c),
                                      bad.find(w) == bad.end(), ""});
            }
    (void)n;
    auto binom = [](long m, long k) {
        long r = 1;
        for (long i = 1; i <= k; ++i) r = r * (m - k + i) / i;
        return r;
    };
    for (int d = 0; d <= 4; ++d) {
        long got = graded_dimension(pres, d), want = binom(nvars + d - 1, d);
        rep.checks.push_back({"graded dimension d=" + std::to_string(d),
                              got == want,
                              std::to_string(got) + " vs commutative " +
                                  std::to_string(want)});
    }
    return rep;
}

std::vector<ChevOp> all_ops(int rank) {
    std::vector<ChevOp> ops;
    for (int k = 1; k <= rank; ++k) {
        ops.push_back(ChevOp::E(k));
        ops.push_back(ChevOp::F(k));
        ops.push_back(ChevOp::Kp(k));
        ops.push_back(ChevOp::Km(k));
    }
    return ops;
}

Report suite_module_algebra(const ActionTable& t, const std::string& label) {
    Report rep;
    rep.suite = label + ":module-algebra";
    const PresPtr& p = t.presentation();
    auto ops = all_ops(t.rank());
    struct Item {
        unsigned hi, lo;
        ChevOp op;
    };
    std::vector<Item> items;
    for (unsigned hi = 1; hi < p->size(); ++hi)
        for (unsigned lo = 0; lo < hi; ++lo)
            for (const auto& op : ops) items.push_back({hi, lo, op});
    std::vector<char> pass(items.size(), 0);
    parallel_for(items.size(), [&](size_t i) {
        const auto& it = items[i];
        Word lhs{(char)it.hi, (char)it.lo};
        AlgebraElement res = act_word(t, it.op, lhs);
        for (const auto& [c, w] : p->rule((unsigned char)it.hi, (unsigned char)it.lo))
            res -= act_word(t, it.op, w).scaled(c);
        pass[i] = res.is_zero();
    });
    rep.checks.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i)
        rep.checks.push_back({"relation " + p->name(items[i].hi) + "·" +
                                  p->name(items[i].lo) + " under " +
                                  to_string(items[i].op),
                              pass[i] != 0, ""});
    return rep;
}

Report suite_serre(const ActionTable& t, const std::string& label, int degree) {
    Report rep;
    rep.suite = label + ":serre";
    auto violations = verify_serre_and_commutator(t, degree);
    std::set<std::string> bad;
    for (const auto& v : violations) bad.insert(v.relation);
    std::set<std::string> names;
    for (int i = 1; i <= t.rank(); ++i)
        for (int j = 1; j <= t.rank(); ++j) {
            names.insert("[E_" + std::to_string(i) + ",F_" + std::to_string(j) + "]");
            names.insert("K_" + std::to_string(i) + "E_" + std::to_string(j));
            names.insert("K_" + std::to_string(i) + "F_" + std::to_string(j));
            if (i != j) {
                names.insert("Serre-E(" + std::to_string(i) + "," + std::to_string(j) + ")");
                names.insert("Serre-F(" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    for (const auto& nm : names)
        rep.checks.push_back({nm + " on words of degree <= " + std::to_string(degree),
                              bad.find(nm) == bad.end(), ""});
    return rep;
}

Report suite_commutant(const std::string& algebra, int n) {
    Report rep;
    rep.suite = algebra + ":commutant";
    if (algebra == "an") {
        const auto& A = qmatrix_algebra(n);
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                Scalar s = det_commutant_scalar(A, a, b);
                rep.checks.push_back({"det·z[" + std::to_string(a) + "][" +
                                          std::to_string(b) + "] commutant",
                                      s == Scalar(1), render(s)});
            }
    } else {
        const auto& A = qsymmatrix_algebra(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= i; ++j) {
                Scalar s = sym_det_commutant_scalar(A, i, j);
                rep.checks.push_back({"sdet·z[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "] commutant scalar",
                                      true, render(s)});
            }
    }
    return rep;
}

Report suite_star(const std::string& algebra, int n) {
    Report rep;
    rep.suite = algebra + ":star";
    if (algebra == "an") {
        const auto& A = qmatrix_algebra(n);
        const auto& t = an_action(n);
        auto derived = derive_star(t, A.loc, {{A.gen(n, n), star_generator(A, n, n)}});
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                std::string g = "z[" + std::to_string(a) + "][" + std::to_string(b) + "]";
                bool match = derived[A.gen(a, b)] == star_generator(A, a, b);
                rep.checks.push_back({"transported star(" + g + ") matches closed form",
                                      match, ""});
                LocalizedElement zz(A.loc, A.z(a, b), 0);
                rep.checks.push_back({"star(star(" + g + ")) = " + g,
                                      star(A, star(A, zz)) == zz, ""});
                rep.checks.push_back(
                    {"p(star(" + g + ")) = conj(p(" + g + "))",
                     point_eval(A, star(A, zz)) == point_eval(A, zz).conj(), ""});
            }
        for (size_t g1 = 0; g1 < A.pres->size(); ++g1)
            for (size_t g2 = 0; g2 < A.pres->size(); ++g2) {
                LocalizedElement f(A.loc, AlgebraElement::generator(A.pres, g1), 0);
                LocalizedElement g(A.loc, AlgebraElement::generator(A.pres, g2), 0);
                rep.checks.push_back({"star(" + A.pres->name(g1) + "·" + A.pres->name(g2) +
                                          ") anti-homomorphic",
                                      star(A, f * g) == star(A, g) * star(A, f), ""});
            }
    } else {
        const auto& A = qsymmatrix_algebra(n);
        const auto& t = cn_action(n);
        auto derived = derive_star(t, A.loc, {{A.gen(n, n), star_seed(A)}});
        auto star_el = [&](const LocalizedElement& f) {
            LocalizedElement acc = LocalizedElement::zero(A.loc);
            for (const auto& [w, c] : f.num().terms()) {
                LocalizedElement prod = LocalizedElement::unit(A.loc);
                for (auto g = w.rbegin(); g != w.rend(); ++g)
                    prod = prod * derived[(unsigned char)*g];
                acc = acc + prod.scaled(c.conj());
            }
            LocalizedElement sd = LocalizedElement::zero(A.loc);
            for (const auto& [w, c] : A.sdet.terms()) {
                LocalizedElement prod = LocalizedElement::unit(A.loc);
                for (auto g = w.rbegin(); g != w.rend(); ++g)
                    prod = prod * derived[(unsigned char)*g];
                sd = sd + prod.scaled(c.conj());
            }
            return acc * sd.pow(-f.power());
        };
        for (size_t g = 0; g < A.pres->size(); ++g) {
            LocalizedElement zg(A.loc, AlgebraElement::generator(A.pres, g), 0);
            rep.checks.push_back({"star(star(" + A.pres->name(g) + ")) identity",
                                  star_el(derived[g]) == zg, ""});
            rep.checks.push_back({"p(star(" + A.pres->name(g) + ")) = conj(p)",
                                  point_eval(A, derived[g]) == point_eval(A, zg).conj(),
                                  ""});
        }
    }
    return rep;
}

// --------------------------------------------------------------- eval grammar

struct EvalValue {
    // either a localized element or a bare scalar (from p(...))
    std::optional<LocalizedElement> elem;
    std::optional<Scalar> scalar;

    static EvalValue of(LocalizedElement e) { return {std::move(e), std::nullopt}; }
    static EvalValue of(Scalar s) { return {std::nullopt, std::move(s)}; }
    bool is_scalar() const { return scalar.has_value(); }
};

struct EvalContext {
    std::string algebra; // "an" | "cn"
    int n = 0;
    PresPtr pres;
    LocPtr loc;
    std::function<Scalar(const LocalizedElement&)> point;
    std::function<LocalizedElement(const LocalizedElement&)> star_fn;
};

EvalContext make_eval_context(const std::string& algebra, int n) {
    EvalContext ctx;
    ctx.algebra = algebra;
    ctx.n = n;
    if (algebra == "an") {
        const auto& A = qmatrix_algebra(n);
        ctx.pres = A.pres;
        ctx.loc = A.loc;
        ctx.point = [&A](const LocalizedElement& f) { return point_eval(A, f); };
        ctx.star_fn = [&A](const LocalizedElement& f) { return star(A, f); };
    } else {
        const auto& A = qsymmatrix_algebra(n);
        ctx.pres = A.pres;
        ctx.loc = A.loc;
        ctx.point = [&A](const LocalizedElement& f) { return point_eval(A, f); };
        auto derived = derive_star(cn_action(n), A.loc, {{A.gen(n, n), star_seed(A)}});
        ctx.star_fn = [&A, derived](const LocalizedElement& f) {
            LocalizedElement acc = LocalizedElement::zero(A.loc);
            for (const auto& [w, c] : f.num().terms()) {
                LocalizedElement prod = LocalizedElement::unit(A.loc);
                for (auto g = w.rbegin(); g != w.rend(); ++g)
                    prod = prod * derived[(unsigned char)*g];
                acc = acc + prod.scaled(c.conj());
            }
            LocalizedElement sd = LocalizedElement::zero(A.loc);
            for (const auto& [w, c] : A.sdet.terms()) {
                LocalizedElement prod = LocalizedElement::unit(A.loc);
                for (auto g = w.rbegin(); g != w.rend(); ++g)
                    prod = prod * derived[(unsigned char)*g];
                sd = sd + prod.scaled(c.conj());
            }
            return acc * sd.pow(-f.power());
        };
    }
    return ctx;
}

using detail::Lexer;
using detail::Tok;

EvalValue eval_sum(const EvalContext& ctx, Lexer& lx);

LocalizedElement need_elem(const EvalContext& ctx, const EvalValue& v) {
    if (v.is_scalar())
        return LocalizedElement::unit(ctx.loc).scaled(*v.scalar);
    return *v.elem;
}

EvalValue eval_atom(const EvalContext& ctx, Lexer& lx) {
    auto t = lx.next();
    switch (t.kind) {
        case Tok::Number:
            return EvalValue::of(LocalizedElement::unit(ctx.loc).scaled(Scalar(t.value)));
        case Tok::QPower:
            return EvalValue::of(LocalizedElement::unit(ctx.loc).scaled(
                Scalar(LaurentPoly::monomial(t.expo, 1))));
        case Tok::Minus: {
            EvalValue v = eval_atom(ctx, lx);
            if (v.is_scalar()) return EvalValue::of(-*v.scalar);
            return EvalValue::of(-*v.elem);
        }
        case Tok::LParen: {
            EvalValue v = eval_sum(ctx, lx);
            if (lx.next().kind != Tok::RParen) throw ParseError("expected ')'", t.pos);
            return v;
        }
        case Tok::Name: {
            if (t.text == "det")
                return EvalValue::of(LocalizedElement::den_power(ctx.loc, 1));
            if (t.text == "p" || t.text == "star") {
                auto lparen = lx.next();
                if (lparen.kind != Tok::LParen)
                    throw ParseError("expected '(' after " + t.text, lparen.pos);
                EvalValue arg = eval_sum(ctx, lx);
                auto rparen = lx.next();
                if (rparen.kind != Tok::RParen) throw ParseError("expected ')'", rparen.pos);
                LocalizedElement e = need_elem(ctx, arg);
                if (t.text == "p") return EvalValue::of(ctx.point(e));
                return EvalValue::of(ctx.star_fn(e));
            }
            std::string name = t.text;
            while (lx.peek().kind == Tok::LBracket) {
                lx.next();
                auto num = lx.next();
                if (num.kind != Tok::Number) throw ParseError("expected index", num.pos);
                auto rb = lx.next();
                if (rb.kind != Tok::RBracket) throw ParseError("expected ']'", rb.pos);
                name += "[" + num.value.get_str() + "]";
            }
            int g = ctx.pres->generator_index(name);
            if (g < 0) throw ParseError("unknown generator '" + name + "'", t.pos);
            LocalizedElement e(ctx.loc, AlgebraElement::generator(ctx.pres, (size_t)g), 0);
            while (lx.peek().kind == Tok::Dot) {
                lx.next();
                e = e * need_elem(ctx, eval_atom(ctx, lx));
            }
            return EvalValue::of(std::move(e));
        }
        default: throw ParseError("unexpected token in expression", t.pos);
    }
}

EvalValue eval_factor(const EvalContext& ctx, Lexer& lx) {
    EvalValue v = eval_atom(ctx, lx);
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
        if (neg) e = -e;
        if (v.is_scalar()) {
            v = EvalValue::of(v.scalar->pow(e));
        } else {
            v = EvalValue::of(v.elem->pow(e));
        }
    }
    return v;
}

EvalValue eval_product(const EvalContext& ctx, Lexer& lx) {
    EvalValue v = eval_factor(ctx, lx);
    while (lx.peek().kind == Tok::Star || lx.peek().kind == Tok::Slash) {
        bool div = lx.next().kind == Tok::Slash;
        EvalValue w = eval_factor(ctx, lx);
        if (v.is_scalar() && w.is_scalar()) {
            v = EvalValue::of(div ? *v.scalar / *w.scalar : *v.scalar * *w.scalar);
        } else if (div) {
            throw MathError("division only defined between scalars and det powers");
        } else {
            v = EvalValue::of(need_elem(ctx, v) * need_elem(ctx, w));
        }
    }
    return v;
}

EvalValue eval_sum(const EvalContext& ctx, Lexer& lx) {
    EvalValue v = eval_product(ctx, lx);
    while (lx.peek().kind == Tok::Plus || lx.peek().kind == Tok::Minus) {
        bool minus = lx.next().kind == Tok::Minus;
        EvalValue w = eval_product(ctx, lx);
        if (v.is_scalar() && w.is_scalar()) {
            v = EvalValue::of(minus ? *v.scalar - *w.scalar : *v.scalar + *w.scalar);
        } else {
            LocalizedElement b = need_elem(ctx, w);
            v = EvalValue::of(minus ? need_elem(ctx, v) - b : need_elem(ctx, v) + b);
        }
    }
    return v;
}

EvalValue eval_expression(const EvalContext& ctx, const std::string& text) {
    Lexer lx(text);
    EvalValue v = eval_sum(ctx, lx);
    if (lx.peek().kind != Tok::End)
        throw ParseError("trailing input after expression", lx.peek().pos);
    return v;
}

// ------------------------------------------------------------ classification

json params_to_json(const Params& p) {
    return json{{"alpha", {{"x", p.alpha.x.get_str()}, {"y", p.alpha.y.get_str()}}},
                {"beta", {{"x", p.beta.x.get_str()}, {"y", p.beta.y.get_str()}}}};
}

Params params_from_json(const json& j) {
    Params p;
    p.alpha.x = parse_rat(j.at("alpha").at("x").get<std::string>());
    p.alpha.y = parse_rat(j.at("alpha").at("y").get<std::string>());
    p.beta.x = parse_rat(j.at("beta").at("x").get<std::string>());
    p.beta.y = parse_rat(j.at("beta").at("y").get<std::string>());
    return p;
}

const char* rel_name(WallConstraint::Rel r) {
    switch (r) {
        case WallConstraint::Rel::LE: return "<=";
        case WallConstraint::Rel::GE: return ">=";
        case WallConstraint::Rel::EQ: return "==";
    }
    return "?";
}

WallConstraint::Rel rel_from(const std::string& s) {
    if (s == "<=") return WallConstraint::Rel::LE;
    if (s == ">=") return WallConstraint::Rel::GE;
    if (s == "==") return WallConstraint::Rel::EQ;
    throw MathError("bad relation " + s);
}

json report_to_json_impl(const CaseReport& r) {
    json subs = json::array();
    for (const auto& s : r.submodules) {
        json cs = json::array();
        for (const auto& c : s.constraints)
            cs.push_back(json{{"j", c.j}, {"rel", rel_name(c.rel)}, {"bound", c.bound}});
        subs.push_back(json{{"name", s.name}, {"constraints", std::move(cs)}});
    }
    json j{{"schema", 1},
           {"n", r.n},
           {"input", params_to_json(r.input)},
           {"canonical", params_to_json(r.canonical)},
           {"irreducible", r.irreducible},
           {"case", to_string(r.label)},
           {"submodules", std::move(subs)},
           {"completely_reducible", r.completely_reducible},
           {"unitarity",
            {{"series", to_string(r.series)}, {"unitarizable_submodules", r.unitarizable}}}};
    j["partner"] = r.partner ? params_to_json(*r.partner) : json(nullptr);
    return j;
}

CaseReport report_from_json_impl(const json& j) {
    CaseReport r;
    if (j.at("schema").get<int>() != 1) throw MathError("unknown report schema");
    r.n = j.at("n").get<int>();
    r.input = params_from_json(j.at("input"));
    r.canonical = params_from_json(j.at("canonical"));
    if (!j.at("partner").is_null()) r.partner = params_from_json(j.at("partner"));
    r.irreducible = j.at("irreducible").get<bool>();
    std::string lbl = j.at("case").get<std::string>();
    for (CaseLabel l : {CaseLabel::Nonintegral, CaseLabel::Case1, CaseLabel::Case2,
                        CaseLabel::Case3, CaseLabel::Case4})
        if (to_string(l) == lbl) r.label = l;
    for (const auto& js : j.at("submodules")) {
        SubmodulePredicate s;
        s.name = js.at("name").get<std::string>();
        for (const auto& jc : js.at("constraints"))
            s.constraints.push_back({jc.at("j").get<int>(),
                                     rel_from(jc.at("rel").get<std::string>()),
                                     jc.at("bound").get<long>()});
        r.submodules.push_back(std::move(s));
    }
    r.completely_reducible = j.at("completely_reducible").get<bool>();
    std::string sr = j.at("unitarity").at("series").get<std::string>();
    for (UnitaritySeries s : {UnitaritySeries::Principal, UnitaritySeries::Complementary,
                              UnitaritySeries::Strange, UnitaritySeries::None,
                              UnitaritySeries::SubmodulesOnly})
        if (to_string(s) == sr) r.series = s;
    r.unitarizable =
        j.at("unitarity").at("unitarizable_submodules").get<std::vector<std::string>>();
    return r;
}

void print_report_text(const CaseReport& r, std::ostream& out) {
    out << "n = " << r.n << "\n";
    out << "canonical parameters: alpha = " << to_string(r.canonical.alpha)
        << ", beta = " << to_string(r.canonical.beta) << "\n";
    if (r.partner)
        out << "equivalent to: alpha = " << to_string(r.partner->alpha)
            << ", beta = " << to_string(r.partner->beta) << "\n";
    out << "case: " << to_string(r.label) << "\n";
    out << "irreducible: " << (r.irreducible ? "yes" : "no") << "\n";
    if (!r.submodules.empty()) {
        out << "submodules:\n";
        for (const auto& s : r.submodules) {
            out << "  " << s.name << ": ";
            bool first = true;
            for (const auto& c : s.constraints) {
                if (!first) out << " and ";
                first = false;
                out << "k" << c.j << " " << rel_name(c.rel) << " " << c.bound;
            }
            out << "\n";
        }
        out << "completely reducible: " << (r.completely_reducible ? "yes" : "no") << "\n";
    }
    out << "unitarity: " << to_string(r.series);
    if (!r.unitarizable.empty()) {
        out << " (unitarizable:";
        for (const auto& s : r.unitarizable) out << " " << s;
        out << ")";
    }
    out << "\n";
}

// ------------------------------------------------------------------ SVG output

// Wall diagram for n = 2: axes k1 (right) and k2 (up), the cone k1 >= k2,
// the four wall lines with direction arrows, shaded submodule regions.
std::string wall_diagram_svg(const CaseReport& r) {
    if (r.n != 2) throw MathError("wall diagrams are drawn for n = 2 only");
    if (!r.canonical.alpha.is_integral() || !r.canonical.beta.is_integral())
        throw MathError("wall diagrams exist for integral parameters only "
                        "(nonintegral modules are irreducible)");
    long a = r.canonical.alpha.x.get_num().get_si();
    long b = r.canonical.beta.x.get_num().get_si();
    // walls: L1+: k1 = b; L1-: k1 = -a-1; L2+: k2 = b+1; L2-: k2 = -a
    const long lo = std::min({b, -a - 1, -4L}) - 2, hi = std::max({b + 1, -a, 4L}) + 2;
    const long scale = 36, margin = 40;
    auto X = [&](long k1) { return margin + (k1 - lo) * scale; };
    auto Y = [&](long k2) { return margin + (hi - k2) * scale; };
    long w = 2 * margin + (hi - lo) * scale, h = w;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    s << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    // shaded submodule regions (clipped boxes intersected with the cone later)
    const char* fills[] = {"#7fbf7f", "#7f9fff", "#ff9f7f", "#cf7fff"};
    int fi = 0;
    for (const auto& sub : r.submodules) {
        long x1 = lo, x2 = hi, y1 = lo, y2 = hi;
        for (const auto& c : sub.constraints) {
            if (c.j == 1 && c.rel == WallConstraint::Rel::LE) x2 = std::min(x2, c.bound);
            if (c.j == 1 && c.rel == WallConstraint::Rel::GE) x1 = std::max(x1, c.bound);
            if (c.j == 1 && c.rel == WallConstraint::Rel::EQ) x1 = x2 = c.bound;
            if (c.j == 2 && c.rel == WallConstraint::Rel::LE) y2 = std::min(y2, c.bound);
            if (c.j == 2 && c.rel == WallConstraint::Rel::GE) y1 = std::max(y1, c.bound);
            if (c.j == 2 && c.rel == WallConstraint::Rel::EQ) y1 = y2 = c.bound;
        }
        if (x1 > x2 || y1 > y2) continue;
        s << "<rect x=\"" << X(x1) - scale / 4 << "\" y=\"" << Y(y2) - scale / 4
          << "\" width=\"" << (x2 - x1) * scale + scale / 2 << "\" height=\""
          << (y2 - y1) * scale + scale / 2 << "\" fill=\"" << fills[fi % 4]
          << "\" fill-opacity=\"0.35\"/>\n";
        ++fi;
    }
    // axes (dotted)
    s << "<line x1=\"" << X(lo) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(hi)
      << "\" y2=\"" << Y(0) << "\" stroke=\"gray\" stroke-dasharray=\"2,4\"/>\n";
    s << "<line x1=\"" << X(0) << "\" y1=\"" << Y(lo) << "\" x2=\"" << X(0)
      << "\" y2=\"" << Y(hi) << "\" stroke=\"gray\" stroke-dasharray=\"2,4\"/>\n";
    s << "<text x=\"" << X(hi) - 18 << "\" y=\"" << Y(0) - 6 << "\" font-size=\"13\">k1</text>\n";
    s << "<text x=\"" << X(0) + 6 << "\" y=\"" << Y(hi) + 14 << "\" font-size=\"13\">k2</text>\n";
    // cone boundary k1 = k2
    s << "<line x1=\"" << X(lo) << "\" y1=\"" << Y(lo) << "\" x2=\"" << X(hi)
      << "\" y2=\"" << Y(hi) << "\" stroke=\"black\"/>\n";
    // walls with arrows: L^- carries +direction, L^+ carries -direction
    auto vline = [&](long k1, const std::string& label, int dir) {
        s << "<line x1=\"" << X(k1) << "\" y1=\"" << Y(lo) << "\" x2=\"" << X(k1)
          << "\" y2=\"" << Y(hi) << "\" stroke=\"black\"/>\n";
        long ax = X(k1), ay = Y(lo) - 10;
        s << "<line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << ax + dir * 14
          << "\" y2=\"" << ay << "\" stroke=\"black\" marker-end=\"url(#arr)\"/>\n";
        s << "<text x=\"" << X(k1) - 12 << "\" y=\"" << Y(lo) + 16
          << "\" font-size=\"12\">" << label << "</text>\n";
    };
    auto hline = [&](long k2, const std::string& label, int dir) {
        s << "<line x1=\"" << X(lo) << "\" y1=\"" << Y(k2) << "\" x2=\"" << X(hi)
          << "\" y2=\"" << Y(k2) << "\" stroke=\"black\"/>\n";
        long ax = X(hi) + 10, ay = Y(k2);
        s << "<line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << ax << "\" y2=\""
          << ay - dir * 14 << "\" stroke=\"black\" marker-end=\"url(#arr)\"/>\n";
        s << "<text x=\"" << X(lo) - 36 << "\" y=\"" << Y(k2) + 4
          << "\" font-size=\"12\">" << label << "</text>\n";
    };
    s << "<defs><marker id=\"arr\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" "
         "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
    vline(b, "k1=b", -1);
    vline(-a - 1, "k1=-a-1", +1);
    hline(b + 1, "k2=b+1", -1);
    hline(-a, "k2=-a", +1);
    s << "<text x=\"" << margin << "\" y=\"" << h - 10 << "\" font-size=\"13\">case "
      << to_string(r.label) << ", alpha=" << a << ", beta=" << b << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

// ----------------------------------------------------------------- subcommands

struct CliState {
    std::ostream& out;
    std::ostream& err;
    int exit_code = 0;
};

void emit_report(const Report& rep, bool as_json, CliState& st) {
    if (as_json)
        st.out << rep.to_json().dump(2) << "\n";
    else
        rep.print_text(st.out);
    if (!rep.all_pass()) st.exit_code = 1;
}

int run_verify_cmd(const std::string& algebra, int n, const std::string& suite,
                   int degree, bool as_json, CliState& st) {
    std::vector<Report> reps;
    bool an = algebra == "an";
    long nvars = an ? (long)n * n : (long)n * (n + 1) / 2;
    PresPtr pres = an ? qmatrix_algebra(n).pres : qsymmatrix_algebra(n).pres;
    const ActionTable& table = an ? an_action(n) : cn_action(n);
    if (suite == "confluence" || suite == "all")
        reps.push_back(suite_confluence(pres, algebra, n, nvars));
    if (suite == "module-algebra" || suite == "all")
        reps.push_back(suite_module_algebra(table, algebra));
    if (suite == "serre" || suite == "all")
        reps.push_back(suite_serre(table, algebra, degree));
    if (suite == "star" || suite == "all") reps.push_back(suite_star(algebra, n));
    if (suite == "commutant" || suite == "all")
        reps.push_back(suite_commutant(algebra, n));
    if (reps.empty()) {
        st.err << "unknown suite '" << suite << "'\n";
        return 2;
    }
    for (const auto& r : reps) emit_report(r, as_json, st);
    return st.exit_code;
}

} // namespace

std::string case_report_to_json(const CaseReport& r) {
    return report_to_json_impl(r).dump(2);
}

CaseReport case_report_from_json(const std::string& text) {
    return report_from_json_impl(json::parse(text));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliState st{out, err};
    CLI::App app{"exact computations in quantum matrix algebras and their "
                 "principal series"};
    app.name("qshilov");
    app.require_subcommand(1);

    // ---- verify
    std::string v_algebra = "an", v_suite = "all";
    int v_n = 2, v_degree = 2;
    bool v_json = false;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--algebra", v_algebra)->check(CLI::IsMember({"an", "cn"}));
    verify->add_option("--n", v_n)->check(CLI::Range(1, 6));
    verify->add_option("--suite", v_suite);
    verify->add_option("--degree", v_degree)->check(CLI::Range(1, 6));
    verify->add_flag("--json", v_json);

    // ---- eval
    std::string e_algebra = "an", e_expr;
    int e_n = 2;
    auto* eval = app.add_subcommand("eval", "evaluate an algebra expression");
    eval->add_option("--algebra", e_algebra)->check(CLI::IsMember({"an", "cn"}));
    eval->add_option("--n", e_n)->check(CLI::Range(1, 6));
    eval->add_option("expr", e_expr, "expression")->required();

    // ---- classify
    std::string c_alpha = "0", c_beta = "0", c_format = "text", c_out;
    int c_n = 2;
    auto* cls = app.add_subcommand("classify", "classify pi_{alpha,beta}");
    cls->add_option("--n", c_n)->check(CLI::Range(1, 6));
    cls->add_option("--alpha", c_alpha);
    cls->add_option("--beta", c_beta);
    cls->add_option("--format", c_format)->check(CLI::IsMember({"text", "json", "svg"}));
    cls->add_option("--out", c_out);

    // ---- intertwiner
    std::string i_k = "0";
    int i_n = 2;
    bool i_json = false;
    auto* inter = app.add_subcommand("intertwiner", "intertwiner eigenvalue a_k");
    inter->add_option("--n", i_n)->check(CLI::Range(1, 6));
    inter->add_option("--k", i_k, "comma-separated k, e.g. 1,0");
    inter->add_flag("--json", i_json);

    // ---- diagram
    std::string d_alpha = "0", d_beta = "0", d_out;
    int d_n = 2;
    auto* diag = app.add_subcommand("diagram", "write the wall diagram SVG");
    diag->add_option("--n", d_n)->check(CLI::Range(1, 6));
    diag->add_option("--alpha", d_alpha);
    diag->add_option("--beta", d_beta);
    diag->add_option("--out", d_out);

    // ---- series (grouping alias)
    auto* series = app.add_subcommand("series", "principal series commands");
    series->require_subcommand(1);
    std::string sc_alpha = "0", sc_beta = "0", sc_format = "text", sc_out;
    int sc_n = 2;
    auto* s_cls = series->add_subcommand("classify", "classify pi_{alpha,beta}");
    s_cls->add_option("--n", sc_n)->check(CLI::Range(1, 6));
    s_cls->add_option("--alpha", sc_alpha);
    s_cls->add_option("--beta", sc_beta);
    s_cls->add_option("--format", sc_format)->check(CLI::IsMember({"text", "json", "svg"}));
    s_cls->add_option("--out", sc_out);
    std::string si_k = "0";
    int si_n = 2;
    bool si_json = false;
    auto* s_int = series->add_subcommand("intertwiner", "intertwiner eigenvalue a_k");
    s_int->add_option("--n", si_n)->check(CLI::Range(1, 6));
    s_int->add_option("--k", si_k);
    s_int->add_flag("--json", si_json);
    int sv_n = 1;
    long sv_window = 1;
    bool sv_json = false;
    auto* s_ver = series->add_subcommand("verify", "verify the intertwining identity");
    s_ver->add_option("--n", sv_n)->check(CLI::Range(1, 6));
    s_ver->add_option("--window", sv_window)->check(CLI::NonNegativeNumber);
    s_ver->add_flag("--json", sv_json);

    // ---- an / cn convenience groups
    auto* an_grp = app.add_subcommand("an", "quantum matrix algebra commands");
    an_grp->require_subcommand(1);
    int an_n = 2;
    an_grp->add_option("--n", an_n)->check(CLI::Range(1, 6));
    auto* an_det = an_grp->add_subcommand("det", "print det_q z");
    std::string an_star_elem = "z[1][1]";
    auto* an_star = an_grp->add_subcommand("star", "apply the involution");
    an_star->add_option("--elem", an_star_elem);
    auto* cn_grp = app.add_subcommand("cn", "quantum symmetric matrix algebra commands");
    cn_grp->require_subcommand(1);
    int cn_n = 2;
    cn_grp->add_option("--n", cn_n)->check(CLI::Range(1, 6));
    auto* cn_det = cn_grp->add_subcommand("det", "print det_q^sym z");
    auto* cn_ver = cn_grp->add_subcommand("verify-relations",
                                          "confluence, commutant and point checks");

    std::vector<const char*> argv;
    argv.push_back("qshilov");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*verify) return run_verify_cmd(v_algebra, v_n, v_suite, v_degree, v_json, st);
        if (*eval) {
            EvalContext ctx = make_eval_context(e_algebra, e_n);
            EvalValue v = eval_expression(ctx, e_expr);
            if (v.is_scalar())
                out << render(*v.scalar) << "\n";
            else
                out << render(*v.elem) << "\n";
            return 0;
        }
        auto do_classify = [&](int n, const std::string& alpha, const std::string& beta,
                               const std::string& format, const std::string& path) {
            Params p;
            p.alpha = parse_param(alpha);
            p.beta = parse_param(beta);
            CaseReport r = classify(p, n);
            std::string payload;
            if (format == "json")
                payload = report_to_json_impl(r).dump(2) + "\n";
            else if (format == "svg")
                payload = wall_diagram_svg(r);
            if (format == "text") {
                print_report_text(r, out);
            } else if (path.empty()) {
                out << payload;
            } else {
                std::ofstream f(path, std::ios::binary);
                if (!f) throw MathError("cannot open output file " + path);
                f << payload;
                out << "wrote " << path << "\n";
            }
            return 0;
        };
        if (*cls) return do_classify(c_n, c_alpha, c_beta, c_format, c_out);
        if (*s_cls) return do_classify(sc_n, sc_alpha, sc_beta, sc_format, sc_out);
        if (*diag) return do_classify(d_n, d_alpha, d_beta, "svg", d_out);
        auto do_intertwiner = [&](int n, const std::string& kstr, bool as_json) {
            KVector k;
            std::stringstream ss(kstr);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    size_t used = 0;
                    k.push_back(std::stol(item, &used));
                    if (used != item.size()) throw std::invalid_argument(item);
                } catch (const std::exception&) {
                    throw ParseError("bad k entry '" + item + "'", 0);
                }
            }
            Scalar a = intertwiner_coeff(k, n);
            if (as_json) {
                out << json{{"schema", 1}, {"n", n}, {"k", k}, {"a_k", render(a)}}.dump(2)
                    << "\n";
            } else {
                out << render(a) << "\n";
            }
            return 0;
        };
        if (*inter) return do_intertwiner(i_n, i_k, i_json);
        if (*s_int) return do_intertwiner(si_n, si_k, si_json);
        if (*s_ver) {
            auto violations = verify_intertwiner(sv_n, sv_window);
            Report rep;
            rep.suite = "series:intertwiner";
            rep.checks.push_back(
                {"A pi(xi) = pi'(xi) A on |k_i| <= " + std::to_string(sv_window) +
                     ", n = " + std::to_string(sv_n),
                 violations.empty(),
                 violations.empty() ? "" : std::to_string(violations.size()) + " violations"});
            emit_report(rep, sv_json, st);
            return st.exit_code;
        }
        if (*an_det) {
            out << render(qmatrix_algebra(an_n).det) << "\n";
            return 0;
        }
        if (*an_star) {
            EvalContext ctx = make_eval_context("an", an_n);
            EvalValue v = eval_expression(ctx, an_star_elem);
            out << render(ctx.star_fn(need_elem(ctx, v))) << "\n";
            return 0;
        }
        if (*cn_det) {
            out << render(sym_det(qsymmatrix_algebra(cn_n))) << "\n";
            return 0;
        }
        if (*cn_ver) {
            const auto& A = qsymmatrix_algebra(cn_n);
            Report rep = suite_confluence(A.pres, "cn", cn_n, (long)cn_n * (cn_n + 1) / 2);
            Report rep2 = suite_commutant("cn", cn_n);
            // point character on all generator pairs
            Report rep3;
            rep3.suite = "cn:point";
            for (size_t g1 = 0; g1 < A.pres->size(); ++g1)
                for (size_t g2 = 0; g2 < A.pres->size(); ++g2) {
                    AlgebraElement a = AlgebraElement::generator(A.pres, g1);
                    AlgebraElement b = AlgebraElement::generator(A.pres, g2);
                    rep3.checks.push_back(
                        {"p multiplicative on " + A.pres->name(g1) + "·" + A.pres->name(g2),
                         point_eval(A, a * b) == point_eval(A, a) * point_eval(A, b), ""});
                }
            emit_report(rep, false, st);
            emit_report(rep2, false, st);
            emit_report(rep3, false, st);
            return st.exit_code;
        }
        err << "no subcommand executed\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qshilov
