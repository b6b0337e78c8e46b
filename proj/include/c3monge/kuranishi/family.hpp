#pragma once

#include "dgla.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace c3monge {

struct Coordinate {
    std::string name;
    Weight weight;  // torus weight of the H^1 class (degree component first)
};

// A component of M given as a coordinate substitution; variables not in
// the substitution remain free.
struct Component {
    std::vector<std::string> equations;  // e.g. "t3 = 0"
    std::map<int, MultiPoly> substitution;
    size_t dim = 0;
};

struct KuranishiFamily {
    std::vector<Coordinate> coords;
    std::vector<Cochain<RatFunc>> h1;  // representatives, same order as coords
    Cochain<RatFunc> xi;               // xi(m), polynomial in the coordinates
    std::vector<MultiPoly> obstructions;
    std::vector<Component> components;
    bool needs_manual_components = false;

    std::vector<int> var_ids() const {
        std::vector<int> v;
        for (auto& c : coords) v.push_back(Vars::id(c.name));
        return v;
    }
    // xi restricted to a component
    Cochain<RatFunc> xi_on(const Component& c) const {
        Cochain<RatFunc> out(xi.p);
        for (auto& [k, v] : xi.c) out.add(k, v.compose(c.substitution));
        return out;
    }
};

namespace detail {

// linear polynomial -> (coefficients per variable, constant); nullopt if not linear with rational coefficients
inline std::optional<std::pair<Vec<Rational>, Rational>> linear_form(const MultiPoly& p, const std::vector<int>& vars) {
    Vec<Rational> a(vars.size(), Rational(0));
    Rational c(0);
    for (auto& t : p.terms()) {
        if (t.m.is_one()) {
            c = t.c;
            continue;
        }
        if (t.m.degree() != 1) return std::nullopt;
        auto it = std::find_if(vars.begin(), vars.end(), [&](int v) { return t.m.e[v] == 1; });
        if (it == vars.end()) return std::nullopt;
        a[size_t(it - vars.begin())] = t.c;
    }
    return std::make_pair(a, c);
}

// common zero set of linear polynomials as a substitution (last pivots eliminated)
inline std::optional<Component> solve_linear_locus(const std::vector<MultiPoly>& eqs, const std::vector<int>& vars) {
    size_t n = vars.size();
    std::vector<Vec<Rational>> rows;
    for (auto& e : eqs) {
        auto lf = linear_form(e, vars);
        if (!lf) return std::nullopt;
        Vec<Rational> r = lf->first;
        r.push_back(lf->second);
        rows.push_back(r);
    }
    Matrix<Rational> M(rows.size(), n + 1);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j <= n; ++j) M(i, j) = rows[i][j];
    // eliminate from the last variable backwards so that t3 = 0 rather than t1 = ... reads naturally
    Matrix<Rational> R(rows.size(), n + 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < n; ++j) R(i, j) = M(i, n - 1 - j);
        R(i, n) = M(i, n);
    }
    auto e = rref(R);
    Component c;
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        size_t pj = e.pivots[i];
        if (pj == n) return std::nullopt;  // inconsistent: empty locus
        int v = vars[n - 1 - pj];
        MultiPoly val = MultiPoly(-e.R(i, n));
        for (size_t j = pj + 1; j < n; ++j)
            if (!e.R(i, j).is_zero()) val -= MultiPoly::var(vars[n - 1 - j]).scaled(e.R(i, j));
        c.substitution[v] = val;
        c.equations.push_back(Vars::name(v) + " = " + val.str());
    }
    c.dim = n - e.pivots.size();
    return c;
}

inline bool vanishes_on(const MultiPoly& p, const Component& c) { return p.compose(c.substitution).is_zero(); }

}  // namespace detail

// Irreducible components of the obstruction locus: the zero set of the gcd g
// (when it is linear), then the closure of the rest, found by saturating the
// cofactors by g and solving their linear members until nothing is left.
// Anything else is flagged for manual input.
inline void decompose_locus(KuranishiFamily& fam) {
    auto vars = fam.var_ids();
    fam.components.clear();
    fam.needs_manual_components = false;
    if (fam.obstructions.empty()) {
        Component all;
        all.dim = vars.size();
        fam.components.push_back(all);
        return;
    }
    MultiPoly g;
    for (auto& p : fam.obstructions) g = g.is_zero() ? p.monic() : poly_gcd(g, p);
    // factors of g: its variable factors, and what is left once they are divided out
    std::vector<MultiPoly> factors;
    Monomial mc = g.monomial_content();
    for (int v = 0; v < kMaxVars; ++v)
        if (mc.e[v]) factors.push_back(MultiPoly::var(v));
    MultiPoly g1 = g.divide_monomial(mc);
    if (!g1.is_constant()) factors.push_back(g1.monic());
    for (auto& f : factors) {
        auto c = detail::solve_linear_locus({f}, vars);
        if (!c) {
            fam.needs_manual_components = true;
            return;
        }
        fam.components.push_back(*c);
    }
    std::map<int, MultiPoly> sub;
    std::vector<MultiPoly> rest;
    for (auto& p : fam.obstructions) rest.push_back(p.exact_div(g));
    while (true) {
        std::vector<MultiPoly> fs;
        for (auto& f : factors) fs.push_back(f.compose(sub));
        std::vector<MultiPoly> cur, lin;
        for (auto& q : rest) {
            MultiPoly r = q.compose(sub);
            if (r.is_zero()) continue;
            for (auto& f : fs)
                if (!f.is_constant())
                    while (auto d = r.divide(f)) r = *d;
            if (r.is_constant()) return;  // no common zero off {g = 0}
            cur.push_back(r);
            if (detail::linear_form(r, vars)) lin.push_back(r);
        }
        if (cur.empty()) break;
        if (lin.empty()) {
            fam.needs_manual_components = true;
            return;
        }
        auto c = detail::solve_linear_locus(lin, vars);
        if (!c) return;  // inconsistent linear equations
        for (auto& [v, e] : sub) e = e.compose(c->substitution);
        for (auto& [v, e] : c->substitution) sub[v] = e;
    }
    // a locus inside {g = 0} is not a separate component
    for (auto& f : factors)
        if (f.compose(sub).is_zero()) return;
    Component c;
    for (auto& [v, e] : sub) c.equations.push_back(Vars::name(v) + " = " + e.str());
    c.substitution = sub;
    c.dim = vars.size() - sub.size();
    fam.components.push_back(c);
}

// Default coordinate names: weight-1 classes t (or t1, t2, ... by decreasing
// H-weight), weight-2 classes s (or s1, ...), higher u<i>_<k>.
inline std::vector<std::string> default_coordinate_names(const std::vector<Weight>& w) {
    std::map<int, int> count;
    for (auto& x : w) ++count[x[0]];
    std::vector<size_t> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return w[a][0] != w[b][0] ? w[a][0] < w[b][0] : w[a].size() > 1 && w[a][1] > w[b][1];
    });
    std::vector<std::string> out(w.size());
    std::map<int, int> seen;
    for (size_t i : order) {
        int d = w[i][0];
        std::string base = d == 1 ? "t" : d == 2 ? "s" : "u" + std::to_string(d) + "_";
        int k = ++seen[d];
        out[i] = count[d] == 1 ? base : base + std::to_string(k);
    }
    return out;
}

// Kuranishi family of L. reps / names may override the harmonic basis of H^1 and the coordinate names.
inline KuranishiFamily kuranishi_family(const Dgla<RatFunc>& L, std::vector<Cochain<RatFunc>> reps = {},
                                        std::vector<std::string> names = {}) {
    if (L.h0() != 0)
        throw std::invalid_argument("kuranishi_family: H^0 != 0, the gauge action is not free");
    auto basis = L.h1_basis();
    std::vector<Weight> ws;
    for (auto& [w, c] : basis) ws.push_back(w);
    if (reps.empty())
        for (auto& [w, c] : basis) reps.push_back(c);
    if (reps.size() != basis.size()) throw std::invalid_argument("kuranishi_family: wrong number of H^1 representatives");
    // overriding reps must be cocycles with independent classes; weights are taken from their support
    for (size_t j = 0; j < reps.size(); ++j) {
        if (!L.d(reps[j]).is_zero()) throw std::invalid_argument("kuranishi_family: representative is not a cocycle");
        auto sup = L.complex().support(reps[j]);
        if (sup.size() != 1) throw std::invalid_argument("kuranishi_family: representative is not a weight vector");
        ws[j] = *sup.begin();
    }
    if (names.empty()) names = default_coordinate_names(ws);
    KuranishiFamily fam;
    Cochain<RatFunc> m(2);
    for (size_t j = 0; j < reps.size(); ++j) {
        fam.coords.push_back({names[j], ws[j]});
        fam.h1.push_back(reps[j]);
        m += reps[j].scaled(RatFunc::var(names[j]));
    }
    fam.xi = L.phi_inverse(m);
    Cochain<RatFunc> r = L.mc_residual(fam.xi);
    using P = CochainComplex<RatFunc>::Part;
    if (!L.complex().project(r, P::B).is_zero()) throw std::logic_error("kuranishi_family: residual has a boundary part");
    for (auto part : {P::H, P::C}) {
        Cochain<RatFunc> q = L.complex().project(r, part);
        for (auto& w : L.complex().support(q)) {
            Vec<RatFunc> co = L.complex().split(3, w).coords(L.complex().to_block(q, w));
            for (auto& x : co)
                if (!x.is_zero()) {
                    if (!x.is_polynomial()) throw std::logic_error("kuranishi_family: non-polynomial obstruction");
                    fam.obstructions.push_back(x.num());
                }
        }
    }
    decompose_locus(fam);
    return fam;
}

namespace detail {

inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    mpz_class n = q.num(), d = q.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(mpq_class(rn, rd));
}

// rational roots of a univariate polynomial of degree <= 2 in variable v
inline std::vector<Rational> rational_roots(const MultiPoly& p, int v) {
    auto c = p.coeffs_in(v);
    auto k = [&](size_t i) { return i < c.size() ? c[i].constant_value() : Rational(0); };
    std::vector<Rational> out;
    if (c.size() == 2) out.push_back(-k(0) / k(1));
    if (c.size() == 3) {
        Rational disc = k(1) * k(1) - Rational(4) * k(0) * k(2);
        if (auto r = rational_sqrt(disc)) {
            out.push_back((-k(1) + *r) / (Rational(2) * k(2)));
            if (!r->is_zero()) out.push_back((-k(1) - *r) / (Rational(2) * k(2)));
        }
    }
    if (c.size() > 3) throw std::invalid_argument("rational_roots: degree > 2");
    return out;
}

}  // namespace detail

// Two classes of one weight rebased as v1, v2 with [v1,v1] = [v2,v2] = 0,
// plus the corrector v3 = -delta[v1,v2] (so d v3 + [v1,v2] = 0 when
// [v1,v2] is exact). Empty when no such rational basis exists.
struct CorrectedPair {
    Cochain<RatFunc> v1, v2, v3;
    std::array<Rational, 4> change;  // v1 = a h1 + b h2, v2 = c h1 + d h2
};

inline std::optional<CorrectedPair> isotropic_pair(const Dgla<RatFunc>& L, const Cochain<RatFunc>& h1,
                                                   const Cochain<RatFunc>& h2) {
    Cochain<RatFunc> A = L.bracket(h1, h1), B = L.bracket(h1, h2), C = L.bracket(h2, h2);
    // directions (a, b): (1, 0) if A = 0, otherwise (r, 1) with r a common root
    std::vector<std::pair<Rational, Rational>> dirs;
    if (A.is_zero()) dirs.emplace_back(Rational(1), Rational(0));
    int r = Vars::id("r");
    MultiPoly rv = MultiPoly::var(r), g;
    std::set<CKey> keys;
    for (auto* x : {&A, &B, &C})
        for (auto& [k, v] : x->c) keys.insert(k);
    for (CKey k : keys) {
        auto cst = [&](const Cochain<RatFunc>& x) {
            RatFunc v = x.get(k);
            if (!v.is_constant()) throw std::invalid_argument("isotropic_pair: classes must have rational coefficients");
            return MultiPoly(v.constant_value());
        };
        MultiPoly q = rv * rv * cst(A) + rv * cst(B).scaled(Rational(2)) + cst(C);
        if (!q.is_zero()) g = g.is_zero() ? q.monic() : poly_gcd(g, q);
    }
    if (g.is_zero()) {
        dirs = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    } else if (!g.is_constant()) {
        for (auto& x : detail::rational_roots(g, r)) dirs.emplace_back(x, Rational(1));
    }
    if (dirs.size() < 2) return std::nullopt;
    CorrectedPair p;
    p.change = {dirs[0].first, dirs[0].second, dirs[1].first, dirs[1].second};
    p.v1 = h1.scaled(RatFunc(dirs[0].first)) + h2.scaled(RatFunc(dirs[0].second));
    p.v2 = h1.scaled(RatFunc(dirs[1].first)) + h2.scaled(RatFunc(dirs[1].second));
    p.v3 = L.delta(L.bracket(p.v1, p.v2)).scaled(RatFunc(-1));
    return p;
}

namespace detail {

// Some rational solution of a polynomial system, or nothing. Univariate
// equations of degree <= 2 branch over their rational roots, equations linear
// in a variable with constant coefficient eliminate it, and otherwise a
// variable is tried at 0, 1, -1. Incomplete by design: a miss is not a proof.
inline std::optional<std::map<int, Rational>> rational_point(std::vector<MultiPoly> eqs, std::vector<int> vars,
                                                             int budget = 64) {
    std::erase_if(eqs, [](const MultiPoly& e) { return e.is_zero(); });
    if (eqs.empty()) {
        std::map<int, Rational> out;
        for (int v : vars) out[v] = Rational(0);
        return out;
    }
    if (budget <= 0) return std::nullopt;
    for (auto& e : eqs)
        if (e.is_constant()) return std::nullopt;
    auto assign = [&](int v, const Rational& x) -> std::optional<std::map<int, Rational>> {
        std::vector<MultiPoly> sub;
        for (auto& e : eqs) sub.push_back(e.substitute({{v, x}}));
        std::vector<int> rest;
        for (int u : vars)
            if (u != v) rest.push_back(u);
        auto r = rational_point(std::move(sub), std::move(rest), budget - 1);
        if (r) (*r)[v] = x;
        return r;
    };
    for (auto& e : eqs) {
        uint32_t m = e.var_mask();
        if (std::popcount(m) != 1) continue;
        int v = std::countr_zero(m);
        if (e.degree_in(v) > 2) continue;
        for (auto& x : rational_roots(e, v))
            if (auto r = assign(v, x)) return r;
        return std::nullopt;
    }
    for (auto& e : eqs)
        for (int v : vars) {
            if (e.degree_in(v) != 1) continue;
            auto c = e.coeffs_in(v);
            if (!c[1].is_constant()) continue;
            MultiPoly val = c[0].scaled(-c[1].constant_value().inv());
            std::vector<MultiPoly> sub;
            for (auto& f : eqs) sub.push_back(f.compose({{v, val}}));
            std::vector<int> rest;
            for (int u : vars)
                if (u != v) rest.push_back(u);
            auto r = rational_point(std::move(sub), rest, budget - 1);
            if (!r) return std::nullopt;
            (*r)[v] = val.substitute(*r).constant_value();
            return r;
        }
    for (int v : vars)
        if (std::any_of(eqs.begin(), eqs.end(), [&](const MultiPoly& e) { return e.degree_in(v) > 0; })) {
            for (int x : {0, 1, -1})
                if (auto r = assign(v, Rational(x))) return r;
            return std::nullopt;
        }
    return std::nullopt;
}

}  // namespace detail

// A representative h + dy of the class of h with [h + dy, h + dy] = 0, where y
// runs over the C^1 block of the weight of h. Coefficients must be rational.
inline std::optional<Cochain<RatFunc>> isotropic_representative(const Dgla<RatFunc>& L, const Cochain<RatFunc>& h) {
    if (L.bracket(h, h).is_zero()) return h;
    auto ws = L.complex().support(h);
    if (ws.size() != 1) throw std::invalid_argument("isotropic_representative: class is not homogeneous");
    const auto& keys = L.complex().keys(1, *ws.begin());
    // only y modulo cocycles matters: parametrize a complement of ker d
    std::vector<Cochain<RatFunc>> dys;
    {
        std::vector<Vec<RatFunc>> rows;
        Weight w = *ws.begin();
        for (CKey k : keys) {
            Cochain<RatFunc> e(1);
            e.add(k, RatFunc(1));
            Cochain<RatFunc> de = L.d(e);
            rows.push_back(L.complex().to_block(de, w));
            std::vector<Vec<RatFunc>> test = rows;
            if (rank(Matrix<RatFunc>::from_rows(test, test[0].size())) < rows.size())
                rows.pop_back();
            else
                dys.push_back(de);
        }
    }
    std::vector<int> vars;
    Cochain<RatFunc> u = h;
    for (size_t i = 0; i < dys.size(); ++i) {
        int v = Vars::id("y" + std::to_string(i));
        vars.push_back(v);
        u = u + dys[i].scaled(RatFunc(MultiPoly::var(v)));
    }
    std::vector<MultiPoly> eqs;
    for (auto& [k, c] : L.bracket(u, u).c) {
        if (!c.is_polynomial()) throw std::invalid_argument("isotropic_representative: classes must have rational coefficients");
        eqs.push_back(c.num());
    }
    auto pt = detail::rational_point(eqs, vars);
    if (!pt) return std::nullopt;
    Cochain<RatFunc> out = h;
    for (size_t i = 0; i < dys.size(); ++i) out = out + dys[i].scaled(RatFunc(pt->at(vars[i])));
    return out;
}

// For a two-dimensional H^1 of one weight: a corrected pair whose first member
// represents the class a h1 + b h2 (the caller's distinguished direction).
// Candidates for the second member are tried in a fixed order.
inline std::optional<CorrectedPair> corrected_pair_through(const Dgla<RatFunc>& L, const Cochain<RatFunc>& h1,
                                                           const Cochain<RatFunc>& h2, const Rational& a,
                                                           const Rational& b) {
    auto v1 = isotropic_representative(L, h1.scaled(RatFunc(a)) + h2.scaled(RatFunc(b)));
    if (!v1) return std::nullopt;
    const std::pair<int, int> cands[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}};
    for (auto [c, d] : cands) {
        if (a * Rational(d) == b * Rational(c)) continue;
        auto v2 = isotropic_representative(L, h1.scaled(RatFunc(c)) + h2.scaled(RatFunc(d)));
        if (!v2) continue;
        auto p = isotropic_pair(L, *v1, *v2);
        if (!p || p->change != std::array<Rational, 4>{Rational(1), Rational(0), Rational(0), Rational(1)}) continue;
        RatFunc t = RatFunc::var("t"), s = RatFunc::var("s");
        if (!L.is_mc(p->v1.scaled(t) + p->v2.scaled(s) + p->v3.scaled(s * t))) continue;
        p->change = {a, b, Rational(c), Rational(d)};
        return p;
    }
    return std::nullopt;
}

inline nlohmann::json to_json(const KuranishiFamily& f) {
    nlohmann::json j;
    j["coordinates"] = nlohmann::json::array();
    for (auto& c : f.coords) j["coordinates"].push_back({{"name", c.name}, {"weight", c.weight}});
    j["obstructions"] = nlohmann::json::array();
    for (auto& p : f.obstructions) j["obstructions"].push_back(p.str());
    nlohmann::json xi = nlohmann::json::array();
    for (auto& [k, v] : f.xi.c) xi.push_back({mask_indices(key_mask(k)), key_out(k), v.str()});
    j["xi"] = xi;
    j["components"] = nlohmann::json::array();
    for (auto& c : f.components) j["components"].push_back({{"equations", c.equations}, {"dim", c.dim}});
    j["needs_manual_components"] = f.needs_manual_components;
    return j;
}

}  // namespace c3monge
