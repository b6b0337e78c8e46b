#pragma once

#include "../cartan/harmonic.hpp"
#include "../kuranishi/family.hpp"
#include "../liealg/embedded.hpp"

#include <json.hpp>

namespace c3monge {

// A graded subalgebra g_- + k0 of g. Generators are words in H, X, Y, E, E'
// whose coefficients may involve the parameter lambda.
struct ClassDescriptor {
    std::string label;
    std::vector<std::string> k0;
    std::string quintic;              // type of the preserved quintic: N, IV or F
    std::vector<std::string> params;  // free parameters of the coefficient field
};

// "H-5*E+lambda*E'", "2*X", "1/2*H" ...
template <class F>
Vec<F> parse_word(const std::string& word) {
    const auto& C = c3();
    std::string w;
    for (char ch : word)
        if (!std::isspace(static_cast<unsigned char>(ch))) w += ch;
    Vec<F> v(C.dim(), F(0));
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (char ch : w) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if ((ch == '+' || ch == '-') && depth == 0 && !cur.empty() && cur.back() != '*') {
            terms.push_back(cur);
            cur.clear();
        }
        cur += ch;
    }
    if (!cur.empty()) terms.push_back(cur);
    for (auto t : terms) {
        F sign(1);
        if (t[0] == '+' || t[0] == '-') {
            if (t[0] == '-') sign = F(-1);
            t = t.substr(1);
        }
        size_t star = t.rfind('*');
        std::string name = star == std::string::npos ? t : t.substr(star + 1);
        F coef = star == std::string::npos ? F(1) : parse_scalar<F>(t.substr(0, star));
        v[size_t(C.g.index_of(name))] += sign * coef;
    }
    return v;
}

struct EmbeddedClass {
    ClassDescriptor desc;
    EmbeddedAlgebra<RatFunc> E;
    // linear forms on weights (degree, H, E') cutting out the invariant part
    std::vector<std::array<Rational, 3>> forms;

    bool invariant(const Weight& w) const {
        for (auto& f : forms)
            if (!(f[0] * Rational(w[0]) + f[1] * Rational(w[1]) + f[2] * Rational(w[2])).is_zero()) return false;
        return true;
    }
    std::unique_ptr<Dgla<RatFunc>> dgla() const {
        auto fs = forms;
        return std::make_unique<Dgla<RatFunc>>(E.k, E.weights, [fs](const Weight& w) {
            for (auto& f : fs)
                if (!(f[0] * Rational(w[0]) + f[1] * Rational(w[1]) + f[2] * Rational(w[2])).is_zero()) return false;
            return true;
        });
    }
};

namespace detail {

inline Vec<Rational> quintic_of_type(const std::string& type) {
    std::vector<Rational> q(6, Rational(0));
    if (type == "N")
        q[0] = 1;
    else if (type == "IV")
        q[1] = 1;
    else if (type == "F")
        q[2] = 1;
    else
        throw std::invalid_argument("unknown quintic type " + type);
    return q;
}

}  // namespace detail

// Embeds and verifies a catalog entry: dim k0 >= 2, g_- + k0 closed under the
// bracket, k0 inside the stabilizer of a quintic of the stated type.
inline EmbeddedClass embed_class(const ClassDescriptor& d) {
    EmbeddedClass ec;
    ec.desc = d;
    if (d.k0.size() < 2) throw std::invalid_argument(d.label + ": k0 must have dimension at least 2");
    std::vector<std::pair<std::string, Vec<RatFunc>>> gens;
    for (auto& w : d.k0) gens.emplace_back(w, parse_word<RatFunc>(w));
    ec.E = embed_subalgebra<RatFunc>(gens);
    const auto& C = c3();
    auto stab = quintic_stabilizer(detail::quintic_of_type(d.quintic));
    std::vector<Vec<RatFunc>> rows;
    for (auto& s : stab) rows.push_back(lift(s));
    size_t r0 = rank(Matrix<RatFunc>::from_rows(rows, C.dim()));
    for (auto& [w, v] : gens) rows.push_back(v);
    if (rank(Matrix<RatFunc>::from_rows(rows, C.dim())) != r0)
        throw std::invalid_argument(d.label + ": k0 does not preserve a quintic of type " + d.quintic);
    // torus part of k0: each generator in <H, E, E'> gives one form per monomial in the parameters
    int iH = C.grading.H, iE = C.grading.E, iEp = C.grading.Ep;
    for (auto& [w, v] : gens) {
        bool torus = true;
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero() && int(i) != iH && int(i) != iE && int(i) != iEp) torus = false;
        if (!torus) continue;
        for (int i : {iH, iE, iEp})
            if (!v[size_t(i)].is_polynomial()) throw std::invalid_argument(d.label + ": torus generator must be polynomial");
        std::map<Monomial, std::array<Rational, 3>, bool (*)(const Monomial&, const Monomial&)> per(
            [](const Monomial& a, const Monomial& b) { return a.e < b.e; });
        auto put = [&](int idx, int slot) {
            for (auto& t : v[size_t(idx)].num().terms()) per[t.m][size_t(slot)] += t.c;
        };
        put(iE, 0);
        put(iH, 1);
        put(iEp, 2);
        for (auto& [m, f] : per) ec.forms.push_back(f);
    }
    return ec;
}

inline ClassDescriptor n2a_descriptor(const std::optional<Rational>& lambda) {
    if (!lambda) return {"N2a_inf", {"X", "E'"}, "N", {}};
    return {"N2a[" + lambda->str() + "]", {"X", "H-5*E+" + ("(" + lambda->str() + ")") + "*E'"}, "N", {}};
}

inline const char* class_catalog_json() {
    return R"json({
 "classes": [
  {"label": "N3",  "k0": ["X", "H-5*E", "E'"],        "quintic": "N",  "params": []},
  {"label": "N2a", "k0": ["X", "H-5*E+lambda*E'"],    "quintic": "N",  "params": ["lambda"]},
  {"label": "N2b", "k0": ["H-5*E", "E'"],             "quintic": "N",  "params": []},
  {"label": "IV2", "k0": ["H-3*E", "E'"],             "quintic": "IV", "params": []},
  {"label": "F2",  "k0": ["H-E", "E'"],               "quintic": "F",  "params": []}
 ]
})json";
}

// The catalog of graded subalgebras; N2a is the generic member over Q(lambda).
// Every entry is re-verified, a corrupt entry throws.
inline std::vector<ClassDescriptor> enumerate_classes() {
    std::vector<ClassDescriptor> cs;
    auto j = nlohmann::json::parse(class_catalog_json());
    for (auto& c : j.at("classes"))
    {
        ClassDescriptor d;
        d.label = c.at("label").get<std::string>();
        d.k0 = c.at("k0").get<std::vector<std::string>>();
        d.quintic = c.at("quintic").get<std::string>();
        d.params = c.at("params").get<std::vector<std::string>>();
        cs.push_back(std::move(d));
    }
    for (auto& c : cs) embed_class(c);
    return cs;
}

// A special parameter: lambda = value, or infinity (the line of E').
struct SpecialPoint {
    std::optional<Rational> lambda;
    std::string str() const { return lambda ? lambda->str() : "inf"; }
    friend bool operator<(const SpecialPoint& a, const SpecialPoint& b) {
        if (a.lambda.has_value() != b.lambda.has_value()) return a.lambda.has_value();
        return a.lambda && *a.lambda < *b.lambda;
    }
    friend bool operator==(const SpecialPoint& a, const SpecialPoint& b) { return !(a < b) && !(b < a); }
};

// Zero loci of the nonzero weights of a = <H-5E, E'> on the degree-1 cochains
// C(n, n) + C(n) of n = g_- + <X>. The element l0 (H-5E) + l1 E' acts on a
// vector of weight (deg, h, e') by l0 (h - 5 deg) + l1 e'.
inline std::vector<SpecialPoint> special_points() {
    auto E = embed_words({"X"});
    size_t n = E.dim();
    std::set<SpecialPoint> out;
    std::vector<Weight> outs = E.weights;
    outs.push_back({0, 0, 0});  // trivial coefficients
    for (uint32_t I = 1; I < (1u << n); ++I) {
        Weight src{0, 0, 0};
        for (size_t i = 0; i < n; ++i)
            if (I & (1u << i))
                for (int a = 0; a < 3; ++a) src[size_t(a)] += E.weights[i][size_t(a)];
        for (auto& o : outs) {
            int deg = o[0] - src[0], h = o[1] - src[1], ep = o[2] - src[2];
            if (deg != 1) continue;
            int a0 = h - 5 * deg, a1 = ep;
            if (a0 == 0 && a1 == 0) continue;
            if (a1 == 0)
                out.insert({std::nullopt});
            else
                out.insert({Rational(-a0, a1)});
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace c3monge
