#pragma once

#include "../cartan/harmonic.hpp"
#include "../cartan/symmetry.hpp"
#include "../liealg/subalgebra.hpp"

#include <json.hpp>

namespace c3monge {

// Final homogeneous models as structure equations d theta^k = sum c theta^i ^ theta^j.
// Isotropy: annihilator of theta^1..theta^8; distribution: annihilator of theta^1..theta^5.
inline const char* model_tables_json() {
    return R"json({
 "models": [
  {"label": "N3", "dim": 11, "expect": {"d": 11, "quintic": "N"}, "instances": [{}],
   "equations": {
    "1": [["-2",1,9],["-2",1,11],["-2",4,6]],
    "2": [["-1",1,10],["-2",2,11],["-1",4,7],["-1",5,6]],
    "3": [["-1",1,6],["-2",2,10],["2",3,9],["-2",3,11],["-2",5,7]],
    "4": [["-6",4,9],["-2",4,11],["1",6,8]],
    "5": [["-1",4,10],["-4",5,9],["-2",5,11],["1",7,8]],
    "6": [["4",6,9]],
    "7": [["-1",6,10],["6",7,9]],
    "8": [["-10",8,9],["-2",8,11]],
    "9": [],
    "10": [["-2",9,10]],
    "11": []}},
  {"label": "N2a_inf", "dim": 10, "expect": {"d": 10, "quintic": "N"},
   "instances": [{"epsilon": "1"}, {"epsilon": "-1"}],
   "equations": {
    "1": [["epsilon",1,6],["-2",1,10],["-2",4,6]],
    "2": [["-1",1,9],["-2",2,10],["-1",4,7],["-1",5,6]],
    "3": [["1",1,6],["-2",2,9],["-epsilon",3,6],["-2",3,10],["-2",5,7]],
    "4": [["alpha",1,6],["-2",4,10],["1",6,8]],
    "5": [["alpha",2,6],["-1",4,9],["-epsilon",5,6],["-2",5,10],["1",7,8]],
    "6": [],
    "7": [["-1",6,9]],
    "8": [["2*alpha",4,6],["epsilon",6,8],["-2",8,10]],
    "9": [["alpha",6,7],["epsilon",6,9]],
    "10": []}},
  {"label": "N2a_inf_boundary", "dim": 10, "expect": {"d": 10, "quintic": "N"},
   "instances": [{"sigma": "1"}, {"sigma": "-1"}],
   "equations": {
    "1": [["-2",1,10],["-2",4,6]],
    "2": [["-1",1,9],["-2",2,10],["-1",4,7],["-1",5,6]],
    "3": [["1",1,6],["-2",2,9],["-2",3,10],["-2",5,7]],
    "4": [["sigma",1,6],["-2",4,10],["1",6,8]],
    "5": [["sigma",2,6],["-1",4,9],["-2",5,10],["1",7,8]],
    "6": [],
    "7": [["-1",6,9]],
    "8": [["2*sigma",4,6],["-2",8,10]],
    "9": [["sigma",6,7]],
    "10": []}},
  {"label": "IV2", "dim": 10, "expect": {"d": 10, "quintic": "IV"}, "instances": [{}],
   "equations": {
    "1": [["-2",1,9],["-2",1,10],["-2",4,6]],
    "2": [["2+2*alpha",1,6],["-2",2,10],["-1",4,7],["-1",5,6]],
    "3": [["2*alpha",2,6],["2",3,9],["-2",3,10],["-2",5,7]],
    "4": [["-4",4,9],["-2",4,10],["1",6,8]],
    "5": [["alpha",4,6],["-2",5,9],["-2",5,10],["1",7,8]],
    "6": [["2",6,9]],
    "7": [["4",7,9]],
    "8": [["-6",8,9],["-2",8,10]],
    "9": [],
    "10": []}},
  {"label": "F2", "dim": 10, "expect": {"d": 10, "quintic": "F"}, "instances": [{}],
   "equations": {
    "1": [["1+2*alpha",1,6],["-2",1,9],["-2",1,10],["-2",4,6]],
    "2": [["alpha",1,7],["-2",2,10],["-1",4,7],["-1",5,6]],
    "3": [["2",3,9],["-2",3,10],["-2",5,7]],
    "4": [["alpha",1,6],["-2",4,9],["-2",4,10],["1",6,8]],
    "5": [["2*alpha",5,6],["-2",5,10],["1",7,8]],
    "6": [],
    "7": [["2*alpha",6,7],["2",7,9]],
    "8": [["-4*alpha",6,8],["-2",8,9],["-2",8,10]],
    "9": [],
    "10": []}}
 ]
})json";
}

struct ModelTable {
    std::string label;
    size_t dim = 0;
    size_t expected_d = 0;
    std::string expected_quintic;
    std::map<std::string, std::string> instance;  // fixed discrete parameters
    // per k: (coefficient, i, j), 1-based
    std::map<int, std::vector<std::tuple<std::string, int, int>>> equations;

    std::string name() const {
        std::string s = label;
        for (auto& [k, v] : instance) s += " " + k + "=" + v;
        return s;
    }
};

inline std::vector<ModelTable> model_tables() {
    auto j = nlohmann::json::parse(model_tables_json());
    std::vector<ModelTable> out;
    for (auto& m : j.at("models"))
        for (auto& inst : m.at("instances")) {
            ModelTable t;
            t.label = m.at("label");
            t.dim = m.at("dim");
            t.expected_d = m.at("expect").at("d");
            t.expected_quintic = m.at("expect").at("quintic");
            for (auto& [k, v] : inst.items()) t.instance[k] = v;
            for (auto& [k, terms] : m.at("equations").items())
                for (auto& term : terms) t.equations[std::stoi(k)].emplace_back(term[0], term[1], term[2]);
            out.push_back(std::move(t));
        }
    return out;
}

namespace detail {

inline RatFunc model_coefficient(std::string s, const std::map<std::string, std::string>& inst) {
    for (auto& [name, val] : inst)
        for (size_t p; (p = s.find(name)) != std::string::npos;) s.replace(p, name.size(), "(" + val + ")");
    return RatFunc::parse(s);
}

}  // namespace detail

// The Lie algebra dual to the structure equations, with d theta(X, Y) = -theta([X, Y]).
inline LieAlgebra<RatFunc> model_algebra(const ModelTable& t) {
    size_t n = t.dim;
    std::vector<std::string> labels;
    for (size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
    LieAlgebra<RatFunc> k(labels, std::vector<int>(n, 0));
    std::map<std::pair<int, int>, Vec<RatFunc>> br;
    for (auto& [kk, terms] : t.equations)
        for (auto& [c, i, j] : terms) {
            if (i < 1 || j < 1 || size_t(i) > n || size_t(j) > n || kk < 1 || size_t(kk) > n || i == j)
                throw std::invalid_argument(t.name() + ": bad index in structure equations");
            RatFunc x = detail::model_coefficient(c, t.instance);
            auto key = std::minmax(i, j);
            auto& v = br.try_emplace({key.first, key.second}, Vec<RatFunc>(n, RatFunc(0))).first->second;
            v[size_t(kk - 1)] -= i < j ? x : -x;
        }
    for (auto& [ij, v] : br) k.set_bracket(size_t(ij.first - 1), size_t(ij.second - 1), v);
    return k;
}

struct ModelCheck {
    std::string name;
    bool jacobi = false;
    bool isotropy_subalgebra = false;
    bool filtration = false;   // dims (3, 2, 3) and compatible with the bracket
    bool symbol_iso = false;   // gr(k / l) isomorphic to g_-
    bool isotropy_embeds = false;
    size_t symmetry_d = 0;
    std::string quintic;
    std::vector<std::string> failures;
    size_t expected_d = 0;
    std::string expected_quintic;

    bool ok() const { return failures.empty(); }
};

// Filtered algebra in an adapted basis, with gr(k) embedded in g.
struct ModelEmbedding {
    LieAlgebra<RatFunc> k;
    Matrix<RatFunc> iota;
};

namespace detail {

inline std::optional<ModelEmbedding> embed_model(const LieAlgebra<RatFunc>& k0, ModelCheck& rec) {
    const auto& C = c3();
    size_t n = k0.dim(), N = C.dim();
    auto fail = [&](const std::string& s) -> std::optional<ModelEmbedding> {
        rec.failures.push_back(s);
        return std::nullopt;
    };
    if (n < 9) return fail("dimension below 9");
    std::vector<Vec<RatFunc>> l, d1;
    for (size_t i = 8; i < n; ++i) l.push_back(k0.unit(i));
    for (size_t i = 5; i < 8; ++i) d1.push_back(k0.unit(i));
    rec.isotropy_subalgebra = is_subalgebra(k0, l);
    if (!rec.isotropy_subalgebra) return fail("isotropy is not a subalgebra");

    // filtration k^-1 = D + l, k^-2 = k^-1 + [k^-1, k^-1], k^-3 = k^-2 + [k^-1, k^-2]
    auto rank_of = [&](const std::vector<Vec<RatFunc>>& vs) { return vs.empty() ? 0 : rank(Matrix<RatFunc>::from_rows(vs, n)); };
    std::vector<Vec<RatFunc>> F1 = l;
    F1.insert(F1.end(), d1.begin(), d1.end());
    // adapted basis, degree by degree
    std::vector<Vec<RatFunc>> deg2, deg3;
    std::vector<Vec<RatFunc>> span = F1;
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = a + 1; b < 3; ++b) {
            auto v = k0.bracket(d1[a], d1[b]);
            span.push_back(v);
            if (rank_of(span) == F1.size() + deg2.size() + 1)
                deg2.push_back(v);
            else
                span.pop_back();
        }
    for (size_t a = 0; a < 3; ++a)
        for (auto& u : std::vector<Vec<RatFunc>>(deg2)) {
            auto v = k0.bracket(d1[a], u);
            span.push_back(v);
            if (rank_of(span) == F1.size() + deg2.size() + deg3.size() + 1)
                deg3.push_back(v);
            else
                span.pop_back();
        }
    if (rank_of(F1) != n - 5 || deg2.size() != 2 || deg3.size() != 3) return fail("filtration does not have dims (3, 2, 3)");

    // new basis: degree -3, -2, -1, 0
    std::vector<Vec<RatFunc>> basis = deg3;
    basis.insert(basis.end(), deg2.begin(), deg2.end());
    basis.insert(basis.end(), d1.begin(), d1.end());
    basis.insert(basis.end(), l.begin(), l.end());
    std::vector<int> degs{-3, -3, -3, -2, -2, -1, -1, -1};
    degs.resize(n, 0);
    LinearSolver<RatFunc> P(Matrix<RatFunc>::from_columns(basis, n));
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i) labels.push_back("k" + std::to_string(i + 1));
    LieAlgebra<RatFunc> k(labels, degs, true);
    bool filtered = true;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            auto c = P.solve(k0.bracket(basis[a], basis[b]));
            if (!c) return fail("adapted basis is singular");
            int lim = std::max(-3, degs[a] + degs[b]);
            for (size_t i = 0; i < n; ++i)
                if (!(*c)[i].is_zero() && degs[i] < lim) filtered = false;
            k.set_bracket(a, b, *c);
        }
    rec.filtration = filtered;
    if (!filtered) return fail("bracket does not respect the filtration");

    // symbol m = gr(k / l) in degrees -3..-1 (indices 0..7)
    auto gr = [&](size_t a, size_t b) {
        Vec<RatFunc> v(8, RatFunc(0));
        int d = degs[a] + degs[b];
        for (auto& [c, x] : k.basis_bracket(a, b))
            if (size_t(c) < 8 && degs[size_t(c)] == d) v[size_t(c)] = x;
        return v;
    };
    // a-plane: the decomposable kernel of Lambda^2 m_-1 -> m_-2
    Matrix<RatFunc> W(2, 3);
    std::pair<size_t, size_t> pairs[3] = {{5, 6}, {5, 7}, {6, 7}};
    for (size_t p = 0; p < 3; ++p) {
        auto v = gr(pairs[p].first, pairs[p].second);
        W(0, p) = v[3];
        W(1, p) = v[4];
    }
    auto om = kernel_basis(W);
    if (om.size() != 1) return fail("symbol: [m_-1, m_-1] is not 2-dimensional");
    Matrix<RatFunc> Pl(1, 3);
    Pl(0, 0) = om[0][2];
    Pl(0, 1) = -om[0][1];
    Pl(0, 2) = om[0][0];
    auto plane = kernel_basis(Pl);
    // x-line: [x, m_-2] = 0
    Matrix<RatFunc> Xl(16, 3);
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 2; ++b) {
            auto v = gr(5 + a, 3 + b);
            for (size_t i = 0; i < 8; ++i) Xl(b * 8 + i, a) = v[i];
        }
    auto line = kernel_basis(Xl);
    if (plane.size() != 2 || line.size() != 1) return fail("symbol: no splitting of m_-1 as in g_-1");
    // m_-1 vectors in k-coordinates
    auto m1 = [&](const Vec<RatFunc>& c) {
        Vec<RatFunc> v(8, RatFunc(0));
        for (size_t a = 0; a < 3; ++a) v[5 + a] = c[a];
        return v;
    };
    auto mbr = [&](const Vec<RatFunc>& x, const Vec<RatFunc>& y) {
        Vec<RatFunc> out(8, RatFunc(0));
        for (size_t a = 0; a < 8; ++a)
            for (size_t b = 0; b < 8; ++b) {
                if (x[a].is_zero() || y[b].is_zero() || a == b) continue;
                auto v = a < b ? gr(a, b) : gr(b, a);
                RatFunc s = a < b ? x[a] * y[b] : -(x[a] * y[b]);
                for (size_t i = 0; i < 8; ++i)
                    if (!v[i].is_zero()) out[i] += s * v[i];
            }
        return out;
    };
    LieAlgebra<RatFunc> gF = C.g.map_scalars<RatFunc>([](const Rational& r) { return RatFunc(r); });
    auto gvec = [&](const Vec<RatFunc>& x8) {
        Vec<RatFunc> v(N, RatFunc(0));
        for (size_t i = 0; i < 8; ++i) v[i] = x8[i];
        return v;
    };
    auto g8 = [&](const Vec<RatFunc>& v) { return Vec<RatFunc>(v.begin(), v.begin() + 8); };
    // images: plane -> g indices 5, 6; line -> 7
    std::vector<Vec<RatFunc>> src{m1(plane[0]), m1(plane[1]), m1(line[0])};
    std::vector<Vec<RatFunc>> dst{g8(gF.unit(5)), g8(gF.unit(6)), g8(gF.unit(7))};
    auto gbr = [&](const Vec<RatFunc>& x, const Vec<RatFunc>& y) { return g8(gF.bracket(gvec(x), gvec(y))); };
    for (size_t i = 0; i < 2; ++i) {
        src.push_back(mbr(src[2], src[i]));
        dst.push_back(gbr(dst[2], dst[i]));
    }
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 3; j < 5; ++j) {
            src.push_back(mbr(src[i], src[j]));
            dst.push_back(gbr(dst[i], dst[j]));
        }
    // keep an independent spanning set
    std::vector<Vec<RatFunc>> S, T;
    for (size_t i = 0; i < src.size(); ++i) {
        S.push_back(src[i]);
        if (rank(Matrix<RatFunc>::from_columns(S, 8)) < S.size()) {
            S.pop_back();
            continue;
        }
        T.push_back(dst[i]);
    }
    if (S.size() != 8) return fail("symbol: m is not generated by m_-1 as g_- is");
    Matrix<RatFunc> A = Matrix<RatFunc>::from_columns(T, 8) * inverse(Matrix<RatFunc>::from_columns(S, 8));
    bool hom = true;
    for (size_t a = 0; a < 8 && hom; ++a)
        for (size_t b = a + 1; b < 8 && hom; ++b) {
            Vec<RatFunc> ea = unit_vec<RatFunc>(8, a), eb = unit_vec<RatFunc>(8, b);
            hom = A * mbr(ea, eb) == gbr(A * ea, A * eb);
        }
    rec.symbol_iso = hom && rank(A) == 8;
    if (!rec.symbol_iso) return fail("symbol is not isomorphic to g_-");

    // isotropy acts on m by degree-preserving derivations; find the element of g_0 inducing each
    Matrix<RatFunc> Ainv = inverse(A);
    std::vector<int> g0 = C.g.basis_of_degree(0);
    Matrix<RatFunc> iota(N, n);
    for (size_t b = 0; b < 8; ++b)
        for (size_t i = 0; i < 8; ++i) iota(i, b) = A(i, b);
    for (size_t z = 8; z < n; ++z) {
        Matrix<RatFunc> D(8, 8);
        for (size_t b = 0; b < 8; ++b)
            for (auto& [c, x] : k.basis_bracket(z, b))
                if (size_t(c) < 8 && degs[size_t(c)] == degs[b]) D(size_t(c), b) = x;
        Matrix<RatFunc> Tz = A * D * Ainv;
        Matrix<RatFunc> M(64, g0.size());
        Vec<RatFunc> rhs(64, RatFunc(0));
        for (size_t q = 0; q < g0.size(); ++q) {
            Matrix<RatFunc> ad = gF.ad(gF.unit(size_t(g0[q])));
            for (size_t i = 0; i < 8; ++i)
                for (size_t j = 0; j < 8; ++j) M(i * 8 + j, q) = ad(i, j);
        }
        for (size_t i = 0; i < 8; ++i)
            for (size_t j = 0; j < 8; ++j) rhs[i * 8 + j] = Tz(i, j);
        auto sol = solve_linear(M, rhs);
        if (!sol) return fail("isotropy does not act through g_0");
        for (size_t q = 0; q < g0.size(); ++q) iota(size_t(g0[q]), z) = sol->x[q];
    }
    rec.isotropy_embeds = rank(iota) == n;
    if (!rec.isotropy_embeds) return fail("isotropy does not act effectively");
    return ModelEmbedding{std::move(k), std::move(iota)};
}

}  // namespace detail

inline ModelCheck verify_model(const ModelTable& t) {
    ModelCheck rec;
    rec.name = t.name();
    rec.expected_d = t.expected_d;
    rec.expected_quintic = t.expected_quintic;
    try {
        // d^2 = 0 identically, with every parameter symbolic
        ModelTable sym = t;
        sym.instance.clear();
        rec.jacobi = check_jacobi(model_algebra(sym));
        auto k = model_algebra(t);
        if (!rec.jacobi) {
            rec.failures.push_back("d^2 != 0");
            return rec;
        }
        auto emb = detail::embed_model(k, rec);
        if (!emb) return rec;
        auto c = normalize(initial_connection(emb->k, emb->iota));
        auto K = curvature(c);
        auto h = harmonic_curvature(K);
        rec.quintic = h.quintic_zero() ? "flat" : classify_quintic(h.quintic).label;
        if (!h.scalar.is_zero()) rec.failures.push_back("scalar harmonic curvature nonzero");
        rec.symmetry_d = generic_symmetry_dimension(holonomy(c, K)).dim;
        if (rec.symmetry_d != t.expected_d)
            rec.failures.push_back("symmetry dimension " + std::to_string(rec.symmetry_d) + ", expected " +
                                   std::to_string(t.expected_d));
        if (rec.quintic != t.expected_quintic)
            rec.failures.push_back("quintic type " + rec.quintic + ", expected " + t.expected_quintic);
    } catch (const std::exception& e) {
        rec.failures.push_back(std::string("error: ") + e.what());
    }
    return rec;
}

inline std::vector<ModelCheck> verify_models(const std::string& label = "") {
    std::vector<ModelCheck> out;
    for (auto& t : model_tables())
        if (label.empty() || t.label == label) out.push_back(verify_model(t));
    if (out.empty()) throw std::invalid_argument("unknown model " + label);
    return out;
}

inline nlohmann::json to_json(const ModelCheck& m) {
    return {{"model", m.name},
            {"jacobi", m.jacobi},
            {"isotropy_subalgebra", m.isotropy_subalgebra},
            {"filtration", m.filtration},
            {"symbol_iso", m.symbol_iso},
            {"isotropy_embeds", m.isotropy_embeds},
            {"symmetry_d", m.symmetry_d},
            {"expected_d", m.expected_d},
            {"expected_quintic", m.expected_quintic},
            {"quintic", m.quintic},
            {"failures", m.failures},
            {"ok", m.ok()}};
}

}  // namespace c3monge
