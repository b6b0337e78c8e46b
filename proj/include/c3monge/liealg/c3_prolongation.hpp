#pragma once

#include "c3.hpp"
#include "prolongation.hpp"

namespace c3monge {

// restriction of g to the basis vectors with the given indices (must span a subalgebra)
inline LieAlgebra<Rational> restrict_to_basis(const LieAlgebra<Rational>& g, const std::vector<int>& idx) {
    std::vector<std::string> labels;
    std::vector<int> degs;
    std::vector<int> pos(g.dim(), -1);
    for (size_t a = 0; a < idx.size(); ++a) {
        labels.push_back(g.labels()[idx[a]]);
        degs.push_back(g.degree(idx[a]));
        pos[idx[a]] = static_cast<int>(a);
    }
    LieAlgebra<Rational> L(labels, degs);
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b) {
            Vec<Rational> v(idx.size(), Rational(0));
            for (auto& [k, c] : g.basis_bracket(idx[a], idx[b])) {
                if (pos[k] < 0) throw std::invalid_argument("basis subset is not a subalgebra");
                v[pos[k]] = c;
            }
            L.set_bracket(a, b, v);
        }
    return L;
}

inline LieAlgebra<Rational> c3_minus() { return restrict_to_basis(c3().g, c3().minus()); }

// ad of degree-0 elements of g restricted to g_-
inline std::vector<Matrix<Rational>> restricted_derivations(const std::vector<Vec<Rational>>& k0) {
    const auto& C = c3();
    auto minus = C.minus();
    std::vector<Matrix<Rational>> out;
    for (auto& z : k0) {
        if (!is_homogeneous(C.g, z) || is_zero_vec(z)) throw std::invalid_argument("k0 element not of degree 0");
        for (size_t i = 0; i < z.size(); ++i)
            if (!z[i].is_zero() && C.g.degree(i) != 0) throw std::invalid_argument("k0 element not of degree 0");
        Matrix<Rational> D(minus.size(), minus.size());
        for (size_t b = 0; b < minus.size(); ++b) {
            Vec<Rational> v = C.g.bracket(z, C.g.unit(minus[b]));
            for (size_t a = 0; a < minus.size(); ++a) D(a, b) = v[minus[a]];
        }
        out.push_back(std::move(D));
    }
    return out;
}

inline std::vector<size_t> positive_prolongation_dims(const std::vector<Vec<Rational>>& k0, int max_degree = 3) {
    const auto& C = c3();
    std::vector<Vec<Rational>> all = k0;
    for (int i : C.minus()) all.push_back(C.g.unit(i));
    if (!is_subalgebra(C.g, all)) throw std::invalid_argument("g_- + k0 is not a subalgebra");
    Prolongation P(c3_minus(), max_degree, restricted_derivations(k0));
    auto d = P.dims_nonnegative();
    std::vector<size_t> out;
    for (int k = 1; k <= max_degree; ++k) out.push_back(size_t(k) < d.size() ? d[k] : 0);
    return out;
}

// Map psi: g -> Pr(g_-), z -> ad z restricted to g_-; returns true iff psi is a
// bijective bracket-preserving map.
inline bool prolongation_matches_g(const Prolongation& P) {
    const auto& C = c3();
    const auto& g = C.g;
    auto minus = C.minus();
    size_t n = g.dim();
    if (P.total_dim() != n) return false;
    std::vector<Vec<Rational>> psi(n);
    std::vector<int> mpos(n, -1);
    for (size_t a = 0; a < minus.size(); ++a) mpos[minus[a]] = static_cast<int>(a);
    for (int i : minus) psi[i] = unit_vec<Rational>(n, mpos[i]);
    for (int k = 0; k <= g.max_degree(); ++k)
        for (int z : g.basis_of_degree(k)) {
            std::vector<Vec<Rational>> vals;
            for (int x : minus) {
                Vec<Rational> v = g.bracket_basis(z, x);
                Vec<Rational> w(n, Rational(0));
                for (size_t t = 0; t < n; ++t) {
                    if (v[t].is_zero()) continue;
                    for (size_t s = 0; s < n; ++s) w[s] += v[t] * psi[t][s];
                }
                vals.push_back(std::move(w));
            }
            auto e = P.element_from_values(k, vals);
            if (!e) return false;
            psi[z] = *e;
        }
    Matrix<Rational> Psi = Matrix<Rational>::from_columns(psi, n);
    if (rank(Psi) != n) return false;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            Vec<Rational> lhs = Psi * g.bracket_basis(a, b);
            if (lhs != P.bracket(psi[a], psi[b])) return false;
        }
    return true;
}

}  // namespace c3monge
