#pragma once

#include "c3.hpp"
#include "subalgebra.hpp"
#include "../exactmath/field.hpp"

namespace c3monge {

using Weight = std::vector<int>;

// Graded subalgebra g_- + k0 of g as an abstract algebra, with its inclusion
// into g and the torus weight (degree, H, E') of each basis vector.
template <class F>
struct EmbeddedAlgebra {
    LieAlgebra<F> k;
    Matrix<F> iota;  // g-coordinates of the basis vectors of k (columns)
    std::vector<Weight> weights;
    std::vector<std::pair<std::string, Vec<F>>> k0;

    size_t dim() const { return k.dim(); }
    size_t minus_dim() const {
        return static_cast<size_t>(std::count_if(k.degrees().begin(), k.degrees().end(), [](int d) { return d < 0; }));
    }
};

template <class F>
Vec<F> lift_scalars(const Vec<Rational>& v) {
    Vec<F> out;
    for (auto& x : v) out.push_back(F(x));
    return out;
}

// k0 generators are given as (label, g-coordinates); each must be a torus weight vector of degree 0.
template <class F>
EmbeddedAlgebra<F> embed_subalgebra(const std::vector<std::pair<std::string, Vec<F>>>& k0) {
    const auto& C = c3();
    const size_t n = C.dim();
    LieAlgebra<F> gF = C.g.template map_scalars<F>([](const Rational& r) { return F(r); });
    std::vector<std::string> labels;
    std::vector<int> degs;
    std::vector<Vec<F>> cols;
    std::vector<Weight> wts;
    auto gw = [&](size_t i) { return Weight{C.g.degree(i), int(C.weights[i][0].raw().get_num().get_si()),
                                            int(C.weights[i][2].raw().get_num().get_si())}; };
    for (int i : C.minus()) {
        labels.push_back(C.g.labels()[i]);
        degs.push_back(C.g.degree(i));
        cols.push_back(gF.unit(i));
        wts.push_back(gw(i));
    }
    for (auto& [lab, v] : k0) {
        if (v.size() != n) throw std::invalid_argument("k0 generator has wrong size");
        std::optional<Weight> w;
        for (size_t i = 0; i < n; ++i) {
            if (v[i].is_zero()) continue;
            if (C.g.degree(i) != 0) throw std::invalid_argument("k0 generator " + lab + " is not of degree 0");
            Weight wi = gw(i);
            if (w && *w != wi) throw std::invalid_argument("k0 generator " + lab + " is not a torus weight vector");
            w = wi;
        }
        if (!w) throw std::invalid_argument("k0 generator " + lab + " is zero");
        labels.push_back(lab);
        degs.push_back(0);
        cols.push_back(v);
        wts.push_back(*w);
    }
    EmbeddedAlgebra<F> E;
    E.k0 = k0;
    E.weights = wts;
    E.iota = Matrix<F>::from_columns(cols, n);
    Subspace<F> S(n, cols);
    if (rank(E.iota) != cols.size()) throw std::invalid_argument("k0 generators are linearly dependent");
    E.k = LieAlgebra<F>(labels, degs);
    for (size_t a = 0; a < cols.size(); ++a)
        for (size_t b = a + 1; b < cols.size(); ++b) {
            auto c = S.coords(gF.bracket(cols[a], cols[b]));
            if (!c) throw std::invalid_argument("g_- + k0 is not a subalgebra");
            E.k.set_bracket(a, b, *c);
        }
    return E;
}

// convenience: k0 given by words in H, X, Y, E, E' over Q
inline EmbeddedAlgebra<Rational> embed_words(const std::vector<std::string>& words) {
    std::vector<std::pair<std::string, Vec<Rational>>> k0;
    for (auto& w : words) k0.emplace_back(w, c3().vec(w));
    return embed_subalgebra<Rational>(k0);
}

}  // namespace c3monge
