#pragma once

#include "lie_algebra.hpp"

#include <array>

namespace c3monge {

struct GradingElementData {
    int E = -1, Ep = -1, H = -1, X = -1, Y = -1;  // basis indices in g
};

// sp(6, Q) with the grading by Ht = (coefficient of a2) + (coefficient of a3),
// simple roots a1 = e1 - e2, a2 = e2 - e3, a3 = 2 e3.
struct C3Algebra {
    LieAlgebra<Rational> g;
    std::vector<Matrix<Rational>> mats;            // 6x6 matrix of each basis vector
    std::vector<std::array<int, 3>> roots;         // simple-root coefficients, zero for Cartan
    std::vector<std::array<Rational, 3>> weights;  // eigenvalues of (H, E, E')
    GradingElementData grading;

    size_t dim() const { return g.dim(); }
    std::vector<int> minus() const {
        std::vector<int> v;
        for (size_t i = 0; i < dim(); ++i)
            if (g.degree(i) < 0) v.push_back(static_cast<int>(i));
        return v;
    }
    std::vector<int> plus() const {
        std::vector<int> v;
        for (size_t i = 0; i < dim(); ++i)
            if (g.degree(i) > 0) v.push_back(static_cast<int>(i));
        return v;
    }
    Vec<Rational> vec(const std::string& word) const;
    // trace form tr(AB) in the defining representation
    Rational trace_form(size_t i, size_t j) const {
        Matrix<Rational> p = mats[i] * mats[j];
        Rational s;
        for (size_t k = 0; k < 6; ++k) s += p(k, k);
        return s;
    }
};

namespace detail {

inline Matrix<Rational> unit6(size_t i, size_t j) {
    Matrix<Rational> m(6, 6);
    m(i, j) = 1;
    return m;
}

inline C3Algebra make_c3() {
    struct Entry {
        std::string label;
        int deg;
        std::array<int, 3> root;
        Matrix<Rational> m;
    };
    std::vector<Entry> es;
    auto simple = [](std::array<int, 3> r) {
        return std::array<int, 3>{r[0], r[0] + r[1], (r[0] + r[1] + r[2]) / 2};
    };
    auto add_root = [&](std::array<int, 3> r, Matrix<Rational> m) {
        auto c = simple(r);
        std::string lab;
        if (c == std::array<int, 3>{1, 0, 0})
            lab = "X";
        else if (c == std::array<int, 3>{-1, 0, 0})
            lab = "Y";
        else
            lab = "x(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")";
        es.push_back({lab, c[1] + c[2], c, std::move(m)});
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            std::array<int, 3> r{};
            r[i] = 1;
            r[j] = -1;
            add_root(r, unit6(i, j) - unit6(j + 3, i + 3));
        }
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            std::array<int, 3> r{};
            r[i] += 1;
            r[j] += 1;
            std::array<int, 3> nr{-r[0], -r[1], -r[2]};
            if (i == j) {
                add_root(r, unit6(i, i + 3));
                add_root(nr, unit6(i + 3, i));
            } else {
                add_root(r, unit6(i, j + 3) + unit6(j, i + 3));
                add_root(nr, unit6(j + 3, i) + unit6(i + 3, j));
            }
        }
    auto diag = [](std::array<Rational, 3> d) {
        Matrix<Rational> m(6, 6);
        for (int i = 0; i < 3; ++i) {
            m(i, i) = d[i];
            m(i + 3, i + 3) = -d[i];
        }
        return m;
    };
    es.push_back({"H", 0, {0, 0, 0}, diag({1, -1, 0})});
    es.push_back({"E", 0, {0, 0, 0}, diag({Rational(3, 2), Rational(3, 2), Rational(1, 2)})});
    es.push_back({"E'", 0, {0, 0, 0}, diag({Rational(-1, 2), Rational(-1, 2), Rational(-1, 2)})});

    auto g0rank = [](const std::string& l) {
        static const std::vector<std::string> order{"H", "X", "Y", "E", "E'"};
        return std::find(order.begin(), order.end(), l) - order.begin();
    };
    std::stable_sort(es.begin(), es.end(), [&](const Entry& a, const Entry& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (a.deg == 0) return g0rank(a.label) < g0rank(b.label);
        return a.root < b.root;
    });

    C3Algebra c;
    std::vector<std::string> labels;
    std::vector<int> degs;
    for (auto& e : es) {
        labels.push_back(e.label);
        degs.push_back(e.deg);
        c.mats.push_back(e.m);
        c.roots.push_back(e.root);
    }
    c.g = LieAlgebra<Rational>(labels, degs);
    size_t n = es.size();
    // decompose commutators in the basis
    Matrix<Rational> B(36, n);
    for (size_t k = 0; k < n; ++k)
        for (size_t a = 0; a < 36; ++a) B(a, k) = c.mats[k](a / 6, a % 6);
    LinearSolver<Rational> solver(B);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Matrix<Rational> com = c.mats[i] * c.mats[j] - c.mats[j] * c.mats[i];
            Vec<Rational> flat(36);
            for (size_t a = 0; a < 36; ++a) flat[a] = com(a / 6, a % 6);
            auto x = solver.solve(flat);
            if (!x) throw std::logic_error("sp(6) basis not closed");
            c.g.set_bracket(i, j, *x);
        }
    auto& gr = c.grading;
    gr.H = c.g.index_of("H");
    gr.E = c.g.index_of("E");
    gr.Ep = c.g.index_of("E'");
    gr.X = c.g.index_of("X");
    gr.Y = c.g.index_of("Y");
    for (size_t i = 0; i < n; ++i) {
        std::array<Rational, 3> w;
        int zs[3] = {gr.H, gr.E, gr.Ep};
        for (int a = 0; a < 3; ++a) {
            Vec<Rational> br = c.g.bracket_basis(zs[a], i);
            w[a] = br[i];
            br[i] = 0;
            if (!is_zero_vec(br)) throw std::logic_error("basis vector is not a torus weight vector");
        }
        c.weights.push_back(w);
    }
    return c;
}

}  // namespace detail

inline const C3Algebra& c3() {
    static const C3Algebra c = detail::make_c3();
    return c;
}

inline LieAlgebra<Rational> build_c3() { return c3().g; }

// Linear combination of basis vectors written like "H-5*E" or "X + 2*E'".
inline Vec<Rational> C3Algebra::vec(const std::string& word) const {
    Vec<Rational> v(dim(), Rational(0));
    std::string w;
    for (char ch : word)
        if (ch != ' ') w += ch;
    size_t i = 0;
    while (i < w.size()) {
        Rational sign(1);
        if (w[i] == '+' || w[i] == '-') {
            if (w[i] == '-') sign = Rational(-1);
            ++i;
        }
        size_t st = i;
        while (i < w.size() && (std::isdigit(static_cast<unsigned char>(w[i])) || w[i] == '/')) ++i;
        Rational coef = st == i ? Rational(1) : Rational::parse(w.substr(st, i - st));
        if (i < w.size() && w[i] == '*') ++i;
        st = i;
        while (i < w.size() && w[i] != '+' && w[i] != '-') {
            if (w[i] == '(') {
                while (i < w.size() && w[i] != ')') ++i;
            }
            ++i;
        }
        v[g.index_of(w.substr(st, i - st))] += sign * coef;
    }
    return v;
}

}  // namespace c3monge
