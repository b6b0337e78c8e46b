#pragma once

#include "connection.hpp"

namespace c3monge {

// kappa_H = (scalar, quintic coefficients c_0..c_5 on u_j = Y^j u_0)
template <class F>
struct HarmonicClass {
    F scalar;
    std::vector<F> quintic;

    bool quintic_zero() const {
        return std::all_of(quintic.begin(), quintic.end(), [](const F& x) { return x.is_zero(); });
    }
    bool is_zero() const { return scalar.is_zero() && quintic_zero(); }
};

template <class F>
HarmonicClass<F> harmonic_curvature(const Curvature<F>& K) {
    if (!is_normal(K)) throw std::invalid_argument("harmonic_curvature: curvature is not a cycle");
    const auto& hd = harmonic_decomposition();
    auto [sc, q] = hd.split_class(hd.class_coords(K.chain));
    return {sc, q};
}

// Dense univariate polynomial over a field, lowest degree first.
template <class F>
struct UniPoly {
    std::vector<F> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<F> cs) : c(std::move(cs)) { trim(); }

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const F& lead() const { return c.back(); }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    UniPoly derivative() const {
        std::vector<F> d;
        for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * F(Rational(long(i))));
        return UniPoly(d);
    }
    UniPoly monic() const {
        if (is_zero()) return *this;
        F li = F(1) / lead();
        std::vector<F> d;
        for (auto& x : c) d.push_back(x * li);
        return UniPoly(d);
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<F> d(std::max(a.c.size(), b.c.size()), F(0));
        for (size_t i = 0; i < a.c.size(); ++i) d[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) d[i] -= b.c[i];
        return UniPoly(d);
    }
    // (quotient, remainder)
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& b) const {
        if (b.is_zero()) throw DivisionByZero();
        std::vector<F> r = c, q(c.size() >= b.c.size() ? c.size() - b.c.size() + 1 : 0, F(0));
        F li = F(1) / b.lead();
        for (int i = int(r.size()) - 1; i >= b.degree(); --i) {
            if (r[size_t(i)].is_zero()) continue;
            F f = r[size_t(i)] * li;
            size_t s = size_t(i - b.degree());
            q[s] = f;
            for (size_t j = 0; j < b.c.size(); ++j) r[s + j] -= f * b.c[j];
        }
        return {UniPoly(q), UniPoly(r)};
    }
};

template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// multiplicities of the roots over the algebraic closure, via Yun's square-free decomposition
template <class F>
std::vector<int> root_multiplicities(const UniPoly<F>& f) {
    std::vector<int> out;
    if (f.degree() <= 0) return out;
    UniPoly<F> fp = f.derivative();
    UniPoly<F> a = gcd(f, fp);
    UniPoly<F> b = f.divmod(a).first, c = fp.divmod(a).first;
    UniPoly<F> d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        UniPoly<F> ai = gcd(b, d);
        for (int k = 0; k < ai.degree(); ++k) out.push_back(i);
        b = b.divmod(ai).first;
        c = d.divmod(ai).first;
        d = c - b.derivative();
    }
    return out;
}

struct QuinticType {
    std::vector<int> multiplicities;  // decreasing
    std::string label;                // N, IV, F, or the pattern itself
};

// Binary quintic sum_j c_j 5!/(5-j)! z^(5-j) w^j (the coordinates of sum_j c_j u_j).
template <class F>
QuinticType classify_quintic(const std::vector<F>& q) {
    if (q.size() != 6) throw std::invalid_argument("classify_quintic: need 6 coefficients");
    if (std::all_of(q.begin(), q.end(), [](const F& x) { return x.is_zero(); }))
        throw std::invalid_argument("classify_quintic: zero quintic");
    // f(z, 1), coefficient of z^(5-j)
    std::vector<F> co(6, F(0));
    long fact[6] = {1, 5, 20, 60, 120, 120};  // 5!/(5-j)!
    for (int j = 0; j < 6; ++j) co[size_t(5 - j)] = q[size_t(j)] * F(Rational(fact[j]));
    UniPoly<F> f(co);
    QuinticType t;
    t.multiplicities = root_multiplicities(f);
    if (f.degree() < 5) t.multiplicities.push_back(5 - f.degree());  // root at z = infinity
    std::sort(t.multiplicities.rbegin(), t.multiplicities.rend());
    const auto& m = t.multiplicities;
    if (m == std::vector<int>{5})
        t.label = "N";
    else if (m == std::vector<int>{4, 1})
        t.label = "IV";
    else if (m == std::vector<int>{3, 2})
        t.label = "F";
    else {
        t.label = "[";
        for (size_t i = 0; i < m.size(); ++i) t.label += (i ? "," : "") + std::to_string(m[i]);
        t.label += "]";
    }
    return t;
}

// annihilator in g_0 = <H, X, Y, E, E'> of a vector of H_2(p+, g)^1 (slot coordinates)
inline std::vector<Vec<Rational>> class_stabilizer(const Vec<Rational>& v) {
    const auto& hd = harmonic_decomposition();
    const auto& C = c3();
    static const char* names[] = {"H", "X", "Y", "E", "E'"};
    std::vector<Vec<Rational>> cols;
    for (auto nm : names) cols.push_back(hd.rho.at(nm) * v);
    auto ker = kernel_basis(Matrix<Rational>::from_columns(cols, hd.dim()));
    std::vector<Vec<Rational>> out;
    for (auto& k : ker) {
        Vec<Rational> z(C.dim(), Rational(0));
        for (size_t i = 0; i < 5; ++i) {
            Vec<Rational> e = C.vec(names[i]);
            for (size_t a = 0; a < z.size(); ++a) z[a] += k[i] * e[a];
        }
        out.push_back(z);
    }
    return out;
}

// stabilizer of the quintic vector sum_j c_j u_j
inline std::vector<Vec<Rational>> quintic_stabilizer(const std::vector<Rational>& q) {
    const auto& hd = harmonic_decomposition();
    Vec<Rational> v(hd.dim(), Rational(0));
    for (size_t j = 0; j < 6; ++j)
        for (size_t a = 0; a < v.size(); ++a) v[a] += q[j] * hd.quintic[j][a];
    if (is_zero_vec(v)) throw std::invalid_argument("quintic_stabilizer: zero vector");
    return class_stabilizer(v);
}

}  // namespace c3monge
