#pragma once

#include "../cohomology/homology.hpp"
#include "../liealg/c3.hpp"

namespace c3monge {

// g = sp(6) over F together with the data used to turn 2-forms on g/p into
// chains in Lambda^2 p+ (x) g.
template <class F>
struct C3Context {
    LieAlgebra<F> g;
    std::vector<int> minus, plus;
    Matrix<F> dual;  // p+ element dual to the a-th g_- basis vector: sum_i dual(a, i) plus[i]

    static const C3Context& get() {
        static const C3Context ctx = make();
        return ctx;
    }

private:
    static C3Context make() {
        const auto& C = c3();
        C3Context x;
        x.g = C.g.template map_scalars<F>([](const Rational& r) { return F(r); });
        x.minus = C.minus();
        x.plus = C.plus();
        size_t m = x.minus.size();
        if (x.plus.size() != m) throw std::logic_error("dim p+ != dim g_-");
        // T(i, b) = tr(plus_i minus_b); the dual basis is given by T^-1
        Matrix<Rational> T(m, m);
        for (size_t i = 0; i < m; ++i)
            for (size_t b = 0; b < m; ++b) T(i, b) = C.trace_form(size_t(x.plus[i]), size_t(x.minus[b]));
        Matrix<Rational> Ti = inverse(T);
        x.dual = Matrix<F>(m, m);
        for (size_t a = 0; a < m; ++a)
            for (size_t i = 0; i < m; ++i) x.dual(a, i) = F(Ti(a, i));
        return x;
    }
};

// Algebraic Cartan connection omega: k -> g on (k, k^0), k^0 = span of basis vectors of degree >= 0.
template <class F>
struct CartanConnection {
    LieAlgebra<F> k;
    Matrix<F> omega;  // dim g x dim k
    bool normal = false;

    std::vector<size_t> isotropy() const {
        std::vector<size_t> v;
        for (size_t i = 0; i < k.dim(); ++i)
            if (k.degree(i) >= 0) v.push_back(i);
        return v;
    }
    std::vector<size_t> transversal() const {
        std::vector<size_t> v;
        for (size_t i = 0; i < k.dim(); ++i)
            if (k.degree(i) < 0) v.push_back(i);
        return v;
    }
};

// curvature function kappa on g/p = g_-, stored for pairs a < b of g_- basis vectors
template <class F>
struct Curvature {
    std::map<std::pair<size_t, size_t>, Vec<F>> kappa;
    Cochain<F> chain{2};  // the same as an element of Lambda^2 p+ (x) g

    bool is_zero() const { return chain.is_zero(); }
    // kappa(u, v) for u, v in g_- coordinates
    Vec<F> eval(const Vec<F>& u, const Vec<F>& v, size_t n) const {
        Vec<F> out(n, F(0));
        for (auto& [ab, val] : kappa) {
            F c = u[ab.first] * v[ab.second] - u[ab.second] * v[ab.first];
            if (c.is_zero()) continue;
            for (size_t i = 0; i < n; ++i)
                if (!val[i].is_zero()) out[i] += c * val[i];
        }
        return out;
    }
};

template <class F>
CartanConnection<F> initial_connection(const LieAlgebra<F>& k, const Matrix<F>& iota) {
    const auto& ctx = C3Context<F>::get();
    if (iota.rows() != ctx.g.dim() || iota.cols() != k.dim()) throw std::invalid_argument("initial_connection: shape");
    CartanConnection<F> c{k, iota, false};
    // gr omega maps k_j into g_j
    for (size_t b = 0; b < k.dim(); ++b)
        for (size_t i = 0; i < ctx.g.dim(); ++i)
            if (!iota(i, b).is_zero() && ctx.g.degree(i) != k.degree(b))
                throw std::invalid_argument("initial_connection: embedding is not graded");
    auto tr = c.transversal();
    if (tr.size() != ctx.minus.size()) throw std::invalid_argument("initial_connection: k/k0 has the wrong dimension");
    Matrix<F> A(tr.size(), tr.size());
    for (size_t a = 0; a < ctx.minus.size(); ++a)
        for (size_t b = 0; b < tr.size(); ++b) A(a, b) = iota(size_t(ctx.minus[a]), tr[b]);
    if (rank(A) != tr.size()) throw std::invalid_argument("initial_connection: image does not contain g_-");
    if (rank(iota) != k.dim()) throw std::invalid_argument("initial_connection: not injective");
    return c;
}

namespace detail {

template <class F>
Vec<F> omega_of(const CartanConnection<F>& c, size_t b) {
    return c.omega.col(b);
}

// Omega(e_a, e_b) = [omega e_a, omega e_b] - omega [e_a, e_b]_k
template <class F>
Vec<F> big_omega(const CartanConnection<F>& c, const LieAlgebra<F>& g, size_t a, size_t b) {
    Vec<F> v = g.bracket(c.omega.col(a), c.omega.col(b));
    for (auto& [k, x] : c.k.basis_bracket(a, b))
        for (size_t i = 0; i < v.size(); ++i)
            if (!c.omega(i, k).is_zero()) v[i] -= x * c.omega(i, k);
    return v;
}

// proj to g_- of omega on the transversal basis
template <class F>
Matrix<F> transversal_matrix(const CartanConnection<F>& c, const std::vector<int>& minus) {
    auto tr = c.transversal();
    Matrix<F> A(minus.size(), tr.size());
    for (size_t a = 0; a < minus.size(); ++a)
        for (size_t b = 0; b < tr.size(); ++b) A(a, b) = c.omega(size_t(minus[a]), tr[b]);
    return A;
}

// kappa values (on g_- pairs) to a chain in Lambda^2 p+ (x) g
template <class F>
Cochain<F> kappa_chain(const std::map<std::pair<size_t, size_t>, Vec<F>>& kappa, const Matrix<F>& dual) {
    size_t m = dual.rows();
    Cochain<F> ch(2);
    for (auto& [ab, val] : kappa)
        for (size_t i = 0; i < m; ++i) {
            F ai = dual(ab.first, i), bi = dual(ab.second, i);
            if (ai.is_zero() && bi.is_zero()) continue;
            for (size_t j = i + 1; j < m; ++j) {
                F w = ai * dual(ab.second, j) - dual(ab.first, j) * bi;
                if (w.is_zero()) continue;
                for (size_t v = 0; v < val.size(); ++v)
                    if (!val[v].is_zero()) ch.add(make_key((1u << i) | (1u << j), v), w * val[v]);
            }
        }
    return ch;
}

}  // namespace detail

// Curvature of omega. Throws if Omega is not horizontal over k^0.
template <class F>
Curvature<F> curvature(const CartanConnection<F>& c) {
    const auto& ctx = C3Context<F>::get();
    const auto& g = ctx.g;
    size_t n = c.k.dim();
    for (size_t x : c.isotropy())
        for (size_t y = 0; y < n; ++y)
            if (x != y && !is_zero_vec(detail::big_omega(c, g, x, y)))
                throw std::invalid_argument("curvature: not horizontal (omega is not equivariant over k^0)");
    auto tr = c.transversal();
    Matrix<F> Ai = inverse(detail::transversal_matrix(c, ctx.minus));
    std::map<std::pair<size_t, size_t>, Vec<F>> om;
    for (size_t a = 0; a < tr.size(); ++a)
        for (size_t b = a + 1; b < tr.size(); ++b) {
            Vec<F> v = detail::big_omega(c, g, tr[a], tr[b]);
            if (!is_zero_vec(v)) om[{a, b}] = v;
        }
    Curvature<F> K;
    size_t m = ctx.minus.size();
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a + 1; b < m; ++b) {
            Vec<F> val(g.dim(), F(0));
            for (auto& [cd, v] : om) {
                F w = Ai(cd.first, a) * Ai(cd.second, b) - Ai(cd.second, a) * Ai(cd.first, b);
                if (w.is_zero()) continue;
                for (size_t i = 0; i < v.size(); ++i)
                    if (!v[i].is_zero()) val[i] += w * v[i];
            }
            if (!is_zero_vec(val)) K.kappa[{a, b}] = val;
        }
    K.chain = detail::kappa_chain(K.kappa, ctx.dual);
    return K;
}

template <class F>
bool is_normal(const Curvature<F>& K) {
    return homology_complex().boundary(K.chain).is_zero();
}

// Makes omega normal: omega = omega0 + sum_d psi_d with psi_d of homogeneity d,
// solved degree by degree for equivariance over k^0 and for d(kappa) = 0.
template <class F>
CartanConnection<F> normalize(CartanConnection<F> c) {
    const auto& ctx = C3Context<F>::get();
    const auto& g = ctx.g;
    const auto& hc = homology_complex();
    size_t n = c.k.dim(), N = g.dim();
    LieAlgebra<F> gr = c.k.associated_graded();
    Matrix<F> iota = c.omega;  // graded part is all we use of it below
    for (size_t b = 0; b < n; ++b)
        for (size_t i = 0; i < N; ++i)
            if (g.degree(i) != c.k.degree(b)) iota(i, b) = F(0);
    Matrix<F> A0i = inverse(detail::transversal_matrix(CartanConnection<F>{c.k, iota}, ctx.minus));
    auto iso = c.isotropy();
    auto tr = c.transversal();
    int maxd = g.max_degree() - c.k.min_degree();
    // (dpsi)(X, Y) = [iota X, psi Y] - [iota Y, psi X] - psi [X, Y]_gr
    auto dpsi = [&](const Matrix<F>& psi, size_t x, size_t y) {
        Vec<F> v = g.bracket(iota.col(x), psi.col(y));
        Vec<F> w = g.bracket(iota.col(y), psi.col(x));
        for (size_t i = 0; i < N; ++i) v[i] -= w[i];
        for (auto& [k, s] : gr.basis_bracket(x, y))
            for (size_t i = 0; i < N; ++i)
                if (!psi(i, k).is_zero()) v[i] -= s * psi(i, k);
        return v;
    };
    auto homog = [&](size_t i, size_t x, size_t y) { return g.degree(i) - c.k.degree(x) - c.k.degree(y); };
    // linear part of the chain in psi: kappa(u_a, u_b) = dpsi(A0^-1 u_a, A0^-1 u_b)
    auto chain_of_psi = [&](const Matrix<F>& psi) {
        std::map<std::pair<size_t, size_t>, Vec<F>> kap;
        size_t m = ctx.minus.size();
        for (size_t a = 0; a < m; ++a)
            for (size_t b = a + 1; b < m; ++b) {
                Vec<F> val(N, F(0));
                for (size_t p = 0; p < m; ++p) {
                    if (A0i(p, a).is_zero()) continue;
                    for (size_t q = 0; q < m; ++q) {
                        if (A0i(q, b).is_zero() || p == q) continue;
                        Vec<F> v = dpsi(psi, tr[p], tr[q]);
                        F w = A0i(p, a) * A0i(q, b);
                        for (size_t i = 0; i < N; ++i)
                            if (!v[i].is_zero()) val[i] += w * v[i];
                    }
                }
                if (!is_zero_vec(val)) kap[{a, b}] = val;
            }
        return detail::kappa_chain(kap, ctx.dual);
    };
    for (int d = 1; d <= maxd; ++d) {
        // unknowns: entries psi(i, b) with deg g_i = deg k_b + d
        std::vector<std::pair<size_t, size_t>> unk;
        for (size_t b = 0; b < n; ++b)
            for (size_t i = 0; i < N; ++i)
                if (g.degree(i) == c.k.degree(b) + d) unk.emplace_back(i, b);
        // equations, keyed: equivariance (x, y, i) and boundary chain keys
        std::map<std::tuple<int, size_t, size_t, size_t>, size_t> row;
        auto row_of = [&](std::tuple<int, size_t, size_t, size_t> key) {
            auto it = row.find(key);
            if (it != row.end()) return it->second;
            size_t r = row.size();
            row.emplace(key, r);
            return r;
        };
        std::vector<std::map<size_t, F>> cols(unk.size());
        for (size_t u = 0; u < unk.size(); ++u) {
            Matrix<F> psi(N, n);
            psi(unk[u].first, unk[u].second) = F(1);
            for (size_t x : iso)
                for (size_t y = 0; y < n; ++y) {
                    if (x == y) continue;
                    Vec<F> v = dpsi(psi, x, y);
                    for (size_t i = 0; i < N; ++i)
                        if (!v[i].is_zero()) cols[u][row_of({0, x, y, i})] += v[i];
                }
            for (auto& [k, v] : hc.boundary(chain_of_psi(psi)).c) cols[u][row_of({1, size_t(k), 0, 0})] += v;
        }
        // known terms with psi_{<d}
        std::map<size_t, F> rhs;
        for (size_t x : iso)
            for (size_t y = 0; y < n; ++y) {
                if (x == y) continue;
                Vec<F> v = detail::big_omega(c, g, x, y);
                for (size_t i = 0; i < N; ++i) {
                    if (v[i].is_zero()) continue;
                    int h = homog(i, x, y);
                    if (h < d) throw std::logic_error("normalize: equivariance failed below the current degree");
                    if (h == d) rhs[row_of({0, x, y, i})] -= v[i];
                }
            }
        {
            // curvature with psi_{<d}; horizontality holds below degree d only, so evaluate Omega directly
            Matrix<F> Ai = inverse(detail::transversal_matrix(c, ctx.minus));
            std::map<std::pair<size_t, size_t>, Vec<F>> kap;
            size_t m = ctx.minus.size();
            std::map<std::pair<size_t, size_t>, Vec<F>> om;
            for (size_t p = 0; p < m; ++p)
                for (size_t q = p + 1; q < m; ++q) om[{p, q}] = detail::big_omega(c, g, tr[p], tr[q]);
            for (size_t a = 0; a < m; ++a)
                for (size_t b = a + 1; b < m; ++b) {
                    Vec<F> val(N, F(0));
                    for (auto& [pq, v] : om) {
                        F w = Ai(pq.first, a) * Ai(pq.second, b) - Ai(pq.second, a) * Ai(pq.first, b);
                        if (w.is_zero()) continue;
                        for (size_t i = 0; i < N; ++i)
                            if (!v[i].is_zero()) val[i] += w * v[i];
                    }
                    if (!is_zero_vec(val)) kap[{a, b}] = val;
                }
            Cochain<F> ch = detail::kappa_chain(kap, ctx.dual);
            Cochain<F> part(2);
            for (auto& [k, v] : ch.c)
                if (hc.weight_of(k)[0] == d) part.add(k, v);
            for (auto& [k, v] : hc.boundary(part).c) rhs[row_of({1, size_t(k), 0, 0})] -= v;
        }
        if (row.empty()) continue;
        Matrix<F> M(row.size(), unk.size());
        for (size_t u = 0; u < unk.size(); ++u)
            for (auto& [r, v] : cols[u]) M(r, u) = v;
        Vec<F> b(row.size(), F(0));
        for (auto& [r, v] : rhs) b[r] = v;
        if (is_zero_vec(b)) continue;
        auto sol = solve_linear(M, b);
        if (!sol) throw std::runtime_error("normalization obstruction at homogeneity " + std::to_string(d));
        for (size_t u = 0; u < unk.size(); ++u) c.omega(unk[u].first, unk[u].second) += sol->x[u];
    }
    Curvature<F> K = curvature(c);  // verifies horizontality
    if (!is_normal(K)) throw std::logic_error("normalize: result is not normal");
    c.normal = true;
    return c;
}

}  // namespace c3monge
