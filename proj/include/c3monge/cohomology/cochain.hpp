#pragma once

#include "../liealg/lie_algebra.hpp"

#include <bit>
#include <functional>
#include <tuple>

namespace c3monge {

// Monomial cochain e^{i1} ^ ... ^ e^{ip} (x) e_out with i1 < ... < ip,
// packed as (input bitmask << 8) | out. Algebras up to 32 basis vectors.
using CKey = uint64_t;

inline CKey make_key(uint32_t mask, unsigned out) { return (uint64_t(mask) << 8) | out; }
inline uint32_t key_mask(CKey k) { return static_cast<uint32_t>(k >> 8); }
inline unsigned key_out(CKey k) { return static_cast<unsigned>(k & 0xff); }
inline int key_degree(CKey k) { return std::popcount(key_mask(k)); }

inline int bit_pos(uint32_t mask, unsigned bit) { return std::popcount(mask & ((1u << bit) - 1)); }

inline std::vector<int> mask_indices(uint32_t mask) {
    std::vector<int> v;
    while (mask) {
        v.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return v;
}

// parity of the shuffle sorting the concatenation (A, B) of disjoint sets
inline int shuffle_parity(uint32_t A, uint32_t B) {
    int inv = 0;
    for (uint32_t a = A; a; a &= a - 1) {
        unsigned j = std::countr_zero(a);
        inv += std::popcount(B & ((1u << j) - 1));
    }
    return inv & 1;
}

// bitmasks of all p-element subsets of {0..n-1}, in lexicographic order
inline std::vector<uint32_t> subsets_of_size(size_t n, int p) {
    std::vector<uint32_t> out;
    if (p < 0 || size_t(p) > n) return out;
    std::vector<int> comb(p);
    for (int i = 0; i < p; ++i) comb[i] = i;
    while (true) {
        uint32_t m = 0;
        for (int i : comb) m |= 1u << i;
        out.push_back(m);
        int i = p - 1;
        while (i >= 0 && comb[i] == int(n) - p + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < p; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

template <class F>
struct Cochain {
    int p = 0;
    std::map<CKey, F> c;

    Cochain() = default;
    explicit Cochain(int deg) : p(deg) {}

    bool is_zero() const { return c.empty(); }
    void add(CKey k, const F& v) {
        if (v.is_zero()) return;
        auto it = c.find(k);
        if (it == c.end()) {
            c.emplace(k, v);
            return;
        }
        it->second += v;
        if (it->second.is_zero()) c.erase(it);
    }
    F get(CKey k) const {
        auto it = c.find(k);
        return it == c.end() ? F(0) : it->second;
    }
    Cochain& operator+=(const Cochain& o) {
        check(o);
        for (auto& [k, v] : o.c) add(k, v);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        check(o);
        for (auto& [k, v] : o.c) add(k, -v);
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    Cochain scaled(const F& s) const {
        Cochain r(p);
        if (s.is_zero()) return r;
        for (auto& [k, v] : c) r.c.emplace(k, v * s);
        return r;
    }
    friend bool operator==(const Cochain& a, const Cochain& b) { return a.c == b.c && (a.c.empty() || a.p == b.p); }

    template <class G>
    Cochain<G> map_scalars(const std::function<G(const F&)>& f) const {
        Cochain<G> r(p);
        for (auto& [k, v] : c) r.add(k, f(v));
        return r;
    }

private:
    void check(const Cochain& o) const {
        if (!o.c.empty() && !c.empty() && o.p != p) throw std::invalid_argument("cochain degree mismatch");
    }
};

// Cochain operations relative to a fixed algebra.
template <class F>
class CochainAlgebra {
public:
    explicit CochainAlgebra(const LieAlgebra<F>& L) : L_(L), n_(L.dim()) {
        if (n_ > 32 || n_ > 255) throw std::invalid_argument("cochain keys support at most 32 basis vectors");
        into_.assign(n_, {});
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = a + 1; b < n_; ++b)
                for (auto& [k, v] : L.basis_bracket(a, b)) into_[k].emplace_back(int(a), int(b), v);
    }

    const LieAlgebra<F>& algebra() const { return L_; }
    size_t dim() const { return n_; }

    int internal_weight(CKey k) const {
        int w = L_.degree(key_out(k));
        for (int i : mask_indices(key_mask(k))) w -= L_.degree(i);
        return w;
    }

    // the bracket itself as a 2-cochain
    Cochain<F> mu() const {
        Cochain<F> m(2);
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = a + 1; b < n_; ++b)
                for (auto& [k, v] : L_.basis_bracket(a, b)) m.add(make_key((1u << a) | (1u << b), k), v);
        return m;
    }

    // Chevalley-Eilenberg differential with adjoint coefficients:
    // d f(x0..xp) = sum_i (-1)^i [xi, f(..^i..)] + sum_{i<j} (-1)^{i+j} f([xi,xj], ..^i..^j..)
    Cochain<F> d(const Cochain<F>& f) const {
        Cochain<F> out(f.p + 1);
        for (auto& [key, coef] : f.c) d_monomial(key, coef, out);
        return out;
    }
    void d_monomial(CKey key, const F& coef, Cochain<F>& out) const {
        uint32_t I = key_mask(key);
        unsigned b = key_out(key);
        uint32_t full = n_ == 32 ? ~0u : ((1u << n_) - 1);
        for (uint32_t rest = full & ~I; rest; rest &= rest - 1) {
            unsigned a = std::countr_zero(rest);
            uint32_t J = I | (1u << a);
            int pos = bit_pos(J, a);
            const auto& br = L_.basis_bracket(a, b);
            for (auto& [k, v] : br) out.add(make_key(J, k), (pos & 1) ? -(coef * v) : coef * v);
        }
        for (uint32_t ii = I; ii; ii &= ii - 1) {
            unsigned c = std::countr_zero(ii);
            uint32_t K = I & ~(1u << c);
            int posc = bit_pos(I, c);
            for (auto& [a, a2, s] : into_[c]) {
                if ((K >> a) & 1 || (K >> a2) & 1) continue;
                uint32_t J = K | (1u << a) | (1u << a2);
                int i = bit_pos(J, a), j = bit_pos(J, a2);
                int sg = (i + j + posc) & 1;
                F v = coef * s;
                out.add(make_key(J, b), sg ? -v : v);
            }
        }
    }

    // insertion (f o g)(x...) = sum over (q, p-1)-shuffles sgn f(g(x..), x..)
    Cochain<F> insert(const Cochain<F>& f, const Cochain<F>& g) const {
        Cochain<F> out(f.p + g.p - 1);
        if (f.p == 0) return out;
        for (auto& [kf, cf] : f.c) {
            uint32_t I = key_mask(kf);
            unsigned u = key_out(kf);
            for (auto& [kg, cg] : g.c) {
                unsigned v = key_out(kg);
                if (!((I >> v) & 1)) continue;
                uint32_t T = I & ~(1u << v), J = key_mask(kg);
                if (T & J) continue;
                int sg = (shuffle_parity(J, T) + bit_pos(I, v)) & 1;
                F val = cf * cg;
                out.add(make_key(J | T, u), sg ? -val : val);
            }
        }
        return out;
    }

    // Nijenhuis-Richardson bracket, [f,g] = f o g - (-1)^{(p-1)(q-1)} g o f
    Cochain<F> nr(const Cochain<F>& f, const Cochain<F>& g) const {
        Cochain<F> a = insert(f, g);
        Cochain<F> b = insert(g, f);
        if (((f.p - 1) * (g.p - 1)) & 1)
            a += b;
        else
            a -= b;
        return a;
    }

    // bracket of the DGLA L^k = C^{k+1}: (-1)^{|f||g|} times the NR bracket,
    // so that d f + 1/2 [f, f] vanishes exactly when mu + f satisfies Jacobi
    Cochain<F> bracket(const Cochain<F>& f, const Cochain<F>& g) const {
        Cochain<F> r = nr(f, g);
        if (((f.p - 1) * (g.p - 1)) & 1) return r.scaled(F(-1));
        return r;
    }

    // value f(e_i1, ..., e_ip) for an arbitrary index list
    Vec<F> eval(const Cochain<F>& f, const std::vector<int>& xs) const {
        Vec<F> out(n_, F(0));
        uint32_t m = 0;
        int sign = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            if ((m >> xs[i]) & 1) return out;
            // inversions: earlier elements bigger than xs[i]
            sign += std::popcount(m & ~((2u << xs[i]) - 1));
            m |= 1u << xs[i];
        }
        for (size_t k = 0; k < n_; ++k) {
            F v = f.get(make_key(m, k));
            if (!v.is_zero()) out[k] = (sign & 1) ? -v : v;
        }
        return out;
    }

    // f(x, y) for vectors (2-cochains)
    Vec<F> eval2(const Cochain<F>& f, const Vec<F>& x, const Vec<F>& y) const {
        Vec<F> out(n_, F(0));
        for (auto& [key, v] : f.c) {
            auto idx = mask_indices(key_mask(key));
            F w = x[idx[0]] * y[idx[1]] - x[idx[1]] * y[idx[0]];
            if (!w.is_zero()) out[key_out(key)] += w * v;
        }
        return out;
    }
    // f(x) for 1-cochains
    Vec<F> eval1(const Cochain<F>& f, const Vec<F>& x) const {
        Vec<F> out(n_, F(0));
        for (auto& [key, v] : f.c) {
            int i = std::countr_zero(key_mask(key));
            if (!x[i].is_zero()) out[key_out(key)] += x[i] * v;
        }
        return out;
    }

    // 1-cochain <-> endomorphism matrix
    Matrix<F> to_matrix(const Cochain<F>& y) const {
        Matrix<F> m(n_, n_);
        for (auto& [key, v] : y.c) m(key_out(key), std::countr_zero(key_mask(key))) += v;
        return m;
    }
    Cochain<F> from_matrix(const Matrix<F>& m) const {
        Cochain<F> y(1);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) y.add(make_key(1u << j, i), m(i, j));
        return y;
    }

    // [x, y]_f = [x, y] + f(x, y) on basis vectors
    LieAlgebra<F> deformed(const Cochain<F>& f, bool filtered = true) const {
        LieAlgebra<F> out(L_.labels(), L_.degrees(), filtered);
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = a + 1; b < n_; ++b) {
                Vec<F> v = L_.bracket_basis(a, b);
                Vec<F> w = eval(f, {int(a), int(b)});
                for (size_t k = 0; k < n_; ++k) v[k] += w[k];
                out.set_bracket(a, b, v);
            }
        return out;
    }

    // all monomial keys of degree p
    std::vector<CKey> keys_of_degree(int p) const {
        std::vector<CKey> out;
        for (uint32_t m : subsets_of_size(n_, p))
            for (size_t k = 0; k < n_; ++k) out.push_back(make_key(m, k));
        return out;
    }

private:
    LieAlgebra<F> L_;
    size_t n_;
    std::vector<std::vector<std::tuple<int, int, F>>> into_;
};

}  // namespace c3monge
