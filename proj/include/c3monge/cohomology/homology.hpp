#pragma once

#include "complex.hpp"
#include "../liealg/c3.hpp"

namespace c3monge {

inline int to_int(const Rational& r) {
    if (!r.is_integer()) throw std::logic_error("expected an integer, got " + r.str());
    return static_cast<int>(r.raw().get_num().get_si());
}

// integer torus weight (degree, H, E') of each basis vector of g
inline std::vector<Weight> c3_weights() {
    const auto& C = c3();
    std::vector<Weight> w;
    for (size_t i = 0; i < C.dim(); ++i) w.push_back({C.g.degree(i), to_int(C.weights[i][0]), to_int(C.weights[i][2])});
    return w;
}

// Chains Lambda^q p+ (x) g with the Lie algebra homology differential
//   d(X1^..^Xq (x) v) = sum_i (-1)^i X1^.^Xi^.^Xq (x) [Xi, v]
//                      + sum_{i<j} (-1)^{i+j} [Xi,Xj]^X1^..^Xq (x) v   (i, j from 1).
// Chain keys reuse the cochain packing: bits index p+ (local order), out indexes g.
class HomologyComplex {
public:
    HomologyComplex() {
        const auto& C = c3();
        plus_ = C.plus();
        gw_ = c3_weights();
        pos_.assign(C.dim(), -1);
        for (size_t a = 0; a < plus_.size(); ++a) pos_[plus_[a]] = static_cast<int>(a);
        for (int q = 0; q <= 4; ++q)
            for (CKey k : keys_of_degree(q)) keys_[q][weight_of(k)].push_back(k);
    }

    const std::vector<int>& plus() const { return plus_; }
    size_t rank() const { return plus_.size(); }

    Weight weight_of(CKey k) const {
        Weight w = gw_[key_out(k)];
        for (int i : mask_indices(key_mask(k)))
            for (size_t c = 0; c < w.size(); ++c) w[c] += gw_[plus_[i]][c];
        return w;
    }

    template <class F>
    Cochain<F> boundary(const Cochain<F>& c) const {
        Cochain<F> out(c.p - 1);
        for (auto& [k, v] : c.c) boundary_monomial(k, v, out);
        return out;
    }
    template <class F>
    void boundary_monomial(CKey key, const F& coef, Cochain<F>& out) const {
        const auto& g = c3().g;
        uint32_t I = key_mask(key);
        unsigned v = key_out(key);
        auto idx = mask_indices(I);
        for (size_t i = 0; i < idx.size(); ++i) {
            uint32_t K = I & ~(1u << idx[i]);
            bool neg = (i + 1) & 1;
            for (auto& [k, c] : g.basis_bracket(plus_[idx[i]], v)) {
                F t = coef * F(c);
                out.add(make_key(K, k), neg ? -t : t);
            }
        }
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = i + 1; j < idx.size(); ++j) {
                uint32_t K = I & ~(1u << idx[i]) & ~(1u << idx[j]);
                bool neg = (i + j) & 1;  // (i+1)+(j+1)
                for (auto& [k, c] : g.basis_bracket(plus_[idx[i]], plus_[idx[j]])) {
                    int a = pos_[k];
                    if (a < 0) throw std::logic_error("p+ not closed");
                    if ((K >> a) & 1) continue;
                    bool s = neg ^ (bit_pos(K, a) & 1);
                    F t = coef * F(c);
                    out.add(make_key(K | (1u << a), v), s ? -t : t);
                }
            }
    }

    // action of z in p (g coordinates) on chains
    template <class F>
    Cochain<F> act(const Vec<Rational>& z, const Cochain<F>& c) const {
        const auto& g = c3().g;
        Cochain<F> out(c.p);
        for (auto& [key, coef] : c.c) {
            uint32_t I = key_mask(key);
            unsigned v = key_out(key);
            Vec<Rational> zv = g.bracket(z, g.unit(v));
            for (size_t k = 0; k < zv.size(); ++k)
                if (!zv[k].is_zero()) out.add(make_key(I, k), coef * F(zv[k]));
            for (int i : mask_indices(I)) {
                Vec<Rational> zx = g.bracket(z, g.unit(plus_[i]));
                uint32_t K = I & ~(1u << i);
                for (size_t k = 0; k < zx.size(); ++k) {
                    if (zx[k].is_zero()) continue;
                    int a = pos_[k];
                    if (a < 0) throw std::invalid_argument("act: element does not preserve p+");
                    if ((K >> a) & 1) continue;
                    // replace X_i by X_a in place: sign from moving X_a to its sorted slot
                    int s = (bit_pos(K, i) + bit_pos(K, a)) & 1;
                    F t = coef * F(zx[k]);
                    out.add(make_key(K | (1u << a), v), s ? -t : t);
                }
            }
        }
        return out;
    }

    std::vector<Weight> blocks(int q) const {
        std::vector<Weight> out;
        for (auto& [w, ks] : keys_.at(q)) out.push_back(w);
        return out;
    }
    const std::vector<CKey>& keys(int q, const Weight& w) const {
        static const std::vector<CKey> empty;
        auto it = keys_.find(q);
        if (it == keys_.end()) return empty;
        auto jt = it->second.find(w);
        return jt == it->second.end() ? empty : jt->second;
    }
    Matrix<Rational> dmatrix(int q, const Weight& w) const {
        const auto& src = keys(q, w);
        const auto& dst = keys(q - 1, w);
        Matrix<Rational> M(dst.size(), src.size());
        std::unordered_map<CKey, size_t> pos;
        for (size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
        for (size_t j = 0; j < src.size(); ++j) {
            Cochain<Rational> out(q - 1);
            boundary_monomial(src[j], Rational(1), out);
            for (auto& [k, v] : out.c) M(pos.at(k), j) = v;
        }
        return M;
    }
    template <class F>
    Vec<F> to_block(const Cochain<F>& c, const Weight& w) const {
        const auto& ks = keys(c.p, w);
        Vec<F> v(ks.size(), F(0));
        for (size_t i = 0; i < ks.size(); ++i) v[i] = c.get(ks[i]);
        return v;
    }
    template <class F>
    Cochain<F> from_block(int q, const Weight& w, const Vec<F>& v) const {
        Cochain<F> c(q);
        const auto& ks = keys(q, w);
        for (size_t i = 0; i < ks.size(); ++i) c.add(ks[i], v[i]);
        return c;
    }
    template <class F>
    std::set<Weight> support(const Cochain<F>& c) const {
        std::set<Weight> out;
        for (auto& [k, v] : c.c) out.insert(weight_of(k));
        return out;
    }

    // splitting of C_q: B = image of d from C_{q+1}, H, complement of cycles
    const BlockSplit<Rational>& split(int q, const Weight& w) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto key = std::make_pair(q, w);
        auto it = splits_.find(key);
        if (it != splits_.end()) return it->second;
        size_t n = keys(q, w).size();
        Matrix<Rational> din = dmatrix(q + 1, w);
        Matrix<Rational> dout = q > 0 ? dmatrix(q, w) : Matrix<Rational>(0, n);
        return splits_.emplace(key, split_block(din, dout)).first->second;
    }

    std::vector<CKey> keys_of_degree(int q) const {
        std::vector<CKey> out;
        for (uint32_t m : subsets_of_size(rank(), q))
            for (size_t v = 0; v < c3().dim(); ++v) out.push_back(make_key(m, v));
        return out;
    }

private:
    std::vector<int> plus_;
    std::vector<int> pos_;
    std::vector<Weight> gw_;
    std::map<int, std::map<Weight, std::vector<CKey>>> keys_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Weight>, BlockSplit<Rational>> splits_;
};

inline const HomologyComplex& homology_complex() {
    static const HomologyComplex h;
    return h;
}

// H_2(p+, g) in positive homogeneity, split into the g0-invariant scalar line
// and the quintic block with sl2 weight vectors u_j = Y^j u_0 (X u_0 = 0, H u_0 = 5 u_0).
struct HarmonicDecomposition {
    struct Slot {
        Weight weight;
        size_t index;  // H column inside the block split
    };
    std::vector<Slot> slots;                   // basis of H_2^1, ordered by block
    std::map<std::string, Matrix<Rational>> rho;  // action of H, X, Y, E, E' on the basis
    Vec<Rational> scalar;                      // scalar line, in slot coordinates
    std::vector<Vec<Rational>> quintic;        // u_0..u_5 in slot coordinates
    Matrix<Rational> adapted_inv;              // slot coords -> (scalar, q0..q5)
    Weight scalar_weight;
    std::vector<Weight> quintic_weights;

    size_t dim() const { return slots.size(); }

    // coordinates of a cycle on the slot basis
    template <class F>
    Vec<F> class_coords(const Cochain<F>& cycle) const {
        const auto& hc = homology_complex();
        Vec<F> out(dim(), F(0));
        for (auto& w : hc.support(cycle)) {
            if (w[0] < 1) throw std::invalid_argument("chain has a component of homogeneity <= 0");
            const auto& s = hc.split(2, w);
            Vec<F> v = hc.to_block(cycle, w);
            Vec<F> co(s.dim, F(0));
            for (size_t i = 0; i < s.dim; ++i)
                for (size_t j = 0; j < s.dim; ++j)
                    if (!s.inv(i, j).is_zero() && !v[j].is_zero()) co[i] += F(s.inv(i, j)) * v[j];
            for (size_t j = s.nB + s.nH; j < s.dim; ++j)
                if (!co[j].is_zero()) throw std::invalid_argument("chain is not a cycle");
            for (size_t a = 0; a < slots.size(); ++a)
                if (slots[a].weight == w) out[a] = co[s.nB + slots[a].index];
        }
        return out;
    }
    // (scalar coefficient, quintic coefficients c_0..c_5 on u_0..u_5)
    template <class F>
    std::pair<F, std::vector<F>> split_class(const Vec<F>& coords) const {
        Vec<F> r(dim(), F(0));
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j)
                if (!adapted_inv(i, j).is_zero()) r[i] += F(adapted_inv(i, j)) * coords[j];
        return {r[0], std::vector<F>(r.begin() + 1, r.end())};
    }
    Cochain<Rational> chain_of(const Vec<Rational>& coords) const {
        const auto& hc = homology_complex();
        Cochain<Rational> c(2);
        for (size_t a = 0; a < slots.size(); ++a) {
            if (coords[a].is_zero()) continue;
            const auto& s = hc.split(2, slots[a].weight);
            c += hc.from_block(2, slots[a].weight, s.h_vector(slots[a].index)).scaled(coords[a]);
        }
        return c;
    }
};

inline HarmonicDecomposition make_harmonic_decomposition() {
    const auto& hc = homology_complex();
    const auto& C = c3();
    HarmonicDecomposition hd;
    for (auto& w : hc.blocks(2)) {
        if (w[0] < 1) continue;
        const auto& s = hc.split(2, w);
        for (size_t j = 0; j < s.nH; ++j) hd.slots.push_back({w, j});
    }
    size_t n = hd.dim();
    if (n != 7) throw std::logic_error("H_2(p+, g) in positive homogeneity has dim " + std::to_string(n));
    for (const char* name : {"H", "X", "Y", "E", "E'"}) {
        Matrix<Rational> m(n, n);
        Vec<Rational> z = C.vec(name);
        for (size_t a = 0; a < n; ++a) {
            Vec<Rational> e(n, Rational(0));
            e[a] = 1;
            Vec<Rational> col = hd.class_coords(hc.act(z, hd.chain_of(e)));
            for (size_t i = 0; i < n; ++i) m(i, a) = col[i];
        }
        hd.rho[name] = m;
    }
    auto& H = hd.rho["H"];
    auto& X = hd.rho["X"];
    auto& Y = hd.rho["Y"];
    Matrix<Rational> cas = H * H + (X * Y + Y * X).scaled(Rational(2));
    auto sc = kernel_basis(cas);
    auto qu = kernel_basis(cas - Matrix<Rational>::identity(n).scaled(Rational(35)));
    if (sc.size() != 1 || qu.size() != 6) throw std::logic_error("harmonic module is not of shape 1 + 6");
    hd.scalar = sc[0];
    // highest weight vector: X-annihilated, H-weight 5, inside the quintic block
    Matrix<Rational> sys(3 * n, n);
    Matrix<Rational> h5 = H - Matrix<Rational>::identity(n).scaled(Rational(5));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            sys(i, j) = X(i, j);
            sys(n + i, j) = h5(i, j);
            sys(2 * n + i, j) = cas(i, j) - (i == j ? Rational(35) : Rational(0));
        }
    auto hw = kernel_basis(sys);
    if (hw.size() != 1) throw std::logic_error("quintic highest weight vector not unique");
    Vec<Rational> u = hw[0];
    for (int j = 0; j < 6; ++j) {
        hd.quintic.push_back(u);
        u = Y * u;
    }
    if (!is_zero_vec(u)) throw std::logic_error("Y^6 u0 != 0");
    std::vector<Vec<Rational>> cols{hd.scalar};
    cols.insert(cols.end(), hd.quintic.begin(), hd.quintic.end());
    hd.adapted_inv = inverse(Matrix<Rational>::from_columns(cols, n));
    auto weight_of_vec = [&](const Vec<Rational>& v) {
        // (E, H, E') eigenvalues of a weight vector
        Weight w;
        for (const char* name : {"E", "H", "E'"}) {
            Vec<Rational> img = hd.rho[name] * v;
            std::optional<Rational> ev;
            for (size_t i = 0; i < n; ++i)
                if (!v[i].is_zero()) {
                    ev = img[i] / v[i];
                    break;
                }
            for (size_t i = 0; i < n; ++i)
                if (img[i] != *ev * v[i]) throw std::logic_error("not a weight vector");
            w.push_back(to_int(*ev));
        }
        return w;
    };
    hd.scalar_weight = weight_of_vec(hd.scalar);
    for (auto& q : hd.quintic) hd.quintic_weights.push_back(weight_of_vec(q));
    return hd;
}

inline const HarmonicDecomposition& harmonic_decomposition() {
    static const HarmonicDecomposition hd = make_harmonic_decomposition();
    return hd;
}

inline nlohmann::json to_json(const HarmonicDecomposition& hd) {
    nlohmann::json j;
    j["dim"] = hd.dim();
    auto vec = [](const Vec<Rational>& v) {
        std::vector<std::string> s;
        for (auto& x : v) s.push_back(x.str());
        return s;
    };
    j["scalar"] = {{"weight_E_H_Ep", hd.scalar_weight}, {"vector", vec(hd.scalar)}};
    nlohmann::json q = nlohmann::json::array();
    for (size_t i = 0; i < hd.quintic.size(); ++i)
        q.push_back({{"weight_E_H_Ep", hd.quintic_weights[i]}, {"vector", vec(hd.quintic[i])}});
    j["quintic"] = q;
    return j;
}

}  // namespace c3monge
