#pragma once

#include "cochain.hpp"

#include <json.hpp>

#include <mutex>
#include <set>
#include <unordered_map>

namespace c3monge {

using Weight = std::vector<int>;

// Adapted basis of one block C of a complex  A --din--> C --dout--> D:
// columns [B | H | Cc] with B = im din, B + H = ker dout, Cc unit vectors
// complementing ker dout. src[j] is the A-unit vector hit by B column j.
template <class F>
struct BlockSplit {
    size_t dim = 0, nB = 0, nH = 0, nC = 0;
    Matrix<F> basis, inv;
    std::vector<size_t> src;   // B column j = din(e_src[j])
    std::vector<size_t> cpiv;  // Cc column j = e_cpiv[j]

    Vec<F> coords(const Vec<F>& v) const { return inv * v; }
    Vec<F> column(size_t j) const { return basis.col(j); }
    Vec<F> h_vector(size_t j) const { return basis.col(nB + j); }
    // coordinates of v in the H part (v any vector of the block)
    Vec<F> h_coords(const Vec<F>& v) const {
        Vec<F> c = coords(v);
        return Vec<F>(c.begin() + nB, c.begin() + nB + nH);
    }
};

template <class F>
BlockSplit<F> split_block(const Matrix<F>& din, const Matrix<F>& dout) {
    size_t n = dout.cols();
    if (din.rows() != n) throw std::invalid_argument("split_block: size mismatch");
    BlockSplit<F> s;
    s.dim = n;
    std::vector<Vec<F>> cols;
    if (din.cols() > 0 && n > 0) {
        auto e = rref(din);
        for (size_t p : e.pivots) {
            s.src.push_back(p);
            cols.push_back(din.col(p));
        }
    }
    s.nB = cols.size();
    std::vector<Vec<F>> ker;
    std::vector<size_t> cp;
    if (dout.rows() == 0) {
        for (size_t i = 0; i < n; ++i) ker.push_back(unit_vec<F>(n, i));
    } else if (n > 0) {
        auto e = rref(dout);
        cp = e.pivots;
        ker = kernel_from_rref(e, n);
    }
    if (!ker.empty()) {
        std::vector<Vec<F>> all = cols;
        all.insert(all.end(), ker.begin(), ker.end());
        auto e = rref(Matrix<F>::from_columns(all, n));
        for (size_t p : e.pivots)
            if (p >= s.nB) cols.push_back(ker[p - s.nB]);
        if (e.pivots.size() < s.nB) throw std::logic_error("split_block: image not inside kernel");
    }
    s.nH = cols.size() - s.nB;
    for (size_t p : cp) cols.push_back(unit_vec<F>(n, p));
    s.cpiv = cp;
    s.nC = cp.size();
    if (cols.size() != n) throw std::logic_error("split_block: d^2 != 0 or inconsistent sizes");
    s.basis = Matrix<F>::from_columns(cols, n);
    s.inv = n ? inverse(s.basis) : Matrix<F>(0, 0);
    return s;
}

// Betti numbers b^p_i with representatives (as cochains).
template <class F>
struct BettiTable {
    std::map<std::pair<int, int>, size_t> dims;  // (p, i) -> dim
    std::map<std::pair<int, int>, std::vector<Cochain<F>>> reps;

    size_t get(int p, int i) const {
        auto it = dims.find({p, i});
        return it == dims.end() ? 0 : it->second;
    }
    // b^p_j for j = from..to
    std::vector<size_t> row(int p, int from, int to) const {
        std::vector<size_t> v;
        for (int j = from; j <= to; ++j) v.push_back(get(p, j));
        return v;
    }
};

template <class F>
nlohmann::json to_json(const BettiTable<F>& b) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& [pi, n] : b.dims) {
        if (n == 0) continue;
        nlohmann::json e{{"p", pi.first}, {"i", pi.second}, {"dim", n}};
        nlohmann::json reps = nlohmann::json::array();
        auto it = b.reps.find(pi);
        if (it != b.reps.end())
            for (auto& c : it->second) {
                nlohmann::json r = nlohmann::json::array();
                for (auto& [k, v] : c.c) r.push_back({mask_indices(key_mask(k)), key_out(k), to_string(v)});
                reps.push_back(r);
            }
        e["representatives"] = reps;
        j.push_back(e);
    }
    return j;
}

// Chevalley-Eilenberg complex of L with adjoint coefficients, decomposed
// into blocks of a torus weight. weights[b] is the weight of basis vector b;
// component 0 must be the grading degree. An optional filter keeps only
// blocks whose weight satisfies it (e.g. annihilated by a subalgebra).
template <class F>
class CochainComplex {
public:
    using Filter = std::function<bool(const Weight&)>;

    CochainComplex(const LieAlgebra<F>& L, std::vector<Weight> weights, int pmin, int pmax, Filter filter = {})
        : ops_(L), w_(std::move(weights)), pmin_(pmin), pmax_(pmax), filter_(std::move(filter)) {
        if (w_.size() != L.dim()) throw std::invalid_argument("one weight per basis vector required");
        for (size_t b = 0; b < L.dim(); ++b)
            if (w_[b].empty() || w_[b][0] != L.degree(b))
                throw std::invalid_argument("weight component 0 must be the degree");
        check_weights();
        for (int p = pmin_; p <= pmax_ + 1; ++p) {
            auto& m = keys_[p];
            for (CKey k : ops_.keys_of_degree(p)) {
                Weight w = weight_of(k);
                if (!filter_ || filter_(w)) m[w].push_back(k);
            }
        }
    }

    const CochainAlgebra<F>& ops() const { return ops_; }
    const LieAlgebra<F>& algebra() const { return ops_.algebra(); }
    int pmin() const { return pmin_; }
    int pmax() const { return pmax_; }

    Weight weight_of(CKey k) const {
        Weight w = w_[key_out(k)];
        for (int i : mask_indices(key_mask(k)))
            for (size_t c = 0; c < w.size(); ++c) w[c] -= w_[i][c];
        return w;
    }
    bool accepts(const Weight& w) const { return !filter_ || filter_(w); }

    // weights of the blocks present in degree p
    std::vector<Weight> blocks(int p) const {
        std::vector<Weight> out;
        auto it = keys_.find(p);
        if (it == keys_.end()) return out;
        for (auto& [w, ks] : it->second) out.push_back(w);
        return out;
    }
    const std::vector<CKey>& keys(int p, const Weight& w) const {
        static const std::vector<CKey> empty;
        auto it = keys_.find(p);
        if (it == keys_.end()) return empty;
        auto jt = it->second.find(w);
        return jt == it->second.end() ? empty : jt->second;
    }

    // matrix of d: C^p_w -> C^{p+1}_w in the monomial bases
    Matrix<F> dmatrix(int p, const Weight& w) const {
        const auto& src = keys(p, w);
        const auto& dst = keys(p + 1, w);
        Matrix<F> M(dst.size(), src.size());
        if (src.empty() || dst.empty()) return M;
        std::unordered_map<CKey, size_t> pos;
        for (size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
        for (size_t j = 0; j < src.size(); ++j) {
            Cochain<F> out(p + 1);
            ops_.d_monomial(src[j], F(1), out);
            for (auto& [k, v] : out.c) {
                auto it = pos.find(k);
                if (it == pos.end()) throw std::logic_error("differential left its weight block");
                M(it->second, j) = v;
            }
        }
        return M;
    }

    // block coordinate vector of a cochain (only its part of weight w)
    Vec<F> to_block(const Cochain<F>& c, const Weight& w) const {
        const auto& ks = keys(c.p, w);
        Vec<F> v(ks.size(), F(0));
        for (size_t i = 0; i < ks.size(); ++i) v[i] = c.get(ks[i]);
        return v;
    }
    Cochain<F> from_block(int p, const Weight& w, const Vec<F>& v) const {
        Cochain<F> c(p);
        const auto& ks = keys(p, w);
        for (size_t i = 0; i < ks.size(); ++i) c.add(ks[i], v[i]);
        return c;
    }
    // weight blocks present in a cochain; throws if it leaves the complex
    std::set<Weight> support(const Cochain<F>& c) const {
        std::set<Weight> out;
        for (auto& [k, v] : c.c) {
            Weight w = weight_of(k);
            if (!accepts(w)) throw std::invalid_argument("cochain component outside the subcomplex");
            out.insert(w);
        }
        return out;
    }

    const BlockSplit<F>& split(int p, const Weight& w) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto key = std::make_pair(p, w);
        auto it = splits_.find(key);
        if (it != splits_.end()) return it->second;
        size_t n = keys(p, w).size();
        Matrix<F> din = p > pmin_ ? dmatrix(p - 1, w) : Matrix<F>(n, 0);
        Matrix<F> dout = dmatrix(p, w);
        return splits_.emplace(key, split_block(din, dout)).first->second;
    }

    // cohomology in degrees pmin..pmax, restricted to internal weights in [imin, imax]
    BettiTable<F> betti(int imin, int imax, bool with_reps = true) const {
        BettiTable<F> t;
        for (int p = pmin_; p <= pmax_; ++p)
            for (auto& w : blocks(p)) {
                if (w[0] < imin || w[0] > imax) continue;
                const auto& s = split(p, w);
                t.dims[{p, w[0]}] += s.nH;
                if (with_reps)
                    for (size_t j = 0; j < s.nH; ++j) t.reps[{p, w[0]}].push_back(from_block(p, w, s.h_vector(j)));
            }
        return t;
    }

    // homotopy delta: C^p -> C^{p-1}, with d delta = proj_B and delta d = proj_C
    Cochain<F> delta(const Cochain<F>& c) const {
        Cochain<F> out(c.p - 1);
        if (c.p <= pmin_) return out;
        for (auto& w : support(c)) {
            const auto& s = split(c.p, w);
            Vec<F> co = s.coords(to_block(c, w));
            const auto& src = keys(c.p - 1, w);
            for (size_t j = 0; j < s.nB; ++j) out.add(src[s.src[j]], co[j]);
        }
        return out;
    }
    // projections onto the three parts of the splitting
    enum class Part { B, H, C };
    Cochain<F> project(const Cochain<F>& c, Part part) const {
        Cochain<F> out(c.p);
        for (auto& w : support(c)) {
            const auto& s = split(c.p, w);
            Vec<F> co = s.coords(to_block(c, w));
            size_t lo = part == Part::B ? 0 : part == Part::H ? s.nB : s.nB + s.nH;
            size_t hi = part == Part::B ? s.nB : part == Part::H ? s.nB + s.nH : s.dim;
            Vec<F> v(s.dim, F(0));
            for (size_t j = lo; j < hi; ++j) {
                if (co[j].is_zero()) continue;
                for (size_t i = 0; i < s.dim; ++i)
                    if (!s.basis(i, j).is_zero()) v[i] += co[j] * s.basis(i, j);
            }
            out += from_block(c.p, w, v);
        }
        return out;
    }

private:
    void check_weights() const {
        // weights must be additive on brackets (torus acts by derivations)
        const auto& L = ops_.algebra();
        for (size_t a = 0; a < L.dim(); ++a)
            for (size_t b = a + 1; b < L.dim(); ++b)
                for (auto& [k, v] : L.basis_bracket(a, b))
                    for (size_t c = 0; c < w_[a].size(); ++c)
                        if (w_[k][c] != w_[a][c] + w_[b][c])
                            throw std::invalid_argument("weights not additive on brackets");
    }

    CochainAlgebra<F> ops_;
    std::vector<Weight> w_;
    int pmin_, pmax_;
    Filter filter_;
    std::map<int, std::map<Weight, std::vector<CKey>>> keys_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Weight>, BlockSplit<F>> splits_;
};

}  // namespace c3monge
