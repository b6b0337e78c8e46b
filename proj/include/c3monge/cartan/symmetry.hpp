#pragma once

#include "connection.hpp"

#include <deque>
#include <random>

namespace c3monge {

// Tractor-type data of a normal connection: alpha(X) = ad(omega X) - kappa(omega X, .)
// and its curvature R(X, Y) = [alpha X, alpha Y] - alpha [X, Y]_k.
template <class F>
struct Holonomy {
    std::vector<Matrix<F>> alpha;  // per basis vector of k
    LieAlgebra<F> k;

    Matrix<F> R(size_t x, size_t y) const {
        Matrix<F> m = alpha[x] * alpha[y] - alpha[y] * alpha[x];
        for (auto& [c, v] : k.basis_bracket(x, y)) m = m - alpha[size_t(c)].scaled(v);
        return m;
    }
    // row i of R(x, y)
    Vec<F> R_row(size_t x, size_t y, size_t i) const {
        Vec<F> out = row_times(alpha[x].row(i), alpha[y]);
        Vec<F> b = row_times(alpha[y].row(i), alpha[x]);
        for (size_t j = 0; j < out.size(); ++j) out[j] -= b[j];
        for (auto& [c, v] : k.basis_bracket(x, y))
            for (size_t j = 0; j < out.size(); ++j)
                if (!alpha[size_t(c)](i, j).is_zero()) out[j] -= v * alpha[size_t(c)](i, j);
        return out;
    }
    static Vec<F> row_times(const Vec<F>& r, const Matrix<F>& m) {
        Vec<F> out(m.cols(), F(0));
        for (size_t i = 0; i < r.size(); ++i) {
            if (r[i].is_zero()) continue;
            for (size_t j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_zero()) out[j] += r[i] * m(i, j);
        }
        return out;
    }
};

template <class F>
Holonomy<F> holonomy(const CartanConnection<F>& c, const Curvature<F>& K) {
    const auto& ctx = C3Context<F>::get();
    size_t N = ctx.g.dim(), m = ctx.minus.size();
    Holonomy<F> h;
    h.k = c.k;
    for (size_t x = 0; x < c.k.dim(); ++x) {
        Vec<F> w = c.omega.col(x);
        Matrix<F> a = ctx.g.ad(w);
        Vec<F> u(m, F(0));
        for (size_t p = 0; p < m; ++p) u[p] = w[size_t(ctx.minus[p])];
        if (!is_zero_vec(u))
            for (size_t q = 0; q < m; ++q) {
                Vec<F> col = K.eval(u, unit_vec<F>(m, q), N);
                for (size_t i = 0; i < N; ++i)
                    if (!col[i].is_zero()) a(i, size_t(ctx.minus[q])) -= col[i];
            }
        h.alpha.push_back(std::move(a));
    }
    return h;
}

namespace detail {

// span of row vectors kept in reduced form
template <class F>
class RowSpan {
public:
    explicit RowSpan(size_t n) : n_(n) {}
    size_t rank() const { return rows_.size(); }
    // true if v was independent (and is now included)
    bool add(Vec<F> v) {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const F& x = v[piv_[r]];
            if (x.is_zero()) continue;
            F f = x;
            for (size_t j = 0; j < n_; ++j)
                if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
        }
        size_t p = 0;
        while (p < n_ && v[p].is_zero()) ++p;
        if (p == n_) return false;
        F inv = F(1) / v[p];
        for (auto& x : v) x *= inv;
        for (size_t r = 0; r < rows_.size(); ++r) {
            F f = rows_[r][p];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < n_; ++j)
                if (!v[j].is_zero()) rows_[r][j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        piv_.push_back(p);
        return true;
    }

private:
    size_t n_;
    std::vector<Vec<F>> rows_;
    std::vector<size_t> piv_;
};

}  // namespace detail

// An annihilating functional: row `row` of R(x, y) followed by alpha(word[0]) alpha(word[1]) ...
struct HolonomyWord {
    size_t x, y, row;
    std::vector<size_t> word;
};

// Symmetry dimension: dim of the largest alpha-invariant subspace inside the
// common kernel of all R(X, Y). Its annihilator is spanned by rows of R
// multiplied on the right by words in alpha; these are saturated breadth-first.
template <class F>
size_t symmetry_dimension(const Holonomy<F>& h, std::vector<HolonomyWord>* used = nullptr) {
    size_t N = h.alpha.empty() ? 0 : h.alpha[0].rows(), n = h.alpha.size();
    detail::RowSpan<F> span(N);
    std::deque<std::pair<Vec<F>, HolonomyWord>> queue;
    auto offer = [&](Vec<F> v, HolonomyWord w) {
        if (span.add(v)) {
            if (used) used->push_back(w);
            queue.emplace_back(std::move(v), std::move(w));
        }
    };
    for (size_t x = 0; x < n; ++x)
        for (size_t y = x + 1; y < n; ++y) {
            Matrix<F> R = h.R(x, y);
            for (size_t i = 0; i < N && span.rank() < N; ++i) offer(R.row(i), {x, y, i, {}});
        }
    while (!queue.empty() && span.rank() < N) {
        auto [v, w] = std::move(queue.front());
        queue.pop_front();
        for (size_t z = 0; z < n; ++z) {
            HolonomyWord w2 = w;
            w2.word.push_back(z);
            offer(Holonomy<F>::row_times(v, h.alpha[z]), w2);
        }
    }
    return N - span.rank();
}

inline Holonomy<Rational> specialize(const Holonomy<RatFunc>& h, const std::map<int, Rational>& at) {
    Holonomy<Rational> out;
    for (auto& a : h.alpha) out.alpha.push_back(specialize(a, at));
    out.k = h.k.template map_scalars<Rational>([&](const RatFunc& r) { return r.specialize(at); });
    return out;
}

inline uint32_t variables_of(const Holonomy<RatFunc>& h) {
    uint32_t mask = 0;
    for (auto& a : h.alpha)
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t j = 0; j < a.cols(); ++j) mask |= a(i, j).num().var_mask() | a(i, j).den().var_mask();
    for (size_t x = 0; x < h.k.dim(); ++x)
        for (size_t y = 0; y < h.k.dim(); ++y)
            for (auto& [c, v] : h.k.basis_bracket(x, y)) mask |= v.num().var_mask() | v.den().var_mask();
    return mask;
}

struct GenericSymmetry {
    size_t dim = 0;
    std::map<int, Rational> point;  // the specialization used to find the annihilator
    int attempts = 0;
};

// Generic symmetry dimension over Q(params), certified: the functionals found
// independent at a random point are rebuilt over Q(params); their common kernel
// K is checked to be alpha-invariant and killed by every R(X, Y), so dim K is a
// lower bound for the generic dimension, while the point gives the upper bound.
inline GenericSymmetry generic_symmetry_dimension(const Holonomy<RatFunc>& h, uint64_t seed = 1,
                                                  int max_attempts = 8) {
    uint32_t mask = variables_of(h);
    size_t N = h.alpha.empty() ? 0 : h.alpha[0].rows(), n = h.alpha.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> val(-40, 40);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        std::map<int, Rational> at;
        for (int v = 0; v < kMaxVars; ++v)
            if (mask & (1u << v)) at[v] = Rational(val(rng), std::uniform_int_distribution<int>(1, 7)(rng));
        std::vector<HolonomyWord> words;
        try {
            symmetry_dimension(specialize(h, at), &words);
        } catch (const PoleError&) {
            continue;
        } catch (const DivisionByZero&) {
            continue;
        }
        std::vector<Vec<RatFunc>> fs;
        for (auto& w : words) {
            Vec<RatFunc> f = h.R_row(w.x, w.y, w.row);
            for (size_t z : w.word) f = Holonomy<RatFunc>::row_times(f, h.alpha[z]);
            fs.push_back(std::move(f));
        }
        auto ker = fs.empty() ? std::vector<Vec<RatFunc>>{} : kernel_basis(Matrix<RatFunc>::from_rows(fs, N));
        if (fs.empty())
            for (size_t i = 0; i < N; ++i) ker.push_back(unit_vec<RatFunc>(N, i));
        if (ker.size() != N - fs.size()) continue;
        Matrix<RatFunc> Km = Matrix<RatFunc>::from_columns(ker, N);
        std::vector<Matrix<RatFunc>> aK;
        for (auto& a : h.alpha) aK.push_back(a * Km);
        bool ok = true;
        for (size_t x = 0; x < n && ok; ++x)
            for (size_t y = x + 1; y < n && ok; ++y) {
                Matrix<RatFunc> m = h.alpha[x] * aK[y] - h.alpha[y] * aK[x];
                for (auto& [c, v] : h.k.basis_bracket(x, y)) m = m - aK[size_t(c)].scaled(v);
                ok = m.is_zero();
            }
        for (size_t i = 0; i < fs.size() && ok; ++i)
            for (size_t z = 0; z < n && ok; ++z) ok = is_zero_vec(Holonomy<RatFunc>::row_times(fs[i], aK[z]));
        if (!ok) continue;  // the point was special
        return {ker.size(), at, attempt};
    }
    throw std::runtime_error("generic_symmetry_dimension: no certifying point found");
}

}  // namespace c3monge
