#pragma once

#include "../cohomology/complex.hpp"

namespace c3monge {

// Graded nilpotent DGLA of filtered deformations: L^p = C^{p+1}(k, k) in
// internal weights >= 1, optionally restricted to the blocks accepted by a
// torus filter. Elements are cochains; the Graded degree is p = cochain degree - 1.
template <class F>
class Dgla {
public:
    using Filter = typename CochainComplex<F>::Filter;

    Dgla(const LieAlgebra<F>& k, std::vector<Weight> weights, Filter invariant = {})
        : cx_(k, std::move(weights), 1, 3, [invariant](const Weight& w) {
              return w[0] >= 1 && (!invariant || invariant(w));
          }) {}

    const CochainComplex<F>& complex() const { return cx_; }
    const CochainAlgebra<F>& ops() const { return cx_.ops(); }
    const LieAlgebra<F>& algebra() const { return cx_.algebra(); }
    size_t dim() const { return algebra().dim(); }

    Cochain<F> d(const Cochain<F>& x) const { return ops().d(x); }
    Cochain<F> bracket(const Cochain<F>& x, const Cochain<F>& y) const { return ops().bracket(x, y); }
    Cochain<F> delta(const Cochain<F>& x) const { return cx_.delta(x); }

    BettiTable<F> betti(bool with_reps = true) const { return cx_.betti(1, 100, with_reps); }

    // dim H^0 of the DGLA, i.e. H^1(k, k) in positive weights
    size_t h0() const {
        size_t n = 0;
        for (auto& w : cx_.blocks(1)) n += cx_.split(1, w).nH;
        return n;
    }

    // d x + 1/2 [x, x]
    Cochain<F> mc_residual(const Cochain<F>& x) const {
        Cochain<F> r = d(x);
        r += bracket(x, x).scaled(F(Rational(1, 2)));
        return r;
    }
    bool is_mc(const Cochain<F>& x) const { return mc_residual(x).is_zero(); }

    // Phi(x) = x + 1/2 delta [x, x]
    Cochain<F> phi(const Cochain<F>& x) const {
        return x + delta(bracket(x, x)).scaled(F(Rational(1, 2)));
    }
    // solves x + 1/2 delta [x, x] = y; weights strictly increase so the
    // fixed-point iteration stabilizes after at most (max weight) steps
    Cochain<F> phi_inverse(const Cochain<F>& y) const {
        Cochain<F> x = y;
        for (int it = 0; it < 64; ++it) {
            Cochain<F> nx = y - delta(bracket(x, x)).scaled(F(Rational(1, 2)));
            if (nx == x) return x;
            x = std::move(nx);
        }
        throw std::logic_error("phi_inverse did not stabilize");
    }

    // exp of a nilpotent 1-cochain as an endomorphism of k
    Matrix<F> exp_matrix(const Cochain<F>& y) const {
        Matrix<F> Y = ops().to_matrix(y);
        Matrix<F> out = Matrix<F>::identity(dim()), term = out;
        for (int n = 1; n <= int(dim()) + 1; ++n) {
            term = (term * Y).scaled(F(Rational(1, n)));
            if (term.is_zero()) return out;
            out = out + term;
        }
        throw std::invalid_argument("gauge element is not nilpotent");
    }
    // log of a unipotent endomorphism as a 1-cochain
    Cochain<F> log_cochain(const Matrix<F>& U) const {
        Matrix<F> N = U - Matrix<F>::identity(dim());
        Matrix<F> out(dim(), dim()), pw = N;
        for (int n = 1; n <= int(dim()) + 1; ++n) {
            if (pw.is_zero()) return ops().from_matrix(out);
            Rational c(n % 2 ? 1 : -1, n);
            out = out + pw.scaled(F(c));
            pw = pw * N;
        }
        throw std::invalid_argument("endomorphism is not unipotent");
    }
    // BCH(a, b) = log(exp a exp b)
    Cochain<F> bch(const Cochain<F>& a, const Cochain<F>& b) const { return log_cochain(exp_matrix(a) * exp_matrix(b)); }

    // bracket transported by an automorphism of the underlying space: (u.m)(a,b) = u m(u^-1 a, u^-1 b)
    Cochain<F> transport(const Matrix<F>& u, const Cochain<F>& x) const {
        LieAlgebra<F> L = ops().deformed(x);
        Matrix<F> ui = inverse(u);
        size_t n = dim();
        std::vector<Vec<F>> cols(n);
        for (size_t a = 0; a < n; ++a) cols[a] = ui.col(a);
        Cochain<F> out(2);
        Cochain<F> mu = ops().mu();
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b) {
                Vec<F> v = u * L.bracket(cols[a], cols[b]);
                for (size_t k = 0; k < n; ++k) out.add(make_key((1u << a) | (1u << b), k), v[k]);
            }
        return out - mu;
    }

    // e^y * x: the bracket mu + x transported by exp(y), minus mu
    Cochain<F> gauge_act(const Cochain<F>& y, const Cochain<F>& x) const { return transport(exp_matrix(y), x); }

    // the same action from the series e^{ad y} x - (e^{ad y} - 1)/ad y (dy)
    Cochain<F> gauge_act_series(const Cochain<F>& y, const Cochain<F>& x) const {
        Cochain<F> out = x, t = x, s = d(y).scaled(F(-1));
        out += s;
        for (int n = 1; n < 32; ++n) {
            t = bracket(y, t).scaled(F(Rational(1, n)));
            s = bracket(y, s).scaled(F(Rational(1, n + 1)));
            if (t.is_zero() && s.is_zero()) return out;
            out += t;
            out += s;
        }
        throw std::logic_error("gauge series did not terminate");
    }

    // Returns y with delta(e^y * x) = 0, built weight by weight.
    Cochain<F> gauge_normalizer(const Cochain<F>& x) const {
        Matrix<F> U = Matrix<F>::identity(dim());
        Cochain<F> cur = x;
        for (int it = 0; it < 64; ++it) {
            Cochain<F> dl = delta(cur);
            if (dl.is_zero()) return log_cochain(U);
            // lowest weight part of delta(cur)
            int lo = 1 << 20;
            for (auto& [k, v] : dl.c) lo = std::min(lo, ops().internal_weight(k));
            Cochain<F> yi(1);
            for (auto& [k, v] : dl.c)
                if (ops().internal_weight(k) == lo) yi.add(k, v);
            Matrix<F> Ui = exp_matrix(yi);
            cur = transport(Ui, cur);
            U = Ui * U;
        }
        throw std::logic_error("gauge normalization did not stabilize");
    }

    // H-coordinates (slot order of the complex blocks) of a cocycle in L^1
    Vec<F> h_coords(const Cochain<F>& c) const {
        Vec<F> out;
        for (auto& w : cx_.blocks(2)) {
            const auto& s = cx_.split(2, w);
            if (s.nH == 0) continue;
            Vec<F> hc = s.h_coords(cx_.to_block(c, w));
            out.insert(out.end(), hc.begin(), hc.end());
        }
        return out;
    }
    // harmonic representatives of H^1 of the DGLA, in slot order, with weights
    std::vector<std::pair<Weight, Cochain<F>>> h1_basis() const {
        std::vector<std::pair<Weight, Cochain<F>>> out;
        for (auto& w : cx_.blocks(2)) {
            const auto& s = cx_.split(2, w);
            for (size_t j = 0; j < s.nH; ++j) out.emplace_back(w, cx_.from_block(2, w, s.h_vector(j)));
        }
        return out;
    }

    // pi(x) = Phi(e^{eta(x)} * x), as H coordinates
    Vec<F> pi(const Cochain<F>& x) const {
        Cochain<F> y = gauge_normalizer(x);
        return h_coords(phi(gauge_act(y, x)));
    }

    LieAlgebra<F> deformed_algebra(const Cochain<F>& x) const {
        if (!is_mc(x)) throw std::invalid_argument("deformed_algebra: cochain is not Maurer-Cartan");
        return ops().deformed(x, true);
    }

private:
    CochainComplex<F> cx_;
};

}  // namespace c3monge
