#pragma once

#include "subalgebra.hpp"

namespace c3monge {

// Tanaka prolongation of a negatively graded algebra m. Elements of degree
// k >= 0 are stored as their values on the basis of m, written in "global"
// coordinates: the basis of m followed by the bases of the components of
// degree 0, 1, ... computed so far.
class Prolongation {
public:
    // g0: optional degree-0 part given as derivation matrices of m; if empty,
    // all grading-preserving derivations are used.
    Prolongation(const LieAlgebra<Rational>& m, int max_degree,
                 std::optional<std::vector<Matrix<Rational>>> g0 = std::nullopt)
        : m_(m) {
        nm_ = m.dim();
        for (size_t i = 0; i < nm_; ++i)
            if (m.degree(i) >= 0) throw std::invalid_argument("prolongation: m must be negatively graded");
        if (max_degree < 0) throw std::invalid_argument("prolongation: max_degree must be >= 0");
        check_generated();
        for (int k = 0; k <= max_degree; ++k) {
            Component c;
            c.offset = total_dim();
            if (k == 0 && g0) {
                for (auto& D : *g0) {
                    if (D.rows() != nm_ || D.cols() != nm_) throw std::invalid_argument("bad derivation size");
                    Elem e(nm_, Vec<Rational>(c.offset, Rational(0)));
                    for (size_t x = 0; x < nm_; ++x)
                        for (size_t y = 0; y < nm_; ++y) e[x][y] = D(y, x);
                    c.basis.push_back(std::move(e));
                }
                if (!check_derivations(c.basis)) throw std::invalid_argument("degree-0 data are not derivations");
            } else {
                c.basis = solve_degree(k);
            }
            if (c.basis.empty()) break;
            // solver to express degree-k value maps in the component basis
            std::vector<Vec<Rational>> cols;
            for (auto& e : c.basis) cols.push_back(flatten(e));
            c.solver = std::make_shared<LinearSolver<Rational>>(
                Matrix<Rational>::from_columns(cols, cols.front().size()));
            comps_.push_back(std::move(c));
        }
    }

    size_t total_dim() const {
        size_t n = nm_;
        for (auto& c : comps_) n += c.basis.size();
        return n;
    }
    std::vector<size_t> dims_nonnegative() const {
        std::vector<size_t> d;
        for (auto& c : comps_) d.push_back(c.basis.size());
        return d;
    }
    int degree_of(size_t idx) const {
        if (idx < nm_) return m_.degree(idx);
        for (size_t k = 0; k < comps_.size(); ++k)
            if (idx < comps_[k].offset + comps_[k].basis.size()) return static_cast<int>(k);
        throw std::out_of_range("prolongation index");
    }

    // bracket of two vectors in global coordinates
    Vec<Rational> bracket(const Vec<Rational>& a, const Vec<Rational>& b) const {
        size_t n = total_dim();
        Vec<Rational> out(n, Rational(0));
        for (size_t i = 0; i < n; ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b[j].is_zero()) continue;
                Vec<Rational> c = bracket_basis(i, j);
                Rational s = a[i] * b[j];
                for (size_t k = 0; k < c.size(); ++k)
                    if (!c[k].is_zero()) out[k] += s * c[k];
            }
        }
        return out;
    }

    Vec<Rational> bracket_basis(size_t i, size_t j) const {
        auto key = std::make_pair(i, j);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Vec<Rational> r = compute_bracket(i, j);
        cache_[key] = r;
        return r;
    }

    // value of the degree>=0 basis element idx on the m-basis vector x
    Vec<Rational> apply(size_t idx, size_t x) const {
        auto [k, a] = locate(idx);
        return pad(comps_[k].basis[a][x]);
    }

    // express a value map (values on m, global coordinates) as an element of degree k
    std::optional<Vec<Rational>> element_from_values(int k, const std::vector<Vec<Rational>>& vals) const {
        if (k < 0 || size_t(k) >= comps_.size()) return std::nullopt;
        const auto& c = comps_[k];
        Vec<Rational> flat;
        for (auto& v : vals) {
            Vec<Rational> w = pad(v);
            w.resize(c.offset, Rational(0));
            flat.insert(flat.end(), w.begin(), w.end());
        }
        auto x = c.solver->solve(flat);
        if (!x) return std::nullopt;
        Vec<Rational> out(total_dim(), Rational(0));
        for (size_t a = 0; a < x->size(); ++a) out[c.offset + a] = (*x)[a];
        return out;
    }

    LieAlgebra<Rational> algebra() const {
        size_t n = total_dim();
        std::vector<std::string> labels;
        std::vector<int> degs;
        for (size_t i = 0; i < nm_; ++i) {
            labels.push_back(m_.labels()[i]);
            degs.push_back(m_.degree(i));
        }
        for (size_t k = 0; k < comps_.size(); ++k)
            for (size_t a = 0; a < comps_[k].basis.size(); ++a) {
                labels.push_back("p" + std::to_string(k) + "." + std::to_string(a));
                degs.push_back(static_cast<int>(k));
            }
        LieAlgebra<Rational> L(labels, degs);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) L.set_bracket(i, j, bracket_basis(i, j));
        return L;
    }

    size_t m_dim() const { return nm_; }

private:
    using Elem = std::vector<Vec<Rational>>;  // value on each m basis vector
    struct Component {
        size_t offset = 0;
        std::vector<Elem> basis;
        std::shared_ptr<LinearSolver<Rational>> solver;
    };

    LieAlgebra<Rational> m_;
    size_t nm_ = 0;
    std::vector<Component> comps_;
    mutable std::map<std::pair<size_t, size_t>, Vec<Rational>> cache_;

    std::pair<size_t, size_t> locate(size_t idx) const {
        for (size_t k = 0; k < comps_.size(); ++k)
            if (idx >= comps_[k].offset && idx < comps_[k].offset + comps_[k].basis.size())
                return {k, idx - comps_[k].offset};
        throw std::out_of_range("not a nonnegative-degree index");
    }
    Vec<Rational> pad(Vec<Rational> v) const {
        v.resize(total_dim(), Rational(0));
        return v;
    }
    static Vec<Rational> flatten(const Elem& e) {
        Vec<Rational> f;
        for (auto& v : e) f.insert(f.end(), v.begin(), v.end());
        return f;
    }

    void check_generated() const {
        std::vector<Vec<Rational>> gens;
        for (size_t i = 0; i < nm_; ++i)
            if (m_.degree(i) == -1) gens.push_back(m_.unit(i));
        if (subalgebra_closure(m_, gens).dim() != nm_)
            throw std::invalid_argument("prolongation: m is not generated in degree -1");
    }

    // [global i, global j] where some components may be uncomputed only as results
    Vec<Rational> compute_bracket(size_t i, size_t j) const {
        size_t n = total_dim();
        if (i < nm_ && j < nm_) {
            Vec<Rational> v = m_.bracket_basis(i, j);
            return pad(v);
        }
        if (i >= nm_ && j < nm_) return apply(i, j);
        if (i < nm_ && j >= nm_) {
            Vec<Rational> v = apply(j, i);
            for (auto& x : v) x = -x;
            return v;
        }
        // both of nonnegative degree: [u, v](x) = [u(x), v] + [u, v(x)]
        int k = degree_of(i) + degree_of(j);
        Elem vals;
        Vec<Rational> ei(n, Rational(0)), ej(n, Rational(0));
        ei[i] = 1;
        ej[j] = 1;
        for (size_t x = 0; x < nm_; ++x) {
            Vec<Rational> a = bracket(apply(i, x), ej);
            Vec<Rational> b = bracket(ei, apply(j, x));
            for (size_t t = 0; t < n; ++t) a[t] += b[t];
            vals.push_back(std::move(a));
        }
        if (size_t(k) >= comps_.size()) {
            for (auto& v : vals)
                if (!is_zero_vec(v)) throw std::logic_error("prolongation truncated: bracket leaves computed range");
            return Vec<Rational>(n, Rational(0));
        }
        auto e = element_from_values(k, vals);
        if (!e) throw std::logic_error("prolongation: bracket is not in the computed component");
        return *e;
    }

    bool check_derivations(const std::vector<Elem>& basis) const {
        for (auto& e : basis)
            for (size_t x = 0; x < nm_; ++x)
                for (size_t y = x + 1; y < nm_; ++y) {
                    Vec<Rational> xy = m_.bracket_basis(x, y);
                    Vec<Rational> lhs(nm_, Rational(0));
                    for (size_t w = 0; w < nm_; ++w)
                        if (!xy[w].is_zero())
                            for (size_t t = 0; t < nm_; ++t) lhs[t] += xy[w] * e[w][t];
                    Vec<Rational> ex(e[x].begin(), e[x].begin() + nm_), ey(e[y].begin(), e[y].begin() + nm_);
                    Vec<Rational> r = m_.bracket(ex, m_.unit(y));
                    Vec<Rational> s = m_.bracket(m_.unit(x), ey);
                    for (size_t t = 0; t < nm_; ++t)
                        if (lhs[t] != r[t] + s[t]) return false;
                }
        return true;
    }

    // degree-k maps u: m -> (graded) with u([x,y]) = [u x, y] + [x, u y]
    std::vector<Elem> solve_degree(int k) const {
        size_t n = total_dim();  // coordinates available for values
        // unknowns: (x, z) with deg z = deg x + k
        std::vector<std::pair<size_t, size_t>> unk;
        for (size_t x = 0; x < nm_; ++x)
            for (size_t z = 0; z < n; ++z)
                if (degree_of(z) == m_.degree(x) + k) unk.emplace_back(x, z);
        if (unk.empty()) return {};
        std::vector<std::vector<std::pair<size_t, Rational>>> colsparse(unk.size());
        size_t npairs = nm_ * (nm_ - 1) / 2;
        auto pair_index = [&](size_t x, size_t y) {
            // x < y
            return x * nm_ - x * (x + 1) / 2 + (y - x - 1);
        };
        for (size_t u = 0; u < unk.size(); ++u) {
            auto [x, z] = unk[u];
            Vec<Rational> ez(n, Rational(0));
            ez[z] = 1;
            auto& col = colsparse[u];
            for (size_t a = 0; a < nm_; ++a)
                for (size_t b = a + 1; b < nm_; ++b) {
                    size_t row0 = pair_index(a, b) * n;
                    // + u([a,b]) contribution through coefficient of x in [a,b]
                    const Vec<Rational> ab = m_.bracket_basis(a, b);
                    if (!ab[x].is_zero()) col.emplace_back(row0 + z, ab[x]);
                    if (a == x) {
                        Vec<Rational> em(n, Rational(0));
                        em[b] = 1;
                        Vec<Rational> v = bracket(ez, em);
                        for (size_t t = 0; t < n; ++t)
                            if (!v[t].is_zero()) col.emplace_back(row0 + t, -v[t]);
                    }
                    if (b == x) {
                        Vec<Rational> em(n, Rational(0));
                        em[a] = 1;
                        Vec<Rational> v = bracket(em, ez);
                        for (size_t t = 0; t < n; ++t)
                            if (!v[t].is_zero()) col.emplace_back(row0 + t, -v[t]);
                    }
                }
        }
        Matrix<Rational> A(npairs * n, unk.size());
        for (size_t u = 0; u < unk.size(); ++u)
            for (auto& [r, v] : colsparse[u]) A(r, u) += v;
        // drop zero rows to keep the elimination small
        std::vector<Vec<Rational>> rows;
        for (size_t r = 0; r < A.rows(); ++r) {
            Vec<Rational> row = A.row(r);
            if (!is_zero_vec(row)) rows.push_back(std::move(row));
        }
        std::vector<Vec<Rational>> ker;
        if (rows.empty()) {
            for (size_t u = 0; u < unk.size(); ++u) ker.push_back(unit_vec<Rational>(unk.size(), u));
        } else {
            ker = kernel_basis(Matrix<Rational>::from_rows(rows, unk.size()));
        }
        std::vector<Elem> out;
        for (auto& v : ker) {
            Elem e(nm_, Vec<Rational>(n, Rational(0)));
            for (size_t u = 0; u < unk.size(); ++u) e[unk[u].first][unk[u].second] = v[u];
            out.push_back(std::move(e));
        }
        return out;
    }
};

inline LieAlgebra<Rational> tanaka_prolongation(const LieAlgebra<Rational>& m, int max_degree = 3) {
    return Prolongation(m, max_degree).algebra();
}

}  // namespace c3monge
