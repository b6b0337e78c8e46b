#pragma once

#include "lie_algebra.hpp"

#include <memory>

namespace c3monge {

// Subspace of an ambient algebra stored as basis columns.
template <class F>
struct Subspace {
    size_t ambient_dim = 0;
    std::vector<Vec<F>> basis;

    Subspace() = default;
    Subspace(size_t n, std::vector<Vec<F>> b) : ambient_dim(n), basis(std::move(b)) {}

    size_t dim() const { return basis.size(); }
    Matrix<F> matrix() const { return Matrix<F>::from_columns(basis, ambient_dim); }

    // coordinates of v in the basis, or nullopt if v is outside the span
    std::optional<Vec<F>> coords(const Vec<F>& v) const {
        if (basis.empty()) return is_zero_vec(v) ? std::optional<Vec<F>>(Vec<F>{}) : std::nullopt;
        if (!solver_) solver_ = std::make_shared<LinearSolver<F>>(matrix());
        return solver_->solve(v);
    }
    bool contains(const Vec<F>& v) const { return coords(v).has_value(); }

    // reduced echelon basis, for equality tests
    Matrix<F> canonical() const {
        if (basis.empty()) return Matrix<F>(0, ambient_dim);
        return rref(Matrix<F>::from_rows(basis, ambient_dim)).R;
    }
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_dim == b.ambient_dim && a.canonical() == b.canonical();
    }

    static Subspace span(size_t n, const std::vector<Vec<F>>& vs) {
        Subspace s(n, {});
        if (vs.empty()) return s;
        auto e = rref(Matrix<F>::from_rows(vs, n));
        for (size_t i = 0; i < e.pivots.size(); ++i) s.basis.push_back(e.R.row(i));
        return s;
    }

private:
    mutable std::shared_ptr<LinearSolver<F>> solver_;
};

template <class F>
bool is_subalgebra(const LieAlgebra<F>& L, const std::vector<Vec<F>>& vs) {
    Subspace<F> s(L.dim(), vs);
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (!s.contains(L.bracket(vs[i], vs[j]))) return false;
    return true;
}

template <class F>
bool is_homogeneous(const LieAlgebra<F>& L, const Vec<F>& v) {
    std::optional<int> d;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (d && *d != L.degree(i)) return false;
        d = L.degree(i);
    }
    return true;
}

template <class F>
bool is_graded_subalgebra(const LieAlgebra<F>& L, const std::vector<Vec<F>>& vs) {
    for (auto& v : vs)
        if (!is_homogeneous(L, v)) return false;
    if (rank(Matrix<F>::from_columns(vs, L.dim())) != vs.size()) return false;
    return is_subalgebra(L, vs);
}

// smallest subalgebra containing vs
template <class F>
Subspace<F> subalgebra_closure(const LieAlgebra<F>& L, const std::vector<Vec<F>>& vs) {
    Subspace<F> s = Subspace<F>::span(L.dim(), vs);
    while (true) {
        std::vector<Vec<F>> all = s.basis;
        for (size_t i = 0; i < s.dim(); ++i)
            for (size_t j = i + 1; j < s.dim(); ++j) all.push_back(L.bracket(s.basis[i], s.basis[j]));
        Subspace<F> t = Subspace<F>::span(L.dim(), all);
        if (t.dim() == s.dim()) return s;
        s = std::move(t);
    }
}

// matrix of ad_Z on an ad_Z-invariant subspace, in the subspace basis
template <class F>
Matrix<F> adjoint_action(const LieAlgebra<F>& L, const Vec<F>& Z, const Subspace<F>& S) {
    Matrix<F> m(S.dim(), S.dim());
    for (size_t j = 0; j < S.dim(); ++j) {
        auto c = S.coords(L.bracket(Z, S.basis[j]));
        if (!c) throw std::invalid_argument("adjoint_action: subspace is not invariant");
        for (size_t i = 0; i < S.dim(); ++i) m(i, j) = (*c)[i];
    }
    return m;
}

}  // namespace c3monge
