#pragma once

#include "field.hpp"

#include <optional>
#include <vector>

namespace c3monge {

template <class F>
using Vec = std::vector<F>;

template <class F>
bool is_zero_vec(const Vec<F>& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, F(0)) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static Matrix from_columns(const std::vector<Vec<F>>& cols, size_t rows) {
        Matrix m(rows, cols.size());
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }
    static Matrix from_rows(const std::vector<Vec<F>>& rows, size_t cols) {
        Matrix m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    F& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const F& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Vec<F> row(size_t i) const { return Vec<F>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
    Vec<F> col(size_t j) const {
        Vec<F> v(r_);
        for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    Vec<F> operator*(const Vec<F>& v) const {
        if (v.size() != c_) throw std::invalid_argument("matrix-vector size mismatch");
        Vec<F> out(r_, F(0));
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) {
                const F& x = (*this)(i, j);
                if (!x.is_zero() && !v[j].is_zero()) out[i] += x * v[j];
            }
        return out;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix size mismatch");
        Matrix m(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                const F& x = a(i, k);
                if (x.is_zero()) continue;
                for (size_t j = 0; j < b.c_; ++j)
                    if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    Matrix scaled(const F& s) const {
        Matrix m = *this;
        for (auto& x : m.a_) x *= s;
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    bool is_zero() const {
        for (auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<F> a_;
};

template <class F>
struct Echelon {
    Matrix<F> R;                // reduced row echelon form, rank rows kept
    std::vector<size_t> pivots; // pivot column of each row
};

// Gauss-Jordan with a cheapest-pivot rule; used for function fields.
template <class F>
Echelon<F> rref_generic(const Matrix<F>& M) {
    size_t m = M.rows(), n = M.cols();
    std::vector<Vec<F>> rows;
    rows.reserve(m);
    for (size_t i = 0; i < m; ++i) rows.push_back(M.row(i));
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t best = m;
        size_t bestc = 0;
        for (size_t i = r; i < m; ++i) {
            if (rows[i][c].is_zero()) continue;
            size_t cx = complexity(rows[i][c]);
            if (best == m || cx < bestc) {
                best = i;
                bestc = cx;
            }
        }
        if (best == m) continue;
        std::swap(rows[r], rows[best]);
        F inv = rows[r][c].inv();
        for (size_t j = c; j < n; ++j)
            if (!rows[r][j].is_zero()) rows[r][j] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            F f = rows[i][c];
            for (size_t j = c; j < n; ++j)
                if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    Echelon<F> e;
    e.R = Matrix<F>(r, n);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) e.R(i, j) = rows[i][j];
    e.pivots = piv;
    return e;
}

// Fraction-free (Bareiss) forward elimination over Z after clearing
// denominators row by row, then rational back substitution on the pivot rows.
inline Echelon<Rational> rref_bareiss(const Matrix<Rational>& M) {
    size_t m = M.rows(), n = M.cols();
    std::vector<std::vector<mpz_class>> A(m, std::vector<mpz_class>(n));
    for (size_t i = 0; i < m; ++i) {
        mpz_class l = 1;
        for (size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M(i, j).raw().get_den_mpz_t());
        for (size_t j = 0; j < n; ++j) A[i][j] = M(i, j).raw().get_num() * (l / M(i, j).raw().get_den());
    }
    std::vector<size_t> piv;
    mpz_class prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = m;
        for (size_t i = r; i < m; ++i)
            if (A[i][c] != 0) {
                p = i;
                break;
            }
        if (p == m) continue;
        std::swap(A[r], A[p]);
        for (size_t i = r + 1; i < m; ++i) {
            for (size_t j = c + 1; j < n; ++j) {
                mpz_class v = A[r][c] * A[i][j] - A[i][c] * A[r][j];
                mpz_divexact(A[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            A[i][c] = 0;
        }
        prev = A[r][c];
        piv.push_back(c);
        ++r;
    }
    std::vector<Vec<Rational>> rows(r, Vec<Rational>(n));
    for (size_t i = 0; i < r; ++i) {
        mpz_class p = A[i][piv[i]];
        for (size_t j = 0; j < n; ++j)
            if (A[i][j] != 0) rows[i][j] = Rational(mpq_class(A[i][j], p));
    }
    for (size_t k = r; k-- > 0;) {
        size_t c = piv[k];
        for (size_t i = 0; i < k; ++i) {
            if (rows[i][c].is_zero()) continue;
            Rational f = rows[i][c];
            for (size_t j = c; j < n; ++j)
                if (!rows[k][j].is_zero()) rows[i][j] -= f * rows[k][j];
        }
    }
    Echelon<Rational> e;
    e.R = Matrix<Rational>(r, n);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) e.R(i, j) = rows[i][j];
    e.pivots = piv;
    return e;
}

template <class F>
Echelon<F> rref(const Matrix<F>& M) {
    if constexpr (std::is_same_v<F, Rational>)
        return rref_bareiss(M);
    else
        return rref_generic(M);
}

template <class F>
size_t rank(const Matrix<F>& M) {
    return rref(M).pivots.size();
}

template <class F>
std::vector<Vec<F>> kernel_from_rref(const Echelon<F>& e, size_t n) {
    std::vector<bool> is_piv(n, false);
    for (auto p : e.pivots) is_piv[p] = true;
    std::vector<Vec<F>> out;
    for (size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        Vec<F> v(n, F(0));
        v[f] = F(1);
        for (size_t i = 0; i < e.pivots.size(); ++i)
            if (!e.R(i, f).is_zero()) v[e.pivots[i]] = -e.R(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

template <class F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& M) {
    return kernel_from_rref(rref(M), M.cols());
}

template <class F>
struct LinearSolution {
    Vec<F> x;
    std::vector<Vec<F>> kernel;
};

template <class F>
std::optional<LinearSolution<F>> solve_linear(const Matrix<F>& M, const Vec<F>& b) {
    if (b.size() != M.rows()) throw std::invalid_argument("solve_linear: size mismatch");
    size_t n = M.cols();
    Matrix<F> A(M.rows(), n + 1);
    for (size_t i = 0; i < M.rows(); ++i) {
        for (size_t j = 0; j < n; ++j) A(i, j) = M(i, j);
        A(i, n) = b[i];
    }
    auto e = rref(A);
    if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
    LinearSolution<F> s;
    s.x.assign(n, F(0));
    for (size_t i = 0; i < e.pivots.size(); ++i) s.x[e.pivots[i]] = e.R(i, n);
    Echelon<F> em;
    em.pivots = e.pivots;
    em.R = Matrix<F>(e.pivots.size(), n);
    for (size_t i = 0; i < e.pivots.size(); ++i)
        for (size_t j = 0; j < n; ++j) em.R(i, j) = e.R(i, j);
    s.kernel = kernel_from_rref(em, n);
    return s;
}

// Solver for many right-hand sides against one matrix: A x = b.
template <class F>
class LinearSolver {
public:
    LinearSolver() = default;
    explicit LinearSolver(const Matrix<F>& A) : m_(A.rows()), n_(A.cols()) {
        // rref of [A | I] records the row operations
        Matrix<F> aug(m_, n_ + m_);
        for (size_t i = 0; i < m_; ++i) {
            for (size_t j = 0; j < n_; ++j) aug(i, j) = A(i, j);
            aug(i, n_ + i) = F(1);
        }
        auto e = rref(aug);
        for (size_t i = 0; i < e.pivots.size(); ++i) {
            if (e.pivots[i] >= n_) {
                // rows with pivot in the identity part encode consistency conditions
                Vec<F> c(m_);
                for (size_t j = 0; j < m_; ++j) c[j] = e.R(i, n_ + j);
                checks_.push_back(std::move(c));
            } else {
                piv_.push_back(e.pivots[i]);
                Vec<F> c(m_);
                for (size_t j = 0; j < m_; ++j) c[j] = e.R(i, n_ + j);
                ops_.push_back(std::move(c));
                Vec<F> r(n_);
                for (size_t j = 0; j < n_; ++j) r[j] = e.R(i, j);
                red_.push_back(std::move(r));
            }
        }
        Echelon<F> em;
        em.pivots = piv_;
        em.R = Matrix<F>(piv_.size(), n_);
        for (size_t i = 0; i < piv_.size(); ++i)
            for (size_t j = 0; j < n_; ++j) em.R(i, j) = red_[i][j];
        kernel_ = kernel_from_rref(em, n_);
    }
    size_t rank() const { return piv_.size(); }
    const std::vector<Vec<F>>& kernel() const { return kernel_; }
    const std::vector<size_t>& pivots() const { return piv_; }

    std::optional<Vec<F>> solve(const Vec<F>& b) const {
        for (auto& c : checks_)
            if (!dot(c, b).is_zero()) return std::nullopt;
        Vec<F> x(n_, F(0));
        for (size_t i = 0; i < piv_.size(); ++i) x[piv_[i]] = dot(ops_[i], b);
        return x;
    }

private:
    size_t m_ = 0, n_ = 0;
    std::vector<size_t> piv_;
    std::vector<Vec<F>> ops_, red_, checks_, kernel_;

    static F dot(const Vec<F>& a, const Vec<F>& b) {
        F s(0);
        for (size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
        return s;
    }
};

template <class F>
Matrix<F> inverse(const Matrix<F>& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse of non-square matrix");
    size_t n = A.rows();
    Matrix<F> aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = F(1);
    }
    auto e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
    Matrix<F> inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
    return inv;
}

inline Matrix<Rational> specialize(const Matrix<RatFunc>& M, const std::map<int, Rational>& vals) {
    Matrix<Rational> out(M.rows(), M.cols());
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j) out(i, j) = M(i, j).specialize(vals);
    return out;
}
inline Matrix<Rational> specialize(const Matrix<Rational>& M, const std::map<int, Rational>&) { return M; }

template <class F>
Vec<Rational> specialize(const Vec<F>& v, const std::map<int, Rational>& vals) {
    Vec<Rational> out;
    out.reserve(v.size());
    for (auto& x : v) out.push_back(specialize(x, vals));
    return out;
}

// Lift a rational vector or matrix into Q(params).
inline Vec<RatFunc> lift(const Vec<Rational>& v) {
    Vec<RatFunc> out;
    out.reserve(v.size());
    for (auto& x : v) out.emplace_back(x);
    return out;
}

}  // namespace c3monge
