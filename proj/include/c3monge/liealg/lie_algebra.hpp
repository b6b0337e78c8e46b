#pragma once

#include "../exactmath/matrix.hpp"

#include <json.hpp>

#include <functional>

namespace c3monge {

template <class F>
using SparseVec = std::vector<std::pair<int, F>>;

template <class F>
Vec<F> unit_vec(size_t n, size_t i) {
    Vec<F> v(n, F(0));
    v[i] = F(1);
    return v;
}

// Lie algebra by structure constants on a fixed basis. Each basis vector
// carries an integer degree; for a graded algebra brackets are degree
// additive, for a filtered one [e_i, e_j] only involves basis vectors of
// degree >= deg e_i + deg e_j.
template <class F>
class LieAlgebra {
public:
    LieAlgebra() = default;
    LieAlgebra(std::vector<std::string> labels, std::vector<int> degrees, bool filtered = false)
        : labels_(std::move(labels)), deg_(std::move(degrees)), filtered_(filtered) {
        if (labels_.size() != deg_.size()) throw std::invalid_argument("labels/degrees size mismatch");
        c_.assign(dim() * dim(), {});
    }

    size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& degrees() const { return deg_; }
    int degree(size_t i) const { return deg_[i]; }
    bool filtered() const { return filtered_; }
    void set_filtered(bool f) { filtered_ = f; }

    int index_of(const std::string& label) const {
        for (size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return static_cast<int>(i);
        throw std::out_of_range("no basis vector labelled " + label);
    }
    std::vector<int> basis_of_degree(int d) const {
        std::vector<int> out;
        for (size_t i = 0; i < dim(); ++i)
            if (deg_[i] == d) out.push_back(static_cast<int>(i));
        return out;
    }
    int min_degree() const { return *std::min_element(deg_.begin(), deg_.end()); }
    int max_degree() const { return *std::max_element(deg_.begin(), deg_.end()); }

    void set_bracket(size_t i, size_t j, const Vec<F>& v) {
        if (i == j) {
            if (!is_zero_vec(v)) throw std::invalid_argument("[x, x] must vanish");
            return;
        }
        SparseVec<F> s, t;
        for (size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) {
                s.emplace_back(static_cast<int>(k), v[k]);
                t.emplace_back(static_cast<int>(k), -v[k]);
            }
        c_[i * dim() + j] = std::move(s);
        c_[j * dim() + i] = std::move(t);
    }
    const SparseVec<F>& basis_bracket(size_t i, size_t j) const { return c_[i * dim() + j]; }

    Vec<F> unit(size_t i) const { return unit_vec<F>(dim(), i); }

    Vec<F> bracket(const Vec<F>& x, const Vec<F>& y) const {
        Vec<F> out(dim(), F(0));
        for (size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero() || i == j) continue;
                const auto& s = c_[i * dim() + j];
                if (s.empty()) continue;
                F xy = x[i] * y[j];
                for (auto& [k, v] : s) out[k] += xy * v;
            }
        }
        return out;
    }
    Vec<F> bracket_basis(size_t i, size_t j) const {
        Vec<F> out(dim(), F(0));
        for (auto& [k, v] : c_[i * dim() + j]) out[k] = v;
        return out;
    }

    Matrix<F> ad(const Vec<F>& x) const {
        Matrix<F> m(dim(), dim());
        for (size_t j = 0; j < dim(); ++j) {
            Vec<F> c = bracket(x, unit(j));
            for (size_t i = 0; i < dim(); ++i) m(i, j) = c[i];
        }
        return m;
    }

    // truncate brackets to their degree-additive parts
    LieAlgebra associated_graded() const {
        LieAlgebra g(labels_, deg_, false);
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = i + 1; j < dim(); ++j) {
                Vec<F> v(dim(), F(0));
                for (auto& [k, x] : c_[i * dim() + j])
                    if (deg_[k] == deg_[i] + deg_[j]) v[k] = x;
                g.set_bracket(i, j, v);
            }
        return g;
    }

    template <class G>
    LieAlgebra<G> map_scalars(const std::function<G(const F&)>& f) const {
        LieAlgebra<G> out(labels_, deg_, filtered_);
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = i + 1; j < dim(); ++j) {
                Vec<G> v(dim(), G(0));
                for (auto& [k, x] : c_[i * dim() + j]) v[k] = f(x);
                out.set_bracket(i, j, v);
            }
        return out;
    }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        if (a.labels_ != b.labels_ || a.deg_ != b.deg_ || a.filtered_ != b.filtered_) return false;
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].size() != b.c_[i].size()) return false;
            for (size_t k = 0; k < a.c_[i].size(); ++k)
                if (a.c_[i][k].first != b.c_[i][k].first || a.c_[i][k].second != b.c_[i][k].second) return false;
        }
        return true;
    }

private:
    std::vector<std::string> labels_;
    std::vector<int> deg_;
    bool filtered_ = false;
    std::vector<SparseVec<F>> c_;
};

template <class F>
bool check_jacobi(const LieAlgebra<F>& L) {
    size_t n = L.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Vec<F> ij = L.bracket_basis(i, j);
            for (size_t k = j + 1; k < n; ++k) {
                Vec<F> s = L.bracket(ij, L.unit(k));
                Vec<F> a = L.bracket(L.bracket_basis(j, k), L.unit(i));
                Vec<F> b = L.bracket(L.bracket_basis(k, i), L.unit(j));
                for (size_t m = 0; m < n; ++m)
                    if (!(s[m] + a[m] + b[m]).is_zero()) return false;
            }
        }
    return true;
}

// graded: brackets degree additive; filtered: brackets raise filtration
template <class F>
bool check_grading(const LieAlgebra<F>& L) {
    for (size_t i = 0; i < L.dim(); ++i)
        for (size_t j = 0; j < L.dim(); ++j)
            for (auto& [k, v] : L.basis_bracket(i, j)) {
                int want = L.degree(i) + L.degree(j);
                if (L.filtered() ? L.degree(k) < want : L.degree(k) != want) return false;
            }
    return true;
}

template <class F>
nlohmann::json to_json(const LieAlgebra<F>& L) {
    nlohmann::json j;
    j["labels"] = L.labels();
    j["degrees"] = L.degrees();
    j["filtered"] = L.filtered();
    nlohmann::json s = nlohmann::json::array();
    for (size_t a = 0; a < L.dim(); ++a)
        for (size_t b = a + 1; b < L.dim(); ++b)
            for (auto& [k, v] : L.basis_bracket(a, b)) s.push_back({a, b, k, to_string(v)});
    j["structure"] = s;
    return j;
}

template <class F>
LieAlgebra<F> lie_algebra_from_json(const nlohmann::json& j) {
    LieAlgebra<F> L(j.at("labels").get<std::vector<std::string>>(), j.at("degrees").get<std::vector<int>>(),
                    j.value("filtered", false));
    std::map<std::pair<size_t, size_t>, Vec<F>> br;
    for (auto& t : j.at("structure")) {
        size_t a = t.at(0), b = t.at(1), k = t.at(2);
        if (a >= b || k >= L.dim()) throw std::invalid_argument("bad structure triple");
        auto& v = br[{a, b}];
        if (v.empty()) v.assign(L.dim(), F(0));
        v[k] += parse_scalar<F>(t.at(3).get<std::string>());
    }
    for (auto& [ab, v] : br) L.set_bracket(ab.first, ab.second, v);
    return L;
}

}  // namespace c3monge
