#pragma once

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace c3monge {

constexpr int kMaxVars = 24;

// Process-wide registry of parameter names. Ids are assigned in first-use
// order; the common names are registered up front so that monomial order,
// and therefore printed output, does not depend on call order.
class Vars {
public:
    static int id(const std::string& name) {
        auto& t = table();
        std::lock_guard<std::mutex> lk(t.mu);
        for (size_t i = 0; i < t.names.size(); ++i)
            if (t.names[i] == name) return static_cast<int>(i);
        if (t.names.size() >= kMaxVars) throw std::length_error("too many polynomial variables");
        t.names.push_back(name);
        return static_cast<int>(t.names.size() - 1);
    }
    static std::string name(int i) {
        auto& t = table();
        std::lock_guard<std::mutex> lk(t.mu);
        return t.names.at(i);
    }
    static std::optional<int> find(const std::string& name) {
        auto& t = table();
        std::lock_guard<std::mutex> lk(t.mu);
        for (size_t i = 0; i < t.names.size(); ++i)
            if (t.names[i] == name) return static_cast<int>(i);
        return std::nullopt;
    }

private:
    struct Table {
        std::mutex mu;
        std::vector<std::string> names{"lambda", "t", "s", "t1", "t2", "t3", "alpha",
                                       "epsilon", "sigma", "z", "w"};
    };
    static Table& table() {
        static Table t;
        return t;
    }
};

struct Monomial {
    std::array<uint16_t, kMaxVars> e{};

    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    bool divides(const Monomial& o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) {
            unsigned s = unsigned(e[i]) + o.e[i];
            if (s > 0xffff) throw std::overflow_error("monomial exponent overflow");
            r.e[i] = static_cast<uint16_t>(s);
        }
        return r;
    }
    // caller guarantees o divides *this
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - o.e[i];
        return r;
    }
    static Monomial var(int v, unsigned k = 1) {
        Monomial m;
        m.e[v] = static_cast<uint16_t>(k);
        return m;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
};

// graded lex: total degree first, then lexicographic with variable 0 most significant
inline int grlex_cmp(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}

inline Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::min(a.e[i], b.e[i]);
    return r;
}

// Sparse multivariate polynomial over Q. Terms sorted by decreasing grlex,
// no zero coefficients.
class MultiPoly {
public:
    struct Term {
        Monomial m;
        Rational c;
    };

    MultiPoly() = default;
    MultiPoly(const Rational& c) {
        if (!c.is_zero()) t_.push_back({Monomial{}, c});
    }
    MultiPoly(long c) : MultiPoly(Rational(c)) {}
    MultiPoly(int c) : MultiPoly(Rational(c)) {}

    static MultiPoly var(const std::string& name) { return var(Vars::id(name)); }
    static MultiPoly var(int v) {
        MultiPoly p;
        p.t_.push_back({Monomial::var(v), Rational(1)});
        return p;
    }
    static MultiPoly monomial(const Monomial& m, const Rational& c) {
        MultiPoly p;
        if (!c.is_zero()) p.t_.push_back({m, c});
        return p;
    }
    // terms in any order, duplicates allowed
    static MultiPoly from_terms(std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(),
                  [](const Term& a, const Term& b) { return grlex_cmp(a.m, b.m) > 0; });
        MultiPoly p;
        for (auto& x : ts) {
            if (!p.t_.empty() && p.t_.back().m == x.m)
                p.t_.back().c += x.c;
            else {
                if (!p.t_.empty() && p.t_.back().c.is_zero()) p.t_.pop_back();
                p.t_.push_back(std::move(x));
            }
        }
        if (!p.t_.empty() && p.t_.back().c.is_zero()) p.t_.pop_back();
        return p;
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    bool is_one() const { return t_.size() == 1 && t_[0].m.is_one() && t_[0].c.is_one(); }
    bool is_monomial() const { return t_.size() == 1; }
    Rational constant_value() const { return is_zero() ? Rational(0) : t_[0].c; }
    const Term& lead() const { return t_.front(); }
    const Rational& lc() const { return t_.front().c; }
    int total_degree() const { return t_.empty() ? -1 : t_.front().m.degree(); }
    size_t size() const { return t_.size(); }

    int degree_in(int v) const {
        int d = -1;
        for (auto& x : t_) d = std::max(d, int(x.m.e[v]));
        return d;
    }
    bool has_var(int v) const {
        for (auto& x : t_)
            if (x.m.e[v]) return true;
        return false;
    }
    uint32_t var_mask() const {
        uint32_t m = 0;
        for (auto& x : t_)
            for (int i = 0; i < kMaxVars; ++i)
                if (x.m.e[i]) m |= 1u << i;
        return m;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& x : r.t_) x.c = -x.c;
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
    MultiPoly& operator+=(const MultiPoly& b) { return *this = merge(*this, b, false); }
    MultiPoly& operator-=(const MultiPoly& b) { return *this = merge(*this, b, true); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b.scaled(a.t_[0].c);
        if (b.is_constant()) return a.scaled(b.t_[0].c);
        if (a.is_monomial()) return b.mul_term(a.t_[0].m, a.t_[0].c);
        if (b.is_monomial()) return a.mul_term(b.t_[0].m, b.t_[0].c);
        std::vector<Term> ts;
        ts.reserve(a.t_.size() * b.t_.size());
        for (auto& x : a.t_)
            for (auto& y : b.t_) ts.push_back({x.m * y.m, x.c * y.c});
        return from_terms(std::move(ts));
    }
    MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

    MultiPoly scaled(const Rational& c) const {
        if (c.is_zero()) return {};
        MultiPoly r = *this;
        if (!c.is_one())
            for (auto& x : r.t_) x.c *= c;
        return r;
    }
    MultiPoly mul_term(const Monomial& m, const Rational& c) const {
        if (c.is_zero()) return {};
        MultiPoly r;
        r.t_.reserve(t_.size());
        for (auto& x : t_) r.t_.push_back({x.m * m, x.c * c});
        return r;
    }

    // exact quotient if q divides *this, else nullopt
    std::optional<MultiPoly> divide(const MultiPoly& q) const {
        if (q.is_zero()) throw DivisionByZero();
        if (is_zero()) return MultiPoly{};
        if (q.is_constant()) return scaled(q.t_[0].c.inv());
        const Term& lq = q.lead();
        Rational lqinv = lq.c.inv();
        std::vector<Term> quot;
        MultiPoly r = *this;
        while (!r.is_zero()) {
            const Term& lr = r.lead();
            if (!lq.m.divides(lr.m)) return std::nullopt;
            Monomial m = lr.m / lq.m;
            Rational c = lr.c * lqinv;
            quot.push_back({m, c});
            r = merge(r, q.mul_term(m, c), true);
        }
        MultiPoly out;
        out.t_ = std::move(quot);  // produced in decreasing order
        return out;
    }
    MultiPoly exact_div(const MultiPoly& q) const {
        auto r = divide(q);
        if (!r) throw std::logic_error("inexact polynomial division");
        return *r;
    }

    MultiPoly monic() const {
        if (is_zero()) return {};
        return scaled(lc().inv());
    }

    // coefficients with respect to variable v: result[k] is the coefficient of v^k
    std::vector<MultiPoly> coeffs_in(int v) const {
        int d = degree_in(v);
        std::vector<std::vector<Term>> buckets(d < 0 ? 0 : d + 1);
        for (auto& x : t_) {
            Term y = x;
            int k = y.m.e[v];
            y.m.e[v] = 0;
            buckets[k].push_back(std::move(y));
        }
        std::vector<MultiPoly> out;
        out.reserve(buckets.size());
        for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
        return out;
    }
    static MultiPoly from_coeffs(int v, const std::vector<MultiPoly>& cs) {
        std::vector<Term> ts;
        for (size_t k = 0; k < cs.size(); ++k)
            for (auto& x : cs[k].t_) {
                Term y = x;
                y.m.e[v] = static_cast<uint16_t>(y.m.e[v] + k);
                ts.push_back(std::move(y));
            }
        return from_terms(std::move(ts));
    }

    Monomial monomial_content() const {
        Monomial g = t_.front().m;
        for (auto& x : t_) g = monomial_gcd(g, x.m);
        return g;
    }
    MultiPoly divide_monomial(const Monomial& m) const {
        MultiPoly r = *this;
        for (auto& x : r.t_) x.m = x.m / m;
        return r;
    }

    // substitute values for some variables
    MultiPoly substitute(const std::map<int, Rational>& vals) const {
        std::vector<Term> ts;
        ts.reserve(t_.size());
        for (auto& x : t_) {
            Term y = x;
            for (auto& [v, val] : vals) {
                if (y.m.e[v]) {
                    y.c *= pow(val, y.m.e[v]);
                    y.m.e[v] = 0;
                }
            }
            if (!y.c.is_zero()) ts.push_back(std::move(y));
        }
        return from_terms(std::move(ts));
    }
    // substitute polynomials for variables (simultaneous)
    MultiPoly compose(const std::map<int, MultiPoly>& vals) const {
        MultiPoly out;
        for (auto& x : t_) {
            MultiPoly term = MultiPoly::monomial(Monomial{}, x.c);
            Monomial rest = x.m;
            for (auto& [v, p] : vals) {
                for (unsigned k = 0; k < x.m.e[v]; ++k) term = term * p;
                rest.e[v] = 0;
            }
            out += term.mul_term(rest, Rational(1));
        }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < t_.size(); ++i) {
            const auto& x = t_[i];
            Rational c = x.c;
            bool neg = c.sign() < 0;
            if (neg) c = -c;
            if (i == 0)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            std::string mon;
            for (int v = 0; v < kMaxVars; ++v) {
                if (!x.m.e[v]) continue;
                if (!mon.empty()) mon += "*";
                mon += Vars::name(v);
                if (x.m.e[v] > 1) mon += "^" + std::to_string(x.m.e[v]);
            }
            if (mon.empty())
                out += c.str();
            else if (c.is_one())
                out += mon;
            else
                out += c.str() + "*" + mon;
        }
        return out;
    }

    size_t complexity() const {
        size_t s = 0;
        for (auto& x : t_) s += 1 + x.c.bits() / 32 + x.m.degree();
        return s;
    }

private:
    std::vector<Term> t_;

    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        if (b.t_.empty()) return a;
        if (a.t_.empty()) return subtract ? -b : b;
        MultiPoly r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            int c;
            if (i == a.t_.size())
                c = -1;
            else if (j == b.t_.size())
                c = 1;
            else
                c = grlex_cmp(a.t_[i].m, b.t_[j].m);
            if (c > 0) {
                r.t_.push_back(a.t_[i++]);
            } else if (c < 0) {
                Term y = b.t_[j++];
                if (subtract) y.c = -y.c;
                r.t_.push_back(std::move(y));
            } else {
                Rational s = subtract ? a.t_[i].c - b.t_[j].c : a.t_[i].c + b.t_[j].c;
                if (!s.is_zero()) r.t_.push_back({a.t_[i].m, std::move(s)});
                ++i;
                ++j;
            }
        }
        return r;
    }
};

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

namespace detail {

inline int lowest_var(uint32_t mask) {
    for (int i = 0; i < kMaxVars; ++i)
        if (mask & (1u << i)) return i;
    return -1;
}

inline MultiPoly content_in(const MultiPoly& p, int v) {
    MultiPoly g;
    for (auto& c : p.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : poly_gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

inline MultiPoly primitive_in(const MultiPoly& p, int v) {
    if (p.is_zero()) return p;
    MultiPoly c = content_in(p, v);
    return p.exact_div(c).monic();
}

// pseudo-remainder of a by b as polynomials in v
inline MultiPoly prem_in(const MultiPoly& a, const MultiPoly& b, int v) {
    auto A = a.coeffs_in(v);
    auto B = b.coeffs_in(v);
    int db = int(B.size()) - 1;
    const MultiPoly& lb = B[db];
    while (int(A.size()) - 1 >= db) {
        int da = int(A.size()) - 1;
        MultiPoly r = A[da];
        int k = da - db;
        for (auto& x : A) x = x * lb;
        for (int i = 0; i <= db; ++i) A[i + k] -= r * B[i];
        while (!A.empty() && A.back().is_zero()) A.pop_back();
        if (A.empty()) break;
    }
    return MultiPoly::from_coeffs(v, A);
}

inline MultiPoly gcd_no_monomial_content(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_constant() || b.is_constant()) return MultiPoly(1);
    if (a.monic() == b.monic()) return a.monic();
    if (a.total_degree() >= b.total_degree()) {
        if (a.divide(b)) return b.monic();
    } else if (b.divide(a)) {
        return a.monic();
    }
    uint32_t ma = a.var_mask(), mb = b.var_mask();
    if ((ma & mb) == 0) return MultiPoly(1);
    if (ma & ~mb) return poly_gcd(content_in(a, lowest_var(ma & ~mb)), b);
    if (mb & ~ma) return poly_gcd(a, content_in(b, lowest_var(mb & ~ma)));
    // same variable set: pick the variable of smallest max degree
    int v = -1, best = 1 << 30;
    for (int i = 0; i < kMaxVars; ++i) {
        if (!(ma & (1u << i))) continue;
        int d = std::max(a.degree_in(i), b.degree_in(i));
        if (d < best) {
            best = d;
            v = i;
        }
    }
    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly c = poly_gcd(ca, cb);
    MultiPoly p = a.exact_div(ca).monic(), q = b.exact_div(cb).monic();
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (true) {
        MultiPoly r = prem_in(p, q, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            q = MultiPoly(1);
            break;
        }
        p = q;
        q = primitive_in(r, v);
    }
    return (primitive_in(q, v) * c).monic();
}

}  // namespace detail

// Monic gcd (leading coefficient 1 under grlex).
inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return MultiPoly(1);
    Monomial m = monomial_gcd(a.monomial_content(), b.monomial_content());
    MultiPoly a1 = a.divide_monomial(a.monomial_content());
    MultiPoly b1 = b.divide_monomial(b.monomial_content());
    MultiPoly g = detail::gcd_no_monomial_content(a1, b1);
    return g.mul_term(m, Rational(1));
}

// d/dv
inline MultiPoly derivative(const MultiPoly& p, int v) {
    std::vector<MultiPoly::Term> ts;
    for (auto& x : p.terms()) {
        if (!x.m.e[v]) continue;
        MultiPoly::Term y = x;
        y.c *= Rational(long(y.m.e[v]));
        y.m.e[v] -= 1;
        ts.push_back(std::move(y));
    }
    return MultiPoly::from_terms(std::move(ts));
}

}  // namespace c3monge
