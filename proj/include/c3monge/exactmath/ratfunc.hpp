#pragma once

#include "multipoly.hpp"

#include <cctype>

namespace c3monge {

struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error("pole at specialization: " + what) {}
};

// Element of Q(params): num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(long c) : RatFunc(Rational(c)) {}
    RatFunc(int c) : RatFunc(Rational(c)) {}
    RatFunc(const MultiPoly& p) : num_(p), den_(1) {}
    RatFunc(const MultiPoly& n, const MultiPoly& d) : num_(n), den_(d) { normalize(); }

    static RatFunc var(const std::string& name) { return RatFunc(MultiPoly::var(name)); }
    static RatFunc parse(const std::string& s);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    Rational constant_value() const { return num_.constant_value(); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
        RatFunc r;
        MultiPoly n1 = a.num_, d1 = a.den_, n2 = b.num_, d2 = b.den_;
        if (!d2.is_one()) {
            MultiPoly g = poly_gcd(n1, d2);
            if (!g.is_one()) {
                n1 = n1.exact_div(g);
                d2 = d2.exact_div(g);
            }
        }
        if (!d1.is_one()) {
            MultiPoly g = poly_gcd(n2, d1);
            if (!g.is_one()) {
                n2 = n2.exact_div(g);
                d1 = d1.exact_div(g);
            }
        }
        r.num_ = n1 * n2;
        r.den_ = d1 * d2;
        r.make_monic();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
    RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

    RatFunc inv() const {
        if (is_zero()) throw DivisionByZero();
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        r.make_monic();
        return r;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // full evaluation; every variable occurring must be assigned
    Rational specialize(const std::map<int, Rational>& vals) const {
        RatFunc r = substitute(vals);
        if (!r.is_constant()) throw std::invalid_argument("specialize: unassigned parameter in " + str());
        return r.constant_value();
    }
    Rational specialize(const std::map<std::string, Rational>& vals) const { return specialize(by_id(vals)); }

    RatFunc substitute(const std::map<int, Rational>& vals) const {
        MultiPoly d = den_.substitute(vals);
        if (d.is_zero()) throw PoleError(str());
        return RatFunc(num_.substitute(vals), d);
    }
    RatFunc compose(const std::map<int, MultiPoly>& vals) const {
        MultiPoly d = den_.compose(vals);
        if (d.is_zero()) throw PoleError(str());
        return RatFunc(num_.compose(vals), d);
    }

    uint32_t var_mask() const { return num_.var_mask() | den_.var_mask(); }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        auto wrap = [](const MultiPoly& p) {
            std::string s = p.str();
            return p.size() > 1 || (p.size() == 1 && p.lc().sign() < 0) ? "(" + s + ")" : s;
        };
        return wrap(num_) + "/" + wrap(den_);
    }

    size_t complexity() const { return num_.complexity() + (den_.is_one() ? 0 : den_.complexity()); }

    static std::map<int, Rational> by_id(const std::map<std::string, Rational>& vals) {
        std::map<int, Rational> out;
        for (auto& [k, v] : vals) out[Vars::id(k)] = v;
        return out;
    }

private:
    MultiPoly num_, den_;

    void make_monic() {
        if (num_.is_zero()) {
            den_ = MultiPoly(1);
            return;
        }
        const Rational& c = den_.lc();
        if (!c.is_one()) {
            Rational ci = c.inv();
            num_ = num_.scaled(ci);
            den_ = den_.scaled(ci);
        }
    }
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero();
        if (num_.is_zero()) {
            den_ = MultiPoly(1);
            return;
        }
        if (!den_.is_constant()) {
            MultiPoly g = poly_gcd(num_, den_);
            if (!g.is_one()) {
                num_ = num_.exact_div(g);
                den_ = den_.exact_div(g);
            }
        }
        make_monic();
    }

    static RatFunc add(const RatFunc& a, const RatFunc& b, bool sub) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return sub ? -b : b;
        RatFunc r;
        if (a.den_ == b.den_) {
            r.num_ = sub ? a.num_ - b.num_ : a.num_ + b.num_;
            r.den_ = a.den_;
            if (!r.den_.is_one()) r.normalize();
            else if (r.num_.is_zero()) r.den_ = MultiPoly(1);
            return r;
        }
        if (a.den_.is_one() || b.den_.is_one()) {
            // coprime denominators: no reduction needed
            MultiPoly n = sub ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
            r.num_ = n;
            r.den_ = a.den_ * b.den_;
            r.make_monic();
            return r;
        }
        MultiPoly g = poly_gcd(a.den_, b.den_);
        MultiPoly e1 = a.den_.exact_div(g), e2 = b.den_.exact_div(g);
        MultiPoly n = sub ? a.num_ * e2 - b.num_ * e1 : a.num_ * e2 + b.num_ * e1;
        if (n.is_zero()) return {};
        r.num_ = n;
        r.den_ = g * e1 * e2;
        if (!g.is_one()) {
            MultiPoly h = poly_gcd(n, g);
            if (!h.is_one()) {
                r.num_ = r.num_.exact_div(h);
                r.den_ = r.den_.exact_div(h);
            }
        }
        r.make_monic();
        return r;
    }
};

inline std::string to_string(const RatFunc& a) { return a.str(); }

namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}
    RatFunc run() {
        RatFunc r = expr();
        skip();
        if (i_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("cannot parse '" + s_ + "': " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    RatFunc expr() {
        RatFunc r = term();
        while (true) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                return r;
        }
    }
    RatFunc term() {
        RatFunc r = unary();
        while (true) {
            if (eat('*'))
                r *= unary();
            else if (eat('/'))
                r /= unary();
            else
                return r;
        }
    }
    RatFunc unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    RatFunc power() {
        RatFunc base = atom();
        if (eat('^')) {
            skip();
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("exponent expected");
            unsigned long e = std::stoul(s_.substr(st, i_ - st));
            RatFunc r(1);
            for (unsigned long k = 0; k < e; ++k) r *= base;
            return r;
        }
        return base;
    }
    RatFunc atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            RatFunc r = expr();
            if (!eat(')')) fail("')' expected");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return RatFunc(Rational(mpq_class(mpz_class(s_.substr(st, i_ - st)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t st = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            return RatFunc::var(s_.substr(st, i_ - st));
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace detail

inline RatFunc RatFunc::parse(const std::string& s) { return detail::ExprParser(s).run(); }

}  // namespace c3monge
