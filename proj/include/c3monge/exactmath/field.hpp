#pragma once

#include "ratfunc.hpp"

namespace c3monge {

// Scalar helpers shared by Rational and RatFunc.

inline size_t complexity(const Rational& a) { return a.bits(); }
inline size_t complexity(const RatFunc& a) { return a.complexity(); }

template <class F>
F parse_scalar(const std::string& s);

template <>
inline Rational parse_scalar<Rational>(const std::string& s) {
    RatFunc r = RatFunc::parse(s);
    if (!r.is_constant()) throw std::invalid_argument("expected a rational constant: " + s);
    return r.constant_value();
}
template <>
inline RatFunc parse_scalar<RatFunc>(const std::string& s) {
    return RatFunc::parse(s);
}

inline Rational specialize(const Rational& a, const std::map<int, Rational>&) { return a; }
inline Rational specialize(const RatFunc& a, const std::map<int, Rational>& vals) { return a.specialize(vals); }

template <class F>
constexpr bool is_function_field = std::is_same_v<F, RatFunc>;

}  // namespace c3monge
