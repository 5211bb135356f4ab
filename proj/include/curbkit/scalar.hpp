#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curbkit {

// Exact arithmetic scalar. et_off keeps operator results eagerly evaluated,
// which plays nicer with std:: containers and generic code.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class NumericMode { Rational, Float };

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
struct numeric_traits;

template <>
struct numeric_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr NumericMode mode = NumericMode::Rational;
    static Rational feasibility_eps() { return Rational(0); }
    static Rational equilibrium_eps() { return Rational(0); }
    static Rational mixture_sum_eps() { return Rational(0); }
};

template <>
struct numeric_traits<double> {
    static constexpr bool exact = false;
    static constexpr NumericMode mode = NumericMode::Float;
    static double feasibility_eps() { return 1e-9; }
    static double equilibrium_eps() { return 1e-8; }
    static double mixture_sum_eps() { return 1e-12; }
};

// Token styles in the game file format: a '/' marks a rational fraction, any of
// ". e E" marks a float. Plain integers are rational-style (exact by default).
inline bool float_style_token(std::string_view tok) {
    return tok.find_first_of(".eE") != std::string_view::npos;
}

inline bool rational_fraction_token(std::string_view tok) {
    return tok.find('/') != std::string_view::npos;
}

// Grammar: -?digits or -?digits/digits with a nonzero denominator.
inline Rational parse_rational_token(std::string_view tok) {
    const auto slash = tok.find('/');
    const bool has_den = slash != std::string_view::npos;
    std::string_view num = has_den ? tok.substr(0, slash) : tok;
    const std::string_view den = has_den ? tok.substr(slash + 1) : std::string_view{};

    const auto all_digits = [](std::string_view s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
    };
    std::string_view num_digits = num;
    if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || (has_den && !all_digits(den)))
        throw ParseError("bad rational token: '" + std::string(tok) + "'");
    if (has_den && den.find_first_not_of('0') == std::string_view::npos)
        throw ParseError("zero denominator: '" + std::string(tok) + "'");

    Rational r{std::string(tok)};
    // GMP does not reduce string-constructed fractions on its own.
    mpq_canonicalize(r.backend().data());
    return r;
}

inline double parse_float_token(std::string_view tok) {
    double v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size())
        throw ParseError("bad float token: '" + std::string(tok) + "'");
    if (!std::isfinite(v))
        throw ParseError("non-finite payoff: '" + std::string(tok) + "'");
    return v;
}

inline std::string format_scalar(const Rational& v) { return v.str(); }

// %.17g round-trips doubles exactly; the ".0" suffix keeps integral values
// recognizably float-style so reparsing restores the same numeric mode.
inline std::string format_scalar(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

inline std::string mode_name(NumericMode m) {
    return m == NumericMode::Rational ? "rational" : "float";
}

}  // namespace curbkit
