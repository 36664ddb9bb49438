// SPDX-License-Identifier: Apache-2.0
#include "modone/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "modone/errors.hpp"

namespace modone {

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational parse_decimal(std::string_view s) {
    // [sign] digits [. digits] [e|E [sign] digits]
    std::string mantissa;
    long exp10 = 0;
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    bool any_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa.push_back(c);
            any_digit = true;
            if (seen_dot) --exp10;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && any_digit) {
            std::string tail(s.substr(i + 1));
            if (!is_integer_text(tail)) throw ParseError("bad exponent in rational literal: " + std::string(s));
            exp10 += std::strtol(tail.c_str(), nullptr, 10);
            break;
        } else {
            throw ParseError("bad rational literal: " + std::string(s));
        }
    }
    if (!any_digit) throw ParseError("bad rational literal: " + std::string(s));
    Integer num(mantissa.empty() ? "0" : mantissa);
    Rational r(num);
    Integer pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0)
        r /= Rational(pow10);
    else
        r *= Rational(pow10);
    if (neg) r = -r;
    r.canonicalize();
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view ns = text.substr(0, slash), ds = text.substr(slash + 1);
        if (!is_integer_text(ns) || !is_integer_text(ds))
            throw ParseError("bad rational literal: " + std::string(text));
        Integer num(std::string(ns)), den(std::string(ds));
        if (den == 0) throw ParseError("zero denominator: " + std::string(text));
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (is_integer_text(text)) return Rational(Integer(std::string(text)));
    return parse_decimal(text);
}

Integer rational_floor(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace modone
