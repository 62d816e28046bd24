#include "ucurve/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ucurve {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("not an integer");
    // cpp_int reads a leading 0 as an octal prefix
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    BigInt v{std::string(s)};
    return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    try {
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            BigInt num = parse_integer(text.substr(0, slash));
            BigInt den = parse_integer(text.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return Rational(num, den);
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            std::string_view whole = text.substr(0, dot);
            std::string_view frac = text.substr(dot + 1);
            bool negative = !whole.empty() && whole.front() == '-';
            if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
            if (whole.empty() && frac.empty()) throw std::invalid_argument("empty decimal");
            if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
                throw std::invalid_argument("bad decimal");
            }
            BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
            const std::string joined = std::string(whole.empty() ? "0" : whole) + std::string(frac);
            BigInt digits = parse_integer(joined);
            Rational r(digits, scale);
            return negative ? Rational(-r) : r;
        }
        return Rational(parse_integer(text));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
}

std::string to_fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace ucurve
