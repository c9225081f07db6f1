#include "cogs/value.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace cogs {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty() || digits.size() > 18) {
        throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    }
    std::int64_t out = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
        }
        out = out * 10 + (c - '0');
    }
    return out;
}

std::int64_t pow10(std::size_t n) {
    std::int64_t p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= 10;
    return p;
}

}  // namespace

Number parse_number(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    Number result;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        std::int64_t num = parse_digits(rest.substr(0, slash), text);
        std::int64_t den = parse_digits(rest.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        result = Number(num, den);
    } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
        auto int_part = rest.substr(0, dot);
        auto frac_part = rest.substr(dot + 1);
        if (int_part.size() + frac_part.size() > 18 || frac_part.empty()) {
            throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        }
        std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
        std::int64_t frac = parse_digits(frac_part, text);
        std::int64_t scale = pow10(frac_part.size());
        result = Number(whole * scale + frac, scale);
    } else {
        result = Number(parse_digits(rest, text));
    }
    return negative ? -result : result;
}

bool looks_like_number(std::string_view text) {
    try {
        (void)parse_number(text);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::string format_number(const Number& n) {
    if (n.denominator() == 1) return std::to_string(n.numerator());
    std::int64_t den = n.denominator();
    int twos = 0;
    int fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    int digits = std::max(twos, fives);
    if (den != 1 || digits > 17) {
        return std::to_string(n.numerator()) + "/" + std::to_string(n.denominator());
    }
    // Scale to an integer over 10^digits.
    std::int64_t scale = pow10(static_cast<std::size_t>(digits));
    std::int64_t factor = scale / n.denominator();
    if (factor != 0 && std::abs(n.numerator()) > std::numeric_limits<std::int64_t>::max() / factor) {
        return std::to_string(n.numerator()) + "/" + std::to_string(n.denominator());
    }
    std::int64_t scaled = n.numerator() * factor;
    bool negative = scaled < 0;
    std::string mag = std::to_string(negative ? -scaled : scaled);
    if (mag.size() <= static_cast<std::size_t>(digits)) {
        mag.insert(0, static_cast<std::size_t>(digits) + 1 - mag.size(), '0');
    }
    mag.insert(mag.size() - static_cast<std::size_t>(digits), ".");
    return negative ? "-" + mag : mag;
}

std::string Value::str() const {
    return is_numeric() ? format_number(number()) : symbol();
}

std::size_t Value::hash() const {
    if (is_numeric()) {
        auto h = std::hash<std::int64_t>{}(number().numerator());
        return h ^ (std::hash<std::int64_t>{}(number().denominator()) * 0x9e3779b97f4a7c15ULL);
    }
    return std::hash<std::string>{}(symbol()) ^ 0x5bd1e995;
}

}  // namespace cogs
