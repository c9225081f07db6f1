#ifndef COGS_VALUE_HPP
#define COGS_VALUE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include <boost/rational.hpp>

namespace cogs {

// Exact arithmetic for every numeric feature value and rule threshold.
using Number = boost::rational<std::int64_t>;

// Accepts "42", "-3", "12.75" and "7/3". Throws std::invalid_argument.
Number parse_number(std::string_view text);

// Integral values print bare, finite decimals print as decimals, anything
// else as "num/den". parse_number(format_number(n)) == n.
std::string format_number(const Number& n);

bool looks_like_number(std::string_view text);

// A single feature value: a number for numeric features, a symbol for
// categorical ones.
class Value {
public:
    Value() = default;
    Value(Number n) : data_(n) {}  // NOLINT(google-explicit-constructor)
    Value(std::int64_t n) : data_(Number(n)) {}  // NOLINT
    Value(int n) : data_(Number(n)) {}  // NOLINT

    static Value symbol(std::string s) {
        Value v;
        v.data_ = std::move(s);
        return v;
    }

    bool is_numeric() const { return data_.index() == 0; }
    const Number& number() const { return std::get<0>(data_); }
    const std::string& symbol() const { return std::get<1>(data_); }

    std::string str() const;

    friend bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
    // Numbers order before symbols; numbers by magnitude, symbols lexically.
    friend bool operator<(const Value& a, const Value& b) { return a.data_ < b.data_; }

    std::size_t hash() const;

private:
    std::variant<Number, std::string> data_{Number(0)};
};

}  // namespace cogs

template <>
struct std::hash<cogs::Value> {
    std::size_t operator()(const cogs::Value& v) const noexcept { return v.hash(); }
};

#endif  // COGS_VALUE_HPP
