#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace omw {

/// Sign value from {+, -, 0}, closed under negation and multiplication.
enum class Sign : std::int8_t { minus = -1, zero = 0, plus = 1 };

constexpr int sign_int(Sign s) { return static_cast<int>(s); }

constexpr Sign sign_of_int(long long v) {
    return v > 0 ? Sign::plus : (v < 0 ? Sign::minus : Sign::zero);
}

constexpr Sign operator-(Sign s) { return static_cast<Sign>(-sign_int(s)); }

constexpr Sign operator*(Sign a, Sign b) {
    return static_cast<Sign>(sign_int(a) * sign_int(b));
}

constexpr char sign_char(Sign s) {
    return s == Sign::plus ? '+' : (s == Sign::minus ? '-' : '0');
}

inline Sign sign_from_char(char c) {
    switch (c) {
        case '+': return Sign::plus;
        case '-': return Sign::minus;
        case '0': return Sign::zero;
        default: throw std::invalid_argument(std::string("invalid sign character '") + c + "'");
    }
}

// Order used for canonical (lexicographically minimal) sign strings: '+' < '-' < '0'.
constexpr int sign_key(Sign s) {
    return s == Sign::plus ? 0 : (s == Sign::minus ? 1 : 2);
}

}  // namespace omw
