#include "tolbip/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tolbip {
namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rat Rat::from_i128(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr __int128 lo = std::numeric_limits<long long>::min();
    constexpr __int128 hi = std::numeric_limits<long long>::max();
    if (num < lo || num > hi || den > hi)
        throw std::overflow_error("rational: value out of int64 range after reduction");
    Rat r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
}

Rat::Rat(long long num, long long den) {
    Rat r = from_i128(num, den);
    num_ = r.num_;
    den_ = r.den_;
}

Rat Rat::from_decimal(std::string_view text) {
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    __int128 num = 0;
    __int128 den = 1;
    size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        num = num * 10 + (text[i] - '0');
        if (num > static_cast<__int128>(1) << 90)
            throw std::invalid_argument("decimal literal too large: " + std::string(text));
        ++digits;
        ++i;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            num = num * 10 + (text[i] - '0');
            den *= 10;
            if (num > static_cast<__int128>(1) << 90 || den > static_cast<__int128>(1) << 90)
                throw std::invalid_argument("decimal literal too precise: " + std::string(text));
            ++digits;
            ++i;
        }
    }
    if (digits == 0 || i != text.size())
        throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
    return from_i128(neg ? -num : num, den);
}

std::string Rat::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::operator-() const { return from_i128(-static_cast<__int128>(num_), den_); }

Rat Rat::operator+(const Rat& o) const {
    return from_i128(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                     static_cast<__int128>(den_) * o.den_);
}

Rat Rat::operator-(const Rat& o) const {
    return from_i128(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                     static_cast<__int128>(den_) * o.den_);
}

Rat Rat::operator*(const Rat& o) const {
    return from_i128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rat Rat::operator/(const Rat& o) const {
    if (o.num_ == 0) throw std::invalid_argument("rational: division by zero");
    return from_i128(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

bool Rat::operator<(const Rat& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

long long Rat::floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

long long Rat::ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

} // namespace tolbip
