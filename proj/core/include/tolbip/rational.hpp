#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tolbip {

/*
 * Exact rational arithmetic for threshold decisions.
 *
 * Accept/reject comparisons (zeta vs (2 + k/20)*eps, neighbor-count margins
 * vs theta, classification margins) must not depend on floating-point
 * rounding, so every quantity entering a comparison is kept as an exact
 * int64 fraction. Cross products are evaluated in 128-bit; construction and
 * arithmetic normalize eagerly and throw std::overflow_error if a reduced
 * value leaves int64 range (unreachable at this library's magnitudes).
 */
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long value) : num_(value), den_(1) {} // NOLINT: implicit by design
    Rat(long long num, long long den);

    // Parses a decimal string: optional sign, digits, optional fraction
    // ("0.05" -> 1/20, "2" -> 2, "-.5" -> -1/2). Rejects anything else.
    static Rat from_decimal(std::string_view text);

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }
    std::string to_string() const; // "num/den", or "num" when den == 1

    Rat operator-() const;
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const;
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    // Largest integer <= value / smallest integer >= value.
    long long floor() const;
    long long ceil() const;

private:
    static Rat from_i128(__int128 num, __int128 den);
    long long num_; // reduced; sign lives here
    long long den_; // > 0
};

} // namespace tolbip
