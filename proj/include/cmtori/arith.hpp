#pragma once

// Exact integer and rational helpers shared by every module.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cmtori {

using i64 = std::int64_t;

/// Non-negative residue of a modulo m (m > 0).
constexpr i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 ipow(i64 base, unsigned exp);
i64 powmod(i64 base, i64 exp, i64 m);
i64 isqrt(i64 n);  // floor(sqrt(n)) for n >= 0

bool is_prime(i64 n);
bool is_squarefree(i64 n);  // |n| squarefree; 0 is not
std::vector<i64> prime_divisors(i64 n);  // distinct primes dividing |n|, ascending

/// Signed squarefree kernel: the squarefree integer in the rational square
/// class of n (n != 0).
i64 squarefree_kernel(i64 n);

/// p-adic valuation of n != 0.
int valuation(i64 n, i64 p);

/// Multiply with overflow detection; throws std::overflow_error.
i64 checked_mul(i64 a, i64 b);

/// Exact rational with normalized sign (den > 0) and reduced terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(i64 num, i64 den = 1);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    /// True iff the value is 2^k for some (possibly negative) integer k.
    bool is_power_of_two() const;
    /// log2 of a power of two; throws if not a power of two.
    int log2() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::string str() const;

private:
    i64 num_ = 0;
    i64 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Power of two as a rational: 2^k for any integer k.
Rational pow2(int k);

/// Closed interval [lo, hi] of rationals; exact when lo == hi.
struct Interval {
    Rational lo;
    Rational hi;

    static Interval exact(Rational v) { return {v, v}; }
    bool is_exact() const { return lo == hi; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    Interval scaled(const Rational& f) const { return {lo * f, hi * f}; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

std::ostream& operator<<(std::ostream& os, const Interval& iv);

}  // namespace cmtori
