#include "cmtori/arith.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cmtori {

i64 ipow(i64 base, unsigned exp) {
    i64 r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

i64 powmod(i64 base, i64 exp, i64 m) {
    if (m == 1) return 0;
    __int128 result = 1;
    __int128 b = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<i64>(result);
}

i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative number");
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    auto sq = [](i64 x) { return static_cast<__int128>(x) * x; };
    while (r > 0 && sq(r) > n) --r;
    while (sq(r + 1) <= n) ++r;
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    n = std::llabs(n);
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return false;
        }
    }
    return true;
}

std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> out;
    n = std::llabs(n);
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

i64 squarefree_kernel(i64 n) {
    if (n == 0) throw std::invalid_argument("squarefree kernel of 0");
    i64 sign = n < 0 ? -1 : 1;
    i64 m = std::llabs(n);
    i64 kernel = 1;
    for (i64 d = 2; d * d <= m; ++d) {
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        if (e % 2) kernel *= d;
    }
    return sign * kernel * m;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw std::invalid_argument("valuation of 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}

namespace {

i64 narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<i64>(v);
}

Rational make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(i64 num, i64 den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    i64 g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

bool Rational::is_power_of_two() const {
    auto pot = [](i64 x) { return x > 0 && (x & (x - 1)) == 0; };
    return num_ > 0 && pot(num_) && pot(den_);
}

int Rational::log2() const {
    if (!is_power_of_two()) throw std::domain_error("log2 of non power of two " + str());
    return __builtin_ctzll(static_cast<unsigned long long>(num_)) -
           __builtin_ctzll(static_cast<unsigned long long>(den_));
}

Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero rational");
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num();
    if (r.den() != 1) os << '/' << r.den();
    return os;
}

Rational pow2(int k) {
    if (k >= 0) return Rational(ipow(2, static_cast<unsigned>(k)));
    return Rational(1, ipow(2, static_cast<unsigned>(-k)));
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    if (iv.is_exact()) return os << iv.lo;
    return os << '[' << iv.lo << ", " << iv.hi << ']';
}

}  // namespace cmtori
