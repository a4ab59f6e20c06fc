#include "cmtori/quadratic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace cmtori {

namespace {

void require_radicand(i64 m) {
    if (m == 0 || m == 1) throw std::invalid_argument("degenerate radicand " + std::to_string(m));
    if (!is_squarefree(m)) throw std::invalid_argument(std::to_string(m) + " not squarefree");
}

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

i64 fundamental_discriminant(i64 m) {
    require_radicand(m);
    return mod(m, 4) == 1 ? m : checked_mul(4, m);
}

bool is_fundamental_discriminant(i64 D) {
    if (D == 0 || D == 1) return false;
    if (mod(D, 4) == 1) return is_squarefree(D);
    if (mod(D, 4) != 0) return false;
    i64 m = D / 4;
    i64 r = mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
}

int kronecker_symbol(i64 D, i64 p) {
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument(std::to_string(D) + " is not a fundamental discriminant");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p == 2) {
        if (D % 2 == 0) return 0;
        i64 r = mod(D, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    if (mod(D, p) == 0) return 0;
    return powmod(D, (p - 1) / 2, p) == 1 ? 1 : -1;
}

const char* to_string(SplittingType t) {
    switch (t) {
        case SplittingType::split: return "split";
        case SplittingType::inert: return "inert";
        case SplittingType::ramified: return "ramified";
    }
    return "?";
}

QuadraticField::QuadraticField(i64 radicand) : m(radicand), disc(fundamental_discriminant(radicand)) {}

SplittingType splitting_type(const QuadraticField& field, i64 p) {
    switch (kronecker_symbol(field.disc, p)) {
        case 0: return SplittingType::ramified;
        case 1: return SplittingType::split;
        default: return SplittingType::inert;
    }
}

BiquadraticCM::BiquadraticCM(i64 d_, i64 j_) : d(d_), j(j_) {
    if (d <= 1) throw std::invalid_argument("real radicand d must be > 1");
    if (!is_squarefree(d)) throw std::invalid_argument(std::to_string(d) + " not squarefree");
    if (j < 1) throw std::invalid_argument("imaginary radicand j must be >= 1");
    if (!is_squarefree(j)) throw std::invalid_argument(std::to_string(j) + " not squarefree");
    e_prime = squarefree_kernel(checked_mul(-d, j));
}

std::vector<i64> BiquadraticCM::subfield_radicands() const {
    std::vector<i64> v{d, -j, e_prime};
    std::sort(v.begin(), v.end());
    return v;
}

bool BiquadraticCM::same_field(const BiquadraticCM& other) const {
    return subfield_radicands() == other.subfield_radicands();
}

bool BiquadraticCM::contains_subfield(i64 radicand) const {
    return radicand == d || radicand == -j || radicand == e_prime;
}

bool BiquadraticCM::is_zeta8() const { return contains_subfield(-1) && contains_subfield(-2); }

bool BiquadraticCM::is_zeta12() const { return contains_subfield(-1) && contains_subfield(-3); }

std::vector<ReducedForm> reduced_forms_imaginary(i64 D) {
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw std::invalid_argument("expected a negative fundamental discriminant, got " + std::to_string(D));
    std::vector<ReducedForm> out;
    for (i64 a = 1; 3 * a * a <= -D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod(b - D, 2) != 0) continue;
            i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

i64 class_number_imaginary(i64 D) { return static_cast<i64>(reduced_forms_imaginary(D).size()); }

std::vector<ReducedForm> reduced_forms_real(i64 D) {
    if (D <= 0 || !is_fundamental_discriminant(D))
        throw std::invalid_argument("expected a positive fundamental discriminant, got " + std::to_string(D));
    const i64 s = isqrt(D);
    std::vector<ReducedForm> out;
    for (i64 b = 1; b <= s; ++b) {
        if (mod(b - D, 2) != 0) continue;
        i64 prod = (D - b * b) / 4;  // -a*c > 0
        auto consider = [&](i64 a) {
            i64 lo = 2 * a + b;
            if (lo * lo <= D) return;
            i64 hi = 2 * a - b;
            if (hi > 0 && hi * hi >= D) return;
            out.push_back({a, b, -prod / a});
            out.push_back({-a, b, prod / a});
        };
        for (i64 a = 1; a * a <= prod; ++a) {
            if (prod % a != 0) continue;
            consider(a);
            if (a * a != prod) consider(prod / a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int continued_fraction_period(i64 D) {
    if (D <= 0 || !is_fundamental_discriminant(D))
        throw std::invalid_argument("expected a positive fundamental discriminant, got " + std::to_string(D));
    // (P + sqrt(N)) / Q with Q | N - P^2
    i64 N, P, Q;
    if (D % 4 == 0) {
        N = D / 4;
        P = 0;
        Q = 1;
    } else {
        N = D;
        P = 1;
        Q = 2;
    }
    const i64 s = isqrt(N);
    std::map<std::pair<i64, i64>, int> seen;
    for (int k = 0;; ++k) {
        auto [it, fresh] = seen.emplace(std::make_pair(P, Q), k);
        if (!fresh) return k - it->second;
        i64 a = floor_div(P + s, Q);
        P = a * Q - P;
        Q = (N - P * P) / Q;
    }
}

RealClassNumber real_class_number_data(i64 D) {
    auto forms = reduced_forms_real(D);
    const i64 s = isqrt(D);
    std::set<ReducedForm> pending(forms.begin(), forms.end());
    auto rho = [&](const ReducedForm& f) {
        i64 m2 = 2 * (f.c < 0 ? -f.c : f.c);
        i64 b2 = s - mod(s + f.b, m2);
        i64 num = b2 * b2 - D;
        return ReducedForm{f.c, b2, num / (4 * f.c)};
    };
    RealClassNumber out;
    while (!pending.empty()) {
        ReducedForm start = *pending.begin();
        ReducedForm cur = start;
        do {
            if (pending.erase(cur) != 1)
                throw std::logic_error("reduction cycle left the set of reduced forms");
            cur = rho(cur);
        } while (!(cur == start));
        ++out.narrow;
    }
    out.period = continued_fraction_period(D);
    out.unit_norm_negative = out.period % 2 == 1;
    out.wide = out.unit_norm_negative ? out.narrow : out.narrow / 2;
    if (!out.unit_norm_negative && out.narrow % 2 != 0)
        throw std::logic_error("odd narrow class number with totally positive fundamental unit");
    return out;
}

i64 class_number_real(i64 D) { return real_class_number_data(D).wide; }

int roots_of_unity_order(const QuadraticField& field) {
    if (field.disc == -4) return 4;
    if (field.disc == -3) return 6;
    return 2;
}

int roots_of_unity_order(const BiquadraticCM& field) {
    if (field.is_zeta8()) return 8;
    if (field.is_zeta12()) return 12;
    return std::lcm(roots_of_unity_order(field.E()), roots_of_unity_order(field.E_prime()));
}

}  // namespace cmtori
