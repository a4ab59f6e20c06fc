#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "cmtori/quadratic.hpp"

using namespace cmtori;

namespace {

std::vector<i64> fundamental_discriminants(i64 lo, i64 hi) {
    std::vector<i64> out;
    for (i64 D = lo; D <= hi; ++D)
        if (D != 0 && D != 1 && is_fundamental_discriminant(D)) out.push_back(D);
    return out;
}

// Independent definition of fundamental discriminants.
bool fundamental_oracle(i64 D) {
    if (D == 0 || D == 1) return false;
    if (mod(D, 4) == 1) return is_squarefree(D);
    if (mod(D, 4) != 0) return false;
    i64 m = D / 4;
    return (mod(m, 4) == 2 || mod(m, 4) == 3) && is_squarefree(m);
}

// Roots of the minimal polynomial of (D + sqrt D)/2 modulo p.
int kronecker_by_roots(i64 D, i64 p) {
    i64 b = mod(-D, p), c = mod((D * D - D) / 4, p);
    int roots = 0;
    for (i64 x = 0; x < p; ++x) roots += mod(x * x + b * x + c, p) == 0;
    return roots == 2 ? 1 : roots == 1 ? 0 : -1;
}

// Kronecker symbol (D/n) for any n > 0, by factoring n.
int kronecker_general(i64 D, i64 n) {
    int r = 1;
    for (i64 q = 2; n > 1; ++q) {
        while (n % q == 0) {
            n /= q;
            int s;
            if (q == 2)
                s = D % 2 == 0 ? 0 : (mod(D, 8) == 1 || mod(D, 8) == 7) ? 1 : -1;
            else if (D % q == 0)
                s = 0;
            else
                s = powmod(mod(D, q), (q - 1) / 2, q) == 1 ? 1 : -1;
            r *= s;
        }
    }
    return r;
}

// Class number formula h = -(w / 2|D|) sum chi(a) a for D < 0.
i64 class_number_analytic_imaginary(i64 D) {
    i64 n = -D, sum = 0;
    for (i64 a = 1; a < n; ++a) sum += kronecker_general(D, a) * a;
    i64 w = D == -3 ? 6 : D == -4 ? 4 : 2;
    REQUIRE((-w * sum) % (2 * n) == 0);
    return -w * sum / (2 * n);
}

struct UnitOracle {
    long double log_eps;
    bool norm_negative;
};

// Smallest t, u > 0 with t^2 - D u^2 = +-4 gives the fundamental unit (t + u sqrt D)/2.
UnitOracle fundamental_unit(i64 D) {
    for (i64 u = 1;; ++u) {
        for (int sign : {-4, 4}) {
            i64 t2 = D * u * u + sign;
            i64 t = isqrt(t2);
            if (t > 0 && t * t == t2)
                return {std::log((static_cast<long double>(t) + u * std::sqrt(static_cast<long double>(D))) / 2),
                        sign < 0};
        }
    }
}

// Class number formula 2 h log(eps) = -sum chi(a) log sin(pi a / D) for D > 0.
i64 class_number_analytic_real(i64 D, const UnitOracle& unit) {
    long double sum = 0;
    for (i64 a = 1; a < D; ++a) {
        int chi = kronecker_general(D, a);
        if (chi) sum -= chi * std::log(std::sin(std::numbers::pi_v<long double> * a / D));
    }
    long double h = sum / (2 * unit.log_eps);
    i64 r = std::llround(h);
    REQUIRE(std::fabs(h - r) < 1e-6);
    return r;
}

}  // namespace

TEST_CASE("fundamental discriminant examples") {
    CHECK(fundamental_discriminant(-1) == -4);
    CHECK(fundamental_discriminant(5) == 5);
    CHECK(fundamental_discriminant(-5) == -20);
    CHECK(fundamental_discriminant(2) == 8);
    CHECK(fundamental_discriminant(-3) == -3);
    CHECK_THROWS(fundamental_discriminant(12));
    CHECK_THROWS(fundamental_discriminant(1));
    CHECK_THROWS(fundamental_discriminant(0));
}

TEST_CASE("fundamental discriminants agree with the definition") {
    for (i64 D = -500; D <= 500; ++D) CHECK_MESSAGE(is_fundamental_discriminant(D) == fundamental_oracle(D), D);
    for (i64 m = -200; m <= 200; ++m) {
        if (m == 0 || m == 1 || !is_squarefree(m)) continue;
        CHECK(fundamental_oracle(fundamental_discriminant(m)));
        CHECK(QuadraticField(m).disc == fundamental_discriminant(m));
    }
}

TEST_CASE("kronecker symbol examples") {
    CHECK(kronecker_symbol(-4, 2) == 0);
    CHECK(kronecker_symbol(5, 2) == -1);
    CHECK(kronecker_symbol(17, 2) == 1);
    CHECK_THROWS(kronecker_symbol(16, 5));
    CHECK_THROWS(kronecker_symbol(5, 9));
}

TEST_CASE("kronecker symbol matches root counting") {
    for (i64 D : fundamental_discriminants(-400, 400))
        for (i64 p = 2; p < 60; ++p)
            if (is_prime(p)) CHECK_MESSAGE(kronecker_symbol(D, p) == kronecker_by_roots(D, p), "D=" << D << " p=" << p);
}

TEST_CASE("kronecker symbol is multiplicative over coprime fundamental factors") {
    auto discs = fundamental_discriminants(-99, 99);
    std::set<i64> fundamental(discs.begin(), discs.end());
    for (i64 D1 : discs) {
        for (i64 D2 : discs) {
            i64 D = D1 * D2;
            if (std::abs(D) >= 100 || !fundamental.count(D)) continue;
            if (std::gcd(D1, D2) != 1) continue;
            for (i64 p = 2; p < 50; ++p)
                if (is_prime(p))
                    CHECK(kronecker_symbol(D, p) == kronecker_symbol(D1, p) * kronecker_symbol(D2, p));
        }
    }
}

TEST_CASE("splitting type examples and consistency") {
    CHECK(splitting_type(QuadraticField(17), 2) == SplittingType::split);
    CHECK(splitting_type(QuadraticField(5), 2) == SplittingType::inert);
    CHECK(splitting_type(QuadraticField(-1), 2) == SplittingType::ramified);
    for (i64 m = -60; m < 60; ++m) {
        if (m == 0 || m == 1 || !is_squarefree(m)) continue;
        QuadraticField K(m);
        for (i64 p = 2; p < 40; ++p) {
            if (!is_prime(p)) continue;
            int k = kronecker_symbol(K.disc, p);
            auto t = splitting_type(K, p);
            CHECK((k == 1) == (t == SplittingType::split));
            CHECK((k == -1) == (t == SplittingType::inert));
            CHECK((k == 0) == (t == SplittingType::ramified));
        }
    }
}

TEST_CASE("biquadratic subfields") {
    BiquadraticCM K(17, 1);
    CHECK(K.e_prime == -17);
    CHECK(K.subfield_radicands() == std::vector<i64>{-17, -1, 17});
    BiquadraticCM z8(2, 1), z8b(2, 2);
    CHECK(z8.is_zeta8());
    CHECK(z8b.is_zeta8());
    CHECK(z8.same_field(z8b));
    CHECK(BiquadraticCM(3, 1).is_zeta12());
    CHECK(BiquadraticCM(3, 3).is_zeta12());
    CHECK_FALSE(BiquadraticCM(5, 1).is_zeta8());
    CHECK(BiquadraticCM(6, 10).e_prime == -15);
    CHECK_THROWS(BiquadraticCM(1, 1));
    CHECK_THROWS(BiquadraticCM(8, 1));
    CHECK_THROWS(BiquadraticCM(5, 4));
}

TEST_CASE("product of the three subfield characters is trivial away from ramification") {
    for (i64 d = 2; d < 60; ++d) {
        if (!is_squarefree(d)) continue;
        for (i64 j = 1; j < 60; ++j) {
            if (!is_squarefree(j)) continue;
            BiquadraticCM K(d, j);
            CHECK(K.E().m != K.E_prime().m);
            for (i64 p = 2; p < 50; ++p) {
                if (!is_prime(p)) continue;
                int a = kronecker_symbol(K.F().disc, p), b = kronecker_symbol(K.E().disc, p),
                    c = kronecker_symbol(K.E_prime().disc, p);
                if (a && b && c) CHECK(a * b * c == 1);
                // never exactly one ramified subfield
                CHECK((a == 0) + (b == 0) + (c == 0) != 1);
            }
        }
    }
}

TEST_CASE("imaginary class number examples") {
    CHECK(class_number_imaginary(-4) == 1);
    CHECK(reduced_forms_imaginary(-4) == std::vector<ReducedForm>{{1, 0, 1}});
    CHECK(class_number_imaginary(-20) == 2);
    CHECK(class_number_imaginary(-163) == 1);
    CHECK(class_number_imaginary(-3) == 1);
    CHECK(class_number_imaginary(-23) == 3);
    CHECK_THROWS(class_number_imaginary(5));
    CHECK_THROWS(class_number_imaginary(-16));
}

TEST_CASE("reduced forms are independent of enumeration order") {
    for (i64 D : fundamental_discriminants(-2000, -3)) {
        std::set<ReducedForm> by_b;
        for (i64 b = 0; b * b <= -D / 3 + 1; ++b) {
            for (i64 a = std::max<i64>(b, 1); 3 * a * a <= -D; ++a) {
                i64 num = b * b - D;
                if (num % (4 * a)) continue;
                i64 c = num / (4 * a);
                if (c < a) continue;
                by_b.insert({a, b, c});
                if (b != 0 && b != a && a != c) by_b.insert({a, -b, c});
            }
        }
        auto forms = reduced_forms_imaginary(D);
        CHECK(std::set<ReducedForm>(forms.begin(), forms.end()) == by_b);
        CHECK(forms.size() == by_b.size());
        for (const auto& f : forms) CHECK(f.b * f.b - 4 * f.a * f.c == D);
    }
}

TEST_CASE("imaginary class numbers match the analytic formula") {
    for (i64 D : fundamental_discriminants(-1000, -3))
        CHECK_MESSAGE(class_number_imaginary(D) == class_number_analytic_imaginary(D), "D=" << D);
}

TEST_CASE("real class number examples") {
    CHECK(class_number_real(5) == 1);
    CHECK(real_class_number_data(5).unit_norm_negative);
    CHECK(class_number_real(8) == 1);
    CHECK(class_number_real(40) == 2);
    CHECK(class_number_real(12) == 1);
    CHECK(real_class_number_data(12).narrow == 2);
    CHECK_THROWS(class_number_real(-4));
}

TEST_CASE("real class numbers match the analytic formula and unit search") {
    for (i64 D : fundamental_discriminants(5, 400)) {
        auto unit = fundamental_unit(D);
        auto data = real_class_number_data(D);
        i64 h = class_number_analytic_real(D, unit);
        CHECK_MESSAGE(data.wide == h, "D=" << D);
        CHECK_MESSAGE(data.unit_norm_negative == unit.norm_negative, "D=" << D);
        CHECK(data.narrow == (unit.norm_negative ? h : 2 * h));
        CHECK(class_number_real(D) == h);
    }
}

TEST_CASE("narrow is twice wide exactly when the period is even") {
    for (i64 D : fundamental_discriminants(5, 199)) {
        auto data = real_class_number_data(D);
        CHECK(data.period == continued_fraction_period(D));
        CHECK((data.narrow == 2 * data.wide) == (data.period % 2 == 0));
        CHECK((data.narrow == data.wide) == (data.period % 2 == 1));
    }
}

TEST_CASE("roots of unity") {
    CHECK(roots_of_unity_order(QuadraticField(-1)) == 4);
    CHECK(roots_of_unity_order(QuadraticField(-3)) == 6);
    CHECK(roots_of_unity_order(QuadraticField(-5)) == 2);
    CHECK(roots_of_unity_order(BiquadraticCM(2, 1)) == 8);
    CHECK(roots_of_unity_order(BiquadraticCM(5, 1)) == 4);
    CHECK(roots_of_unity_order(BiquadraticCM(3, 1)) == 12);
    CHECK(roots_of_unity_order(BiquadraticCM(5, 3)) == 6);
    CHECK(roots_of_unity_order(BiquadraticCM(5, 2)) == 2);
    for (i64 d = 2; d < 40; ++d)
        for (i64 j = 1; j < 40; ++j)
            if (is_squarefree(d) && is_squarefree(j)) {
                int w = roots_of_unity_order(BiquadraticCM(d, j));
                CHECK(w % 2 == 0);
                CHECK(24 % w == 0);
            }
    for (i64 m = -60; m < 0; ++m)
        if (is_squarefree(m)) {
            int w = roots_of_unity_order(QuadraticField(m));
            CHECK(w % 2 == 0);
            CHECK(24 % w == 0);
        }
}
