#pragma once

// Invariants of quadratic fields and of the biquadratic CM fields built
// from them.

#include <string>
#include <vector>

#include "cmtori/arith.hpp"

namespace cmtori {

i64 fundamental_discriminant(i64 m);
bool is_fundamental_discriminant(i64 D);

/// Kronecker symbol (D/p) for a fundamental discriminant D and a prime p.
int kronecker_symbol(i64 D, i64 p);

enum class SplittingType { split, inert, ramified };
const char* to_string(SplittingType t);

/// Q(sqrt(m)) with m squarefree, m not in {0, 1}.
struct QuadraticField {
    i64 m = -1;
    i64 disc = -4;

    QuadraticField() = default;
    explicit QuadraticField(i64 radicand);

    bool imaginary() const { return m < 0; }
    friend bool operator==(const QuadraticField&, const QuadraticField&) = default;
};

SplittingType splitting_type(const QuadraticField& field, i64 p);

/// Q(sqrt(d), sqrt(-j)) with d > 1 and j >= 1 squarefree. The third
/// quadratic subfield is Q(sqrt(e_prime)) with e_prime = kernel(-d*j) < 0.
struct BiquadraticCM {
    i64 d = 2;
    i64 j = 1;
    i64 e_prime = -2;

    BiquadraticCM() = default;
    BiquadraticCM(i64 d, i64 j);

    QuadraticField F() const { return QuadraticField(d); }
    QuadraticField E() const { return QuadraticField(-j); }
    QuadraticField E_prime() const { return QuadraticField(e_prime); }

    /// Radicands of the three quadratic subfields, sorted.
    std::vector<i64> subfield_radicands() const;
    bool same_field(const BiquadraticCM& other) const;
    bool contains_subfield(i64 radicand) const;
    bool is_zeta8() const;
    bool is_zeta12() const;

    friend bool operator==(const BiquadraticCM&, const BiquadraticCM&) = default;
};

struct ReducedForm {
    i64 a, b, c;
    friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
    friend auto operator<=>(const ReducedForm&, const ReducedForm&) = default;
};

/// Reduced positive definite forms of discriminant D < 0, ordered by (a, b).
std::vector<ReducedForm> reduced_forms_imaginary(i64 D);
i64 class_number_imaginary(i64 D);

/// Reduced indefinite forms of discriminant D > 0 (non-square).
std::vector<ReducedForm> reduced_forms_real(i64 D);

/// Period length of the continued fraction of the integral generator of
/// the maximal order: sqrt(D/4) when 4 | D, (1 + sqrt(D))/2 otherwise.
int continued_fraction_period(i64 D);

struct RealClassNumber {
    i64 narrow = 0;
    i64 wide = 0;
    int period = 0;
    bool unit_norm_negative = false;
};

RealClassNumber real_class_number_data(i64 D);
i64 class_number_real(i64 D);

int roots_of_unity_order(const QuadraticField& field);
int roots_of_unity_order(const BiquadraticCM& field);

}  // namespace cmtori
