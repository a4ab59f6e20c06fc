#pragma once

// Truncated p-adic unit arithmetic: Hilbert symbols, unit norm images of
// local quadratic extensions, and finite checks of the unramified 2-adic
// structure results.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "cmtori/arith.hpp"

namespace cmtori {

int hilbert_symbol(const Rational& a, const Rational& b, i64 p);
int hilbert_symbol_bruteforce(const Rational& a, const Rational& b, i64 p);

/// Norm residue symbol (u, F(sqrt(delta))/F) for u, delta rational and F of
/// degree base_degree over Q_p. Equals (u^base_degree, delta)_p.
int local_norm_symbol(const Rational& u, int base_degree, const Rational& delta, i64 p);

/// An element of Z[x]/(f, moduli) written in the power basis.
struct TruncatedLocalElement {
    std::vector<i64> coefficients;
    int modulus_exponent = 0;
    std::vector<i64> defining_polynomial;  // monic, constant term first
};

/// Z[x]/(f) with coordinate i reduced modulo moduli[i]. With equal moduli
/// p^k this is O/p^k for O = Z_p[x]/(f); with a uniformizer basis (1, pi)
/// and moduli (2^ceil(m/2), 2^ceil((m-1)/2)) it is O/pi^m.
class TruncatedRing {
public:
    static constexpr int max_degree = 4;
    using Elem = std::array<i64, max_degree>;

    TruncatedRing(i64 p, std::vector<i64> poly, std::vector<i64> moduli, int exponent);

    /// O_q / p^k for the unramified extension of Q_p of degree f.
    static TruncatedRing unramified(i64 p, int f, int k);
    /// O_E / pi^m for a ramified quadratic E/Q_2 with pi^2 = c0 + c1*pi.
    static TruncatedRing ramified_quadratic(i64 c0, i64 c1, int m);

    i64 p() const { return p_; }
    int degree() const { return n_; }
    int exponent() const { return exponent_; }
    const std::vector<i64>& polynomial() const { return poly_; }
    const std::vector<i64>& moduli() const { return moduli_; }
    i64 size() const { return size_; }
    i64 unit_count() const { return unit_count_; }

    i64 encode(const Elem& x) const;
    Elem decode(i64 code) const;
    Elem reduce(Elem x) const;
    Elem from_integer(i64 v) const;
    Elem add(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem pow(Elem x, i64 e) const;
    bool is_unit(const Elem& x) const;
    Elem inverse(const Elem& x) const;
    /// Reduce an element of a finer ring of the same shape into this one.
    Elem project(const Elem& x) const { return reduce(x); }

    TruncatedLocalElement element(const Elem& x) const;

private:
    i64 p_;
    int n_;
    int exponent_;
    std::vector<i64> poly_;
    std::vector<i64> moduli_;
    i64 size_ = 1;
    i64 unit_count_ = 0;
    std::vector<char> residue_unit_;  // indexed by coordinates mod p
};

/// Base field F of a local quadratic extension.
struct LocalBase {
    i64 p = 2;
    int f = 1;  // inertia degree over Q_p
    int e = 1;  // ramification index over Q_p
    std::vector<i64> polynomial;  // defining polynomial of the integral basis
    int zeta8_subfield = 0;       // 1: Q2(sqrt2), 2: Q2(sqrt-2), 3: Q2(i); 0 otherwise

    int degree() const { return f * e; }
    std::string name() const;
};

LocalBase unramified_base(i64 p, int f);
LocalBase zeta8_subfield(int index);

enum class ExtensionModel { sqrt, half_integral, cyclotomic8 };

/// L = F(sqrt(delta)) with O_L = O_F[theta]; theta^2 = trace*theta - norm.
struct LocalQuadExtension {
    LocalBase base;
    i64 radicand = -1;
    ExtensionModel model = ExtensionModel::sqrt;
    bool integral_basis = true;
    i64 theta_trace = 0;
    i64 theta_norm = 1;

    bool ramified() const;
    std::string name() const;
};

/// F(sqrt(delta)) for F unramified over Q_p. Rejects delta with v_p >= 2 or
/// delta a square in F.
LocalQuadExtension quadratic_extension(const LocalBase& base, i64 delta);
/// Q_2(zeta_8) over one of its three quadratic subfields.
LocalQuadExtension zeta8_extension(int subfield_index);

/// Image of N: O_L^x -> O_F^x in a finite quotient of O_F.
struct NormImage {
    TruncatedRing ring;
    std::set<i64> classes;  // encoded elements of ring

    i64 unit_classes() const { return ring.unit_count(); }
    i64 index() const;
    bool contains(const TruncatedRing::Elem& x) const;
    bool contains_integer(i64 u) const;
};

/// Exponent 4 * pi for ramified bases, in pi-adic valuation.
int minimal_norm_precision(const LocalQuadExtension& ext);

/// Precision is p-adic (k) for unramified bases and pi-adic (m) for the
/// ramified subfields of Q_2(zeta_8). Recomputed one level up; a mismatch
/// throws PrecisionInstability.
NormImage norm_unit_image(const LocalQuadExtension& ext, int precision);

/// Norm of a + b t + c t^2 + d t^3 in Z_2[t]/(t^4 + 1) down to the subfield
/// with the given index, as A + B*pi.
std::array<i64, 2> zeta8_norm_form(int subfield_index, i64 a, i64 b, i64 c, i64 d);

bool z2_in_norm_group(const LocalQuadExtension& ext);
bool z2_in_norm_group_by_enumeration(const LocalQuadExtension& ext);

struct UnramifiedSquareStructure {
    i64 square_index = 0;
    int q2_intersection_level = 0;    // decided by t^2 + t + 1 over F_q
    int enumerated_level = 0;         // decided by squares mod 32
};

UnramifiedSquareStructure unramified_square_structure(int f);

struct RamifiedCount {
    i64 containing = 0;
    i64 not_containing = 0;
};

RamifiedCount count_ramified_quadratic_by_norm(int f);

i64 norm_one_square_index(const LocalQuadExtension& ext);

}  // namespace cmtori
