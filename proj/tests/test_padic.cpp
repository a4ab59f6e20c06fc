#include <doctest.h>

#include "cmtori/errors.hpp"
#include "cmtori/padic.hpp"

using namespace cmtori;

namespace {

const std::vector<i64> kLattice{1, -1, 2, -2, 5, -5, 10, -10, 3, -3, 7, 6, 14};
const std::vector<i64> kPrimes{2, 3, 5, 7, 13};

std::vector<LocalQuadExtension> q2_extensions() {
    std::vector<LocalQuadExtension> out;
    for (i64 delta : {-1, 3, 2, -2, 6, -6, 5, -3}) out.push_back(quadratic_extension(unramified_base(2, 1), delta));
    for (i64 delta : {-1, 2, -2, 6, -6, 3}) out.push_back(quadratic_extension(unramified_base(2, 2), delta));
    return out;
}

// Is u a square of a unit in Q_2? u odd: u = 1 mod 8.
bool q2_unit_square(i64 u) { return mod(u, 8) == 1; }

}  // namespace

TEST_CASE("hilbert symbol examples") {
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, -1, 5) == 1);
    CHECK(hilbert_symbol(2, -1, 2) == 1);
    CHECK(hilbert_symbol_bruteforce(-1, -1, 2) == -1);
    CHECK(hilbert_symbol_bruteforce(5, -2, 2) == -1);
    CHECK(hilbert_symbol_bruteforce(5, -1, 2) == 1);
    CHECK(hilbert_symbol(Rational(1, 2), 3, 2) == hilbert_symbol(2, 3, 2));
    CHECK_THROWS(hilbert_symbol(0, 3, 2));
    CHECK_THROWS(hilbert_symbol(1, 3, 4));
}

TEST_CASE("hilbert symbol properties on the lattice") {
    for (i64 p : kPrimes) {
        for (i64 a : kLattice) {
            CHECK(hilbert_symbol(a, -a, p) == 1);
            for (i64 b : kLattice) {
                int h = hilbert_symbol(a, b, p);
                CHECK(h == hilbert_symbol_bruteforce(a, b, p));
                CHECK(h == hilbert_symbol(b, a, p));
                for (i64 c : kLattice) CHECK(hilbert_symbol(a, b * c, p) == h * hilbert_symbol(a, c, p));
            }
        }
    }
}

TEST_CASE("hilbert symbols satisfy the product formula") {
    for (i64 a : kLattice) {
        for (i64 b : kLattice) {
            int prod = (a < 0 && b < 0) ? -1 : 1;
            for (i64 p : {2, 3, 5, 7, 13}) prod *= hilbert_symbol(a, b, p);
            CHECK_MESSAGE(prod == 1, "a=" << a << " b=" << b);
        }
    }
}

TEST_CASE("local norm symbol reduces to the Hilbert symbol of a power") {
    for (i64 u : kLattice)
        for (i64 delta : kLattice) {
            CHECK(local_norm_symbol(u, 1, delta, 2) == hilbert_symbol(u, delta, 2));
            CHECK(local_norm_symbol(u, 2, delta, 2) == 1);
        }
}

TEST_CASE("truncated ring arithmetic") {
    auto R = TruncatedRing::unramified(2, 2, 3);
    CHECK(R.size() == 64);
    CHECK(R.unit_count() == 48);
    for (i64 code = 0; code < R.size(); ++code) {
        auto x = R.decode(code);
        CHECK(R.encode(x) == code);
        if (R.is_unit(x)) {
            CHECK(R.mul(x, R.inverse(x)) == R.from_integer(1));
        }
    }
    auto x = R.decode(13);
    CHECK(R.pow(x, 3) == R.mul(x, R.mul(x, x)));
    CHECK(R.add(x, R.neg(x)) == R.from_integer(0));

    auto E = TruncatedRing::ramified_quadratic(2, 0, 5);
    CHECK(E.size() == 32);
    CHECK(E.unit_count() == 16);
    auto el = R.element(R.decode(5));
    CHECK(el.modulus_exponent == 3);
    CHECK(el.coefficients.size() == 2);
    for (i64 c : el.coefficients) CHECK((c >= 0 && c < 8));
}

TEST_CASE("norm image examples") {
    auto L = quadratic_extension(unramified_base(2, 2), -1);
    CHECK(norm_unit_image(L, 3).contains_integer(-1));
    for (int i = 1; i <= 3; ++i) {
        auto img = norm_unit_image(zeta8_extension(i), 5);
        for (i64 u : {1, 3, 5, 7}) CHECK(img.contains_integer(u));
    }
    auto U = quadratic_extension(unramified_base(2, 1), 5);
    CHECK_FALSE(U.ramified());
    CHECK(norm_unit_image(U, 3).index() == 1);
    CHECK_THROWS(norm_unit_image(U, 2));
}

TEST_CASE("extension constructor rejects squares and high valuation") {
    CHECK_THROWS(quadratic_extension(unramified_base(2, 1), 17));
    CHECK_THROWS(quadratic_extension(unramified_base(2, 1), 4));
    CHECK_THROWS(quadratic_extension(unramified_base(2, 2), -3));
    CHECK_THROWS(quadratic_extension(unramified_base(5, 1), 4));
    CHECK_THROWS(quadratic_extension(unramified_base(5, 1), 25));
}

TEST_CASE("norm images are subgroups containing the squares") {
    auto exts = q2_extensions();
    for (int i = 1; i <= 3; ++i) exts.push_back(zeta8_extension(i));
    for (i64 p : {3, 5})
        for (i64 delta : {p, -p, p == 3 ? i64{-1} : i64{2}})
            exts.push_back(quadratic_extension(unramified_base(p, 1), delta));
    for (const auto& ext : exts) {
        auto img = norm_unit_image(ext, minimal_norm_precision(ext));
        const auto& R = img.ring;
        for (i64 code = 0; code < R.size(); ++code) {
            auto x = R.decode(code);
            if (!R.is_unit(x)) continue;
            CHECK_MESSAGE(img.contains(R.mul(x, x)), ext.name());
        }
        for (i64 a : img.classes)
            for (i64 b : img.classes) CHECK(img.classes.count(R.encode(R.mul(R.decode(a), R.decode(b)))));
    }
}

TEST_CASE("local norm index is 1 unramified and 2 ramified") {
    auto exts = q2_extensions();
    for (int i = 1; i <= 3; ++i) exts.push_back(zeta8_extension(i));
    for (const auto& ext : exts) {
        int k = ext.model == ExtensionModel::cyclotomic8 ? 5 : 4;
        CHECK_MESSAGE(norm_unit_image(ext, k).index() == (ext.ramified() ? 2 : 1), ext.name());
    }
    CHECK(norm_unit_image(quadratic_extension(unramified_base(3, 1), 3), 1).index() == 2);
    CHECK(norm_unit_image(quadratic_extension(unramified_base(3, 1), -1), 1).index() == 1);
}

TEST_CASE("Z_2^x criterion") {
    CHECK_FALSE(z2_in_norm_group(quadratic_extension(unramified_base(2, 1), -1)));
    CHECK(z2_in_norm_group(zeta8_extension(3)));
    CHECK(z2_in_norm_group(quadratic_extension(unramified_base(2, 1), 5)));
    CHECK_THROWS(z2_in_norm_group(quadratic_extension(unramified_base(3, 1), 3)));
    for (const auto& ext : q2_extensions()) {
        auto img = norm_unit_image(ext, 3);
        bool direct = img.contains_integer(-1) && img.contains_integer(5);
        CHECK_MESSAGE(z2_in_norm_group(ext) == direct, ext.name());
        CHECK(z2_in_norm_group_by_enumeration(ext) == direct);
    }
}

TEST_CASE("Z_2^x criterion over Q_2 matches Hilbert symbols") {
    for (i64 delta : {-1, 3, 2, -2, 6, -6, 5, -3, 10, -10}) {
        auto ext = quadratic_extension(unramified_base(2, 1), delta);
        bool want = hilbert_symbol(-1, delta, 2) == 1 && hilbert_symbol(5, delta, 2) == 1;
        CHECK_MESSAGE(z2_in_norm_group(ext) == want, delta);
    }
}

TEST_CASE("unramified square structure") {
    int level[] = {0, 8, 4, 8, 4};
    for (int f = 1; f <= 4; ++f) {
        auto st = unramified_square_structure(f);
        CHECK(st.square_index == (i64{1} << (f + 1)));
        CHECK(st.q2_intersection_level == level[f]);
        CHECK(st.enumerated_level == level[f]);
    }
    CHECK_THROWS(unramified_square_structure(5));
}

TEST_CASE("squares of Z_2 units are the classes 1 mod 8") {
    auto R = TruncatedRing::unramified(2, 1, 5);
    std::set<i64> squares;
    for (i64 u = 1; u < 32; u += 2) squares.insert(mod(u * u, 32));
    for (i64 u = 1; u < 32; u += 2) CHECK(squares.count(u) == (q2_unit_square(u) ? 1u : 0u));
    CHECK(R.unit_count() == 16);
}

TEST_CASE("ramified quadratic extensions counted by norm group") {
    auto c1 = count_ramified_quadratic_by_norm(1);
    auto c2 = count_ramified_quadratic_by_norm(2);
    auto c3 = count_ramified_quadratic_by_norm(3);
    CHECK(c1.containing == 0);
    CHECK(c1.not_containing == 6);
    CHECK(c2.containing == 6);
    CHECK(c2.not_containing == 8);
    CHECK(c3.containing == 6);
    CHECK(c3.not_containing == 24);
    for (int f = 1; f <= 3; ++f) {
        auto c = count_ramified_quadratic_by_norm(f);
        CHECK(c.containing + c.not_containing == (i64{1} << (f + 2)) - 2);
    }
    CHECK_THROWS(count_ramified_quadratic_by_norm(4));
}

TEST_CASE("ramified count over Q_2 agrees with the six extensions") {
    int containing = 0;
    for (i64 delta : {-1, 3, 2, -2, 6, -6})
        containing += z2_in_norm_group(quadratic_extension(unramified_base(2, 1), delta));
    CHECK(containing == count_ramified_quadratic_by_norm(1).containing);
}

TEST_CASE("norm-one square index") {
    CHECK(norm_one_square_index(quadratic_extension(unramified_base(5, 1), 2)) == 2);
    CHECK(norm_one_square_index(quadratic_extension(unramified_base(2, 1), -1)) == 4);
    CHECK(norm_one_square_index(quadratic_extension(unramified_base(2, 2), -1)) == 8);
    CHECK(norm_one_square_index(quadratic_extension(unramified_base(3, 1), 3)) == 2);
    CHECK(norm_one_square_index(quadratic_extension(unramified_base(2, 1), 5)) == 4);
    CHECK_THROWS(norm_one_square_index(zeta8_extension(1)));
}

TEST_CASE("zeta8 norm forms agree with the ring norm") {
    TruncatedRing ring(2, {1, 0, 0, 0, 1}, {8, 8, 8, 8}, 3);
    for (i64 code = 0; code < ring.size(); code += 7) {
        auto x = ring.decode(code);
        // sigma for the subfield Q_2(i) is t -> -t; t^2 = i
        auto sx = ring.reduce({x[0], -x[1], x[2], -x[3]});
        auto n = ring.mul(x, sx);
        auto f = zeta8_norm_form(3, x[0], x[1], x[2], x[3]);
        CHECK(n[1] == 0);
        CHECK(n[3] == 0);
        CHECK(mod(f[0] - n[0] - n[2], 8) == 0);
        CHECK(mod(f[1] - n[2], 8) == 0);
    }
}
