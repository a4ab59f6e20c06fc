#include <doctest.h>

#include "cmtori/apps.hpp"
#include "cmtori/errors.hpp"

using namespace cmtori;

namespace {

ShimuraInput shimura(i64 d, i64 j, int n, LevelData level = {}) {
    return {CMAlgebraSpec::biquadratic(d, j), n, level, true};
}

}  // namespace

TEST_CASE("double coset cardinality") {
    CHECK(double_coset_cardinality(2, {1, 1}) == 2);
    CHECK(double_coset_cardinality(2, {3, 1}) == 6);
    CHECK(double_coset_cardinality(4, {3, 2}) == 6);
    CHECK_THROWS_AS(double_coset_cardinality(1, {2, 4}), InconsistentLevel);
    CHECK_THROWS(double_coset_cardinality(0, {1, 1}));
    CHECK_THROWS(double_coset_cardinality(1, {0, 1}));
}

TEST_CASE("level validation") {
    CHECK_NOTHROW(validate_level({1, 4}, 8));
    CHECK_THROWS_AS(validate_level({1, 3}, 8), InconsistentLevel);
    CHECK_THROWS(validate_level({0, 1}, 2));
}

TEST_CASE("CM point counts") {
    CHECK(cm_point_count(CMAlgebraSpec::biquadratic(17, 1)) == Interval::exact(2));
    CHECK(cm_point_count(CMAlgebraSpec::imaginary_quadratic(-1)) == Interval::exact(1));
    CHECK(cm_point_count(CMAlgebraSpec::biquadratic(2, 1), {5, 1}) == Interval::exact(5));
    CHECK_THROWS_AS(cm_point_count(CMAlgebraSpec::biquadratic(2, 1), {1, 3}), InconsistentLevel);
    auto prod = cm_point_count(CMAlgebraSpec({QuadraticField(-1), QuadraticField(-2)}), {3, 1});
    CHECK(prod == Interval{Rational(3), Rational(12)});
}

TEST_CASE("CM point count is linear in index_U") {
    for (i64 d : {2, 3, 5, 17, 21}) {
        auto spec = CMAlgebraSpec::biquadratic(d, 1);
        Overrides ov;
        if (!hasse_unit_index(spec.components[0])) ov.Q = 1;
        auto base = cm_point_count(spec, {}, ov);
        CHECK(base == class_number(spec, ov).h_T);
        for (i64 k = 1; k <= 12; ++k) CHECK(cm_point_count(spec, {k, 1}, ov) == base.scaled(Rational(k)));
    }
}

TEST_CASE("Shimura components") {
    CHECK(shimura_components(shimura(17, 1, 3)) == Interval::exact(2));
    CHECK(shimura_components(shimura(17, 1, 2)) == Interval::exact(1));
    CHECK(shimura_components(shimura(2, 1, 5)) == Interval::exact(1));
    auto no = shimura(17, 1, 3);
    no.noncompact_assertion = false;
    try {
        shimura_components(no);
        FAIL("expected HypothesisNotAsserted");
    } catch (const HypothesisNotAsserted& e) {
        CHECK(std::string(e.what()).find(kNoncompactHypothesis) != std::string::npos);
    }
    CHECK_THROWS(shimura_components(shimura(17, 1, 1)));
    ShimuraInput prod{CMAlgebraSpec({QuadraticField(-1), QuadraticField(-2)}), 3, {}, true};
    CHECK_THROWS(shimura_components(prod));
}

TEST_CASE("Shimura components depend only on the parity of n") {
    for (i64 d = 2; d < 40; ++d) {
        if (!is_prime(d)) continue;
        for (i64 j : {1, 2, 3, 5, 7}) {
            auto odd = shimura_components(shimura(d, j, 3));
            auto even = shimura_components(shimura(d, j, 2));
            CHECK(odd == class_number(CMAlgebraSpec::biquadratic(d, j)).h_T);
            CHECK(even == Interval::exact(class_number_norm_one(CMAlgebraSpec::biquadratic(d, j))));
            for (int n = 2; n <= 9; ++n) CHECK(shimura_components(shimura(d, j, n)) == (n % 2 ? odd : even));
        }
    }
}

TEST_CASE("even rank does not need the Hasse unit index") {
    auto even = shimura_components(shimura(15, 7, 4));
    CHECK(even.is_exact());
    CHECK(even.lo.is_integer());
}

TEST_CASE("isogeny class counts") {
    auto a = isogeny_class_counts(CMAlgebraSpec::biquadratic(17, 1));
    CHECK(a.lambda_count == Interval::exact(1));
    CHECK(a.similitude_count == Interval::exact(2));
    auto b = isogeny_class_counts(CMAlgebraSpec::imaginary_quadratic(-5));
    CHECK(b.lambda_count == Interval::exact(1));
    CHECK(b.similitude_count == Interval::exact(2));
    auto c = isogeny_class_counts(CMAlgebraSpec::biquadratic(2, 1));
    CHECK(c.lambda_count == Interval::exact(1));
    CHECK(c.similitude_count == Interval::exact(1));
    auto d = isogeny_class_counts(CMAlgebraSpec::biquadratic(17, 1), {4, 2}, {3, 1});
    CHECK(d.lambda_count == Interval::exact(2));
    CHECK(d.similitude_count == Interval::exact(6));
}

TEST_CASE("maximal level counts equal the torus class numbers") {
    for (i64 m = -80; m < 0; ++m) {
        if (!is_squarefree(m)) continue;
        auto spec = CMAlgebraSpec::imaginary_quadratic(m);
        auto rep = class_number(spec);
        auto counts = isogeny_class_counts(spec);
        CHECK(counts.similitude_count == rep.h_T);
        CHECK(counts.lambda_count == Interval::exact(rep.h_T1));
        CHECK(cm_point_count(spec) == rep.h_T);
    }
}
