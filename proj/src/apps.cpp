#include "cmtori/apps.hpp"

#include <stdexcept>
#include <string>

#include "cmtori/errors.hpp"

namespace cmtori {

const char* const kNoncompactHypothesis = "Assume that G^der(R) is not compact";

void validate_level(const LevelData& level, i64 w) {
    if (level.index_U < 1) throw std::invalid_argument("index_U must be a positive integer");
    if (level.mu_index < 1) throw std::invalid_argument("mu_index must be a positive integer");
    if (w % level.mu_index != 0)
        throw InconsistentLevel("inconsistent level data: mu_index " + std::to_string(level.mu_index) +
                                " does not divide |mu_K| = " + std::to_string(w));
}

i64 double_coset_cardinality(i64 h_T, const LevelData& level) {
    if (h_T < 1) throw std::invalid_argument("h_T must be a positive integer");
    if (level.index_U < 1 || level.mu_index < 1) throw std::invalid_argument("level indices must be positive");
    Rational v = Rational(h_T) * level.factor();
    if (!v.is_integer())
        throw InconsistentLevel("inconsistent level data: " + std::to_string(h_T) + " * " +
                                std::to_string(level.index_U) + " / " + std::to_string(level.mu_index) +
                                " is not an integer");
    return v.num();
}

namespace {

Interval level_adjusted(const Interval& h, const LevelData& level) {
    if (h.is_exact()) {
        if (!h.lo.is_integer()) throw std::logic_error("exact class number is not an integer");
        return Interval::exact(Rational(double_coset_cardinality(h.lo.num(), level)));
    }
    return h.scaled(level.factor());
}

}  // namespace

Interval cm_point_count(const CMAlgebraSpec& spec, const LevelData& level, const Overrides& overrides) {
    auto rep = class_number(spec, overrides);
    validate_level(level, rep.mu_order);
    return level_adjusted(rep.h_T, level);
}

Interval shimura_components(const ShimuraInput& input, const Overrides& overrides) {
    if (!input.noncompact_assertion)
        throw HypothesisNotAsserted(std::string("hypothesis not asserted: \"") + kNoncompactHypothesis + "\"");
    if (input.n < 2) throw std::invalid_argument("n must be at least 2");
    if (!input.field.single()) throw std::invalid_argument("the Shimura count needs a single CM field");
    auto rep = class_number(input.field, overrides);
    validate_level(input.level, rep.mu_order);
    if (input.n % 2 == 1) return level_adjusted(rep.h_T, input.level);
    // D = T^{K,1} x G_m and h(G_m) = 1
    return level_adjusted(Interval::exact(rep.h_T1), input.level);
}

IsogenyCounts isogeny_class_counts(const CMAlgebraSpec& spec, const LevelData& level_lambda,
                                   const LevelData& level_I, const Overrides& overrides) {
    auto rep = class_number(spec, overrides);
    validate_level(level_lambda, rep.mu_order);
    validate_level(level_I, rep.mu_order);
    return {level_adjusted(Interval::exact(rep.h_T1), level_lambda), level_adjusted(rep.h_T, level_I)};
}

}  // namespace cmtori
