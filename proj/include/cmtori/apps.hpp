#pragma once

// Counting applications: CM points, connected components of unitary
// Shimura varieties, and polarized abelian varieties in an isogeny class.

#include "cmtori/torus.hpp"

namespace cmtori {

/// Level structure indices; the defaults describe the maximal level.
struct LevelData {
    i64 index_U = 1;   // [T(Z^) : U]
    i64 mu_index = 1;  // [mu_K : mu_K cap U]

    Rational factor() const { return Rational(index_U, mu_index); }
};

/// Rejects non-positive indices and a mu_index not dividing w.
void validate_level(const LevelData& level, i64 w);

/// h_T * index_U / mu_index, which must be an integer.
i64 double_coset_cardinality(i64 h_T, const LevelData& level);

/// Level-adjusted h(T^{K,Q}). An interval h_T scales endpoint-wise.
Interval cm_point_count(const CMAlgebraSpec& spec, const LevelData& level = {},
                        const Overrides& overrides = {});

struct ShimuraInput {
    CMAlgebraSpec field;
    int n = 2;
    LevelData level;
    bool noncompact_assertion = false;
};

extern const char* const kNoncompactHypothesis;

Interval shimura_components(const ShimuraInput& input, const Overrides& overrides = {});

struct IsogenyCounts {
    Interval lambda_count;      // level-adjusted h(T^K_1)
    Interval similitude_count;  // level-adjusted h(T^{K,Q})
};

IsogenyCounts isogeny_class_counts(const CMAlgebraSpec& spec, const LevelData& level_lambda = {},
                                   const LevelData& level_I = {}, const Overrides& overrides = {});

}  // namespace cmtori
