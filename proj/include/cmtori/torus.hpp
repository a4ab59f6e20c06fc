#pragma once

// Class numbers and Tamagawa numbers of the CM tori T^{K,Q} and T^K_1 for
// CM algebras built from imaginary quadratic and biquadratic CM fields.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmtori/arith.hpp"
#include "cmtori/quadratic.hpp"

namespace cmtori {

using CMComponent = std::variant<QuadraticField, BiquadraticCM>;

struct CMAlgebraSpec {
    std::vector<CMComponent> components;

    CMAlgebraSpec() = default;
    explicit CMAlgebraSpec(std::vector<CMComponent> comps);
    static CMAlgebraSpec imaginary_quadratic(i64 m);
    static CMAlgebraSpec biquadratic(i64 d, i64 j);

    int r() const { return static_cast<int>(components.size()); }
    /// [K+ : Q]
    int kplus_degree() const;
    bool single() const { return components.size() == 1; }

    friend bool operator==(const CMAlgebraSpec&, const CMAlgebraSpec&) = default;
};

/// Validates a component (an imaginary quadratic field must have m < 0).
void validate_component(const CMComponent& c);

struct RamifiedPlace {
    i64 p = 0;
    int component = 0;
    std::optional<SplittingType> in_kplus;  // empty when K_i+ = Q
    int inertia_degree = 1;                 // f_v
    int multiplicity = 1;                   // places of K_i+ above p
    bool totally_ramified = false;
};

struct ComponentProfile {
    int t = 0;
    int s = 0;
    std::vector<i64> S;
    bool totally_ramified_2 = false;
};

struct RamificationProfile {
    std::vector<ComponentProfile> components;
    std::vector<RamifiedPlace> places;  // one entry per (component, p); multiplicity counts places
    int t = 0;
    int r = 0;
    int s = 0;
    std::vector<i64> S;
    bool totally_ramified_2 = false;
};

RamificationProfile ramification_profile(const CMAlgebraSpec& spec);

struct LocalIndexEntry {
    int e_value = 1;
    int exponent = 0;
    std::string reason;
};

struct LocalIndexReport {
    std::map<i64, LocalIndexEntry> entries;
    int total_exponent = 0;

    i64 product() const;
};

LocalIndexEntry local_index(const CMAlgebraSpec& spec, i64 p);
LocalIndexReport local_indices(const CMAlgebraSpec& spec);

struct GlobalIndex {
    i64 value = 1;  // exact value, or the divisor bound when inexact
    bool exact = true;
};

GlobalIndex global_norm_index(const CMAlgebraSpec& spec);

/// Hasse unit index of one component; nullopt when not determined here.
std::optional<int> hasse_unit_index(const CMComponent& c);

struct Overrides {
    std::optional<i64> h_K;
    std::optional<i64> h_Kplus;
    std::optional<int> Q;

    bool any() const { return h_K || h_Kplus || Q; }
};

struct ClassNumberReport {
    CMAlgebraSpec spec;
    RamificationProfile profile;
    LocalIndexReport local;
    GlobalIndex global_index;

    Interval h_T;
    Rational h_T1;
    Interval tamagawa;

    std::optional<i64> h_K;
    i64 h_Kplus = 1;
    std::optional<int> Q;
    Rational relative;  // h_K / (h_K+ * Q)
    i64 mu_order = 2;

    std::optional<Interval> main_route;    // assembled from local and global indices
    std::optional<Interval> closed_route;  // closed forms for single components
    std::optional<bool> route_agreement;
};

ClassNumberReport class_number(const CMAlgebraSpec& spec, const Overrides& overrides = {});

/// Closed form for K = Q(sqrt p, sqrt -j), j in {1, 2, 3}: h(-jp) when j = 1 and
/// p = 3 mod 4, h(-jp)/2 otherwise, and 1 for Q(i, sqrt 2).
i64 class_number_family_sqrt_p_j(i64 p, i64 j);

Rational class_number_norm_one(const CMAlgebraSpec& spec, const Overrides& overrides = {});

Interval tamagawa(const CMAlgebraSpec& spec);

struct QSymbols {
    Rational q_infty;
    Rational q_Z;
    Rational q_gamma;
    std::map<i64, Rational> q_p;
    Interval assembled_ratio;  // h(T^{K,Q}) / h(T^K_1)
};

QSymbols q_symbols(const CMAlgebraSpec& spec);

enum class CheckStatus { pass, fail, skipped };
const char* to_string(CheckStatus s);

struct ConsistencyCheck {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    std::string detail;
};

struct ConsistencyReport {
    std::vector<ConsistencyCheck> checks;
    bool ok() const;
};

ConsistencyReport verify_consistency(const CMAlgebraSpec& spec, const Overrides& overrides = {});

}  // namespace cmtori
