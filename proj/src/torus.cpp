#include "cmtori/torus.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cmtori/errors.hpp"
#include "cmtori/padic.hpp"

namespace cmtori {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool divides(i64 p, i64 n) { return n % p == 0; }

std::string str(const Interval& iv) {
    std::ostringstream os;
    os << iv;
    return os.str();
}

}  // namespace

void validate_component(const CMComponent& c) {
    if (auto q = std::get_if<QuadraticField>(&c); q && !q->imaginary())
        throw std::invalid_argument("CM component Q(sqrt " + std::to_string(q->m) + ") is not imaginary");
}

CMAlgebraSpec::CMAlgebraSpec(std::vector<CMComponent> comps) : components(std::move(comps)) {
    if (components.empty()) throw std::invalid_argument("a CM algebra needs at least one component");
    for (const auto& c : components) validate_component(c);
}

CMAlgebraSpec CMAlgebraSpec::imaginary_quadratic(i64 m) { return CMAlgebraSpec({QuadraticField(m)}); }

CMAlgebraSpec CMAlgebraSpec::biquadratic(i64 d, i64 j) { return CMAlgebraSpec({BiquadraticCM(d, j)}); }

int CMAlgebraSpec::kplus_degree() const {
    int d = 0;
    for (const auto& c : components) d += std::holds_alternative<QuadraticField>(c) ? 1 : 2;
    return d;
}

RamificationProfile ramification_profile(const CMAlgebraSpec& spec) {
    RamificationProfile prof;
    prof.r = spec.r();
    std::set<i64> all;
    for (int i = 0; i < spec.r(); ++i) {
        ComponentProfile cp;
        std::visit(overloaded{
                       [&](const QuadraticField& k) {
                           for (i64 p : prime_divisors(k.disc)) {
                               prof.places.push_back({p, i, std::nullopt, 1, 1, false});
                               cp.S.push_back(p);
                               ++cp.t;
                           }
                       },
                       [&](const BiquadraticCM& k) {
                           const auto F = k.F(), E = k.E(), E2 = k.E_prime();
                           std::set<i64> primes;
                           for (i64 D : {F.disc, E.disc, E2.disc})
                               for (i64 p : prime_divisors(D)) primes.insert(p);
                           for (i64 p : primes) {
                               bool ram_e = divides(p, E.disc), ram_f = divides(p, F.disc);
                               bool ram_e2 = divides(p, E2.disc);
                               bool total = p == 2 && ram_e && ram_f && ram_e2;
                               if (!((ram_e && !ram_f) || total)) continue;
                               auto type = splitting_type(F, p);
                               RamifiedPlace v{p, i, type, type == SplittingType::inert ? 2 : 1,
                                               type == SplittingType::split ? 2 : 1, total};
                               prof.places.push_back(v);
                               cp.S.push_back(p);
                               cp.t += v.multiplicity;
                               if (ram_e && type == SplittingType::split) ++cp.s;
                               cp.totally_ramified_2 = cp.totally_ramified_2 || total;
                           }
                       },
                   },
                   spec.components[i]);
        prof.t += cp.t;
        prof.s += cp.s;
        prof.totally_ramified_2 = prof.totally_ramified_2 || cp.totally_ramified_2;
        all.insert(cp.S.begin(), cp.S.end());
        prof.components.push_back(std::move(cp));
    }
    prof.S.assign(all.begin(), all.end());
    return prof;
}

i64 LocalIndexReport::product() const {
    i64 prod = 1;
    for (const auto& [p, e] : entries) prod = checked_mul(prod, e.e_value);
    return prod;
}

namespace {

LocalIndexEntry local_index_from(const CMAlgebraSpec& spec, const RamificationProfile& prof, i64 p) {
    std::vector<const RamifiedPlace*> here;
    for (const auto& v : prof.places)
        if (v.p == p) here.push_back(&v);
    LocalIndexEntry out;
    if (here.empty()) {
        out.reason = "unramified in K/K+";
        return out;
    }
    if (p != 2) {
        bool odd = std::any_of(here.begin(), here.end(), [](auto* v) { return v->inertia_degree % 2 == 1; });
        out.exponent = odd ? 1 : 0;
        out.e_value = odd ? 2 : 1;
        out.reason = odd ? "ramified place with odd inertia degree" : "ramified places have even inertia degree";
        return out;
    }
    // Each ramified place above 2 cuts out the kernel of
    // u -> ((u, L_w/F_v)) on Z_2^x / squares = <-1> x <5>.
    std::set<unsigned> pairs;
    std::vector<std::string> kinds;
    for (auto* v : here) {
        const auto& comp = spec.components[v->component];
        i64 delta;
        int base_degree;
        if (auto k = std::get_if<QuadraticField>(&comp)) {
            delta = k->m;
            base_degree = 1;
            kinds.push_back("imaginary quadratic");
        } else {
            const auto& b = std::get<BiquadraticCM>(comp);
            delta = -b.j;
            base_degree = v->in_kplus == SplittingType::split ? 1 : 2;
            if (v->totally_ramified)
                kinds.push_back("totally ramified");
            else
                kinds.push_back(v->in_kplus == SplittingType::split ? "split in F" : "inert in F");
        }
        unsigned bits = 0;
        if (local_norm_symbol(-1, base_degree, delta, 2) == -1) bits |= 1u;
        if (local_norm_symbol(5, base_degree, delta, 2) == -1) bits |= 2u;
        pairs.insert(bits);
    }
    std::set<unsigned> span{0};
    for (unsigned b : pairs) {
        std::set<unsigned> next = span;
        for (unsigned x : span) next.insert(x ^ b);
        span = std::move(next);
    }
    out.e_value = static_cast<int>(span.size());
    out.exponent = out.e_value == 4 ? 2 : out.e_value == 2 ? 1 : 0;
    std::ostringstream os;
    if (spec.single() && std::holds_alternative<BiquadraticCM>(spec.components[0]))
        os << "2 " << kinds.front();
    else
        os << "symbol pairs at 2 of rank " << out.exponent;
    out.reason = os.str();
    return out;
}

}  // namespace

LocalIndexEntry local_index(const CMAlgebraSpec& spec, i64 p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    return local_index_from(spec, ramification_profile(spec), p);
}

LocalIndexReport local_indices(const CMAlgebraSpec& spec) {
    auto prof = ramification_profile(spec);
    LocalIndexReport rep;
    for (i64 p : prof.S) {
        auto e = local_index_from(spec, prof, p);
        rep.total_exponent += e.exponent;
        rep.entries.emplace(p, std::move(e));
    }
    return rep;
}

GlobalIndex global_norm_index(const CMAlgebraSpec& spec) {
    if (spec.single()) {
        // A CM field containing two distinct imaginary quadratic fields has index 1.
        if (std::holds_alternative<QuadraticField>(spec.components[0])) return {2, true};
        return {1, true};
    }
    i64 bound = local_indices(spec).product();
    return {bound, bound == 1};
}

std::optional<int> hasse_unit_index(const CMComponent& c) {
    if (std::holds_alternative<QuadraticField>(c)) return 1;
    const auto& k = std::get<BiquadraticCM>(c);
    if (k.is_zeta8()) return 1;
    if (!is_prime(k.d)) return std::nullopt;
    if (mod(k.d, 4) == 3 && (k.contains_subfield(-1) || k.contains_subfield(-2))) return 2;
    return 1;
}

Interval tamagawa(const CMAlgebraSpec& spec) {
    auto g = global_norm_index(spec);
    Rational top = pow2(spec.r());
    if (g.exact) return Interval::exact(top / Rational(g.value));
    return {top / Rational(g.value), top};
}

namespace {

struct ComponentInvariants {
    Rational relative;  // h_K / (h_K+ Q), free of Q
    i64 h_Kplus = 1;
    std::optional<int> Q;
    std::optional<i64> h_K;
    std::optional<Interval> closed;
    i64 w = 2;
};

ComponentInvariants component_invariants(const CMComponent& c, const ComponentProfile& cp) {
    ComponentInvariants out;
    out.Q = hasse_unit_index(c);
    if (auto k = std::get_if<QuadraticField>(&c)) {
        i64 h = class_number_imaginary(k->disc);
        out.relative = Rational(h);
        out.h_K = h;
        out.closed = Interval::exact(Rational(h));
        out.w = roots_of_unity_order(*k);
        return out;
    }
    const auto& k = std::get<BiquadraticCM>(c);
    out.w = roots_of_unity_order(k);
    out.h_Kplus = class_number_real(k.F().disc);
    if (k.is_zeta8()) {
        out.relative = Rational(1);
        out.h_K = 1;
        out.closed = Interval::exact(Rational(1));
        return out;
    }
    i64 hE = class_number_imaginary(k.E().disc);
    i64 hE2 = class_number_imaginary(k.E_prime().disc);
    out.relative = Rational(hE * hE2, 2);
    if (out.Q) {
        Rational hK = Rational(*out.Q * out.h_Kplus) * out.relative;
        if (!hK.is_integer()) throw std::logic_error("Herglotz relation gives a non-integral class number");
        out.h_K = hK.num();
    }
    out.closed = Interval::exact(Rational(hE * hE2) / pow2(static_cast<int>(cp.S.size())));
    return out;
}

void require_positive(const std::optional<i64>& v, const char* name) {
    if (v && *v <= 0) throw std::invalid_argument(std::string(name) + " must be a positive integer");
}

}  // namespace

ClassNumberReport class_number(const CMAlgebraSpec& spec, const Overrides& ov) {
    require_positive(ov.h_K, "h_K");
    require_positive(ov.h_Kplus, "h_Kplus");
    if (ov.Q && *ov.Q != 1 && *ov.Q != 2) throw std::invalid_argument("Q must be 1 or 2");

    ClassNumberReport rep;
    rep.spec = spec;
    rep.profile = ramification_profile(spec);
    rep.local = local_indices(spec);
    rep.global_index = global_norm_index(spec);
    rep.tamagawa = tamagawa(spec);

    Rational relative(1);
    i64 hKplus = 1;
    std::optional<int> Q = 1;
    std::optional<i64> hK = 1;
    rep.mu_order = 1;
    for (int i = 0; i < spec.r(); ++i) {
        auto ci = component_invariants(spec.components[i], rep.profile.components[i]);
        relative = relative * ci.relative;
        hKplus = checked_mul(hKplus, ci.h_Kplus);
        Q = (Q && ci.Q) ? std::optional<int>(*Q * *ci.Q) : std::nullopt;
        hK = (hK && ci.h_K) ? std::optional<i64>(checked_mul(*hK, *ci.h_K)) : std::nullopt;
        rep.mu_order = checked_mul(rep.mu_order, ci.w);
        if (spec.single()) rep.closed_route = ci.closed;
    }

    if (ov.h_Kplus && *ov.h_Kplus != hKplus)
        throw InconsistentInvariants("h_Kplus override " + std::to_string(*ov.h_Kplus) + " contradicts computed " +
                                     std::to_string(hKplus));
    if (ov.Q) {
        if (Q && *Q != *ov.Q)
            throw InconsistentInvariants("Q override " + std::to_string(*ov.Q) + " contradicts computed " +
                                         std::to_string(*Q));
        Q = ov.Q;
    }
    if (Q && !hK) {
        Rational v = Rational(*Q * hKplus) * relative;
        if (!v.is_integer())
            throw InconsistentInvariants("Q = " + std::to_string(*Q) + " gives a non-integral h_K");
        hK = v.num();
    }
    if (ov.h_K) {
        if (hK && *hK != *ov.h_K)
            throw InconsistentInvariants("h_K override " + std::to_string(*ov.h_K) + " contradicts " +
                                         std::to_string(*hK));
        if (!Q) {
            // Q follows from h_K = Q * h_K+ * relative.
            Rational q = Rational(*ov.h_K) / (Rational(hKplus) * relative);
            if (!(q == Rational(1) || q == Rational(2)))
                throw InconsistentInvariants("h_K override " + std::to_string(*ov.h_K) +
                                             " implies a Hasse unit index outside {1, 2}");
            Q = static_cast<int>(q.num());
        }
        hK = ov.h_K;
    }
    rep.h_K = hK;
    rep.Q = Q;
    rep.h_Kplus = hKplus;
    rep.relative = relative;

    const auto& prof = rep.profile;
    rep.h_T1 = relative / pow2(prof.t - prof.r);
    if (!rep.h_T1.is_integer() || rep.h_T1 <= Rational(0))
        throw std::logic_error("h(T_1) = " + rep.h_T1.str() + " is not a positive integer");

    Rational prod_e(rep.local.product());
    if (rep.global_index.exact)
        rep.main_route = Interval::exact(prod_e / Rational(rep.global_index.value) * rep.h_T1);
    else
        rep.main_route = Interval{prod_e / Rational(rep.global_index.value) * rep.h_T1, prod_e * rep.h_T1};

    if (rep.closed_route) {
        const Rational v = rep.closed_route->lo;
        rep.route_agreement = rep.main_route->is_exact() ? rep.main_route->lo == v : rep.main_route->contains(v);
        if (!*rep.route_agreement)
            throw std::logic_error("class number routes disagree: closed form " + v.str() + ", assembled " +
                                   str(*rep.main_route));
        rep.h_T = *rep.closed_route;
    } else {
        rep.h_T = *rep.main_route;
    }
    if (rep.h_T.is_exact() && (!rep.h_T.lo.is_integer() || rep.h_T.lo <= Rational(0)))
        throw std::logic_error("h(T) = " + rep.h_T.lo.str() + " is not a positive integer");
    return rep;
}

i64 class_number_family_sqrt_p_j(i64 p, i64 j) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (j < 1 || j > 3) throw std::invalid_argument("j must be 1, 2 or 3");
    if (p == 2 && j == 2) throw std::invalid_argument("(p, j) = (2, 2) is Q(zeta8); use biq:2,1");
    if (p == 3 && j == 3) throw std::invalid_argument("(p, j) = (3, 3) is Q(zeta12); use biq:3,1");
    if (p == 2 && j == 1) return 1;
    i64 h = class_number_imaginary(fundamental_discriminant(squarefree_kernel(-j * p)));
    // For j = 2 and p = 3 mod 4 all three quadratic subfields ramify at 2, so
    // 2 is totally ramified and lies in S; only j = 1, p = 3 mod 4 has S empty.
    if (j == 1 && mod(p, 4) == 3) return h;
    if (h % 2 != 0) throw std::logic_error("family closed form is not integral");
    return h / 2;
}

Rational class_number_norm_one(const CMAlgebraSpec& spec, const Overrides& overrides) {
    return class_number(spec, overrides).h_T1;
}

QSymbols q_symbols(const CMAlgebraSpec& spec) {
    const int d = spec.kplus_degree();
    auto local = local_indices(spec);
    auto g = global_norm_index(spec);
    QSymbols q;
    q.q_infty = pow2(1 - d);
    q.q_Z = Rational(2);
    q.q_gamma = Rational(1);
    q.q_p[2] = pow2(d);
    for (const auto& [p, e] : local.entries) q.q_p[p] = Rational(e.e_value) * (p == 2 ? pow2(d) : Rational(1));
    Rational prod = q.q_infty / (q.q_Z * q.q_gamma);
    for (const auto& [p, v] : q.q_p) prod = prod * v;
    if (g.exact)
        q.assembled_ratio = Interval::exact(prod / Rational(g.value));
    else
        q.assembled_ratio = {prod / Rational(g.value), prod};
    return q;
}

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

bool ConsistencyReport::ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

ConsistencyReport verify_consistency(const CMAlgebraSpec& spec, const Overrides& overrides) {
    ConsistencyReport out;
    auto add = [&](std::string name, CheckStatus st, std::string detail) {
        out.checks.push_back({std::move(name), st, std::move(detail)});
    };

    auto prof = ramification_profile(spec);
    {
        std::ostringstream os;
        CheckStatus st = CheckStatus::skipped;
        for (int i = 0; i < spec.r(); ++i) {
            if (!std::holds_alternative<BiquadraticCM>(spec.components[i])) continue;
            const auto& cp = prof.components[i];
            bool ok = cp.t - cp.s == static_cast<int>(cp.S.size());
            if (st != CheckStatus::fail) st = ok ? CheckStatus::pass : CheckStatus::fail;
            os << "component " << i << ": t=" << cp.t << " s=" << cp.s << " |S|=" << cp.S.size() << "; ";
        }
        add("t-s=|S|", st, os.str());
    }

    ClassNumberReport rep;
    try {
        rep = class_number(spec, overrides);
    } catch (const std::exception& ex) {
        add("class_number", CheckStatus::fail, ex.what());
        return out;
    }

    {
        std::ostringstream os;
        CheckStatus st = CheckStatus::skipped;
        for (int i = 0; i < spec.r(); ++i) {
            auto b = std::get_if<BiquadraticCM>(&spec.components[i]);
            if (!b || b->is_zeta8()) continue;
            std::optional<int> Q = hasse_unit_index(spec.components[i]);
            if (!Q && spec.single()) Q = rep.Q;
            if (!Q) continue;
            i64 hF = class_number_real(b->F().disc);
            i64 hE = class_number_imaginary(b->E().disc);
            i64 hE2 = class_number_imaginary(b->E_prime().disc);
            i64 twice = *Q * hF * hE * hE2;
            bool ok = twice % 2 == 0;
            if (ok && spec.single() && overrides.h_K) ok = twice / 2 == *overrides.h_K;
            if (st != CheckStatus::fail) st = ok ? CheckStatus::pass : CheckStatus::fail;
            os << "component " << i << ": Q=" << *Q << " h_F=" << hF << " h_E=" << hE << " h_E'=" << hE2
               << " h_K=" << twice << "/2; ";
        }
        add("herglotz", st, os.str());
    }

    if (rep.route_agreement)
        add("routes", *rep.route_agreement ? CheckStatus::pass : CheckStatus::fail,
            "closed " + str(*rep.closed_route) + ", assembled " + str(*rep.main_route));
    else
        add("routes", CheckStatus::skipped, "no closed form for this algebra");

    {
        auto q = q_symbols(spec);
        Interval ratio = rep.h_T.scaled(Rational(1) / rep.h_T1);
        bool ok = q.assembled_ratio == ratio;
        add("q-ratio", ok ? CheckStatus::pass : CheckStatus::fail,
            "q-symbols give " + str(q.assembled_ratio) + ", h_T/h_T1 = " + str(ratio));
    }

    {
        // refined bound: h_T / h_T1 is 2^e with 0 <= e <= e(K/K+, Q)
        std::ostringstream os;
        CheckStatus st = CheckStatus::skipped;
        if (rep.h_T.is_exact()) {
            Rational ratio = rep.h_T.lo / rep.h_T1;
            bool ok = ratio.is_power_of_two() && ratio.log2() >= 0 && ratio.log2() <= rep.local.total_exponent;
            st = ok ? CheckStatus::pass : CheckStatus::fail;
            os << "h_T/h_T1 = " << ratio << ", e(K/K+,Q) = " << rep.local.total_exponent;
        }
        add("refined-bound", st, os.str());
    }

    if (spec.single() && std::holds_alternative<QuadraticField>(spec.components[0])) {
        bool ok = rep.tamagawa == Interval::exact(Rational(1)) &&
                  rep.h_T == Interval::exact(rep.h_T1 * pow2(prof.t - 1)) &&
                  rep.h_T.lo == Rational(*rep.h_K);
        add("imaginary-quadratic", ok ? CheckStatus::pass : CheckStatus::fail,
            "tau=" + str(rep.tamagawa) + " h_T=" + str(rep.h_T) + " h_T1=" + rep.h_T1.str());
    }
    return out;
}

}  // namespace cmtori
