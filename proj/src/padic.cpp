#include "cmtori/padic.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cmtori/errors.hpp"

namespace cmtori {

namespace {

// Integer in the same rational square class as a.
i64 square_class_integer(const Rational& a, const char* what) {
    if (a.num() == 0) throw std::invalid_argument(std::string(what) + " must be nonzero");
    return checked_mul(a.num(), a.den());
}

int legendre(i64 u, i64 p) { return powmod(mod(u, p), (p - 1) / 2, p) == 1 ? 1 : -1; }

i64 strip(i64 x, i64 p, int& v) {
    v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return x;
}

}  // namespace

int hilbert_symbol(const Rational& a_, const Rational& b_, i64 p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    int alpha, beta;
    i64 u = strip(square_class_integer(a_, "a"), p, alpha);
    i64 v = strip(square_class_integer(b_, "b"), p, beta);
    if (p != 2) {
        int sign = ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
        if (beta % 2) sign *= legendre(u, p);
        if (alpha % 2) sign *= legendre(v, p);
        return sign;
    }
    i64 u8 = mod(u, 8), v8 = mod(v, 8);
    auto eps = [](i64 x) { return ((x - 1) / 2) % 2; };
    auto omega = [](i64 x) { return ((x * x - 1) / 8) % 2; };
    i64 e = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8);
    return e % 2 == 0 ? 1 : -1;
}

int hilbert_symbol_bruteforce(const Rational& a_, const Rational& b_, i64 p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    i64 a = square_class_integer(a_, "a");
    i64 b = square_class_integer(b_, "b");
    i64 p2 = p * p;
    while (a % p2 == 0) a /= p2;
    while (b % p2 == 0) b /= p2;
    int va = a % p == 0 ? 1 : 0;
    int vb = b % p == 0 ? 1 : 0;
    int v4 = p == 2 ? 2 : 0;
    int N = 1 + 2 * (v4 + va + vb) + (p == 2 ? 2 : 0);
    i64 M = ipow(p, static_cast<unsigned>(N));
    std::vector<char> square(static_cast<size_t>(M), 0);
    for (i64 s = 0; s < M; ++s) square[static_cast<size_t>(s * s % M)] = 1;
    a = mod(a, M);
    b = mod(b, M);
    // A primitive solution has x or y a unit; scale that coordinate to 1.
    for (i64 y = 0; y < M; ++y) {
        i64 y2 = y * y % M;
        if (square[static_cast<size_t>((a + b * y2) % M)]) return 1;
        if (square[static_cast<size_t>((a * y2 + b) % M)]) return 1;
    }
    return -1;
}

int local_norm_symbol(const Rational& u, int base_degree, const Rational& delta, i64 p) {
    if (base_degree < 1) throw std::invalid_argument("base degree must be positive");
    Rational power(1);
    for (int i = 0; i < base_degree; ++i) power = power * u;
    return hilbert_symbol(power, delta, p);
}

// ---------------------------------------------------------------------------

namespace {

int det_mod_p(std::vector<std::vector<i64>> m, i64 p) {
    int n = static_cast<int>(m.size());
    i64 det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (mod(m[r][col], p) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        i64 inv = powmod(m[col][col], p - 2, p);
        det = mod(det * m[col][col], p);
        for (int r = col + 1; r < n; ++r) {
            i64 factor = mod(m[r][col] * inv, p);
            for (int c = col; c < n; ++c) m[r][c] = mod(m[r][c] - factor * m[col][c], p);
        }
    }
    return static_cast<int>(mod(det, p));
}

}  // namespace

TruncatedRing::TruncatedRing(i64 p, std::vector<i64> poly, std::vector<i64> moduli, int exponent)
    : p_(p), n_(static_cast<int>(poly.size()) - 1), exponent_(exponent), poly_(std::move(poly)),
      moduli_(std::move(moduli)) {
    if (n_ < 1 || n_ > max_degree) throw std::invalid_argument("unsupported ring degree");
    if (poly_.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
    if (static_cast<int>(moduli_.size()) != n_) throw std::invalid_argument("one modulus per coordinate");
    for (i64 m : moduli_) size_ = checked_mul(size_, m);

    i64 residues = ipow(p_, static_cast<unsigned>(n_));
    residue_unit_.assign(static_cast<size_t>(residues), 0);
    i64 unit_residues = 0;
    for (i64 r = 0; r < residues; ++r) {
        Elem x{};
        i64 t = r;
        for (int i = 0; i < n_; ++i) {
            x[i] = t % p_;
            t /= p_;
        }
        // matrix of multiplication by x in the power basis, over Z
        std::vector<std::vector<i64>> m(n_, std::vector<i64>(n_, 0));
        for (int j = 0; j < n_; ++j) {
            std::vector<i64> prod(2 * n_, 0);
            for (int i = 0; i < n_; ++i) prod[i + j] += x[i];
            for (int k = 2 * n_ - 1; k >= n_; --k) {
                i64 c = prod[k];
                if (c == 0) continue;
                for (int l = 0; l < n_; ++l) prod[k - n_ + l] -= c * poly_[l];
                prod[k] = 0;
            }
            for (int i = 0; i < n_; ++i) m[i][j] = prod[i];
        }
        if (det_mod_p(m, p_) != 0) {
            residue_unit_[static_cast<size_t>(r)] = 1;
            ++unit_residues;
        }
    }
    unit_count_ = size_ / residues * unit_residues;
}

TruncatedRing TruncatedRing::unramified(i64 p, int f, int k) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("precision exponent must be positive");
    std::vector<i64> poly;
    if (f == 1) {
        poly = {0, 1};
    } else if (p == 2) {
        switch (f) {
            case 2: poly = {1, 1, 1}; break;
            case 3: poly = {1, 1, 0, 1}; break;
            case 4: poly = {1, 1, 0, 0, 1}; break;
            default: throw std::invalid_argument("unramified degree must be in 1..4 for p = 2");
        }
    } else if (f == 2) {
        i64 r = 2;
        while (legendre(r, p) == 1) ++r;
        poly = {-r, 0, 1};
    } else {
        throw std::invalid_argument("unramified degree must be 1 or 2 for odd p");
    }
    i64 pk = ipow(p, static_cast<unsigned>(k));
    return TruncatedRing(p, poly, std::vector<i64>(static_cast<size_t>(f), pk), k);
}

TruncatedRing TruncatedRing::ramified_quadratic(i64 c0, i64 c1, int m) {
    if (m < 1) throw std::invalid_argument("precision exponent must be positive");
    i64 m0 = ipow(2, static_cast<unsigned>((m + 1) / 2));
    i64 m1 = ipow(2, static_cast<unsigned>(m / 2));
    return TruncatedRing(2, {-c0, -c1, 1}, {m0, m1}, m);
}

i64 TruncatedRing::encode(const Elem& x) const {
    i64 code = 0;
    for (int i = n_ - 1; i >= 0; --i) code = code * moduli_[i] + x[i];
    return code;
}

TruncatedRing::Elem TruncatedRing::decode(i64 code) const {
    Elem x{};
    for (int i = 0; i < n_; ++i) {
        x[i] = code % moduli_[i];
        code /= moduli_[i];
    }
    return x;
}

TruncatedRing::Elem TruncatedRing::reduce(Elem x) const {
    for (int i = 0; i < n_; ++i) x[i] = mod(x[i], moduli_[i]);
    for (int i = n_; i < max_degree; ++i) x[i] = 0;
    return x;
}

TruncatedRing::Elem TruncatedRing::from_integer(i64 v) const {
    Elem x{};
    x[0] = v;
    return reduce(x);
}

TruncatedRing::Elem TruncatedRing::add(const Elem& x, const Elem& y) const {
    Elem z{};
    for (int i = 0; i < n_; ++i) z[i] = x[i] + y[i];
    return reduce(z);
}

TruncatedRing::Elem TruncatedRing::neg(const Elem& x) const {
    Elem z{};
    for (int i = 0; i < n_; ++i) z[i] = -x[i];
    return reduce(z);
}

TruncatedRing::Elem TruncatedRing::mul(const Elem& x, const Elem& y) const {
    std::array<i64, 2 * max_degree> prod{};
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) prod[i + j] += x[i] * y[j];
    for (int k = 2 * n_ - 2; k >= n_; --k) {
        i64 c = prod[k];
        if (c == 0) continue;
        for (int l = 0; l < n_; ++l) prod[k - n_ + l] -= c * poly_[l];
    }
    Elem z{};
    for (int i = 0; i < n_; ++i) z[i] = prod[i];
    return reduce(z);
}

TruncatedRing::Elem TruncatedRing::pow(Elem x, i64 e) const {
    Elem r = from_integer(1);
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

bool TruncatedRing::is_unit(const Elem& x) const {
    i64 idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + mod(x[i], p_);
    return residue_unit_[static_cast<size_t>(idx)] != 0;
}

TruncatedRing::Elem TruncatedRing::inverse(const Elem& x) const {
    if (!is_unit(x)) throw std::domain_error("inverse of a non-unit");
    return pow(x, unit_count_ - 1);
}

TruncatedLocalElement TruncatedRing::element(const Elem& x) const {
    TruncatedLocalElement e;
    e.coefficients.assign(x.begin(), x.begin() + n_);
    e.modulus_exponent = exponent_;
    e.defining_polynomial = poly_;
    return e;
}

// ---------------------------------------------------------------------------

std::string LocalBase::name() const {
    switch (zeta8_subfield) {
        case 1: return "Q2(sqrt2)";
        case 2: return "Q2(sqrt-2)";
        case 3: return "Q2(i)";
        default: break;
    }
    return "Q" + std::to_string(ipow(p, static_cast<unsigned>(f))) + (f > 1 ? "(unramified)" : "");
}

LocalBase unramified_base(i64 p, int f) {
    LocalBase b;
    b.p = p;
    b.f = f;
    b.e = 1;
    b.polynomial = TruncatedRing::unramified(p, f, 1).polynomial();
    return b;
}

namespace {

// pi^2 = c0 + c1 * pi for the uniformizers t - t^3, t + t^3, t^2 - 1.
std::array<i64, 2> zeta8_pi_square(int index) {
    switch (index) {
        case 1: return {2, 0};
        case 2: return {-2, 0};
        case 3: return {-2, -2};
        default: throw std::invalid_argument("zeta8 subfield index must be 1, 2 or 3");
    }
}

}  // namespace

LocalBase zeta8_subfield(int index) {
    auto [c0, c1] = zeta8_pi_square(index);
    LocalBase b;
    b.p = 2;
    b.f = 1;
    b.e = 2;
    b.polynomial = {-c0, -c1, 1};
    b.zeta8_subfield = index;
    return b;
}

bool LocalQuadExtension::ramified() const {
    if (model == ExtensionModel::cyclotomic8) return true;
    if (radicand % base.p == 0) return true;
    return base.p == 2 && mod(radicand, 4) == 3;
}

std::string LocalQuadExtension::name() const {
    if (model == ExtensionModel::cyclotomic8) return "Q2(zeta8)/" + base.name();
    return base.name() + "(sqrt" + std::to_string(radicand) + ")/" + base.name();
}

LocalQuadExtension quadratic_extension(const LocalBase& base, i64 delta) {
    if (base.zeta8_subfield != 0 || base.e != 1)
        throw std::invalid_argument("quadratic extensions are only modeled over unramified bases");
    if (delta == 0) throw std::invalid_argument("radicand must be nonzero");
    const i64 p = base.p;
    int v = 0;
    i64 unit = strip(delta, p, v);
    (void)unit;
    if (v >= 2) throw std::invalid_argument("radicand must have valuation 0 or 1");
    if (v == 0) {
        auto ring = TruncatedRing::unramified(p, base.f, p == 2 ? 3 : 1);
        i64 target = ring.encode(ring.from_integer(delta));
        for (i64 c = 0; c < ring.size(); ++c) {
            auto x = ring.decode(c);
            if (!ring.is_unit(x)) continue;
            if (ring.encode(ring.mul(x, x)) == target)
                throw std::invalid_argument(std::to_string(delta) + " is a square in " + base.name());
        }
    }
    LocalQuadExtension ext;
    ext.base = base;
    ext.radicand = delta;
    ext.integral_basis = true;
    if (p == 2 && mod(delta, 4) == 1) {
        ext.model = ExtensionModel::half_integral;
        ext.theta_trace = 1;
        ext.theta_norm = (1 - delta) / 4;
    } else {
        ext.model = ExtensionModel::sqrt;
        ext.theta_trace = 0;
        ext.theta_norm = -delta;
    }
    return ext;
}

LocalQuadExtension zeta8_extension(int subfield_index) {
    static constexpr i64 radicands[] = {0, -1, -1, 2};
    LocalQuadExtension ext;
    ext.base = zeta8_subfield(subfield_index);
    ext.radicand = radicands[subfield_index];
    ext.model = ExtensionModel::cyclotomic8;
    ext.integral_basis = true;
    return ext;
}

i64 NormImage::index() const {
    i64 n = static_cast<i64>(classes.size());
    if (n == 0 || ring.unit_count() % n != 0) throw std::logic_error("norm image is not a subgroup");
    return ring.unit_count() / n;
}

bool NormImage::contains(const TruncatedRing::Elem& x) const {
    return classes.count(ring.encode(ring.reduce(x))) > 0;
}

bool NormImage::contains_integer(i64 u) const { return contains(ring.from_integer(u)); }

int minimal_norm_precision(const LocalQuadExtension& ext) {
    if (ext.model == ExtensionModel::cyclotomic8) return 5;
    return ext.base.p == 2 ? 3 : 1;
}

std::array<i64, 2> zeta8_norm_form(int subfield_index, i64 a, i64 b, i64 c, i64 d) {
    switch (subfield_index) {
        case 1: return {a * a + b * b + c * c + d * d, a * b - a * d + b * c + c * d};
        case 2: return {a * a - b * b + c * c - d * d, a * b + a * d - b * c + c * d};
        case 3: return {a * a - b * b - c * c + d * d + 2 * b * d + 2 * a * c, 2 * a * c - b * b + d * d};
        default: throw std::invalid_argument("zeta8 subfield index must be 1, 2 or 3");
    }
}

namespace {

NormImage compute_norm_image(const LocalQuadExtension& ext, int precision) {
    if (ext.model == ExtensionModel::cyclotomic8) {
        const int idx = ext.base.zeta8_subfield;
        auto [c0, c1] = zeta8_pi_square(idx);
        NormImage img{TruncatedRing::ramified_quadratic(c0, c1, precision), {}};
        const i64 s = ipow(2, static_cast<unsigned>((precision + 1) / 2));
        for (i64 a = 0; a < s; ++a)
            for (i64 b = 0; b < s; ++b)
                for (i64 c = 0; c < s; ++c)
                    for (i64 d = 0; d < s; ++d) {
                        if ((a + b + c + d) % 2 == 0) continue;
                        auto [A, B] = zeta8_norm_form(idx, a, b, c, d);
                        TruncatedRing::Elem x{A, B, 0, 0};
                        img.classes.insert(img.ring.encode(img.ring.reduce(x)));
                    }
        return img;
    }
    NormImage img{TruncatedRing::unramified(ext.base.p, ext.base.f, precision), {}};
    const auto& R = img.ring;
    const auto tr = R.from_integer(ext.theta_trace);
    const auto nm = R.from_integer(ext.theta_norm);
    std::vector<TruncatedRing::Elem> elems(static_cast<size_t>(R.size()));
    std::vector<TruncatedRing::Elem> squares(elems.size());
    for (i64 c = 0; c < R.size(); ++c) {
        elems[c] = R.decode(c);
        squares[c] = R.mul(elems[c], elems[c]);
    }
    for (i64 ia = 0; ia < R.size(); ++ia) {
        for (i64 ib = 0; ib < R.size(); ++ib) {
            // N(a + b theta) = a^2 + tr*a*b + nm*b^2
            auto n = R.add(squares[ia], R.mul(nm, squares[ib]));
            if (ext.theta_trace != 0) n = R.add(n, R.mul(tr, R.mul(elems[ia], elems[ib])));
            if (R.is_unit(n)) img.classes.insert(R.encode(n));
        }
    }
    return img;
}

}  // namespace

NormImage norm_unit_image(const LocalQuadExtension& ext, int precision) {
    int minimum = minimal_norm_precision(ext);
    if (precision < minimum)
        throw std::invalid_argument("precision " + std::to_string(precision) + " below stability threshold " +
                                    std::to_string(minimum) + " for " + ext.name());
    NormImage img = compute_norm_image(ext, precision);
    NormImage finer = compute_norm_image(ext, precision + 1);
    bool stable = finer.index() == img.index();
    for (i64 code : finer.classes) {
        if (!stable) break;
        stable = img.contains(finer.ring.decode(code));
    }
    if (!stable)
        throw PrecisionInstability("norm image of " + ext.name() + " changed between precision " +
                                   std::to_string(precision) + " and " + std::to_string(precision + 1));
    return img;
}

bool z2_in_norm_group(const LocalQuadExtension& ext) {
    if (ext.base.p != 2) throw std::invalid_argument("the Z_2^x criterion needs a 2-adic base");
    const int n = ext.base.degree();
    return local_norm_symbol(-1, n, ext.radicand, 2) == 1 && local_norm_symbol(5, n, ext.radicand, 2) == 1;
}

bool z2_in_norm_group_by_enumeration(const LocalQuadExtension& ext) {
    if (ext.base.p != 2) throw std::invalid_argument("the Z_2^x criterion needs a 2-adic base");
    auto img = norm_unit_image(ext, minimal_norm_precision(ext));
    return img.contains_integer(-1) && img.contains_integer(5);
}

// ---------------------------------------------------------------------------

namespace {

struct UnitSquares {
    TruncatedRing ring;
    std::vector<i64> units;
    std::unordered_set<i64> squares;
};

UnitSquares units_and_squares(int f) {
    UnitSquares us{TruncatedRing::unramified(2, f, 5), {}, {}};
    for (i64 c = 0; c < us.ring.size(); ++c) {
        auto x = us.ring.decode(c);
        if (!us.ring.is_unit(x)) continue;
        us.units.push_back(c);
        us.squares.insert(us.ring.encode(us.ring.mul(x, x)));
    }
    return us;
}

void require_f(int f, int hi) {
    if (f < 1 || f > hi)
        throw std::invalid_argument("inertia degree " + std::to_string(f) + " outside supported range 1.." +
                                    std::to_string(hi));
}

}  // namespace

UnramifiedSquareStructure unramified_square_structure(int f) {
    require_f(f, 4);
    auto us = units_and_squares(f);
    UnramifiedSquareStructure out;
    out.square_index = static_cast<i64>(us.units.size() / us.squares.size());

    auto all_squares = [&](std::initializer_list<i64> vals) {
        for (i64 v : vals)
            if (!us.squares.count(us.ring.encode(us.ring.from_integer(v)))) return false;
        return true;
    };
    if (all_squares({5, 13, 21, 29}))
        out.enumerated_level = 4;
    else if (all_squares({9, 17, 25}))
        out.enumerated_level = 8;

    // 5 = (1 + 2t)^2 mod 8 needs t^2 + t + 1 = 0 in F_q.
    auto residue = TruncatedRing::unramified(2, f, 1);
    bool root = false;
    for (i64 c = 0; c < residue.size() && !root; ++c) {
        auto t = residue.decode(c);
        auto val = residue.add(residue.add(residue.mul(t, t), t), residue.from_integer(1));
        root = residue.encode(val) == 0;
    }
    out.q2_intersection_level = root ? 4 : 8;
    return out;
}

RamifiedCount count_ramified_quadratic_by_norm(int f) {
    require_f(f, 3);
    auto us = units_and_squares(f);
    const auto& R = us.ring;

    // Label every unit by its square class as a vector over F_2.
    std::unordered_map<i64, unsigned> label;
    for (i64 s : us.squares) label.emplace(s, 0u);
    int dim = 0;
    for (i64 u : us.units) {
        if (label.count(u)) continue;
        std::vector<std::pair<i64, unsigned>> snapshot(label.begin(), label.end());
        auto x = R.decode(u);
        for (auto [code, mask] : snapshot) label.emplace(R.encode(R.mul(x, R.decode(code))), mask | (1u << dim));
        ++dim;
    }
    if (dim != f + 1 || label.size() != us.units.size())
        throw std::logic_error("square class group of unexpected shape");

    unsigned minus_one = label.at(R.encode(R.from_integer(-1)));
    unsigned five = label.at(R.encode(R.from_integer(5)));
    RamifiedCount out;
    for (unsigned chi = 1; chi < (1u << dim); ++chi) {
        bool kills = std::popcount(chi & minus_one) % 2 == 0 && std::popcount(chi & five) % 2 == 0;
        (kills ? out.containing : out.not_containing) += 2;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

i64 norm_one_index_at(const LocalQuadExtension& ext, int k) {
    const auto R = TruncatedRing::unramified(ext.base.p, ext.base.f, k);
    using Elem = TruncatedRing::Elem;
    const auto tr = R.from_integer(ext.theta_trace);
    const auto nm = R.from_integer(ext.theta_norm);

    std::vector<Elem> elems(static_cast<size_t>(R.size()));
    std::vector<i64> inverse(elems.size(), -1);
    for (i64 c = 0; c < R.size(); ++c) {
        elems[c] = R.decode(c);
        if (R.is_unit(elems[c])) inverse[c] = R.encode(R.inverse(elems[c]));
    }
    auto key = [&](const Elem& a, const Elem& b) { return R.encode(a) * R.size() + R.encode(b); };
    auto lmul = [&](const std::pair<Elem, Elem>& x, const std::pair<Elem, Elem>& y) {
        // theta^2 = tr*theta - nm
        auto bd = R.mul(x.second, y.second);
        auto c0 = R.add(R.mul(x.first, y.first), R.neg(R.mul(nm, bd)));
        auto c1 = R.add(R.add(R.mul(x.first, y.second), R.mul(x.second, y.first)), R.mul(tr, bd));
        return std::make_pair(c0, c1);
    };

    // Norm-one units are u / conj(u) = u^2 / N(u), plus pi/conj(pi) when ramified.
    std::unordered_map<i64, std::pair<Elem, Elem>> H;
    for (i64 ia = 0; ia < R.size(); ++ia) {
        for (i64 ib = 0; ib < R.size(); ++ib) {
            const auto& a = elems[ia];
            const auto& b = elems[ib];
            auto n = R.add(R.add(R.mul(a, a), R.mul(nm, R.mul(b, b))), R.mul(tr, R.mul(a, b)));
            i64 nc = R.encode(n);
            if (inverse[nc] < 0) continue;
            auto sq = lmul({a, b}, {a, b});
            auto ninv = elems[inverse[nc]];
            std::pair<Elem, Elem> h{R.mul(sq.first, ninv), R.mul(sq.second, ninv)};
            H.emplace(key(h.first, h.second), h);
        }
    }
    if (ext.ramified()) {
        std::pair<Elem, Elem> rho;
        if (ext.radicand % ext.base.p == 0) {
            rho = {R.from_integer(-1), R.from_integer(0)};
        } else {
            // pi = 1 + sqrt(delta), delta = 3 mod 4
            auto denom_inv = R.inverse(R.from_integer((1 - ext.radicand) / 2));
            rho = {R.mul(R.from_integer((1 + ext.radicand) / 2), denom_inv), denom_inv};
        }
        std::vector<std::pair<Elem, Elem>> base;
        for (auto& [code, h] : H) base.push_back(h);
        for (auto& h : base) {
            auto g = lmul(h, rho);
            H.emplace(key(g.first, g.second), g);
        }
    }
    std::unordered_set<i64> H2;
    for (auto& [code, h] : H) {
        auto g = lmul(h, h);
        H2.insert(key(g.first, g.second));
    }
    if (H.size() % H2.size() != 0) throw std::logic_error("norm-one image is not a group");
    return static_cast<i64>(H.size() / H2.size());
}

}  // namespace

i64 norm_one_square_index(const LocalQuadExtension& ext) {
    if (ext.model == ExtensionModel::cyclotomic8)
        throw std::invalid_argument("norm-one index is only modeled over unramified bases");
    if (ext.base.degree() > 2) throw std::invalid_argument("base degree must be at most 2");
    // 1 + p^k O_L lies in the squares of norm-one units once k = 4 (p = 2) or k = 1 (p odd).
    const int k = ext.base.p == 2 ? 4 : 1;
    i64 lo = norm_one_index_at(ext, k);
    i64 hi = norm_one_index_at(ext, k + 1);
    if (lo != hi)
        throw PrecisionInstability("norm-one square index of " + ext.name() + " changed between precision " +
                                   std::to_string(k) + " and " + std::to_string(k + 1));
    return lo;
}

}  // namespace cmtori
