#include <cctype>
#include <limits>
#include <string>

#include "cmtori/cli.hpp"
#include "cmtori/errors.hpp"

namespace cmtori {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    bool at_end() const { return pos >= text.size(); }

    bool consume(const std::string& lit) {
        if (text.compare(pos, lit.size(), lit) != 0) return false;
        pos += lit.size();
        return true;
    }

    void expect(char c) {
        if (at_end() || text[pos] != c) throw ParseError(pos, std::string("expected '") + c + "'");
        ++pos;
    }

    i64 integer() {
        std::size_t start = pos;
        bool neg = false;
        if (!at_end() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError(pos, "expected an integer");
        i64 v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            int digit = text[pos] - '0';
            if (v > (std::numeric_limits<i64>::max() - digit) / 10) throw ParseError(start, "integer too large");
            v = v * 10 + digit;
            ++pos;
        }
        return neg ? -v : v;
    }
};

CMComponent parse_component(Cursor& c) {
    std::size_t start = c.pos;
    if (c.consume("iq:")) {
        std::size_t at = c.pos;
        i64 m = c.integer();
        if (m >= 0) throw ParseError(at, "imaginary quadratic radicand must be negative, got " + std::to_string(m));
        if (!is_squarefree(m)) throw ParseError(at, std::to_string(m) + " not squarefree");
        return QuadraticField(m);
    }
    if (c.consume("biq:")) {
        std::size_t at_d = c.pos;
        i64 d = c.integer();
        c.expect(',');
        std::size_t at_j = c.pos;
        i64 j = c.integer();
        if (d <= 1) throw ParseError(at_d, "real radicand d must be > 1, got " + std::to_string(d));
        if (!is_squarefree(d)) throw ParseError(at_d, std::to_string(d) + " not squarefree");
        if (j < 1) throw ParseError(at_j, "imaginary radicand j must be >= 1, got " + std::to_string(j));
        if (!is_squarefree(j)) throw ParseError(at_j, std::to_string(j) + " not squarefree");
        return BiquadraticCM(d, j);
    }
    if (c.text.compare(c.pos, 5, "prod:") == 0) throw ParseError(start, "nested products are not supported");
    throw ParseError(start, "expected 'iq:', 'biq:' or 'prod:'");
}

}  // namespace

CMAlgebraSpec parse_spec(const std::string& text) {
    Cursor c{text};
    std::vector<CMComponent> comps;
    if (c.consume("prod:")) {
        comps.push_back(parse_component(c));
        while (!c.at_end()) {
            c.expect(';');
            comps.push_back(parse_component(c));
        }
    } else {
        comps.push_back(parse_component(c));
    }
    if (!c.at_end()) throw ParseError(c.pos, "unexpected trailing text");
    return CMAlgebraSpec(std::move(comps));
}

std::string render_component(const CMComponent& c) {
    if (auto q = std::get_if<QuadraticField>(&c)) return "iq:" + std::to_string(q->m);
    const auto& b = std::get<BiquadraticCM>(c);
    return "biq:" + std::to_string(b.d) + "," + std::to_string(b.j);
}

std::string render_spec(const CMAlgebraSpec& spec) {
    if (spec.single()) return render_component(spec.components[0]);
    std::string out = "prod:";
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        if (i) out += ';';
        out += render_component(spec.components[i]);
    }
    return out;
}

}  // namespace cmtori
