#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmtori/apps.hpp"
#include "cmtori/cli.hpp"
#include "cmtori/errors.hpp"

namespace cmtori {

using nlohmann::json;

namespace {

constexpr i64 kMaxBound = 10000;

struct Common {
    std::string format = "text";
    std::string out_path;
    std::optional<i64> Q, hK, hKplus;

    Overrides overrides() const {
        Overrides o;
        o.h_K = hK;
        o.h_Kplus = hKplus;
        if (Q) o.Q = static_cast<int>(*Q);
        return o;
    }
};

void add_output_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", c.out_path, "Write output to this file instead of stdout");
}

void add_override_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--Q", c.Q, "Hasse unit index of K")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--hK", c.hK, "Class number of K")->check(CLI::PositiveNumber);
    cmd->add_option("--hKplus", c.hKplus, "Class number of K+")->check(CLI::PositiveNumber);
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.out_path + " for writing");
    f << text;
}

// ---------------------------------------------------------------------------

std::string info_text(const ClassNumberReport& rep) {
    std::ostringstream os;
    os << render_rows({report_row(rep)}, report_fields(), OutputFormat::text);
    os << "\nlocal indices\n";
    for (const auto& [p, e] : rep.local.entries)
        os << "  p=" << p << "  e=" << e.e_value << "  (" << e.reason << ")\n";
    auto q = q_symbols(rep.spec);
    os << "q-symbols\n  q_infty=" << q.q_infty << "  q_Z=" << q.q_Z << "  q_gamma=" << q.q_gamma << '\n';
    for (const auto& [p, v] : q.q_p) os << "  q_" << p << "=" << v << '\n';
    os << "  h_T/h_T1 from q-symbols = " << q.assembled_ratio << '\n';
    return os.str();
}

int cmd_info(const std::string& spec_text, const Common& c, std::ostream& out) {
    auto spec = parse_spec(spec_text);
    auto rep = class_number(spec, c.overrides());
    const std::string name = render_spec(spec);
    if (!rep.Q) throw InsufficientInvariants("Q", "Q unknown for " + name + " — supply --Q");
    if (!rep.h_K) throw InsufficientInvariants("h_K", "h_K unknown for " + name + " — supply --hK");
    auto fmt = parse_format(c.format);
    if (fmt == OutputFormat::text)
        emit(info_text(rep), c, out);
    else
        emit(render_rows({report_row(rep)}, report_fields(), fmt), c, out);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_table(const std::string& family, i64 bound, const Common& c, std::ostream& out) {
    if (bound < 2 || bound > kMaxBound)
        throw std::invalid_argument("--bound must be in 2.." + std::to_string(kMaxBound));
    std::vector<json> rows;
    std::vector<std::string> columns;

    if (family.rfind("sqrtp-", 0) == 0) {
        i64 j = family.size() == 7 ? family[6] - '0' : 0;
        if (j < 1 || j > 3) throw std::invalid_argument("family must be sqrtp-1, sqrtp-2, sqrtp-3 or biq-range");
        columns = {"p", "j"};
        columns.insert(columns.end(), report_fields().begin(), report_fields().end());
        columns.push_back("closed_form");
        columns.push_back("note");
        for (i64 p = 2; p < bound; ++p) {
            if (!is_prime(p)) continue;
            json row;
            if ((p == 2 && j == 2) || (p == 3 && j == 3)) {
                row["spec"] = "biq:" + std::to_string(p) + "," + std::to_string(j);
                row["note"] = p == 2 ? "excluded: Q(zeta8), listed as biq:2,1" : "excluded: Q(zeta12), listed as biq:3,1";
            } else {
                auto rep = class_number(CMAlgebraSpec::biquadratic(p, j));
                row = report_row(rep);
                i64 closed = class_number_family_sqrt_p_j(p, j);
                row["closed_form"] = closed;
                if (rep.h_T != Interval::exact(Rational(closed)))
                    row["note"] = "closed form differs";
                else if (j == 2 && mod(p, 4) == 3)
                    row["note"] = "2 totally ramified: h(-2p)/2";
                else
                    row["note"] = "";
            }
            row["p"] = p;
            row["j"] = j;
            rows.push_back(std::move(row));
        }
    } else if (family == "biq-range") {
        columns = report_fields();
        columns.push_back("note");
        for (i64 d = 2; d < bound; ++d) {
            if (!is_squarefree(d)) continue;
            for (i64 j = 1; j < bound; ++j) {
                if (!is_squarefree(j)) continue;
                auto rep = class_number(CMAlgebraSpec::biquadratic(d, j));
                json row = report_row(rep);
                row["note"] = rep.Q ? "" : "Hasse unit index not determined for composite d";
                rows.push_back(std::move(row));
            }
        }
    } else {
        throw std::invalid_argument("family must be sqrtp-1, sqrtp-2, sqrtp-3 or biq-range");
    }
    emit(render_rows(rows, columns, parse_format(c.format)), c, out);
    return 0;
}

// ---------------------------------------------------------------------------

struct CountArgs {
    int n = 0;
    bool assert_noncompact = false;
    LevelData level;
    LevelData lambda_level;
};

int cmd_count(const std::string& subject, const std::string& spec_text, const CountArgs& a, const Common& c,
              std::ostream& out) {
    auto spec = parse_spec(spec_text);
    auto rep = class_number(spec, c.overrides());
    json row;
    row["spec"] = render_spec(spec);
    row["subject"] = subject;
    row["h_T"] = to_json(rep.h_T);
    row["h_T1"] = to_json(rep.h_T1);
    row["index_U"] = a.level.index_U;
    row["mu_index"] = a.level.mu_index;
    std::vector<std::string> columns{"spec", "subject"};

    if (subject == "cm-points") {
        row["count"] = to_json(cm_point_count(spec, a.level, c.overrides()));
        row["formula"] = "[T(Z^):U] / [mu_K : mu_K cap U] * h(T^{K,Q})";
        columns.insert(columns.end(), {"count", "h_T", "index_U", "mu_index", "formula"});
    } else if (subject == "shimura") {
        if (a.n < 2) throw std::invalid_argument("shimura needs --n >= 2");
        ShimuraInput in{spec, a.n, a.level, a.assert_noncompact};
        row["count"] = to_json(shimura_components(in, c.overrides()));
        row["n"] = a.n;
        row["formula"] = a.n % 2 == 1 ? "n odd: level factor * h(T^{K,Q})"
                                       : "n even: level factor * h(T^K_1) * h(G_m), h(G_m) = 1";
        columns.insert(columns.end(), {"n", "count", "h_T", "h_T1", "index_U", "mu_index", "formula"});
    } else if (subject == "isogeny") {
        auto counts = isogeny_class_counts(spec, a.lambda_level, a.level, c.overrides());
        row["lambda_count"] = to_json(counts.lambda_count);
        row["similitude_count"] = to_json(counts.similitude_count);
        row["lambda_index_U"] = a.lambda_level.index_U;
        row["lambda_mu_index"] = a.lambda_level.mu_index;
        row["formula"] = "lambda: level factor * h(T^K_1); similitude: level factor * h(T^{K,Q})";
        columns.insert(columns.end(), {"lambda_count", "similitude_count", "h_T1", "h_T", "lambda_index_U",
                                       "lambda_mu_index", "index_U", "mu_index", "formula"});
    } else {
        throw std::invalid_argument("subject must be cm-points, shimura or isogeny");
    }
    emit(render_rows({row}, columns, parse_format(c.format)), c, out);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& scope, std::optional<i64> bound, const Common& c, std::ostream& out) {
    std::vector<VerifyGroup> groups;
    auto append = [&](std::vector<VerifyGroup> g) { groups.insert(groups.end(), g.begin(), g.end()); };
    i64 d_bound = 60, j_bound = 30;
    if (bound) {
        if (*bound < 2 || *bound > kMaxBound)
            throw std::invalid_argument("--bound must be in 2.." + std::to_string(kMaxBound));
        d_bound = j_bound = *bound;
    }
    if (scope == "hilbert" || scope == "all") append(verify_hilbert());
    if (scope == "padic-lemmas" || scope == "all") append(verify_padic_lemmas());
    if (scope == "biquadratic" || scope == "all") append(verify_biquadratic(d_bound, j_bound));
    if (groups.empty()) throw std::invalid_argument("scope must be hilbert, padic-lemmas, biquadratic or all");

    bool ok = true;
    auto fmt = parse_format(c.format);
    std::ostringstream text;
    std::vector<json> rows;
    for (const auto& g : groups) {
        ok = ok && g.failures == 0;
        json row{{"check", g.tag},
                 {"status", g.failures == 0 ? "pass" : "fail"},
                 {"cases", g.cases},
                 {"failures", g.failures},
                 {"note", g.note}};
        json failed = json::array();
        for (const auto& f : g.failed)
            failed.push_back({{"inputs", f.inputs}, {"expected", f.expected}, {"computed", f.computed}});
        row["failed"] = failed;
        rows.push_back(row);

        text << (g.failures == 0 ? "PASS " : "FAIL ") << g.tag << " (" << g.cases << " cases";
        if (g.failures) text << ", " << g.failures << " failed";
        text << ")";
        if (!g.note.empty()) text << " [" << g.note << "]";
        text << '\n';
        for (const auto& f : g.failed)
            text << "  " << f.tag << ": " << f.inputs << " expected " << f.expected << ", computed " << f.computed
                 << '\n';
    }
    text << (ok ? "all checks passed\n" : "verification FAILED\n");
    if (fmt == OutputFormat::text)
        emit(text.str(), c, out);
    else
        emit(render_rows(rows, {"check", "status", "cases", "failures", "note", "failed"}, fmt), c, out);
    return ok ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Class numbers and Tamagawa numbers of CM tori", "cmtori"};
    app.require_subcommand(1);

    Common info_c, table_c, count_c, verify_c;
    std::string info_spec, family, subject, count_spec, scope = "all";
    i64 table_bound = 100;
    std::optional<i64> verify_bound;
    CountArgs ca;

    auto* info = app.add_subcommand("info", "Full report for one CM algebra");
    info->add_option("spec", info_spec, "iq:<m>, biq:<d>,<j> or prod:<spec>;...")->required();
    add_output_flags(info, info_c);
    add_override_flags(info, info_c);

    auto* table = app.add_subcommand("table", "Family tables");
    table->add_option("family", family, "sqrtp-1, sqrtp-2, sqrtp-3 or biq-range")->required();
    table->add_option("--bound", table_bound, "Exclusive bound on p, or on d and j");
    add_output_flags(table, table_c);

    auto* count = app.add_subcommand("count", "CM points, Shimura components, isogeny class counts");
    count->add_option("subject", subject, "cm-points, shimura or isogeny")->required();
    count->add_option("spec", count_spec, "CM field specification")->required();
    count->add_option("--n", ca.n, "Rank of the Hermitian space (shimura)");
    count->add_flag("--assert-noncompact", ca.assert_noncompact, "Assert that G^der(R) is not compact");
    count->add_option("--index-U", ca.level.index_U, "[T(Z^):U]")->check(CLI::PositiveNumber);
    count->add_option("--mu-index", ca.level.mu_index, "[mu_K : mu_K cap U]")->check(CLI::PositiveNumber);
    count->add_option("--lambda-index-U", ca.lambda_level.index_U, "[T^1(Z^):U^1] (isogeny)")
        ->check(CLI::PositiveNumber);
    count->add_option("--lambda-mu-index", ca.lambda_level.mu_index, "[mu_K : mu_K cap U^1] (isogeny)")
        ->check(CLI::PositiveNumber);
    add_output_flags(count, count_c);
    add_override_flags(count, count_c);

    auto* verify = app.add_subcommand("verify", "Run the oracle verification suite");
    verify->add_option("scope", scope, "hilbert, padic-lemmas, biquadratic or all");
    verify->add_option("--bound", verify_bound, "Exclusive bound on d and j for the biquadratic sweep");
    add_output_flags(verify, verify_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*info) return cmd_info(info_spec, info_c, out);
        if (*table) return cmd_table(family, table_bound, table_c, out);
        if (*count) return cmd_count(subject, count_spec, ca, count_c, out);
        if (*verify) return cmd_verify(scope, verify_bound, verify_c, out);
    } catch (const ParseError& e) {
        err << "error: parse error at " << e.what() << '\n';
        return 1;
    } catch (const InsufficientInvariants& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const HypothesisNotAsserted& e) {
        err << "error: " << e.what() << "; pass --assert-noncompact\n";
        return 2;
    } catch (const InconsistentInvariants& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InconsistentLevel& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}

}  // namespace cmtori
