#pragma once

// Text grammar for CM algebras, report serialization and the command-line
// entry point.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmtori/torus.hpp"

namespace cmtori {

/// "iq:<m>", "biq:<d>,<j>" or "prod:<spec>;<spec>;...". Throws ParseError.
CMAlgebraSpec parse_spec(const std::string& text);
std::string render_spec(const CMAlgebraSpec& spec);
std::string render_component(const CMComponent& c);

enum class OutputFormat { text, json, csv };
OutputFormat parse_format(const std::string& name);

/// Column order shared by JSON rows and CSV output.
const std::vector<std::string>& report_fields();

/// Report row; unknown invariants are null.
nlohmann::json report_row(const ClassNumberReport& rep);
nlohmann::json to_json(const Rational& v);
nlohmann::json to_json(const Interval& v);

/// Rows rendered as {"schema": 1, "rows": [...]}, CSV with a header, or text.
std::string render_rows(const std::vector<nlohmann::json>& rows, const std::vector<std::string>& columns,
                        OutputFormat format);

struct VerifyCase {
    std::string tag;
    std::string inputs;
    std::string expected;
    std::string computed;
    bool ok = true;
};

struct VerifyGroup {
    std::string tag;
    long cases = 0;
    long failures = 0;
    std::vector<VerifyCase> failed;  // first few failures
    std::string note;
};

std::vector<VerifyGroup> verify_hilbert();
std::vector<VerifyGroup> verify_padic_lemmas();
std::vector<VerifyGroup> verify_biquadratic(i64 d_bound, i64 j_bound);

/// Exit codes: 0 success, 1 usage or parse error, 2 insufficient invariants
/// or unasserted hypothesis, 3 verification failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmtori
