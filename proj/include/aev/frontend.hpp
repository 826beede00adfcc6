#pragma once

#include "aev/error.hpp"
#include "aev/problem.hpp"
#include "aev/smt.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aev {

/// Parses a problem file:
///
///     expected: valid;            // optional
///     forall: run[1];
///     exists: run[2], run[3];
///     pre:  (= run!1!low run!2!low);
///     post: (= run!1!low run!2!low);
///     aspecs:  f(x) { pre: true; post: (<= 0 ret!); }
///     especs:  f(x) { templateVars: c; pre: (<= 0 c); post: (= ret! c); }
///     prog run(high, low):
///       ...statements...
///     endp
///
/// Statements: `x := e;`, `x := call f(e, ...);`, `havoc x;`, `skip;`,
/// `if b then ... [else ...] end`, `while b [@inv{term}] [@var{term}] do ... end`.
/// Expressions support + - * with the usual precedence and unary minus; conditions support
/// == != < <= > >= && || ! and parentheses, lowered to the core forms. `//` starts a comment.
///
/// Throws ParseError (with line and column) for syntax errors and duplicate sections, and
/// InvalidProblem when the problem violates well-formedness or a copy calls a function with no
/// spec on its side.
VerificationProblem parse_input(std::string_view text);

/// Renders a problem in the input format; parse_input(print_input(p)) reproduces p.
std::string print_input(const VerificationProblem & problem);

/// Structural equality of problems (terms and statements compared syntactically).
bool structurally_equal(const VerificationProblem & a, const VerificationProblem & b);

/// An error tagged with the pipeline stage that raised it ("instantiate", "vcgen", "solver").
class StageError : public Error {
public:
    StageError(std::string stage, const std::string & message)
        : Error(stage + ": " + message), stage_(std::move(stage)) {}
    const std::string & stage() const { return stage_; }

private:
    std::string stage_;
};

struct VerificationResult {
    Verdict verdict;
    Term vc;
    /// The SMT-LIB2 script sent to the solver.
    std::string query;
    std::optional<bool> expected;

    /// True when there is no expectation or the verdict agrees with it; Unknown never agrees.
    bool matches_expected() const;
    /// One `name = value` line per model entry (names unquoted); empty unless Invalid.
    std::string model_text() const;
};

/// instantiate_copies, then rhle_vc, then verify. Throws StageError.
VerificationResult run_verification(const VerificationProblem & problem, const SolverConfig & config = {});

struct BenchmarkRow {
    std::string name;
    double seconds = 0;
    std::optional<bool> expected;
    /// "valid", "invalid", "unknown" or "error".
    std::string verified;
    bool agree = false;
    /// Error text for "error" rows, unknown reason for "unknown" rows.
    std::string detail;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows;

    /// Aligned table with the columns Name, Time (s), Valid, Verified, Agree.
    std::string table() const;
    /// Header plus one comma-separated row per file.
    std::string csv() const;
    bool all_agree() const;
};

/// Verifies every `*.imp` file in the directory (sorted by name). Failures become rows.
BenchmarkReport run_benchmarks(const std::filesystem::path & directory, const SolverConfig & config = {});

} // namespace aev
