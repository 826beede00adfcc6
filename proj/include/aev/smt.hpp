#pragma once

#include "aev/integer.hpp"
#include "aev/term.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aev {

using Model = std::map<std::string, Integer>;

struct SolverConfig {
    /// Solver command line. When empty, the AEV_SOLVER environment variable (split on
    /// whitespace) is used, and failing that `z3 -in -smt2`.
    std::vector<std::string> command;
    /// Wall-clock budget per query; the solver process is killed when it runs out.
    long timeout_ms = 30000;
    /// Emitted as (set-logic ...); empty omits the command.
    std::string logic = "ALL";

    /// The command that will actually be run.
    std::vector<std::string> resolved_command() const;
};

enum class UnknownReason { Timeout, SolverUnknown, SolverError };

const char * to_string(UnknownReason reason);

struct Verdict {
    enum class Kind { Valid, Invalid, Unknown };

    Kind kind = Kind::Unknown;
    /// Falsifying assignment to the free Int variables, for Invalid.
    Model model;
    UnknownReason reason = UnknownReason::SolverUnknown;
    /// Solver-provided text for Unknown (reason-unknown info or the error message).
    std::string detail;

    static Verdict valid() { return Verdict{Kind::Valid, {}, {}, {}}; }
    static Verdict invalid(Model m) { return Verdict{Kind::Invalid, std::move(m), {}, {}}; }
    static Verdict unknown(UnknownReason r, std::string detail = {}) { return Verdict{Kind::Unknown, {}, r, std::move(detail)}; }

    bool is_valid() const { return kind == Kind::Valid; }
    bool is_invalid() const { return kind == Kind::Invalid; }
    bool is_unknown() const { return kind == Kind::Unknown; }
};

/// "valid", "invalid" or "unknown (<reason>)".
std::string to_string(const Verdict & v);

/// The SMT-LIB2 script sent for a validity query of `t`: declarations, (assert (not t)),
/// check-sat, and requests for the model values and the reason for an unknown answer.
std::string validity_query(const Term & t, const SolverConfig & config);

/// Checks validity of a Bool term by asking a fresh solver process whether its negation is
/// satisfiable. Throws SolverSpawnError when the solver cannot be started and ProtocolError when
/// its output is not a recognizable answer. Throws SortMismatch for non-Bool terms.
Verdict verify(const Term & t, const SolverConfig & config = {});

/// Parses a get-model response (a list of define-fun entries) or a get-value response (a list of
/// (name value) pairs) into integer assignments. Throws ProtocolError.
Model parse_model(std::string_view text);

} // namespace aev
