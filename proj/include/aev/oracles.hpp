#pragma once

#include "aev/lang.hpp"
#include "aev/logic.hpp"
#include "aev/problem.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aev {

// Executable specification-level semantics, decided by bounded enumeration. Havoc values, call
// return values and choice values range over the enumeration domain, extended by any value that
// a spec pins down with an equation such as (= ret! (* 2 x)); quantifiers inside specs range over
// the domain itself.

struct OverResult {
    std::set<State> finals;
    bool diverged = false;
};

/// Overapproximate execution: a call whose precondition holds may return any value satisfying
/// the universal postcondition; otherwise any value at all. Each loop iteration costs one fuel.
/// Throws MissingSpec, UnboundVariable.
OverResult exec_over(const SpecContext & specs, const State & state, const Stmt & s, const IntRange & domain,
                     std::size_t fuel);

/// One existential call application: static call site (pre-order index of the call statement in
/// the executed program), callee and the chosen values for its choice variables.
struct ChoiceEntry {
    std::size_t site = 0;
    std::string fname;
    std::vector<Integer> choices;

    friend bool operator==(const ChoiceEntry &, const ChoiceEntry &) = default;
    friend auto operator<=>(const ChoiceEntry &, const ChoiceEntry &) = default;
};

using ChoiceTrace = std::vector<ChoiceEntry>;

struct Derivation {
    ChoiceTrace trace;
    std::set<State> states;
};

struct UnderResult {
    std::vector<Derivation> derivations;
    /// Some derivation was still looping when fuel ran out and was dropped.
    bool truncated = false;
    /// The derivation cap was reached; the list is incomplete.
    bool capped = false;
};

/// Underapproximate execution. A call picks choice values satisfying the existential precondition
/// and yields the set of every return value allowed by the instantiated postcondition. After a
/// statement that yields several states, each state independently picks how to continue, and
/// the continuation sets are unioned; the trace of such a derivation lists the picks of each
/// state in state order. Havoc is angelic: one derivation per value.
///
/// Throws MissingSpec, UnboundVariable, EmptyPostcondition.
UnderResult exec_under(const SpecContext & specs, const State & state, const Stmt & s, const IntRange & domain,
                       std::size_t fuel, std::size_t max_derivations = 100000);

/// True when every application at the same call site made the same choice.
bool site_uniform(const ChoiceTrace & trace);

std::string to_string(const ChoiceTrace & trace);

// ---------------------------------------------------------------------------------------------
// Empirical checkers.

struct Violation {
    State seed;
    std::string universal_finals;
    std::string missing_witness;
};

struct OracleReport {
    std::vector<Violation> violations;
    /// Set when an implementation failed its compatibility pre-check; no further checks ran.
    std::optional<std::string> precheck_failure;
    bool truncated = false;
    std::size_t seeds_checked = 0;

    bool ok() const { return !precheck_failure && violations.empty(); }
    /// One violation per line: `seed | universal-finals | missing-witness`.
    std::string to_text() const;
};

struct OracleOptions {
    /// Values for havoc, returns, choices and quantifiers.
    IntRange domain{-4, 4};
    /// Values for the initial state variables; defaults to `domain` when absent.
    std::optional<IntRange> seed_domain;
    /// Fuel for every program (or copy) run under the spec-level semantics.
    std::size_t fuel = 16;
    /// Fuel for concrete runs, which also pay for loops inside function bodies.
    std::size_t impl_fuel = 64;
    std::size_t max_derivations = 100000;

    const IntRange & seeds() const { return seed_domain ? *seed_domain : domain; }
};

/// Every concrete final state of `s` from each seed is also an overapproximate final state.
OracleReport check_over_soundness(const ImplContext & impls, const SpecContext & specs, const Stmt & s,
                            const std::vector<State> & seeds, const OracleOptions & options);

/// Every underapproximate derivation's state set contains some concrete final state.
OracleReport check_under_soundness(const ImplContext & impls, const SpecContext & specs, const Stmt & s,
                            const std::vector<State> & seeds, const OracleOptions & options);

/// Brute-force evaluation of the relational triple over all seeds satisfying the precondition:
/// for every combination of overapproximate finals of the universal copies there must be an
/// underapproximate derivation of the existential copies whose whole state set satisfies the
/// postcondition. Universal copies run first, then existential copies from the last-declared to
/// the first-declared, matching the quantifier nesting of the verification condition.
///
/// When `impls` is given it is first checked for compatibility with the problem's specs, and the
/// same property is additionally checked with concrete runs.
OracleReport check_rhle_semantics(const VerificationProblem & problem, const ImplContext * impls,
                                  const OracleOptions & options);

/// Every state binding `vars` to values in `domain`.
std::vector<State> all_states(const std::set<std::string> & vars, const IntRange & domain);

} // namespace aev
