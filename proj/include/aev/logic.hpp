#pragma once

#include "aev/lang.hpp"
#include "aev/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aev {

/// Upper-bound contract {P}{Q}: every terminating run from a state satisfying P returns a value
/// satisfying Q. Q refers to the return value through `ret!`.
struct UniversalSpec {
    std::string fname;
    std::vector<std::string> params;
    Term pre;
    Term post;
};

/// Lower-bound contract [c̄]{P}{Q}: for every choice valuation satisfying P, some run returns a
/// value satisfying Q.
struct ExistentialSpec {
    std::string fname;
    std::vector<std::string> params;
    std::vector<std::string> choice_vars;
    Term pre;
    Term post;
};

/// Throws InvalidProblem when free variables escape the allowed scope, when `ret!` occurs in a
/// precondition, or when choice variables clash with parameters.
void validate(const UniversalSpec & spec);
void validate(const ExistentialSpec & spec);

struct SpecContext {
    std::map<std::string, UniversalSpec> universal;
    std::map<std::string, ExistentialSpec> existential;

    /// Validates and inserts, replacing an existing spec of the same name.
    void add(UniversalSpec spec);
    void add(ExistentialSpec spec);

    /// Throw MissingSpec.
    const UniversalSpec & forall_spec(const std::string & fname) const;
    const ExistentialSpec & exists_spec(const std::string & fname) const;
};

/// Outcome of a bounded compatibility check.
struct CompatResult {
    bool compatible = true;
    /// Some run hit the fuel bound. For the ∃ check a false verdict is then inconclusive.
    bool truncated = false;
    /// Witness for a false verdict: the arguments, the choice values (∃ only) and, for the ∀
    /// check, the offending return value.
    std::vector<Integer> args;
    std::vector<Integer> choices;
    std::optional<Integer> returned;

    std::string describe() const;
};

/// The set of values `def` can return on `args` within `fuel` (havoc over `domain`).
struct ReturnSet {
    std::set<Integer> values;
    bool diverged = false;
};
ReturnSet possible_returns(const FunDef & def, const std::vector<Integer> & args, const IntRange & domain,
                           std::size_t fuel);

/// ∀-compatibility over all argument vectors in domain^n. Throws ArityMismatch.
CompatResult check_forall_compatible(const FunDef & def, const UniversalSpec & spec, const IntRange & domain,
                                     std::size_t fuel);

/// ∃-compatibility over all arguments and choice values in the domain. Throws ArityMismatch.
CompatResult check_exists_compatible(const FunDef & def, const ExistentialSpec & spec, const IntRange & domain,
                                     std::size_t fuel);

/// Checks every implementation in `impls` against the matching specs in `specs`; returns the first
/// failure as (fname, side, result). Functions without a corresponding spec are skipped.
struct ContextCompat {
    bool compatible = true;
    std::string fname;
    Side side = Side::Universal;
    CompatResult result;
};
ContextCompat check_context_compatible(const ImplContext & impls, const SpecContext & specs, const IntRange & domain,
                                       std::size_t fuel);

} // namespace aev
