#pragma once

#include "aev/logic.hpp"
#include "aev/problem.hpp"

#include <vector>

namespace aev {

using ExecTag = Side;

struct Step {
    Stmt stmt;
    ExecTag tag = ExecTag::Universal;
    /// Position of the copy in its list.
    std::size_t index = 0;
};

/// Removes and returns the last statement of the first nonempty existential copy, or, once all
/// existential copies are empty, of the first nonempty universal copy. Throws AllEmpty.
Step choose_step(std::vector<ProgramCopy> & universals, std::vector<ProgramCopy> & existentials);

/// Weakest precondition of `s` for `post` under the given execution tag. Loops use their
/// annotation; existential loops also need a variant. Throws MissingSpec, MissingInvariant,
/// MissingVariant, ArityMismatch.
Term statement_vc(const Stmt & s, ExecTag tag, const Term & post, const SpecContext & specs);

/// Consumes every copy with choose_step/statement_vc and returns pre ⟹ Ψ.
Term rhle_vc(const Term & pre, std::vector<ProgramCopy> universals, std::vector<ProgramCopy> existentials,
             const Term & post, const SpecContext & specs);

} // namespace aev
