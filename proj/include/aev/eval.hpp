#pragma once

#include "aev/integer.hpp"
#include "aev/term.hpp"

#include <map>
#include <string>
#include <variant>

namespace aev {

using Value = std::variant<bool, Integer>;

/// Assignment of integers to free Int variables.
using Valuation = std::map<std::string, Integer>;

/// Evaluates a term under a valuation of its free variables. Int quantifiers range over `domain`
/// and Bool quantifiers over {false, true}, so quantified terms are decided by bounded enumeration.
/// Throws UnboundVariable, DivisionByZero.
Value evaluate(const Term & t, const Valuation & env, const IntRange & domain);

/// Evaluates a Bool term; throws SortMismatch for Int terms.
bool holds(const Term & t, const Valuation & env, const IntRange & domain);

/// Evaluates an Int term; throws SortMismatch for Bool terms.
Integer evaluate_int(const Term & t, const Valuation & env, const IntRange & domain);

} // namespace aev
