#pragma once

#include "aev/sexpr.hpp"
#include "aev/term.hpp"

#include <string>
#include <string_view>

namespace aev {

/// Renders a symbol; names that are not SMT-LIB2 simple symbols, or that contain '!', are
/// emitted quoted as |name|.
std::string smt_symbol(const std::string & name);

/// Single-line SMT-LIB2 rendering of a term.
std::string to_smtlib(const Term & t);

/// Builds a Term from an s-expression. Free symbols are Int-sorted; `true`/`false` are constants;
/// `distinct` on two arguments is read as the negation of `=`. Throws ParseError.
Term term_from_sexpr(const Sexpr & e, std::string_view source = {});

/// Parses exactly one term from the text (trailing whitespace allowed).
Term parse_term(std::string_view text);

} // namespace aev
