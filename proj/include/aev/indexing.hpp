#pragma once

#include "aev/term.hpp"

#include <string>

namespace aev {

/// Which quantifier a program copy is verified under.
enum class Side { Universal, Existential };

const char * to_string(Side side);

/// Identity of one program copy inside a relational problem, e.g. run[2] on the existential side.
struct ExecId {
    std::string program;
    int index = 1;
    Side side = Side::Universal;

    /// Prefix used for namespacing, "program!index!".
    std::string prefix() const { return program + "!" + std::to_string(index) + "!"; }
    std::string label() const { return program + "[" + std::to_string(index) + "]"; }

    friend bool operator==(const ExecId &, const ExecId &) = default;
};

/// Wire spelling of the reserved return symbol.
inline constexpr const char * kReturnSymbol = "ret!";

/// Whether a name is already namespaced (contains the '!' separator) or is the return symbol.
bool is_indexed_name(const std::string & name);

/// Namespaced form of a program variable; throws AlreadyIndexed for names containing '!'.
std::string index_name(const std::string & name, const ExecId & id);

/// Renames every free program variable x of t to prefix+x. Bound variables and `ret!` are left
/// alone. Throws AlreadyIndexed when a free variable already carries a '!' separator.
Term index_vars(const Term & t, const ExecId & id);

} // namespace aev
