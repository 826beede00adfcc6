#include "aev/indexing.hpp"

#include "aev/error.hpp"

namespace aev {

const char * to_string(Side side) { return side == Side::Universal ? "forall" : "exists"; }

bool is_indexed_name(const std::string & name) { return name.find('!') != std::string::npos; }

std::string index_name(const std::string & name, const ExecId & id) {
    if (is_indexed_name(name)) { throw AlreadyIndexed(name); }
    return id.prefix() + name;
}

Term index_vars(const Term & t, const ExecId & id) {
    Substitution mapping;
    for (const auto & [name, sort] : free_vars(t)) {
        if (name == kReturnSymbol) { continue; }
        mapping.emplace(name, mk_var(index_name(name, id), sort));
    }
    if (mapping.empty()) { return t; }
    return subst(t, mapping);
}

} // namespace aev
