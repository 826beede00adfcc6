#pragma once

#include "aev/indexing.hpp"
#include "aev/lang.hpp"
#include "aev/logic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aev {

/// A named program with its parameters; parameters are ordinary (indexed) variables of each copy.
struct Program {
    std::string name;
    std::vector<std::string> params;
    Stmt body;
};

/// A reference to one copy of a program, written `name[index]` in input files.
struct CopyRef {
    std::string program;
    int index = 1;

    friend bool operator==(const CopyRef &, const CopyRef &) = default;
};

/// A relational verification problem: for all runs of the universal copies there exist runs of
/// the existential copies such that `pre` on the initial states implies `post` on the finals.
struct VerificationProblem {
    std::optional<bool> expected_valid;
    std::vector<CopyRef> universal_copies;
    std::vector<CopyRef> existential_copies;
    Term pre;
    Term post;
    SpecContext specs;
    std::map<std::string, Program> programs;
};

/// One instantiated copy: statements indexed for the copy and flattened into a list.
struct ProgramCopy {
    ExecId id;
    std::vector<Stmt> stmts;
};

struct InstantiatedCopies {
    std::vector<ProgramCopy> universals;
    std::vector<ProgramCopy> existentials;
};

/// Checks the well-formedness invariants: unique copy references, defined programs, and pre/post
/// mentioning only indexed variables of declared copies. Throws InvalidProblem.
void check_well_formed(const VerificationProblem & problem);

/// Indexes and normalizes every declared copy. Throws InvalidProblem for undefined programs.
InstantiatedCopies instantiate_copies(const VerificationProblem & problem);

/// Indexed names of every variable of a copy (parameters plus variables in the body).
std::set<std::string> copy_variables(const ProgramCopy & copy, const std::vector<std::string> & params);

} // namespace aev
