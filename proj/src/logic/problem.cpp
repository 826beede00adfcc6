#include "aev/error.hpp"
#include "aev/problem.hpp"

namespace aev {

namespace {

const Program & program_of(const VerificationProblem & problem, const CopyRef & ref) {
    auto it = problem.programs.find(ref.program);
    if (it == problem.programs.end()) {
        throw InvalidProblem("copy " + ref.program + "[" + std::to_string(ref.index) + "] refers to an undefined program");
    }
    return it->second;
}

ProgramCopy make_copy(const Program & prog, const CopyRef & ref, Side side) {
    ProgramCopy copy{ExecId{ref.program, ref.index, side}, {}};
    copy.stmts = normalize(index_stmt(prog.body, copy.id));
    return copy;
}

} // namespace

std::set<std::string> copy_variables(const ProgramCopy & copy, const std::vector<std::string> & params) {
    std::set<std::string> out;
    for (const auto & p : params) { out.insert(index_name(p, copy.id)); }
    for (const auto & s : copy.stmts) {
        auto vs = program_vars(s);
        out.insert(vs.begin(), vs.end());
    }
    return out;
}

void check_well_formed(const VerificationProblem & problem) {
    std::set<std::pair<std::string, int>> seen;
    std::set<std::string> prefixes;
    auto visit = [&](const CopyRef & ref) {
        if (ref.index < 1) { throw InvalidProblem("copy index of " + ref.program + " must be positive"); }
        if (!seen.emplace(ref.program, ref.index).second) {
            throw InvalidProblem("copy " + ref.program + "[" + std::to_string(ref.index) + "] is declared twice");
        }
        program_of(problem, ref);
        prefixes.insert(ExecId{ref.program, ref.index, Side::Universal}.prefix());
    };
    for (const auto & r : problem.universal_copies) { visit(r); }
    for (const auto & r : problem.existential_copies) { visit(r); }

    auto check_term = [&](const Term & t, const char * what) {
        if (t.sort() != Sort::Bool) { throw InvalidProblem(std::string(what) + " is not a formula"); }
        for (const auto & name : free_var_names(t)) {
            bool ok = false;
            for (const auto & p : prefixes) {
                if (name.size() > p.size() && name.compare(0, p.size(), p) == 0 &&
                    name.find('!', p.size()) == std::string::npos) {
                    ok = true;
                }
            }
            if (!ok) {
                throw InvalidProblem(std::string(what) + " mentions '" + name +
                                     "', which is not a variable of a declared copy");
            }
        }
    };
    check_term(problem.pre, "precondition");
    check_term(problem.post, "postcondition");
}

InstantiatedCopies instantiate_copies(const VerificationProblem & problem) {
    InstantiatedCopies out;
    for (const auto & r : problem.universal_copies) {
        out.universals.push_back(make_copy(program_of(problem, r), r, Side::Universal));
    }
    for (const auto & r : problem.existential_copies) {
        out.existentials.push_back(make_copy(program_of(problem, r), r, Side::Existential));
    }
    return out;
}

} // namespace aev
