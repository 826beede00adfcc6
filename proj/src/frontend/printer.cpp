#include "aev/frontend.hpp"
#include "aev/smtlib.hpp"

namespace aev {

namespace {

std::string join(const std::vector<std::string> & xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) { out += (i ? ", " : "") + xs[i]; }
    return out;
}

std::string copy_list(const std::vector<CopyRef> & refs) {
    std::string out;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        out += (i ? ", " : "") + refs[i].program + "[" + std::to_string(refs[i].index) + "]";
    }
    return out;
}

} // namespace

std::string print_input(const VerificationProblem & p) {
    std::string out;
    if (p.expected_valid) { out += std::string("expected: ") + (*p.expected_valid ? "valid" : "invalid") + ";\n\n"; }
    out += "forall: " + copy_list(p.universal_copies) + ";\n";
    out += "exists: " + copy_list(p.existential_copies) + ";\n\n";
    out += "pre:  " + to_smtlib(p.pre) + ";\n";
    out += "post: " + to_smtlib(p.post) + ";\n\n";
    out += "aspecs:\n";
    for (const auto & [name, s] : p.specs.universal) {
        out += "  " + name + "(" + join(s.params) + ") {\n";
        out += "    pre:  " + to_smtlib(s.pre) + ";\n";
        out += "    post: " + to_smtlib(s.post) + ";\n  }\n";
    }
    out += "\nespecs:\n";
    for (const auto & [name, s] : p.specs.existential) {
        out += "  " + name + "(" + join(s.params) + ") {\n";
        if (!s.choice_vars.empty()) { out += "    templateVars: " + join(s.choice_vars) + ";\n"; }
        out += "    pre:  " + to_smtlib(s.pre) + ";\n";
        out += "    post: " + to_smtlib(s.post) + ";\n  }\n";
    }
    for (const auto & [name, prog] : p.programs) {
        out += "\nprog " + name + "(" + join(prog.params) + "):\n";
        out += to_source(prog.body, 2);
        out += "endp\n";
    }
    return out;
}

bool structurally_equal(const VerificationProblem & a, const VerificationProblem & b) {
    if (a.expected_valid != b.expected_valid || a.universal_copies != b.universal_copies ||
        a.existential_copies != b.existential_copies || !(a.pre == b.pre) || !(a.post == b.post)) {
        return false;
    }
    if (a.specs.universal.size() != b.specs.universal.size() || a.specs.existential.size() != b.specs.existential.size() ||
        a.programs.size() != b.programs.size()) {
        return false;
    }
    for (const auto & [name, s] : a.specs.universal) {
        auto it = b.specs.universal.find(name);
        if (it == b.specs.universal.end() || it->second.params != s.params || !(it->second.pre == s.pre) ||
            !(it->second.post == s.post)) {
            return false;
        }
    }
    for (const auto & [name, s] : a.specs.existential) {
        auto it = b.specs.existential.find(name);
        if (it == b.specs.existential.end() || it->second.params != s.params || it->second.choice_vars != s.choice_vars ||
            !(it->second.pre == s.pre) || !(it->second.post == s.post)) {
            return false;
        }
    }
    for (const auto & [name, prog] : a.programs) {
        auto it = b.programs.find(name);
        if (it == b.programs.end() || it->second.params != prog.params || !structurally_equal(it->second.body, prog.body)) {
            return false;
        }
    }
    return true;
}

} // namespace aev
