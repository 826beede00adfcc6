#include "aev/error.hpp"
#include "aev/logic.hpp"

#include <functional>

namespace aev {

namespace {

void check_scope(const std::string & what, const Term & t, const std::set<std::string> & allowed) {
    for (const auto & [name, sort] : free_vars(t)) {
        if (!allowed.count(name)) { throw InvalidProblem(what + " mentions '" + name + "' which is not in scope"); }
        if (sort != Sort::Int) { throw InvalidProblem(what + " uses '" + name + "' at sort Bool"); }
    }
    if (t.sort() != Sort::Bool) { throw InvalidProblem(what + " is not a formula"); }
}

std::set<std::string> name_set(const std::vector<std::string> & names, const std::string & fname) {
    std::set<std::string> out;
    for (const auto & n : names) {
        if (n == kReturnSymbol) { throw InvalidProblem("spec of '" + fname + "' binds the reserved name ret!"); }
        if (!out.insert(n).second) { throw InvalidProblem("spec of '" + fname + "' repeats name '" + n + "'"); }
    }
    return out;
}

// Calls visit(vector) for every vector in domain^n, stopping when it returns false.
bool for_each_vector(std::size_t n, const IntRange & domain, const std::function<bool(const std::vector<Integer> &)> & visit) {
    std::vector<Integer> cur(n, domain.lo);
    for (;;) {
        if (!visit(cur)) { return false; }
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (cur[i] < domain.hi) {
                ++cur[i];
                break;
            }
            cur[i] = domain.lo;
        }
        if (i == n) { return true; }
    }
}

std::string join(const std::vector<Integer> & vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) { out += ", "; }
        out += vs[i].str();
    }
    return out;
}

} // namespace

void validate(const UniversalSpec & spec) {
    auto params = name_set(spec.params, spec.fname);
    check_scope("precondition of '" + spec.fname + "'", spec.pre, params);
    params.insert(kReturnSymbol);
    check_scope("postcondition of '" + spec.fname + "'", spec.post, params);
}

void validate(const ExistentialSpec & spec) {
    std::vector<std::string> all = spec.params;
    all.insert(all.end(), spec.choice_vars.begin(), spec.choice_vars.end());
    auto scope = name_set(all, spec.fname);
    check_scope("precondition of '" + spec.fname + "'", spec.pre, scope);
    scope.insert(kReturnSymbol);
    check_scope("postcondition of '" + spec.fname + "'", spec.post, scope);
}

void SpecContext::add(UniversalSpec spec) {
    validate(spec);
    std::string name = spec.fname;
    universal.insert_or_assign(name, std::move(spec));
}

void SpecContext::add(ExistentialSpec spec) {
    validate(spec);
    std::string name = spec.fname;
    existential.insert_or_assign(name, std::move(spec));
}

const UniversalSpec & SpecContext::forall_spec(const std::string & fname) const {
    auto it = universal.find(fname);
    if (it == universal.end()) { throw MissingSpec(fname, "universal"); }
    return it->second;
}

const ExistentialSpec & SpecContext::exists_spec(const std::string & fname) const {
    auto it = existential.find(fname);
    if (it == existential.end()) { throw MissingSpec(fname, "existential"); }
    return it->second;
}

std::string CompatResult::describe() const {
    if (compatible) { return truncated ? "compatible (some runs ran out of fuel)" : "compatible"; }
    std::string out = "args (" + join(args) + ")";
    if (!choices.empty()) { out += ", choices (" + join(choices) + ")"; }
    if (returned) {
        out += " returned " + returned->str();
    } else {
        out += ": no run realizes the postcondition";
    }
    if (truncated) { out += " [inconclusive: fuel exhausted]"; }
    return out;
}

namespace {

Valuation args_env(const std::vector<std::string> & names, const std::vector<Integer> & values) {
    Valuation env;
    for (std::size_t i = 0; i < names.size(); ++i) { env[names[i]] = values[i]; }
    return env;
}

// Implementations under test are self-contained: calls inside a body resolve against `impls`.
ReturnSet returns_in(const ImplContext & impls, const FunDef & def, const std::vector<Integer> & args,
                     const IntRange & domain, std::size_t fuel) {
    if (args.size() != def.params.size()) { throw ArityMismatch(def.name, def.params.size(), args.size()); }
    State frame = args_env(def.params, args);
    ExecResult run = exec_concrete(impls, frame, def.body, domain, fuel);
    ReturnSet out;
    out.diverged = run.diverged;
    for (const auto & st : run.finals) { out.values.insert(eval_aexp(st, def.ret)); }
    return out;
}

CompatResult forall_compat(const ImplContext & impls, const FunDef & def, const UniversalSpec & spec,
                           const IntRange & domain, std::size_t fuel) {
    if (def.params.size() != spec.params.size()) {
        throw ArityMismatch(def.name, spec.params.size(), def.params.size());
    }
    CompatResult result;
    for_each_vector(def.params.size(), domain, [&](const std::vector<Integer> & args) {
        Valuation env = args_env(spec.params, args);
        if (!holds(spec.pre, env, domain)) { return true; }
        ReturnSet rs = returns_in(impls, def, args, domain, fuel);
        result.truncated = result.truncated || rs.diverged;
        for (const auto & r : rs.values) {
            env[kReturnSymbol] = r;
            if (!holds(spec.post, env, domain)) {
                result.compatible = false;
                result.args = args;
                result.returned = r;
                return false;
            }
        }
        return true;
    });
    return result;
}

CompatResult exists_compat(const ImplContext & impls, const FunDef & def, const ExistentialSpec & spec,
                           const IntRange & domain, std::size_t fuel) {
    if (def.params.size() != spec.params.size()) {
        throw ArityMismatch(def.name, spec.params.size(), def.params.size());
    }
    CompatResult result;
    for_each_vector(def.params.size(), domain, [&](const std::vector<Integer> & args) {
        std::optional<ReturnSet> rs;
        return for_each_vector(spec.choice_vars.size(), domain, [&](const std::vector<Integer> & ks) {
            Valuation env = args_env(spec.params, args);
            for (std::size_t i = 0; i < ks.size(); ++i) { env[spec.choice_vars[i]] = ks[i]; }
            if (!holds(spec.pre, env, domain)) { return true; }
            if (!rs) { rs = returns_in(impls, def, args, domain, fuel); }
            for (const auto & r : rs->values) {
                env[kReturnSymbol] = r;
                if (holds(spec.post, env, domain)) { return true; }
            }
            result.compatible = false;
            result.truncated = rs->diverged;
            result.args = args;
            result.choices = ks;
            return false;
        });
    });
    return result;
}

} // namespace

ReturnSet possible_returns(const FunDef & def, const std::vector<Integer> & args, const IntRange & domain,
                           std::size_t fuel) {
    return returns_in(ImplContext{}, def, args, domain, fuel);
}

CompatResult check_forall_compatible(const FunDef & def, const UniversalSpec & spec, const IntRange & domain,
                                     std::size_t fuel) {
    return forall_compat(ImplContext{}, def, spec, domain, fuel);
}

CompatResult check_exists_compatible(const FunDef & def, const ExistentialSpec & spec, const IntRange & domain,
                                     std::size_t fuel) {
    return exists_compat(ImplContext{}, def, spec, domain, fuel);
}

ContextCompat check_context_compatible(const ImplContext & impls, const SpecContext & specs, const IntRange & domain,
                                       std::size_t fuel) {
    ContextCompat out;
    for (const auto & [name, def] : impls.defs()) {
        if (auto it = specs.universal.find(name); it != specs.universal.end()) {
            CompatResult r = forall_compat(impls, def, it->second, domain, fuel);
            if (!r.compatible) { return ContextCompat{false, name, Side::Universal, r}; }
        }
        if (auto it = specs.existential.find(name); it != specs.existential.end()) {
            CompatResult r = exists_compat(impls, def, it->second, domain, fuel);
            if (!r.compatible) { return ContextCompat{false, name, Side::Existential, r}; }
        }
    }
    return out;
}

} // namespace aev
