#include "candidates.hpp"

#include "aev/error.hpp"
#include "aev/indexing.hpp"

namespace aev {

namespace {

bool evaluable(const Term & e, const Valuation & env) {
    for (const auto & n : free_var_names(e)) {
        if (!env.count(n)) { return false; }
    }
    return true;
}

void collect(const Term & t, const std::string & var, const Valuation & env, const IntRange & domain,
             std::set<Integer> & out) {
    if (t.is_quantifier()) { return; }
    if (t.kind() == Kind::Eq && t.args()[0].sort() == Sort::Int) {
        for (int side = 0; side < 2; ++side) {
            const Term & lhs = t.args()[side];
            const Term & rhs = t.args()[1 - side];
            if (lhs.kind() == Kind::Var && lhs.name() == var && evaluable(rhs, env)) {
                try {
                    out.insert(evaluate_int(rhs, env, domain));
                } catch (const DivisionByZero &) {
                }
            }
        }
    }
    for (const auto & a : t.args()) { collect(a, var, env, domain, out); }
}

} // namespace

std::set<Integer> candidate_values(const Term & t, const std::string & var, const Valuation & env,
                                   const IntRange & domain) {
    auto vs = domain.values();
    std::set<Integer> out(vs.begin(), vs.end());
    collect(t, var, env, domain, out);
    return out;
}

std::set<Integer> satisfying_returns(const Term & post, const Valuation & env, const IntRange & domain) {
    std::set<Integer> out;
    Valuation probe = env;
    for (const auto & r : candidate_values(post, kReturnSymbol, env, domain)) {
        probe[kReturnSymbol] = r;
        if (holds(post, probe, domain)) { out.insert(r); }
    }
    return out;
}

namespace {

void choose(const ExistentialSpec & spec, std::size_t i, Valuation & env, std::vector<Integer> & ks,
            const IntRange & domain, const std::function<void(const std::vector<Integer> &, const Valuation &)> & visit) {
    if (i == spec.choice_vars.size()) {
        visit(ks, env);
        return;
    }
    const std::string & c = spec.choice_vars[i];
    for (const auto & v : candidate_values(spec.pre, c, env, domain)) {
        env[c] = v;
        ks.push_back(v);
        choose(spec, i + 1, env, ks, domain, visit);
        ks.pop_back();
    }
    env.erase(c);
}

} // namespace

void for_each_choice(const ExistentialSpec & spec, const Valuation & env, const IntRange & domain,
                     const std::function<void(const std::vector<Integer> &, const Valuation &)> & visit) {
    Valuation work = env;
    std::vector<Integer> ks;
    choose(spec, 0, work, ks, domain, visit);
}

std::string describe_choices(const ExistentialSpec & spec, const std::vector<Integer> & ks) {
    std::string out = "{";
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (i) { out += ", "; }
        out += spec.choice_vars[i] + "=" + ks[i].str();
    }
    return out + "}";
}

} // namespace aev
