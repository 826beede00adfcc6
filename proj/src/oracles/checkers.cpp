#include "aev/error.hpp"
#include "aev/oracles.hpp"
#include "candidates.hpp"

#include <functional>

namespace aev {

std::vector<State> all_states(const std::set<std::string> & vars, const IntRange & domain) {
    std::vector<State> out{State{}};
    for (const auto & v : vars) {
        std::vector<State> next;
        next.reserve(out.size() * domain.size());
        for (const auto & st : out) {
            for (const auto & value : domain.values()) {
                State s = st;
                s[v] = value;
                next.push_back(std::move(s));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string OracleReport::to_text() const {
    std::string out;
    if (precheck_failure) { out += "precheck failed: " + *precheck_failure + "\n"; }
    for (const auto & v : violations) {
        out += to_string(v.seed) + " | " + v.universal_finals + " | " + v.missing_witness + "\n";
    }
    return out;
}

namespace {

SpecContext only_universal(const SpecContext & specs) {
    SpecContext out;
    out.universal = specs.universal;
    return out;
}

SpecContext only_existential(const SpecContext & specs) {
    SpecContext out;
    out.existential = specs.existential;
    return out;
}

std::optional<std::string> precheck(const ImplContext & impls, const SpecContext & specs, const OracleOptions & options) {
    ContextCompat c = check_context_compatible(impls, specs, options.domain, options.impl_fuel);
    if (c.compatible) { return std::nullopt; }
    return c.fname + " is not " + (c.side == Side::Universal ? "forall" : "exists") + "-compatible: " +
           c.result.describe();
}

std::string render_states(const std::set<State> & states, std::size_t limit = 6) {
    std::string out = "{";
    std::size_t i = 0;
    for (const auto & s : states) {
        if (i == limit) {
            out += ", ...";
            break;
        }
        if (i++) { out += ", "; }
        out += to_string(s);
    }
    return out + "}";
}

State restrict_to(const State & st, const std::set<std::string> & vars) {
    State out;
    for (const auto & v : vars) {
        if (auto it = st.find(v); it != st.end()) { out.emplace(v, it->second); }
    }
    return out;
}

// Continuation-passing search for an existential derivation whose whole state set lands in the
// goal: a statement list from a state succeeds iff some choice for its first statement leads to
// states that all succeed on the rest.
class ExistsGame {
public:
    ExistsGame(const SpecContext & specs, const IntRange & domain, std::function<bool(const State &)> goal)
        : specs_(specs), domain_(domain), goal_(std::move(goal)) {}

    struct Frame;
    using Cont = std::shared_ptr<const Frame>;
    struct Frame {
        Stmt stmt;               // null for a fuel reset marker
        std::size_t reset_fuel;  // fuel granted to the following copy
        Cont next;
    };

    static Cont push(Stmt s, Cont next) { return std::make_shared<const Frame>(Frame{std::move(s), 0, std::move(next)}); }
    static Cont reset(std::size_t fuel, Cont next) {
        return std::make_shared<const Frame>(Frame{nullptr, fuel, std::move(next)});
    }

    bool win(const Cont & k, const State & st, std::size_t fuel) {
        if (!k) { return goal_(st); }
        if (!k->stmt) { return win(k->next, st, k->reset_fuel); }
        const Stmt & s = k->stmt;
        switch (s->op) {
            case SOp::Skip: return win(k->next, st, fuel);
            case SOp::Seq: return win(push(s->first, push(s->second, k->next)), st, fuel);
            case SOp::Assign: {
                State next = st;
                next[s->target] = eval_aexp(st, s->value);
                return win(k->next, next, fuel);
            }
            case SOp::Havoc:
                for (const auto & v : domain_.values()) {
                    State next = st;
                    next[s->target] = v;
                    if (win(k->next, next, fuel)) { return true; }
                }
                return false;
            case SOp::If: return win(push(eval_bexp(st, s->cond) ? s->first : s->second, k->next), st, fuel);
            case SOp::While:
                if (!eval_bexp(st, s->cond)) { return win(k->next, st, fuel); }
                if (fuel == 0) {
                    truncated = true;
                    return false;
                }
                return win(push(s->first, k), st, fuel - 1);
            case SOp::Call: {
                const ExistentialSpec & spec = specs_.exists_spec(s->fname);
                if (spec.params.size() != s->args.size()) {
                    throw ArityMismatch(s->fname, spec.params.size(), s->args.size());
                }
                Valuation env;
                for (std::size_t i = 0; i < spec.params.size(); ++i) { env[spec.params[i]] = eval_aexp(st, s->args[i]); }
                bool found = false;
                for_each_choice(spec, env, domain_, [&](const std::vector<Integer> & ks, const Valuation & inst) {
                    if (found || !holds(spec.pre, inst, domain_)) { return; }
                    std::set<Integer> rets = satisfying_returns(spec.post, inst, domain_);
                    if (rets.empty()) { throw EmptyPostcondition(s->fname, describe_choices(spec, ks)); }
                    for (const auto & r : rets) {
                        State next = st;
                        next[s->target] = r;
                        if (!win(k->next, next, fuel)) { return; }
                    }
                    found = true;
                });
                return found;
            }
        }
        throw Error("exists game: bad statement");
    }

    bool truncated = false;

private:
    const SpecContext & specs_;
    const IntRange & domain_;
    std::function<bool(const State &)> goal_;
};

} // namespace

OracleReport check_over_soundness(const ImplContext & impls, const SpecContext & specs, const Stmt & s,
                            const std::vector<State> & seeds, const OracleOptions & options) {
    OracleReport report;
    report.precheck_failure = precheck(impls, only_universal(specs), options);
    if (report.precheck_failure) { return report; }
    for (const auto & seed : seeds) {
        ++report.seeds_checked;
        ExecResult concrete = exec_concrete(impls, seed, s, options.domain, options.impl_fuel);
        OverResult over = exec_over(specs, seed, s, options.domain, options.fuel);
        report.truncated = report.truncated || concrete.diverged || over.diverged;
        for (const auto & fin : concrete.finals) {
            if (!over.finals.count(fin)) {
                report.violations.push_back(
                    Violation{seed, to_string(fin), "concrete final state has no overapproximate execution"});
            }
        }
    }
    return report;
}

OracleReport check_under_soundness(const ImplContext & impls, const SpecContext & specs, const Stmt & s,
                            const std::vector<State> & seeds, const OracleOptions & options) {
    OracleReport report;
    report.precheck_failure = precheck(impls, only_existential(specs), options);
    if (report.precheck_failure) { return report; }
    for (const auto & seed : seeds) {
        ++report.seeds_checked;
        ExecResult concrete = exec_concrete(impls, seed, s, options.domain, options.impl_fuel);
        UnderResult under = exec_under(specs, seed, s, options.domain, options.fuel, options.max_derivations);
        report.truncated = report.truncated || under.truncated || under.capped;
        for (const auto & d : under.derivations) {
            bool hit = false;
            for (const auto & st : d.states) {
                if (concrete.finals.count(st)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                report.truncated = report.truncated || concrete.diverged;
                report.violations.push_back(Violation{seed, render_states(d.states),
                                                      "no concrete run ends in the set of derivation " + to_string(d.trace)});
            }
        }
    }
    return report;
}

OracleReport check_rhle_semantics(const VerificationProblem & problem, const ImplContext * impls,
                                  const OracleOptions & options) {
    constexpr std::size_t kMaxViolations = 16;
    OracleReport report;
    if (impls) {
        report.precheck_failure = precheck(*impls, problem.specs, options);
        if (report.precheck_failure) { return report; }
    }
    check_well_formed(problem);
    InstantiatedCopies copies = instantiate_copies(problem);

    // Seed only the variables whose initial value matters; everything else starts at 0.
    std::set<std::string> all_vars, universal_vars, relevant = free_var_names(problem.pre);
    std::set<std::string> post_vars = free_var_names(problem.post);
    auto account = [&](const ProgramCopy & c, bool universal) {
        auto vars = copy_variables(c, problem.programs.at(c.id.program).params);
        all_vars.insert(vars.begin(), vars.end());
        if (universal) { universal_vars.insert(vars.begin(), vars.end()); }
        std::set<std::string> out;
        for (const auto & v : post_vars) {
            if (vars.count(v)) { out.insert(v); }
        }
        auto live = live_in(c.stmts, out);
        relevant.insert(live.begin(), live.end());
    };
    for (const auto & c : copies.universals) { account(c, true); }
    for (const auto & c : copies.existentials) { account(c, false); }

    std::set<std::string> seeded, fixed;
    for (const auto & v : all_vars) { (relevant.count(v) ? seeded : fixed).insert(v); }

    auto goal = [&](const State & st) { return holds(problem.post, st, options.domain); };
    ExistsGame game(problem.specs, options.domain, goal);
    ExistsGame::Cont existential_program;
    for (const auto & c : copies.existentials) {
        // The first-declared copy runs last, so it is pushed first onto the continuation.
        existential_program = ExistsGame::reset(options.fuel, ExistsGame::push(denormalize(c.stmts), existential_program));
    }

    for (State seed : all_states(seeded, options.seeds())) {
        for (const auto & v : fixed) { seed[v] = 0; }
        if (!holds(problem.pre, seed, options.domain)) { continue; }
        ++report.seeds_checked;

        std::set<State> universal_finals{seed};
        for (const auto & c : copies.universals) {
            std::set<State> next;
            Stmt body = denormalize(c.stmts);
            for (const auto & st : universal_finals) {
                OverResult r = exec_over(problem.specs, st, body, options.domain, options.fuel);
                report.truncated = report.truncated || r.diverged;
                next.insert(r.finals.begin(), r.finals.end());
            }
            universal_finals = std::move(next);
        }
        for (const auto & st : universal_finals) {
            if (!game.win(existential_program, st, options.fuel)) {
                report.violations.push_back(Violation{restrict_to(seed, seeded), to_string(restrict_to(st, universal_vars)),
                                                      "no existential derivation establishes the postcondition"});
                if (report.violations.size() >= kMaxViolations) { break; }
            }
        }
        if (report.violations.size() >= kMaxViolations) { break; }

        if (!impls) { continue; }
        std::set<State> concrete_finals{seed};
        for (const auto & c : copies.universals) {
            std::set<State> next;
            Stmt body = denormalize(c.stmts);
            for (const auto & st : concrete_finals) {
                ExecResult r = exec_concrete(*impls, st, body, options.domain, options.impl_fuel);
                next.insert(r.finals.begin(), r.finals.end());
            }
            concrete_finals = std::move(next);
        }
        for (const auto & st : concrete_finals) {
            std::set<State> reach{st};
            for (auto it = copies.existentials.rbegin(); it != copies.existentials.rend(); ++it) {
                std::set<State> next;
                Stmt body = denormalize(it->stmts);
                for (const auto & e : reach) {
                    ExecResult r = exec_concrete(*impls, e, body, options.domain, options.impl_fuel);
                    next.insert(r.finals.begin(), r.finals.end());
                }
                reach = std::move(next);
            }
            bool ok = false;
            for (const auto & fin : reach) {
                if (goal(fin)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                report.violations.push_back(Violation{restrict_to(seed, seeded), to_string(restrict_to(st, universal_vars)),
                                                      "[concrete] no run of the existential copies establishes the postcondition"});
                if (report.violations.size() >= kMaxViolations) { break; }
            }
        }
        if (report.violations.size() >= kMaxViolations) { break; }
    }
    report.truncated = report.truncated || game.truncated;
    return report;
}

} // namespace aev
