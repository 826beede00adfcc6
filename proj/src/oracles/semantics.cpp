#include "aev/error.hpp"
#include "aev/oracles.hpp"
#include "candidates.hpp"

#include <algorithm>

namespace aev {

namespace {

using Configs = std::map<State, std::size_t>;

void add(Configs & out, State s, std::size_t fuel) {
    auto [it, inserted] = out.emplace(std::move(s), fuel);
    if (!inserted && it->second < fuel) { it->second = fuel; }
}

Valuation bind_params(const std::vector<std::string> & params, const std::vector<Integer> & values) {
    Valuation env;
    for (std::size_t i = 0; i < params.size(); ++i) { env[params[i]] = values[i]; }
    return env;
}

std::vector<Integer> eval_args(const State & st, const std::vector<AExp> & args) {
    std::vector<Integer> out;
    out.reserve(args.size());
    for (const auto & a : args) { out.push_back(eval_aexp(st, a)); }
    return out;
}

void check_arity(const std::string & fname, std::size_t expected, std::size_t got) {
    if (expected != got) { throw ArityMismatch(fname, expected, got); }
}

class Over {
public:
    Over(const SpecContext & specs, const IntRange & domain) : specs_(specs), domain_(domain) {}

    Configs run(const Stmt & s, const Configs & in) {
        Configs out;
        switch (s->op) {
            case SOp::Skip: return in;
            case SOp::Seq: return run(s->second, run(s->first, in));
            case SOp::Assign:
                for (const auto & [st, f] : in) {
                    State next = st;
                    next[s->target] = eval_aexp(st, s->value);
                    add(out, std::move(next), f);
                }
                return out;
            case SOp::Havoc:
                for (const auto & [st, f] : in) {
                    for (const auto & v : domain_.values()) {
                        State next = st;
                        next[s->target] = v;
                        add(out, std::move(next), f);
                    }
                }
                return out;
            case SOp::If: {
                Configs t, e;
                for (const auto & [st, f] : in) { (eval_bexp(st, s->cond) ? t : e).emplace(st, f); }
                for (auto & [st, f] : run(s->first, t)) { add(out, st, f); }
                for (auto & [st, f] : run(s->second, e)) { add(out, st, f); }
                return out;
            }
            case SOp::While: {
                Configs frontier = in;
                while (!frontier.empty()) {
                    Configs body_in;
                    for (const auto & [st, f] : frontier) {
                        if (!eval_bexp(st, s->cond)) {
                            add(out, st, f);
                        } else if (f == 0) {
                            diverged = true;
                        } else {
                            add(body_in, st, f - 1);
                        }
                    }
                    frontier = run(s->first, body_in);
                }
                return out;
            }
            case SOp::Call: {
                const UniversalSpec & spec = specs_.forall_spec(s->fname);
                check_arity(s->fname, spec.params.size(), s->args.size());
                for (const auto & [st, f] : in) {
                    Valuation env = bind_params(spec.params, eval_args(st, s->args));
                    std::set<Integer> rets;
                    if (holds(spec.pre, env, domain_)) {
                        rets = satisfying_returns(spec.post, env, domain_);
                    } else {
                        auto vs = domain_.values();
                        rets.insert(vs.begin(), vs.end());
                    }
                    for (const auto & r : rets) {
                        State next = st;
                        next[s->target] = r;
                        add(out, std::move(next), f);
                    }
                }
                return out;
            }
        }
        throw Error("exec_over: bad statement");
    }

    bool diverged = false;

private:
    const SpecContext & specs_;
    const IntRange & domain_;
};

void number_sites(const Stmt & s, std::map<const StmtNode *, std::size_t> & sites) {
    switch (s->op) {
        case SOp::Call: sites.emplace(s.get(), sites.size()); return;
        case SOp::Seq:
        case SOp::If:
            number_sites(s->first, sites);
            number_sites(s->second, sites);
            return;
        case SOp::While: number_sites(s->first, sites); return;
        default: return;
    }
}

struct PartialDerivation {
    ChoiceTrace trace;
    Configs states;
};

using Derivations = std::vector<PartialDerivation>;

class Under {
public:
    Under(const SpecContext & specs, const IntRange & domain, std::size_t cap, const Stmt & root)
        : specs_(specs), domain_(domain), cap_(cap) {
        number_sites(root, sites_);
    }

    Derivations run(const Stmt & s, const State & st, std::size_t fuel) {
        switch (s->op) {
            case SOp::Skip: return single(st, fuel);
            case SOp::Assign: {
                State next = st;
                next[s->target] = eval_aexp(st, s->value);
                return single(std::move(next), fuel);
            }
            case SOp::Havoc: {
                Derivations out;
                for (const auto & v : domain_.values()) {
                    State next = st;
                    next[s->target] = v;
                    out.push_back(PartialDerivation{{}, Configs{{std::move(next), fuel}}});
                }
                return out;
            }
            case SOp::If: return run(eval_bexp(st, s->cond) ? s->first : s->second, st, fuel);
            case SOp::Seq: return then(run(s->first, st, fuel), s->second);
            case SOp::While: {
                if (!eval_bexp(st, s->cond)) { return single(st, fuel); }
                if (fuel == 0) {
                    truncated = true;
                    return {};
                }
                return then(run(s->first, st, fuel - 1), s);
            }
            case SOp::Call: {
                const ExistentialSpec & spec = specs_.exists_spec(s->fname);
                check_arity(s->fname, spec.params.size(), s->args.size());
                Valuation env = bind_params(spec.params, eval_args(st, s->args));
                Derivations out;
                for_each_choice(spec, env, domain_, [&](const std::vector<Integer> & ks, const Valuation & inst) {
                    if (!holds(spec.pre, inst, domain_)) { return; }
                    std::set<Integer> rets = satisfying_returns(spec.post, inst, domain_);
                    if (rets.empty()) { throw EmptyPostcondition(s->fname, describe_choices(spec, ks)); }
                    PartialDerivation d;
                    d.trace.push_back(ChoiceEntry{sites_.at(s.get()), s->fname, ks});
                    for (const auto & r : rets) {
                        State next = st;
                        next[s->target] = r;
                        add(d.states, std::move(next), fuel);
                    }
                    out.push_back(std::move(d));
                });
                return out;
            }
        }
        throw Error("exec_under: bad statement");
    }

    bool truncated = false;
    bool capped = false;

private:
    static Derivations single(State st, std::size_t fuel) {
        return Derivations{PartialDerivation{{}, Configs{{std::move(st), fuel}}}};
    }

    // Continues every derivation with `next`, letting each of its states pick its own
    // continuation; the picks are enumerated as a product.
    Derivations then(const Derivations & firsts, const Stmt & next) {
        Derivations out;
        for (const auto & d : firsts) {
            Derivations acc{PartialDerivation{d.trace, {}}};
            for (const auto & [st, f] : d.states) {
                Derivations conts = run(next, st, f);
                Derivations grown;
                for (const auto & a : acc) {
                    for (const auto & c : conts) {
                        if (out.size() + grown.size() >= cap_) {
                            capped = true;
                            break;
                        }
                        PartialDerivation g = a;
                        g.trace.insert(g.trace.end(), c.trace.begin(), c.trace.end());
                        for (const auto & [cs, cf] : c.states) { add(g.states, cs, cf); }
                        grown.push_back(std::move(g));
                    }
                }
                acc = std::move(grown);
                if (acc.empty()) { break; }
            }
            for (auto & a : acc) { out.push_back(std::move(a)); }
        }
        return out;
    }

    const SpecContext & specs_;
    const IntRange & domain_;
    std::size_t cap_;
    std::map<const StmtNode *, std::size_t> sites_;
};

} // namespace

OverResult exec_over(const SpecContext & specs, const State & state, const Stmt & s, const IntRange & domain,
                     std::size_t fuel) {
    Over machine(specs, domain);
    OverResult out;
    for (auto & [st, f] : machine.run(s, Configs{{state, fuel}})) { out.finals.insert(st); }
    out.diverged = machine.diverged;
    return out;
}

UnderResult exec_under(const SpecContext & specs, const State & state, const Stmt & s, const IntRange & domain,
                       std::size_t fuel, std::size_t max_derivations) {
    Under machine(specs, domain, max_derivations, s);
    UnderResult out;
    for (auto & d : machine.run(s, state, fuel)) {
        Derivation full{std::move(d.trace), {}};
        for (auto & [st, f] : d.states) { full.states.insert(st); }
        out.derivations.push_back(std::move(full));
    }
    out.truncated = machine.truncated;
    out.capped = machine.capped;
    return out;
}

bool site_uniform(const ChoiceTrace & trace) {
    std::map<std::size_t, const std::vector<Integer> *> seen;
    for (const auto & e : trace) {
        auto [it, inserted] = seen.emplace(e.site, &e.choices);
        if (!inserted && *it->second != e.choices) { return false; }
    }
    return true;
}

std::string to_string(const ChoiceTrace & trace) {
    std::string out = "[";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) { out += ", "; }
        out += trace[i].fname + "@" + std::to_string(trace[i].site) + "(";
        for (std::size_t j = 0; j < trace[i].choices.size(); ++j) {
            if (j) { out += ","; }
            out += trace[i].choices[j].str();
        }
        out += ")";
    }
    return out + "]";
}

} // namespace aev
