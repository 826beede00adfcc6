#include "aev/error.hpp"
#include "aev/lang.hpp"

namespace aev {

Integer eval_aexp(const State & state, const AExp & e) {
    switch (e->op) {
        case AOp::Lit: return e->value;
        case AOp::Var: {
            auto it = state.find(e->name);
            if (it == state.end()) { throw UnboundVariable(e->name); }
            return it->second;
        }
        case AOp::Add: return eval_aexp(state, e->lhs) + eval_aexp(state, e->rhs);
        case AOp::Sub: return eval_aexp(state, e->lhs) - eval_aexp(state, e->rhs);
        case AOp::Mul: return eval_aexp(state, e->lhs) * eval_aexp(state, e->rhs);
    }
    throw Error("eval_aexp: bad expression");
}

bool eval_bexp(const State & state, const BExp & b) {
    switch (b->op) {
        case BOp::True: return true;
        case BOp::False: return false;
        case BOp::Eq: return eval_aexp(state, b->a) == eval_aexp(state, b->b);
        case BOp::Lt: return eval_aexp(state, b->a) < eval_aexp(state, b->b);
        case BOp::Not: return !eval_bexp(state, b->lhs);
        case BOp::And: return eval_bexp(state, b->lhs) && eval_bexp(state, b->rhs);
    }
    throw Error("eval_bexp: bad expression");
}

namespace {

// A configuration set: each reachable state with the largest fuel remaining on any path to it.
// Keeping only the maximum is exact for final states because more fuel never removes outcomes.
using Configs = std::map<State, std::size_t>;

void add(Configs & out, State s, std::size_t fuel) {
    auto [it, inserted] = out.emplace(std::move(s), fuel);
    if (!inserted && it->second < fuel) { it->second = fuel; }
}

class Concrete {
public:
    Concrete(const ImplContext & ctx, const IntRange & domain) : ctx_(ctx), domain_(domain) {}

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
                    for (Integer v = domain_.lo; v <= domain_.hi; ++v) {
                        State next = st;
                        next[s->target] = v;
                        add(out, std::move(next), f);
                    }
                }
                return out;
            case SOp::If: {
                Configs then_in, else_in;
                for (const auto & [st, f] : in) { (eval_bexp(st, s->cond) ? then_in : else_in).emplace(st, f); }
                for (auto & [st, f] : run(s->first, then_in)) { add(out, st, f); }
                for (auto & [st, f] : run(s->second, else_in)) { add(out, st, f); }
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
                const FunDef & def = ctx_.at(s->fname);
                if (def.params.size() != s->args.size()) {
                    throw ArityMismatch(s->fname, def.params.size(), s->args.size());
                }
                for (const auto & [st, f] : in) {
                    if (f == 0) {
                        diverged = true;
                        continue;
                    }
                    State frame;
                    for (std::size_t i = 0; i < def.params.size(); ++i) {
                        frame[def.params[i]] = eval_aexp(st, s->args[i]);
                    }
                    for (const auto & [callee, rest] : run(def.body, Configs{{frame, f - 1}})) {
                        State next = st;
                        next[s->target] = eval_aexp(callee, def.ret);
                        add(out, std::move(next), rest);
                    }
                }
                return out;
            }
        }
        throw Error("exec_concrete: bad statement");
    }

    bool diverged = false;

private:
    const ImplContext & ctx_;
    const IntRange & domain_;
};

} // namespace

ExecResult exec_concrete(const ImplContext & ctx, const State & state, const Stmt & s, const IntRange & havoc_domain,
                         std::size_t fuel) {
    if (havoc_domain.empty()) { throw Error("exec_concrete: empty havoc domain"); }
    Concrete machine(ctx, havoc_domain);
    ExecResult result;
    for (auto & [st, f] : machine.run(s, Configs{{state, fuel}})) { result.finals.insert(st); }
    result.diverged = machine.diverged;
    return result;
}

} // namespace aev
