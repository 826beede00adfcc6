#include "aev/vcgen.hpp"

#include "aev/error.hpp"

namespace aev {

Step choose_step(std::vector<ProgramCopy> & universals, std::vector<ProgramCopy> & existentials) {
    auto take = [](std::vector<ProgramCopy> & copies, ExecTag tag) -> std::optional<Step> {
        for (std::size_t i = 0; i < copies.size(); ++i) {
            if (copies[i].stmts.empty()) { continue; }
            Step step{copies[i].stmts.back(), tag, i};
            copies[i].stmts.pop_back();
            return step;
        }
        return std::nullopt;
    };
    if (auto s = take(existentials, ExecTag::Existential)) { return *s; }
    if (auto s = take(universals, ExecTag::Universal)) { return *s; }
    throw AllEmpty();
}

namespace {

class VcGen {
public:
    VcGen(ExecTag tag, const SpecContext & specs) : tag_(tag), specs_(specs) {}

    Term wp(const Stmt & s, const Term & post) {
        switch (s->op) {
            case SOp::Skip: return post;
            case SOp::Seq: return wp(s->first, wp(s->second, post));
            case SOp::Assign: return subst(post, s->target, to_term(s->value));
            case SOp::Havoc: {
                std::set<std::string> used = all_names(post);
                used.insert(s->target);
                std::string v = fresh("v", used);
                Term body = subst(post, s->target, mk_var(v));
                return tag_ == ExecTag::Universal ? mk_forall(v, body) : mk_exists(v, body);
            }
            case SOp::If: {
                Term b = to_term(s->cond);
                return mk_and(mk_implies(b, wp(s->first, post)), mk_implies(mk_not(b), wp(s->second, post)));
            }
            case SOp::Call: return tag_ == ExecTag::Universal ? call_forall(s, post) : call_exists(s, post);
            case SOp::While: return loop(s, post);
        }
        throw Error("statement_vc: bad statement");
    }

private:
    // Names that a fresh binder must avoid: everything in the postcondition and the statement.
    static std::set<std::string> names_in_play(const Stmt & s, const Term & post) {
        std::set<std::string> used = all_names(post);
        auto vars = program_vars(s);
        used.insert(vars.begin(), vars.end());
        return used;
    }

    static Substitution bind_args(const std::vector<std::string> & params, const Stmt & call) {
        if (params.size() != call->args.size()) { throw ArityMismatch(call->fname, params.size(), call->args.size()); }
        Substitution m;
        for (std::size_t i = 0; i < params.size(); ++i) { m.emplace(params[i], to_term(call->args[i])); }
        return m;
    }

    Term call_forall(const Stmt & s, const Term & post) {
        const UniversalSpec & spec = specs_.forall_spec(s->fname);
        Substitution args = bind_args(spec.params, s);
        std::set<std::string> used = names_in_play(s, post);
        collect_names(spec.post, used);
        std::string r = fresh("r", used);
        Substitution with_ret = args;
        with_ret.emplace(kReturnSymbol, mk_var(r));
        Term pre = subst(spec.pre, args);
        Term q = subst(spec.post, with_ret);
        return mk_and(pre, mk_forall(r, mk_implies(q, subst(post, s->target, mk_var(r)))));
    }

    Term call_exists(const Stmt & s, const Term & post) {
        const ExistentialSpec & spec = specs_.exists_spec(s->fname);
        Substitution inst = bind_args(spec.params, s);
        std::set<std::string> used = names_in_play(s, post);
        collect_names(spec.pre, used);
        collect_names(spec.post, used);
        std::vector<Binder> choices;
        for (const auto & c : spec.choice_vars) {
            std::string v = fresh("v", used);
            used.insert(v);
            choices.push_back(Binder{v, Sort::Int});
            inst.emplace(c, mk_var(v));
        }
        std::string r = fresh("r", used);
        Substitution with_ret = inst;
        with_ret.emplace(kReturnSymbol, mk_var(r));
        Term pre = subst(spec.pre, inst);
        Term q = subst(spec.post, with_ret);
        Term body = mk_and({pre, mk_exists(r, q), mk_forall(r, mk_implies(q, subst(post, s->target, mk_var(r))))});
        if (choices.empty()) { return body; }
        return mk_exists(std::move(choices), body);
    }

    Term loop(const Stmt & s, const Term & post) {
        if (!s->annotation) { throw MissingInvariant(); }
        const Term & inv = s->annotation->invariant;
        Term b = to_term(s->cond);

        std::set<std::string> used = names_in_play(s, post);
        collect_names(inv, used);
        if (s->annotation->variant) { collect_names(*s->annotation->variant, used); }

        Substitution rename;
        std::vector<Binder> primed;
        for (const auto & v : assigned_vars(s->first)) {
            std::string p = fresh(v, used);
            used.insert(p);
            rename.emplace(v, mk_var(p));
            primed.push_back(Binder{p, Sort::Int});
        }

        Term body_post = inv;
        if (tag_ == ExecTag::Existential) {
            if (!s->annotation->variant) { throw MissingVariant(); }
            const Term & V = *s->annotation->variant;
            Term dec = mk_and(mk_le(mk_int(0), V), mk_lt(V, subst(V, rename)));
            body_post = mk_and(inv, dec);
        }
        Term psi_b = wp(s->first, body_post);
        auto close = [&](Term t) {
            t = subst(t, rename);
            return primed.empty() ? t : mk_forall(primed, t);
        };
        Term psi_loop = close(mk_implies(mk_and(b, inv), psi_b));
        Term psi_end = close(mk_implies(mk_and(mk_not(b), inv), post));
        return mk_and({inv, psi_loop, psi_end});
    }

    ExecTag tag_;
    const SpecContext & specs_;
};

} // namespace

Term statement_vc(const Stmt & s, ExecTag tag, const Term & post, const SpecContext & specs) {
    return VcGen(tag, specs).wp(s, post);
}

Term rhle_vc(const Term & pre, std::vector<ProgramCopy> universals, std::vector<ProgramCopy> existentials,
             const Term & post, const SpecContext & specs) {
    Term psi = post;
    for (;;) {
        bool any = false;
        for (const auto & c : universals) { any = any || !c.stmts.empty(); }
        for (const auto & c : existentials) { any = any || !c.stmts.empty(); }
        if (!any) { break; }
        Step step = choose_step(universals, existentials);
        psi = statement_vc(step.stmt, step.tag, psi, specs);
    }
    return mk_implies(pre, psi);
}

} // namespace aev
