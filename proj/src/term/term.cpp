#include "aev/term.hpp"

#include "aev/error.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace aev {

const char * to_string(Sort sort) { return sort == Sort::Int ? "Int" : "Bool"; }

namespace {

const char * kind_name(Kind kind) {
    switch (kind) {
        case Kind::BoolConst: return "bool";
        case Kind::IntConst: return "int";
        case Kind::Var: return "var";
        case Kind::Add: return "+";
        case Kind::Sub: return "-";
        case Kind::Mul: return "*";
        case Kind::Div: return "div";
        case Kind::Mod: return "mod";
        case Kind::Neg: return "-";
        case Kind::Eq: return "=";
        case Kind::Lt: return "<";
        case Kind::Le: return "<=";
        case Kind::Gt: return ">";
        case Kind::Ge: return ">=";
        case Kind::Not: return "not";
        case Kind::And: return "and";
        case Kind::Or: return "or";
        case Kind::Implies: return "=>";
        case Kind::Forall: return "forall";
        case Kind::Exists: return "exists";
    }
    return "?";
}

void require_sort(Kind kind, const Term & arg, Sort expected) {
    if (arg.sort() != expected) {
        throw SortMismatch(std::string("operator '") + kind_name(kind) + "' expects " + to_string(expected) +
                           " argument, got " + to_string(arg.sort()));
    }
}

void require_arity(Kind kind, std::size_t got, std::size_t min, std::size_t max) {
    if (got < min || got > max) {
        throw SortMismatch(std::string("operator '") + kind_name(kind) + "' applied to " + std::to_string(got) +
                           " argument(s)");
    }
}

int compare(const Term & a, const Term & b);

int compare_lists(const std::vector<Term> & a, const std::vector<Term> & b) {
    if (a.size() != b.size()) { return a.size() < b.size() ? -1 : 1; }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (int c = compare(a[i], b[i]); c != 0) { return c; }
    }
    return 0;
}

int compare(const Term & a, const Term & b) {
    if (a.identity() == b.identity()) { return 0; }
    if (a.kind() != b.kind()) { return a.kind() < b.kind() ? -1 : 1; }
    if (a.sort() != b.sort()) { return a.sort() < b.sort() ? -1 : 1; }
    switch (a.kind()) {
        case Kind::BoolConst: return a.bool_value() == b.bool_value() ? 0 : (a.bool_value() ? 1 : -1);
        case Kind::IntConst: return a.int_value() == b.int_value() ? 0 : (a.int_value() < b.int_value() ? -1 : 1);
        case Kind::Var: return a.name().compare(b.name());
        case Kind::Forall:
        case Kind::Exists: {
            const auto & ba = a.binders();
            const auto & bb = b.binders();
            if (ba.size() != bb.size()) { return ba.size() < bb.size() ? -1 : 1; }
            for (std::size_t i = 0; i < ba.size(); ++i) {
                if (int c = ba[i].name.compare(bb[i].name); c != 0) { return c; }
                if (ba[i].sort != bb[i].sort) { return ba[i].sort < bb[i].sort ? -1 : 1; }
            }
            return compare(a.body(), b.body());
        }
        default: return compare_lists(a.args(), b.args());
    }
}

} // namespace

Term::Term() {
    static const auto truth = std::make_shared<const Node>();
    node_ = truth;
}

Term Term::boolean(bool value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::BoolConst;
    n->sort = Sort::Bool;
    n->boolean = value;
    return Term(std::move(n));
}

Term Term::integer(Integer value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::IntConst;
    n->sort = Sort::Int;
    n->integer = std::move(value);
    return Term(std::move(n));
}

Term Term::var(std::string name, Sort sort) {
    if (name.empty()) { throw Error("empty variable name"); }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->sort = sort;
    n->name = std::move(name);
    return Term(std::move(n));
}

Term Term::apply(Kind kind, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    switch (kind) {
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
            require_arity(kind, args.size(), 1, SIZE_MAX);
            for (const auto & a : args) { require_sort(kind, a, Sort::Int); }
            n->sort = Sort::Int;
            break;
        case Kind::Div:
        case Kind::Mod:
            require_arity(kind, args.size(), 2, 2);
            for (const auto & a : args) { require_sort(kind, a, Sort::Int); }
            n->sort = Sort::Int;
            break;
        case Kind::Neg:
            require_arity(kind, args.size(), 1, 1);
            require_sort(kind, args[0], Sort::Int);
            n->sort = Sort::Int;
            break;
        case Kind::Eq:
            require_arity(kind, args.size(), 2, 2);
            if (args[0].sort() != args[1].sort()) { throw SortMismatch("operands of '=' have different sorts"); }
            n->sort = Sort::Bool;
            break;
        case Kind::Lt:
        case Kind::Le:
        case Kind::Gt:
        case Kind::Ge:
            require_arity(kind, args.size(), 2, 2);
            for (const auto & a : args) { require_sort(kind, a, Sort::Int); }
            n->sort = Sort::Bool;
            break;
        case Kind::Not:
            require_arity(kind, args.size(), 1, 1);
            require_sort(kind, args[0], Sort::Bool);
            n->sort = Sort::Bool;
            break;
        case Kind::And:
        case Kind::Or:
            require_arity(kind, args.size(), 1, SIZE_MAX);
            for (const auto & a : args) { require_sort(kind, a, Sort::Bool); }
            n->sort = Sort::Bool;
            break;
        case Kind::Implies:
            require_arity(kind, args.size(), 2, 2);
            for (const auto & a : args) { require_sort(kind, a, Sort::Bool); }
            n->sort = Sort::Bool;
            break;
        default: throw Error(std::string("Term::apply: not an operator kind: ") + kind_name(kind));
    }
    n->args = std::move(args);
    return Term(std::move(n));
}

Term Term::quantify(Kind kind, std::vector<Binder> binders, Term body) {
    if (kind != Kind::Forall && kind != Kind::Exists) { throw Error("Term::quantify: not a binder kind"); }
    if (binders.empty()) { throw SortMismatch("quantifier without bound variables"); }
    for (std::size_t i = 0; i < binders.size(); ++i) {
        if (binders[i].name.empty()) { throw Error("empty bound variable name"); }
        for (std::size_t j = 0; j < i; ++j) {
            if (binders[i].name == binders[j].name) {
                throw SortMismatch("duplicate bound variable '" + binders[i].name + "'");
            }
        }
    }
    require_sort(kind, body, Sort::Bool);
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->sort = Sort::Bool;
    n->binders = std::move(binders);
    n->args.push_back(std::move(body));
    return Term(std::move(n));
}

bool operator==(const Term & a, const Term & b) { return compare(a, b) == 0; }
bool operator<(const Term & a, const Term & b) { return compare(a, b) < 0; }

Term mk_true() { return Term::boolean(true); }
Term mk_false() { return Term::boolean(false); }
Term mk_int(Integer value) { return Term::integer(std::move(value)); }
Term mk_var(std::string name, Sort sort) { return Term::var(std::move(name), sort); }
Term mk_add(Term a, Term b) { return Term::apply(Kind::Add, {std::move(a), std::move(b)}); }
Term mk_sub(Term a, Term b) { return Term::apply(Kind::Sub, {std::move(a), std::move(b)}); }
Term mk_mul(Term a, Term b) { return Term::apply(Kind::Mul, {std::move(a), std::move(b)}); }
Term mk_div(Term a, Term b) { return Term::apply(Kind::Div, {std::move(a), std::move(b)}); }
Term mk_mod(Term a, Term b) { return Term::apply(Kind::Mod, {std::move(a), std::move(b)}); }

Term mk_neg(Term a) {
    if (a.kind() == Kind::IntConst && a.int_value() > 0) { return mk_int(-a.int_value()); }
    return Term::apply(Kind::Neg, {std::move(a)});
}

Term mk_eq(Term a, Term b) { return Term::apply(Kind::Eq, {std::move(a), std::move(b)}); }
Term mk_lt(Term a, Term b) { return Term::apply(Kind::Lt, {std::move(a), std::move(b)}); }
Term mk_le(Term a, Term b) { return Term::apply(Kind::Le, {std::move(a), std::move(b)}); }
Term mk_gt(Term a, Term b) { return Term::apply(Kind::Gt, {std::move(a), std::move(b)}); }
Term mk_ge(Term a, Term b) { return Term::apply(Kind::Ge, {std::move(a), std::move(b)}); }
Term mk_not(Term a) { return Term::apply(Kind::Not, {std::move(a)}); }
Term mk_and(Term a, Term b) { return Term::apply(Kind::And, {std::move(a), std::move(b)}); }

Term mk_and(std::vector<Term> conjuncts) {
    if (conjuncts.empty()) { return mk_true(); }
    if (conjuncts.size() == 1) { return conjuncts.front(); }
    return Term::apply(Kind::And, std::move(conjuncts));
}

Term mk_or(Term a, Term b) { return Term::apply(Kind::Or, {std::move(a), std::move(b)}); }

Term mk_or(std::vector<Term> disjuncts) {
    if (disjuncts.empty()) { return mk_false(); }
    if (disjuncts.size() == 1) { return disjuncts.front(); }
    return Term::apply(Kind::Or, std::move(disjuncts));
}

Term mk_implies(Term a, Term b) { return Term::apply(Kind::Implies, {std::move(a), std::move(b)}); }
Term mk_forall(std::vector<Binder> binders, Term body) {
    return Term::quantify(Kind::Forall, std::move(binders), std::move(body));
}
Term mk_exists(std::vector<Binder> binders, Term body) {
    return Term::quantify(Kind::Exists, std::move(binders), std::move(body));
}
Term mk_forall(const std::string & name, Term body) { return mk_forall({Binder{name, Sort::Int}}, std::move(body)); }
Term mk_exists(const std::string & name, Term body) { return mk_exists({Binder{name, Sort::Int}}, std::move(body)); }

namespace {

void collect_free(const Term & t, std::vector<std::string> & bound, std::map<std::string, Sort> & out) {
    switch (t.kind()) {
        case Kind::BoolConst:
        case Kind::IntConst: return;
        case Kind::Var:
            if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) { out.emplace(t.name(), t.sort()); }
            return;
        case Kind::Forall:
        case Kind::Exists: {
            std::size_t mark = bound.size();
            for (const auto & b : t.binders()) { bound.push_back(b.name); }
            collect_free(t.body(), bound, out);
            bound.resize(mark);
            return;
        }
        default:
            for (const auto & a : t.args()) { collect_free(a, bound, out); }
    }
}

} // namespace

std::map<std::string, Sort> free_vars(const Term & t) {
    std::map<std::string, Sort> out;
    std::vector<std::string> bound;
    collect_free(t, bound, out);
    return out;
}

std::set<std::string> free_var_names(const Term & t) {
    std::set<std::string> out;
    for (const auto & [name, sort] : free_vars(t)) { out.insert(name); }
    return out;
}

void collect_names(const Term & t, std::set<std::string> & out) {
    switch (t.kind()) {
        case Kind::BoolConst:
        case Kind::IntConst: return;
        case Kind::Var: out.insert(t.name()); return;
        case Kind::Forall:
        case Kind::Exists:
            for (const auto & b : t.binders()) { out.insert(b.name); }
            collect_names(t.body(), out);
            return;
        default:
            for (const auto & a : t.args()) { collect_names(a, out); }
    }
}

std::set<std::string> all_names(const Term & t) {
    std::set<std::string> out;
    collect_names(t, out);
    return out;
}

std::string fresh(const std::string & hint, const std::set<std::string> & used) {
    if (!used.contains(hint)) { return hint; }
    for (std::size_t i = 0;; ++i) {
        std::string candidate = hint + "!" + std::to_string(i);
        if (!used.contains(candidate)) { return candidate; }
    }
}

Term subst(const Term & t, const Substitution & mapping) {
    if (mapping.empty()) { return t; }
    switch (t.kind()) {
        case Kind::BoolConst:
        case Kind::IntConst: return t;
        case Kind::Var: {
            auto it = mapping.find(t.name());
            if (it == mapping.end()) { return t; }
            if (it->second.sort() != t.sort()) {
                throw SortMismatch("cannot substitute " + std::string(to_string(it->second.sort())) + " term for " +
                                   to_string(t.sort()) + " variable '" + t.name() + "'");
            }
            return it->second;
        }
        case Kind::Forall:
        case Kind::Exists: {
            auto body_free = free_var_names(t.body());
            Substitution inner;
            std::set<std::string> capture;
            for (const auto & [name, replacement] : mapping) {
                bool shadowed = std::any_of(t.binders().begin(), t.binders().end(),
                                            [&](const Binder & b) { return b.name == name; });
                if (shadowed || !body_free.contains(name)) { continue; }
                inner.emplace(name, replacement);
                auto fv = free_var_names(replacement);
                capture.insert(fv.begin(), fv.end());
            }
            if (inner.empty()) { return t; }
            std::set<std::string> used = capture;
            used.insert(body_free.begin(), body_free.end());
            for (const auto & b : t.binders()) { used.insert(b.name); }
            for (const auto & [name, replacement] : inner) { used.insert(name); }
            std::vector<Binder> binders = t.binders();
            for (auto & b : binders) {
                if (!capture.contains(b.name)) { continue; }
                std::string renamed = fresh(b.name, used);
                used.insert(renamed);
                inner.emplace(b.name, mk_var(renamed, b.sort));
                b.name = renamed;
            }
            return Term::quantify(t.kind(), std::move(binders), subst(t.body(), inner));
        }
        default: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            bool changed = false;
            for (const auto & a : t.args()) {
                args.push_back(subst(a, mapping));
                changed = changed || args.back().identity() != a.identity();
            }
            if (!changed) { return t; }
            return Term::apply(t.kind(), std::move(args));
        }
    }
}

Term subst(const Term & t, const std::string & name, const Term & replacement) {
    return subst(t, Substitution{{name, replacement}});
}

namespace {

void flatten_and(const Term & t, std::vector<Term> & out) {
    if (t.kind() == Kind::And) {
        for (const auto & a : t.args()) { flatten_and(a, out); }
    } else {
        out.push_back(t);
    }
}

using BoundEnv = std::vector<std::pair<std::string, std::size_t>>;

std::optional<std::size_t> lookup(const BoundEnv & env, const std::string & name) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == name) { return it->second; }
    }
    return std::nullopt;
}

bool alpha_eq(const Term & a, const Term & b, BoundEnv & ea, BoundEnv & eb, std::size_t depth) {
    if (a.kind() == Kind::And && b.kind() == Kind::And) {
        std::vector<Term> fa, fb;
        flatten_and(a, fa);
        flatten_and(b, fb);
        if (fa.size() != fb.size()) { return false; }
        for (std::size_t i = 0; i < fa.size(); ++i) {
            if (!alpha_eq(fa[i], fb[i], ea, eb, depth)) { return false; }
        }
        return true;
    }
    if (a.kind() != b.kind() || a.sort() != b.sort()) { return false; }
    switch (a.kind()) {
        case Kind::BoolConst: return a.bool_value() == b.bool_value();
        case Kind::IntConst: return a.int_value() == b.int_value();
        case Kind::Var: {
            auto la = lookup(ea, a.name());
            auto lb = lookup(eb, b.name());
            if (la.has_value() != lb.has_value()) { return false; }
            return la ? *la == *lb : a.name() == b.name();
        }
        case Kind::Forall:
        case Kind::Exists: {
            if (a.binders().size() != b.binders().size()) { return false; }
            std::size_t ma = ea.size(), mb = eb.size();
            for (std::size_t i = 0; i < a.binders().size(); ++i) {
                if (a.binders()[i].sort != b.binders()[i].sort) { return false; }
                ea.emplace_back(a.binders()[i].name, depth + i);
                eb.emplace_back(b.binders()[i].name, depth + i);
            }
            bool ok = alpha_eq(a.body(), b.body(), ea, eb, depth + a.binders().size());
            ea.resize(ma);
            eb.resize(mb);
            return ok;
        }
        default: {
            if (a.args().size() != b.args().size()) { return false; }
            for (std::size_t i = 0; i < a.args().size(); ++i) {
                if (!alpha_eq(a.args()[i], b.args()[i], ea, eb, depth)) { return false; }
            }
            return true;
        }
    }
}

} // namespace

bool alpha_equivalent(const Term & a, const Term & b) {
    BoundEnv ea, eb;
    return alpha_eq(a, b, ea, eb, 0);
}

std::size_t term_size(const Term & t) {
    std::size_t n = 1;
    for (const auto & a : t.args()) { n += term_size(a); }
    return n;
}

} // namespace aev
