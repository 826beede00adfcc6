#include "aev/error.hpp"
#include "aev/lang.hpp"
#include "aev/smtlib.hpp"

#include <set>

namespace aev {

namespace {

AExp make_a(AExpNode n) { return std::make_shared<const AExpNode>(std::move(n)); }
BExp make_b(BExpNode n) { return std::make_shared<const BExpNode>(std::move(n)); }
Stmt make_s(StmtNode n) { return std::make_shared<const StmtNode>(std::move(n)); }

AExp a_bin(AOp op, AExp l, AExp r) {
    AExpNode n;
    n.op = op;
    n.lhs = std::move(l);
    n.rhs = std::move(r);
    return make_a(std::move(n));
}

} // namespace

AExp a_lit(Integer value) {
    AExpNode n;
    n.op = AOp::Lit;
    n.value = std::move(value);
    return make_a(std::move(n));
}

AExp a_var(std::string name) {
    AExpNode n;
    n.op = AOp::Var;
    n.name = std::move(name);
    return make_a(std::move(n));
}

AExp a_add(AExp l, AExp r) { return a_bin(AOp::Add, std::move(l), std::move(r)); }
AExp a_sub(AExp l, AExp r) { return a_bin(AOp::Sub, std::move(l), std::move(r)); }
AExp a_mul(AExp l, AExp r) { return a_bin(AOp::Mul, std::move(l), std::move(r)); }

BExp b_true() { return make_b(BExpNode{BOp::True, nullptr, nullptr, nullptr, nullptr}); }
BExp b_false() { return make_b(BExpNode{BOp::False, nullptr, nullptr, nullptr, nullptr}); }
BExp b_eq(AExp l, AExp r) { return make_b(BExpNode{BOp::Eq, std::move(l), std::move(r), nullptr, nullptr}); }
BExp b_lt(AExp l, AExp r) { return make_b(BExpNode{BOp::Lt, std::move(l), std::move(r), nullptr, nullptr}); }
BExp b_not(BExp b) { return make_b(BExpNode{BOp::Not, nullptr, nullptr, std::move(b), nullptr}); }
BExp b_and(BExp l, BExp r) { return make_b(BExpNode{BOp::And, nullptr, nullptr, std::move(l), std::move(r)}); }

Stmt s_skip() {
    static const Stmt skip = make_s(StmtNode{});
    return skip;
}

Stmt s_seq(Stmt first, Stmt second) {
    StmtNode n;
    n.op = SOp::Seq;
    n.first = std::move(first);
    n.second = std::move(second);
    return make_s(std::move(n));
}

Stmt s_block(const std::vector<Stmt> & stmts) {
    if (stmts.empty()) { return s_skip(); }
    Stmt acc = stmts.back();
    for (std::size_t i = stmts.size() - 1; i-- > 0;) { acc = s_seq(stmts[i], acc); }
    return acc;
}

Stmt s_if(BExp cond, Stmt then_branch, Stmt else_branch) {
    StmtNode n;
    n.op = SOp::If;
    n.cond = std::move(cond);
    n.first = std::move(then_branch);
    n.second = std::move(else_branch);
    return make_s(std::move(n));
}

Stmt s_while(BExp cond, Stmt body, std::optional<LoopAnnotation> annotation) {
    StmtNode n;
    n.op = SOp::While;
    n.cond = std::move(cond);
    n.first = std::move(body);
    n.annotation = std::move(annotation);
    return make_s(std::move(n));
}

Stmt s_assign(std::string target, AExp value) {
    StmtNode n;
    n.op = SOp::Assign;
    n.target = std::move(target);
    n.value = std::move(value);
    return make_s(std::move(n));
}

Stmt s_havoc(std::string target) {
    StmtNode n;
    n.op = SOp::Havoc;
    n.target = std::move(target);
    return make_s(std::move(n));
}

Stmt s_call(std::string target, std::string fname, std::vector<AExp> args) {
    StmtNode n;
    n.op = SOp::Call;
    n.target = std::move(target);
    n.fname = std::move(fname);
    n.args = std::move(args);
    return make_s(std::move(n));
}

bool structurally_equal(const AExp & a, const AExp & b) {
    if (a.get() == b.get()) { return true; }
    if (!a || !b || a->op != b->op) { return false; }
    switch (a->op) {
        case AOp::Lit: return a->value == b->value;
        case AOp::Var: return a->name == b->name;
        default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
}

bool structurally_equal(const BExp & a, const BExp & b) {
    if (a.get() == b.get()) { return true; }
    if (!a || !b || a->op != b->op) { return false; }
    switch (a->op) {
        case BOp::True:
        case BOp::False: return true;
        case BOp::Eq:
        case BOp::Lt: return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
        case BOp::Not: return structurally_equal(a->lhs, b->lhs);
        case BOp::And: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
    return false;
}

namespace {

bool same_annotation(const std::optional<LoopAnnotation> & a, const std::optional<LoopAnnotation> & b) {
    if (a.has_value() != b.has_value()) { return false; }
    if (!a) { return true; }
    if (!(a->invariant == b->invariant)) { return false; }
    if (a->variant.has_value() != b->variant.has_value()) { return false; }
    return !a->variant || *a->variant == *b->variant;
}

} // namespace

bool structurally_equal(const Stmt & a, const Stmt & b) {
    if (a.get() == b.get()) { return true; }
    if (!a || !b || a->op != b->op) { return false; }
    switch (a->op) {
        case SOp::Skip: return true;
        case SOp::Seq: return structurally_equal(a->first, b->first) && structurally_equal(a->second, b->second);
        case SOp::If:
            return structurally_equal(a->cond, b->cond) && structurally_equal(a->first, b->first) &&
                   structurally_equal(a->second, b->second);
        case SOp::While:
            return structurally_equal(a->cond, b->cond) && structurally_equal(a->first, b->first) &&
                   same_annotation(a->annotation, b->annotation);
        case SOp::Assign: return a->target == b->target && structurally_equal(a->value, b->value);
        case SOp::Havoc: return a->target == b->target;
        case SOp::Call: {
            if (a->target != b->target || a->fname != b->fname || a->args.size() != b->args.size()) { return false; }
            for (std::size_t i = 0; i < a->args.size(); ++i) {
                if (!structurally_equal(a->args[i], b->args[i])) { return false; }
            }
            return true;
        }
    }
    return false;
}

ImplContext::ImplContext(std::initializer_list<FunDef> defs) {
    for (const auto & d : defs) { add(d); }
}

void ImplContext::add(FunDef def) {
    std::set<std::string> seen;
    for (const auto & p : def.params) {
        if (!seen.insert(p).second) {
            throw InvalidProblem("function '" + def.name + "' repeats parameter '" + p + "'");
        }
    }
    std::string name = def.name;
    if (!defs_.emplace(name, std::move(def)).second) {
        throw InvalidProblem("function '" + name + "' is defined twice");
    }
}

const FunDef & ImplContext::at(const std::string & name) const {
    auto it = defs_.find(name);
    if (it == defs_.end()) { throw UnknownFunction(name); }
    return it->second;
}

std::string to_string(const State & state) {
    std::string out = "{";
    bool first = true;
    for (const auto & [k, v] : state) {
        if (!first) { out += ", "; }
        first = false;
        out += k + "=" + v.str();
    }
    return out + "}";
}

// ---------------------------------------------------------------------------------------------

namespace {

void flatten(const Stmt & s, std::vector<Stmt> & out) {
    if (s->op == SOp::Seq) {
        flatten(s->first, out);
        flatten(s->second, out);
    } else {
        out.push_back(s);
    }
}

} // namespace

std::vector<Stmt> normalize(const Stmt & s) {
    std::vector<Stmt> out;
    flatten(s, out);
    return out;
}

Stmt denormalize(const std::vector<Stmt> & stmts) { return s_block(stmts); }

Term to_term(const AExp & e) {
    switch (e->op) {
        case AOp::Lit: return mk_int(e->value);
        case AOp::Var: return mk_var(e->name);
        case AOp::Add: return mk_add(to_term(e->lhs), to_term(e->rhs));
        case AOp::Sub: return mk_sub(to_term(e->lhs), to_term(e->rhs));
        case AOp::Mul: return mk_mul(to_term(e->lhs), to_term(e->rhs));
    }
    throw Error("to_term: bad arithmetic expression");
}

Term to_term(const BExp & b) {
    switch (b->op) {
        case BOp::True: return mk_true();
        case BOp::False: return mk_false();
        case BOp::Eq: return mk_eq(to_term(b->a), to_term(b->b));
        case BOp::Lt: return mk_lt(to_term(b->a), to_term(b->b));
        case BOp::Not: return mk_not(to_term(b->lhs));
        case BOp::And: return mk_and(to_term(b->lhs), to_term(b->rhs));
    }
    throw Error("to_term: bad boolean expression");
}

namespace {

void vars_of(const AExp & e, std::set<std::string> & out) {
    if (e->op == AOp::Var) {
        out.insert(e->name);
    } else if (e->op != AOp::Lit) {
        vars_of(e->lhs, out);
        vars_of(e->rhs, out);
    }
}

void vars_of(const BExp & b, std::set<std::string> & out) {
    switch (b->op) {
        case BOp::True:
        case BOp::False: return;
        case BOp::Eq:
        case BOp::Lt:
            vars_of(b->a, out);
            vars_of(b->b, out);
            return;
        case BOp::Not: vars_of(b->lhs, out); return;
        case BOp::And:
            vars_of(b->lhs, out);
            vars_of(b->rhs, out);
            return;
    }
}

template <typename Visit>
void walk(const Stmt & s, Visit && visit) {
    visit(s);
    switch (s->op) {
        case SOp::Seq:
        case SOp::If:
            walk(s->first, visit);
            walk(s->second, visit);
            break;
        case SOp::While: walk(s->first, visit); break;
        default: break;
    }
}

} // namespace

std::set<std::string> assigned_vars(const Stmt & s) {
    std::set<std::string> out;
    walk(s, [&](const Stmt & n) {
        if (n->op == SOp::Assign || n->op == SOp::Havoc || n->op == SOp::Call) { out.insert(n->target); }
    });
    return out;
}

std::set<std::string> program_vars(const AExp & e) {
    std::set<std::string> out;
    vars_of(e, out);
    return out;
}

std::set<std::string> program_vars(const Stmt & s) {
    std::set<std::string> out;
    walk(s, [&](const Stmt & n) {
        switch (n->op) {
            case SOp::If:
            case SOp::While: vars_of(n->cond, out); break;
            case SOp::Assign:
                out.insert(n->target);
                vars_of(n->value, out);
                break;
            case SOp::Havoc: out.insert(n->target); break;
            case SOp::Call:
                out.insert(n->target);
                for (const auto & a : n->args) { vars_of(a, out); }
                break;
            default: break;
        }
    });
    return out;
}

std::set<std::string> called_functions(const Stmt & s) {
    std::set<std::string> out;
    walk(s, [&](const Stmt & n) {
        if (n->op == SOp::Call) { out.insert(n->fname); }
    });
    return out;
}

namespace {

std::set<std::string> live_before(const Stmt & s, std::set<std::string> live) {
    switch (s->op) {
        case SOp::Skip: return live;
        case SOp::Seq: return live_before(s->first, live_before(s->second, std::move(live)));
        case SOp::Assign:
            live.erase(s->target);
            vars_of(s->value, live);
            return live;
        case SOp::Havoc: live.erase(s->target); return live;
        case SOp::Call:
            live.erase(s->target);
            for (const auto & a : s->args) { vars_of(a, live); }
            return live;
        case SOp::If: {
            auto a = live_before(s->first, live);
            auto b = live_before(s->second, std::move(live));
            a.insert(b.begin(), b.end());
            vars_of(s->cond, a);
            return a;
        }
        case SOp::While: {
            std::set<std::string> head = live;
            for (;;) {
                std::set<std::string> next = live;
                vars_of(s->cond, next);
                auto body = live_before(s->first, head);
                next.insert(body.begin(), body.end());
                if (next == head) { return head; }
                head = std::move(next);
            }
        }
    }
    return live;
}

} // namespace

std::set<std::string> live_in(const std::vector<Stmt> & stmts, std::set<std::string> live_out) {
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) { live_out = live_before(*it, std::move(live_out)); }
    return live_out;
}

namespace {

AExp index_aexp(const AExp & e, const ExecId & id) {
    switch (e->op) {
        case AOp::Lit: return e;
        case AOp::Var: return a_var(index_name(e->name, id));
        default: {
            AExpNode n = *e;
            n.lhs = index_aexp(e->lhs, id);
            n.rhs = index_aexp(e->rhs, id);
            return std::make_shared<const AExpNode>(std::move(n));
        }
    }
}

BExp index_bexp(const BExp & b, const ExecId & id) {
    BExpNode n = *b;
    if (n.a) { n.a = index_aexp(n.a, id); }
    if (n.b) { n.b = index_aexp(n.b, id); }
    if (n.lhs) { n.lhs = index_bexp(n.lhs, id); }
    if (n.rhs) { n.rhs = index_bexp(n.rhs, id); }
    return std::make_shared<const BExpNode>(std::move(n));
}

// Annotations may mention other copies' variables by their indexed names; those stay as written.
Term index_annotation(const Term & t, const ExecId & id) {
    Substitution mapping;
    for (const auto & [name, sort] : free_vars(t)) {
        if (is_indexed_name(name)) { continue; }
        mapping.emplace(name, mk_var(index_name(name, id), sort));
    }
    return mapping.empty() ? t : subst(t, mapping);
}

} // namespace

Stmt index_stmt(const Stmt & s, const ExecId & id) {
    switch (s->op) {
        case SOp::Skip: return s;
        case SOp::Seq: return s_seq(index_stmt(s->first, id), index_stmt(s->second, id));
        case SOp::If: return s_if(index_bexp(s->cond, id), index_stmt(s->first, id), index_stmt(s->second, id));
        case SOp::While: {
            std::optional<LoopAnnotation> ann;
            if (s->annotation) {
                ann = LoopAnnotation{index_annotation(s->annotation->invariant, id), std::nullopt};
                if (s->annotation->variant) { ann->variant = index_annotation(*s->annotation->variant, id); }
            }
            return s_while(index_bexp(s->cond, id), index_stmt(s->first, id), std::move(ann));
        }
        case SOp::Assign: return s_assign(index_name(s->target, id), index_aexp(s->value, id));
        case SOp::Havoc: return s_havoc(index_name(s->target, id));
        case SOp::Call: {
            std::vector<AExp> args;
            for (const auto & a : s->args) { args.push_back(index_aexp(a, id)); }
            return s_call(index_name(s->target, id), s->fname, std::move(args));
        }
    }
    throw Error("index_stmt: bad statement");
}

// ---------------------------------------------------------------------------------------------

std::string to_source(const AExp & e) {
    switch (e->op) {
        case AOp::Lit: return e->value.str();
        case AOp::Var: return e->name;
        case AOp::Add: return "(" + to_source(e->lhs) + " + " + to_source(e->rhs) + ")";
        case AOp::Sub: return "(" + to_source(e->lhs) + " - " + to_source(e->rhs) + ")";
        case AOp::Mul: return "(" + to_source(e->lhs) + " * " + to_source(e->rhs) + ")";
    }
    return "?";
}

std::string to_source(const BExp & b) {
    switch (b->op) {
        case BOp::True: return "true";
        case BOp::False: return "false";
        case BOp::Eq: return "(" + to_source(b->a) + " == " + to_source(b->b) + ")";
        case BOp::Lt: return "(" + to_source(b->a) + " < " + to_source(b->b) + ")";
        case BOp::Not: return "!" + to_source(b->lhs);
        case BOp::And: return "(" + to_source(b->lhs) + " && " + to_source(b->rhs) + ")";
    }
    return "?";
}

namespace {

void emit(const Stmt & s, int indent, std::string & out) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    switch (s->op) {
        case SOp::Seq:
            emit(s->first, indent, out);
            emit(s->second, indent, out);
            return;
        case SOp::Skip: out += pad + "skip;\n"; return;
        case SOp::Assign: out += pad + s->target + " := " + to_source(s->value) + ";\n"; return;
        case SOp::Havoc: out += pad + "havoc " + s->target + ";\n"; return;
        case SOp::Call: {
            out += pad + s->target + " := call " + s->fname + "(";
            for (std::size_t i = 0; i < s->args.size(); ++i) {
                if (i) { out += ", "; }
                out += to_source(s->args[i]);
            }
            out += ");\n";
            return;
        }
        case SOp::If:
            out += pad + "if " + to_source(s->cond) + " then\n";
            emit(s->first, indent + 2, out);
            out += pad + "else\n";
            emit(s->second, indent + 2, out);
            out += pad + "end\n";
            return;
        case SOp::While:
            out += pad + "while " + to_source(s->cond);
            if (s->annotation) {
                out += " @inv{" + to_smtlib(s->annotation->invariant) + "}";
                if (s->annotation->variant) { out += " @var{" + to_smtlib(*s->annotation->variant) + "}"; }
            }
            out += " do\n";
            emit(s->first, indent + 2, out);
            out += pad + "end\n";
            return;
    }
}

} // namespace

std::string to_source(const Stmt & s, int indent) {
    std::string out;
    emit(s, indent, out);
    return out;
}

} // namespace aev
