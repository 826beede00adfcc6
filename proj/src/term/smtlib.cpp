#include "aev/smtlib.hpp"

#include "aev/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace aev {

namespace {

bool is_simple_symbol_char(char c) {
    if (std::isalnum(static_cast<unsigned char>(c))) { return true; }
    static const std::string extra = "~@$%^&*_-+=<>.?/";
    return extra.find(c) != std::string::npos;
}

const std::map<std::string, Kind, std::less<>> & operator_table() {
    static const std::map<std::string, Kind, std::less<>> table{
        {"+", Kind::Add},  {"-", Kind::Sub},  {"*", Kind::Mul},       {"div", Kind::Div}, {"mod", Kind::Mod},
        {"=", Kind::Eq},   {"<", Kind::Lt},   {"<=", Kind::Le},       {">", Kind::Gt},    {">=", Kind::Ge},
        {"not", Kind::Not}, {"and", Kind::And}, {"or", Kind::Or},     {"=>", Kind::Implies},
    };
    return table;
}

const char * operator_spelling(Kind kind) {
    switch (kind) {
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
        default: return "?";
    }
}

void render(const Term & t, std::string & out) {
    switch (t.kind()) {
        case Kind::BoolConst: out += t.bool_value() ? "true" : "false"; return;
        case Kind::IntConst:
            if (t.int_value() < 0) {
                out += "(- " + Integer(-t.int_value()).str() + ")";
            } else {
                out += t.int_value().str();
            }
            return;
        case Kind::Var: out += smt_symbol(t.name()); return;
        case Kind::Forall:
        case Kind::Exists:
            out += '(';
            out += operator_spelling(t.kind());
            out += " (";
            for (std::size_t i = 0; i < t.binders().size(); ++i) {
                if (i) { out += ' '; }
                out += "(" + smt_symbol(t.binders()[i].name) + " " + to_string(t.binders()[i].sort) + ")";
            }
            out += ") ";
            render(t.body(), out);
            out += ')';
            return;
        default:
            out += '(';
            out += operator_spelling(t.kind());
            for (const auto & a : t.args()) {
                out += ' ';
                render(a, out);
            }
            out += ')';
    }
}

class TermBuilder {
public:
    explicit TermBuilder(std::string_view source) : source_(source) {}

    Term build(const Sexpr & e) {
        switch (e.type) {
            case Sexpr::Type::Numeral: return mk_int(Integer(e.atom));
            case Sexpr::Type::Symbol: return symbol(e);
            case Sexpr::Type::List: return list(e);
            default: fail("unexpected " + to_string(e) + " in term", e);
        }
    }

private:
    [[noreturn]] void fail(const std::string & message, const Sexpr & at) const {
        if (source_.empty()) { throw ParseError(message, 1, at.offset + 1); }
        auto [line, col] = line_column(source_, at.offset);
        throw ParseError(message, line, col);
    }

    Term symbol(const Sexpr & e) {
        if (!e.quoted && e.atom == "true") { return mk_true(); }
        if (!e.quoted && e.atom == "false") { return mk_false(); }
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
            if (it->name == e.atom) { return mk_var(e.atom, it->sort); }
        }
        return mk_var(e.atom, Sort::Int);
    }

    Sort sort_of(const Sexpr & e) {
        if (e.is_symbol("Int")) { return Sort::Int; }
        if (e.is_symbol("Bool")) { return Sort::Bool; }
        fail("unknown sort " + to_string(e), e);
    }

    Term list(const Sexpr & e) {
        if (e.items.empty()) { fail("empty application", e); }
        const Sexpr & head = e.items.front();
        if (head.type != Sexpr::Type::Symbol || head.quoted) { fail("expected operator, got " + to_string(head), head); }
        const std::string & op = head.atom;
        if (op == "forall" || op == "exists") { return quantifier(e, op == "forall" ? Kind::Forall : Kind::Exists); }

        std::vector<Term> args;
        for (std::size_t i = 1; i < e.items.size(); ++i) { args.push_back(build(e.items[i])); }
        try {
            if (op == "-" && args.size() == 1) {
                if (e.items[1].type == Sexpr::Type::Numeral) { return mk_int(-args[0].int_value()); }
                return Term::apply(Kind::Neg, std::move(args));
            }
            if (op == "distinct") {
                if (args.size() != 2) { fail("distinct is supported on two arguments only", e); }
                return mk_not(mk_eq(std::move(args[0]), std::move(args[1])));
            }
            if (op == "=>" && args.size() > 2) {
                Term acc = args.back();
                for (std::size_t i = args.size() - 1; i-- > 0;) { acc = mk_implies(args[i], acc); }
                return acc;
            }
            auto it = operator_table().find(op);
            if (it == operator_table().end()) { fail("unknown operator '" + op + "'", head); }
            return Term::apply(it->second, std::move(args));
        } catch (const SortMismatch & err) {
            fail(err.what(), e);
        }
    }

    Term quantifier(const Sexpr & e, Kind kind) {
        if (e.items.size() != 3 || !e.items[1].is_list() || e.items[1].items.empty()) {
            fail("malformed quantifier", e);
        }
        std::vector<Binder> binders;
        for (const auto & b : e.items[1].items) {
            if (!b.is_list() || b.items.size() != 2 || b.items[0].type != Sexpr::Type::Symbol) {
                fail("malformed binder " + to_string(b), b);
            }
            binders.push_back(Binder{b.items[0].atom, sort_of(b.items[1])});
        }
        std::size_t mark = scope_.size();
        scope_.insert(scope_.end(), binders.begin(), binders.end());
        Term body = build(e.items[2]);
        scope_.resize(mark);
        try {
            return Term::quantify(kind, std::move(binders), std::move(body));
        } catch (const SortMismatch & err) {
            fail(err.what(), e);
        }
    }

    std::string_view source_;
    std::vector<Binder> scope_;
};

} // namespace

std::string smt_symbol(const std::string & name) {
    bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name.front())) &&
                  std::all_of(name.begin(), name.end(), is_simple_symbol_char);
    if (simple) { return name; }
    return "|" + name + "|";
}

std::string to_smtlib(const Term & t) {
    std::string out;
    render(t, out);
    return out;
}

Term term_from_sexpr(const Sexpr & e, std::string_view source) { return TermBuilder(source).build(e); }

Term parse_term(std::string_view text) {
    SexprReader reader(text);
    Sexpr e = reader.read();
    if (!reader.at_end()) {
        auto [line, col] = line_column(text, reader.position());
        throw ParseError("trailing text after term", line, col);
    }
    return term_from_sexpr(e, text);
}

} // namespace aev
