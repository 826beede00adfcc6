#include "aev/error.hpp"
#include "aev/frontend.hpp"
#include "aev/smtlib.hpp"

#include <cctype>
#include <set>

namespace aev {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t offset = 0;

    bool is(std::string_view p) const { return (kind == Tok::Punct || kind == Tok::Ident) && text == p; }
};

// Longest first so that e.g. `<=` wins over `<`.
constexpr std::string_view kPunct[] = {":=", "==", "!=", "<=", ">=", "&&", "||", "@inv", "@var", "<", ">", "!", "+",
                                       "-",  "*",  "(",  ")",  "[",  "]",  "{",  "}",  ",",    ";",    ":"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    VerificationProblem parse() {
        VerificationProblem p;
        std::set<std::string> seen;
        auto once = [&](const Token & t) {
            if (!seen.insert(t.text).second) { fail("duplicate section '" + t.text + "'", t); }
        };
        while (peek().kind != Tok::End) {
            Token t = next();
            if (t.is("prog")) {
                Program prog = program();
                if (p.programs.count(prog.name)) { fail("program '" + prog.name + "' defined twice", t); }
                p.programs.emplace(prog.name, std::move(prog));
                continue;
            }
            if (t.kind != Tok::Ident) { fail("expected a section name", t); }
            expect(":");
            if (t.text == "expected") {
                once(t);
                Token v = next();
                if (v.is("valid")) {
                    p.expected_valid = true;
                } else if (v.is("invalid")) {
                    p.expected_valid = false;
                } else {
                    fail("expected 'valid' or 'invalid'", v);
                }
                expect(";");
            } else if (t.text == "forall" || t.text == "exists") {
                once(t);
                (t.text == "forall" ? p.universal_copies : p.existential_copies) = copies();
            } else if (t.text == "pre" || t.text == "post") {
                once(t);
                (t.text == "pre" ? p.pre : p.post) = term();
                expect(";");
            } else if (t.text == "aspecs") {
                once(t);
                while (at_spec_header()) { universal_spec(p.specs); }
            } else if (t.text == "especs") {
                once(t);
                while (at_spec_header()) { existential_spec(p.specs); }
            } else {
                fail("unknown section '" + t.text + "'", t);
            }
        }
        return p;
    }

private:
    // ---- lexing ------------------------------------------------------------------------------

    void skip_ws() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) { ++pos_; }
            if (text_.substr(pos_, 2) == "//") {
                while (pos_ < text_.size() && text_[pos_] != '\n') { ++pos_; }
                continue;
            }
            return;
        }
    }

    Token lex() {
        skip_ws();
        Token t;
        t.offset = pos_;
        if (pos_ >= text_.size()) { return t; }
        char c = text_[pos_];
        auto ident_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) { ++pos_; }
            t.kind = Tok::Ident;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) { ++pos_; }
            t.kind = Tok::Number;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        for (auto p : kPunct) {
            if (text_.substr(pos_, p.size()) == p) {
                pos_ += p.size();
                t.kind = Tok::Punct;
                t.text = std::string(p);
                return t;
            }
        }
        fail(std::string("unexpected character '") + c + "'", t);
    }

    const Token & peek() {
        if (!lookahead_) {
            std::size_t save = pos_;
            lookahead_ = lex();
            lookahead_end_ = pos_;
            pos_ = save;
        }
        return *lookahead_;
    }

    Token next() {
        peek();
        Token t = std::move(*lookahead_);
        lookahead_.reset();
        pos_ = lookahead_end_;
        return t;
    }

    // Second token of lookahead, without consuming anything.
    Token peek2() {
        std::size_t save = pos_;
        auto saved = lookahead_;
        if (lookahead_) { pos_ = lookahead_end_; } else { lex(); }
        Token t = lex();
        pos_ = save;
        lookahead_ = saved;
        return t;
    }

    Token expect(std::string_view p) {
        Token t = next();
        if (!t.is(p)) { fail("expected '" + std::string(p) + "'" + found(t), t); }
        return t;
    }

    std::string ident(const char * what) {
        Token t = next();
        if (t.kind != Tok::Ident) { fail(std::string("expected ") + what + found(t), t); }
        return t.text;
    }

    static std::string found(const Token & t) { return t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"; }

    [[noreturn]] void fail(const std::string & message, const Token & at) const { fail_at(message, at.offset); }
    [[noreturn]] void fail_at(const std::string & message, std::size_t offset) const {
        auto [line, col] = line_column(text_, offset);
        throw ParseError(message, line, col);
    }

    // ---- sections ----------------------------------------------------------------------------

    Term term(Sort sort = Sort::Bool) {
        lookahead_.reset();
        skip_ws();
        std::size_t start = pos_;
        SexprReader reader(text_, pos_);
        Sexpr e = reader.read();
        pos_ = reader.position();
        Term t = term_from_sexpr(e, text_);
        if (t.sort() != sort) { fail_at(std::string("expected a term of sort ") + to_string(sort), start); }
        return t;
    }

    std::vector<CopyRef> copies() {
        std::vector<CopyRef> out;
        if (peek().is(";")) {
            next();
            return out;
        }
        for (;;) {
            CopyRef ref;
            ref.program = ident("a program name");
            expect("[");
            Token n = next();
            if (n.kind != Tok::Number) { fail("expected a copy index" + found(n), n); }
            ref.index = std::stoi(n.text);
            if (ref.index < 1) { fail("copy indices start at 1", n); }
            expect("]");
            out.push_back(std::move(ref));
            if (peek().is(",")) {
                next();
                continue;
            }
            expect(";");
            return out;
        }
    }

    bool at_spec_header() { return peek().kind == Tok::Ident && !peek().is("prog") && peek2().is("("); }

    std::vector<std::string> ident_list(std::string_view close) {
        std::vector<std::string> out;
        if (peek().is(close)) { return out; }
        for (;;) {
            out.push_back(ident("a name"));
            if (!peek().is(",")) { return out; }
            next();
        }
    }

    struct SpecHeader {
        Token at;
        std::string name;
        std::vector<std::string> params;
    };

    SpecHeader spec_header() {
        SpecHeader h;
        h.at = peek();
        h.name = ident("a function name");
        expect("(");
        h.params = ident_list(")");
        expect(")");
        expect("{");
        return h;
    }

    Term labelled_term(std::string_view label) {
        expect(label);
        expect(":");
        Term t = term();
        expect(";");
        return t;
    }

    template <class Add>
    void add_spec(const Token & at, Add add) {
        try {
            add();
        } catch (const InvalidProblem & e) {
            fail(e.what(), at);
        }
    }

    void universal_spec(SpecContext & specs) {
        SpecHeader h = spec_header();
        if (specs.universal.count(h.name)) { fail("duplicate aspecs entry for " + h.name, h.at); }
        Term pre = labelled_term("pre");
        Term post = labelled_term("post");
        expect("}");
        add_spec(h.at, [&] { specs.add(UniversalSpec{h.name, h.params, pre, post}); });
    }

    void existential_spec(SpecContext & specs) {
        SpecHeader h = spec_header();
        if (specs.existential.count(h.name)) { fail("duplicate especs entry for " + h.name, h.at); }
        std::vector<std::string> choices;
        if (peek().is("templateVars")) {
            next();
            expect(":");
            choices = ident_list(";");
            expect(";");
        }
        Term pre = labelled_term("pre");
        Term post = labelled_term("post");
        expect("}");
        add_spec(h.at, [&] { specs.add(ExistentialSpec{h.name, h.params, choices, pre, post}); });
    }

    Program program() {
        Program p;
        p.name = ident("a program name");
        expect("(");
        p.params = ident_list(")");
        expect(")");
        expect(":");
        p.body = block({"endp"});
        expect("endp");
        return p;
    }

    // ---- statements --------------------------------------------------------------------------

    Stmt block(std::initializer_list<std::string_view> terminators) {
        std::vector<Stmt> out;
        for (;;) {
            const Token & t = peek();
            for (auto term : terminators) {
                if (t.is(term)) { return s_block(out); }
            }
            if (t.kind == Tok::End) { fail("unterminated block", t); }
            out.push_back(statement());
        }
    }

    Stmt statement() {
        Token t = next();
        if (t.is("skip")) {
            expect(";");
            return s_skip();
        }
        if (t.is("havoc")) {
            std::string x = ident("a variable");
            expect(";");
            return s_havoc(x);
        }
        if (t.is("if")) {
            BExp c = bexp();
            expect("then");
            Stmt then_branch = block({"else", "end"});
            Stmt else_branch = s_skip();
            if (peek().is("else")) {
                next();
                else_branch = block({"end"});
            }
            expect("end");
            return s_if(c, then_branch, else_branch);
        }
        if (t.is("while")) {
            BExp c = bexp();
            std::optional<Term> inv, var;
            while (peek().is("@inv") || peek().is("@var")) {
                Token a = next();
                expect("{");
                Term v = term(a.is("@inv") ? Sort::Bool : Sort::Int);
                expect("}");
                std::optional<Term> & slot = a.is("@inv") ? inv : var;
                if (slot) { fail("duplicate " + a.text + " annotation", a); }
                slot = v;
            }
            expect("do");
            Stmt body = block({"end"});
            expect("end");
            std::optional<LoopAnnotation> ann;
            if (inv) {
                ann = LoopAnnotation{*inv, var};
            } else if (var) {
                ann = LoopAnnotation{mk_true(), var};
            }
            return s_while(c, body, ann);
        }
        if (t.kind != Tok::Ident || is_keyword(t.text)) { fail("expected a statement" + found(t), t); }
        expect(":=");
        if (peek().is("call")) {
            next();
            std::string f = ident("a function name");
            expect("(");
            std::vector<AExp> args;
            if (!peek().is(")")) {
                for (;;) {
                    args.push_back(aexp());
                    if (!peek().is(",")) { break; }
                    next();
                }
            }
            expect(")");
            expect(";");
            return s_call(t.text, f, std::move(args));
        }
        AExp e = aexp();
        expect(";");
        return s_assign(t.text, e);
    }

    static bool is_keyword(const std::string & s) {
        static const std::set<std::string> kw{"if", "then", "else", "end", "while", "do", "skip", "havoc", "call",
                                              "endp", "prog", "true", "false"};
        return kw.count(s) > 0;
    }

    // ---- expressions -------------------------------------------------------------------------

    AExp aexp() {
        AExp l = term_expr();
        while (peek().is("+") || peek().is("-")) {
            bool plus = next().is("+");
            AExp r = term_expr();
            l = plus ? a_add(l, r) : a_sub(l, r);
        }
        return l;
    }

    AExp term_expr() {
        AExp l = unary();
        while (peek().is("*")) {
            next();
            l = a_mul(l, unary());
        }
        return l;
    }

    AExp unary() {
        if (peek().is("-")) {
            next();
            AExp e = unary();
            if (e->op == AOp::Lit) { return a_lit(-e->value); }
            return a_sub(a_lit(0), e);
        }
        return primary();
    }

    AExp primary() {
        Token t = next();
        if (t.kind == Tok::Number) { return a_lit(Integer(t.text)); }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) { return a_var(t.text); }
        if (t.is("(")) {
            AExp e = aexp();
            expect(")");
            return e;
        }
        fail("expected an expression" + found(t), t);
    }

    BExp bexp() {
        BExp l = conj();
        while (peek().is("||")) {
            next();
            BExp r = conj();
            l = b_not(b_and(b_not(l), b_not(r)));
        }
        return l;
    }

    BExp conj() {
        BExp l = neg();
        while (peek().is("&&")) {
            next();
            l = b_and(l, neg());
        }
        return l;
    }

    BExp neg() {
        if (peek().is("!")) {
            next();
            return b_not(neg());
        }
        return atom();
    }

    // A parenthesis may open either a condition or an arithmetic operand, so try the condition
    // first and fall back to a comparison.
    BExp atom() {
        if (peek().is("true")) {
            next();
            return b_true();
        }
        if (peek().is("false")) {
            next();
            return b_false();
        }
        if (peek().is("(")) {
            std::size_t save = pos_;
            auto saved = lookahead_;
            auto saved_end = lookahead_end_;
            try {
                next();
                BExp b = bexp();
                expect(")");
                if (!is_comparison(peek())) { return b; }
            } catch (const ParseError &) {}
            pos_ = save;
            lookahead_ = saved;
            lookahead_end_ = saved_end;
        }
        AExp l = aexp();
        Token op = next();
        if (!is_comparison(op)) { fail("expected a comparison" + found(op), op); }
        AExp r = aexp();
        if (op.is("==")) { return b_eq(l, r); }
        if (op.is("!=")) { return b_not(b_eq(l, r)); }
        if (op.is("<")) { return b_lt(l, r); }
        if (op.is(">")) { return b_lt(r, l); }
        if (op.is("<=")) { return b_not(b_lt(r, l)); }
        return b_not(b_lt(l, r));
    }

    static bool is_comparison(const Token & t) {
        return t.is("==") || t.is("!=") || t.is("<") || t.is(">") || t.is("<=") || t.is(">=");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::optional<Token> lookahead_;
    std::size_t lookahead_end_ = 0;
};

void check_specs_present(const VerificationProblem & p) {
    auto check = [&](const std::vector<CopyRef> & refs, bool universal) {
        for (const auto & ref : refs) {
            auto it = p.programs.find(ref.program);
            if (it == p.programs.end()) { continue; }
            for (const auto & f : called_functions(it->second.body)) {
                bool ok = universal ? p.specs.universal.count(f) > 0 : p.specs.existential.count(f) > 0;
                if (!ok) {
                    throw InvalidProblem("copy " + ref.program + "[" + std::to_string(ref.index) + "] calls " + f +
                                         ", which has no " + (universal ? "aspecs" : "especs") + " entry");
                }
            }
        }
    };
    check(p.universal_copies, true);
    check(p.existential_copies, false);
}

} // namespace

VerificationProblem parse_input(std::string_view text) {
    VerificationProblem p = Parser(text).parse();
    check_well_formed(p);
    check_specs_present(p);
    return p;
}

} // namespace aev
