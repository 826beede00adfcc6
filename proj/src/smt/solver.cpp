#include "aev/error.hpp"
#include "aev/smt.hpp"
#include "aev/smtlib.hpp"
#include "process.hpp"

#include <cstdlib>
#include <sstream>

namespace aev {

std::vector<std::string> SolverConfig::resolved_command() const {
    if (!command.empty()) { return command; }
    if (const char * env = std::getenv("AEV_SOLVER"); env && *env) {
        std::istringstream in(env);
        std::vector<std::string> out;
        for (std::string word; in >> word;) { out.push_back(word); }
        if (!out.empty()) { return out; }
    }
    return {"z3", "-in", "-smt2"};
}

const char * to_string(UnknownReason reason) {
    switch (reason) {
        case UnknownReason::Timeout: return "timeout";
        case UnknownReason::SolverUnknown: return "solver-unknown";
        case UnknownReason::SolverError: return "solver-error";
    }
    return "?";
}

std::string to_string(const Verdict & v) {
    switch (v.kind) {
        case Verdict::Kind::Valid: return "valid";
        case Verdict::Kind::Invalid: return "invalid";
        case Verdict::Kind::Unknown: return std::string("unknown (") + to_string(v.reason) + ")";
    }
    return "?";
}

namespace {

std::vector<std::string> int_vars(const Term & t) {
    std::vector<std::string> out;
    for (const auto & [name, sort] : free_vars(t)) {
        if (sort == Sort::Int) { out.push_back(name); }
    }
    return out;
}

Integer numeral(const Sexpr & e, std::string_view text) {
    if (e.type == Sexpr::Type::Numeral) { return Integer(e.atom); }
    if (e.is_list() && e.items.size() == 2 && e.items[0].is_symbol("-") && e.items[1].type == Sexpr::Type::Numeral) {
        return -Integer(e.items[1].atom);
    }
    throw ProtocolError("expected an integer value, got " + to_string(e), std::string(text));
}

bool is_name(const Sexpr & e) { return e.type == Sexpr::Type::Symbol; }

} // namespace

std::string validity_query(const Term & t, const SolverConfig & config) {
    std::string q;
    if (!config.logic.empty()) { q += "(set-logic " + config.logic + ")\n"; }
    for (const auto & [name, sort] : free_vars(t)) {
        q += "(declare-const " + smt_symbol(name) + " " + to_string(sort) + ")\n";
    }
    q += "(assert (not " + to_smtlib(t) + "))\n(check-sat)\n";
    auto vars = int_vars(t);
    if (!vars.empty()) {
        q += "(get-value (";
        for (std::size_t i = 0; i < vars.size(); ++i) { q += (i ? " " : "") + smt_symbol(vars[i]); }
        q += "))\n";
    }
    q += "(get-info :reason-unknown)\n(exit)\n";
    return q;
}

Model parse_model(std::string_view text) {
    Sexpr root;
    try {
        SexprReader reader(text);
        root = reader.read();
        if (!reader.at_end()) { throw ProtocolError("trailing text after model", std::string(text)); }
    } catch (const ParseError & e) {
        throw ProtocolError(std::string("unreadable model: ") + e.what(), std::string(text));
    }
    if (!root.is_list()) { throw ProtocolError("model is not a list", std::string(text)); }
    std::size_t start = 0;
    // Older z3 releases wrap get-model output as (model ...).
    if (!root.items.empty() && root.items[0].is_symbol("model")) { start = 1; }
    Model out;
    for (std::size_t i = start; i < root.items.size(); ++i) {
        const Sexpr & e = root.items[i];
        if (!e.is_list()) { throw ProtocolError("model entry is not a list", std::string(text)); }
        if (e.items.size() == 5 && e.items[0].is_symbol("define-fun") && is_name(e.items[1])) {
            if (!e.items[2].is_list() || !e.items[2].items.empty() || !e.items[3].is_symbol("Int")) {
                throw ProtocolError("non-integer model entry for " + e.items[1].atom, std::string(text));
            }
            out[e.items[1].atom] = numeral(e.items[4], text);
        } else if (e.items.size() == 2 && is_name(e.items[0])) {
            out[e.items[0].atom] = numeral(e.items[1], text);
        } else {
            throw ProtocolError("unrecognized model entry " + to_string(e), std::string(text));
        }
    }
    return out;
}

Verdict verify(const Term & t, const SolverConfig & config) {
    if (t.sort() != Sort::Bool) { throw SortMismatch("verify expects a Bool term"); }
    if (config.timeout_ms <= 0) { throw InvalidProblem("solver timeout must be positive"); }
    detail::ProcessResult run = detail::run_process(config.resolved_command(), validity_query(t, config), config.timeout_ms);

    std::vector<Sexpr> replies;
    try {
        SexprReader reader(run.out);
        while (!reader.at_end()) { replies.push_back(reader.read()); }
    } catch (const ParseError &) {
        if (run.timed_out) { return Verdict::unknown(UnknownReason::Timeout); }
        throw ProtocolError("unreadable solver output", run.out);
    }

    std::string error;
    std::size_t i = 0;
    for (; i < replies.size(); ++i) {
        const Sexpr & r = replies[i];
        if (r.is_list() && !r.items.empty() && r.items[0].is_symbol("error")) {
            // Anything rejected before check-sat makes the answer meaningless.
            if (error.empty()) { error = r.items.size() > 1 ? r.items[1].atom : "error"; }
            continue;
        }
        if (r.is_symbol("success")) { continue; }
        break;
    }
    if (i == replies.size()) {
        if (run.timed_out) { return Verdict::unknown(UnknownReason::Timeout); }
        if (!error.empty()) { return Verdict::unknown(UnknownReason::SolverError, error); }
        throw ProtocolError("no check-sat answer (exit status " + std::to_string(run.status) + ")", run.out);
    }
    const Sexpr & answer = replies[i];
    if (!error.empty()) { return Verdict::unknown(UnknownReason::SolverError, error); }
    if (answer.is_symbol("unsat")) { return Verdict::valid(); }
    if (answer.is_symbol("unknown")) {
        std::string reason;
        for (std::size_t j = i + 1; j < replies.size(); ++j) {
            const Sexpr & r = replies[j];
            if (r.is_list() && r.items.size() == 2 && r.items[0].type == Sexpr::Type::Keyword) { reason = r.items[1].atom; }
        }
        bool timeout = run.timed_out || reason == "timeout" || reason == "canceled";
        return Verdict::unknown(timeout ? UnknownReason::Timeout : UnknownReason::SolverUnknown, reason);
    }
    if (!answer.is_symbol("sat")) { throw ProtocolError("unexpected check-sat answer " + to_string(answer), run.out); }

    auto vars = int_vars(t);
    if (vars.empty()) { return Verdict::invalid({}); }
    if (i + 1 >= replies.size()) {
        if (run.timed_out) { return Verdict::unknown(UnknownReason::Timeout, "model not delivered"); }
        throw ProtocolError("sat answer without model values", run.out);
    }
    const Sexpr & values = replies[i + 1];
    if (values.is_list() && !values.items.empty() && values.items[0].is_symbol("error")) {
        return Verdict::unknown(UnknownReason::SolverError, values.items.size() > 1 ? values.items[1].atom : "error");
    }
    Model model = parse_model(to_string(values));
    for (const auto & v : vars) {
        if (!model.count(v)) { throw ProtocolError("model lacks a value for " + v, run.out); }
    }
    return Verdict::invalid(std::move(model));
}

} // namespace aev
