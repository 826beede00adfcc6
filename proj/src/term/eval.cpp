#include "aev/eval.hpp"

#include "aev/error.hpp"

namespace aev {

namespace {

class Evaluator {
public:
    Evaluator(const Valuation & env, const IntRange & domain) : env_(env), domain_(domain) {}

    Value eval(const Term & t) {
        switch (t.kind()) {
            case Kind::BoolConst: return t.bool_value();
            case Kind::IntConst: return t.int_value();
            case Kind::Var: return lookup(t.name());
            case Kind::Add: {
                Integer acc = num(t.args()[0]);
                for (std::size_t i = 1; i < t.args().size(); ++i) { acc += num(t.args()[i]); }
                return acc;
            }
            case Kind::Sub: {
                Integer acc = num(t.args()[0]);
                if (t.args().size() == 1) { return Integer(-acc); }
                for (std::size_t i = 1; i < t.args().size(); ++i) { acc -= num(t.args()[i]); }
                return acc;
            }
            case Kind::Mul: {
                Integer acc = num(t.args()[0]);
                for (std::size_t i = 1; i < t.args().size(); ++i) { acc *= num(t.args()[i]); }
                return acc;
            }
            case Kind::Div: return euclid_div(num(t.args()[0]), num(t.args()[1]));
            case Kind::Mod: return euclid_mod(num(t.args()[0]), num(t.args()[1]));
            case Kind::Neg: return Integer(-num(t.args()[0]));
            case Kind::Eq: return eval(t.args()[0]) == eval(t.args()[1]);
            case Kind::Lt: return num(t.args()[0]) < num(t.args()[1]);
            case Kind::Le: return num(t.args()[0]) <= num(t.args()[1]);
            case Kind::Gt: return num(t.args()[0]) > num(t.args()[1]);
            case Kind::Ge: return num(t.args()[0]) >= num(t.args()[1]);
            case Kind::Not: return !truth(t.args()[0]);
            case Kind::And:
                for (const auto & a : t.args()) {
                    if (!truth(a)) { return false; }
                }
                return true;
            case Kind::Or:
                for (const auto & a : t.args()) {
                    if (truth(a)) { return true; }
                }
                return false;
            case Kind::Implies: return !truth(t.args()[0]) || truth(t.args()[1]);
            case Kind::Forall:
            case Kind::Exists: {
                bool universal = t.kind() == Kind::Forall;
                std::size_t mark = locals_.size();
                bool result = quantify(t, 0, universal);
                locals_.resize(mark);
                return result;
            }
        }
        throw Error("evaluate: unhandled term kind");
    }

    Integer num(const Term & t) { return std::get<Integer>(eval(t)); }
    bool truth(const Term & t) { return std::get<bool>(eval(t)); }

private:
    Value lookup(const std::string & name) const {
        for (auto it = locals_.rbegin(); it != locals_.rend(); ++it) {
            if (it->first == name) { return it->second; }
        }
        auto it = env_.find(name);
        if (it == env_.end()) { throw UnboundVariable(name); }
        return it->second;
    }

    // Enumerates binder `index` and beyond; short-circuits on the first decisive instance.
    bool quantify(const Term & t, std::size_t index, bool universal) {
        if (index == t.binders().size()) { return truth(t.body()); }
        const Binder & b = t.binders()[index];
        auto attempt = [&](Value v) {
            locals_.emplace_back(b.name, std::move(v));
            bool r = quantify(t, index + 1, universal);
            locals_.pop_back();
            return r;
        };
        if (b.sort == Sort::Bool) {
            for (bool v : {false, true}) {
                if (attempt(v) != universal) { return !universal; }
            }
            return universal;
        }
        for (Integer v = domain_.lo; v <= domain_.hi; ++v) {
            if (attempt(v) != universal) { return !universal; }
        }
        return universal;
    }

    const Valuation & env_;
    const IntRange & domain_;
    std::vector<std::pair<std::string, Value>> locals_;
};

} // namespace

Value evaluate(const Term & t, const Valuation & env, const IntRange & domain) {
    return Evaluator(env, domain).eval(t);
}

bool holds(const Term & t, const Valuation & env, const IntRange & domain) {
    if (t.sort() != Sort::Bool) { throw SortMismatch("holds: term is not Bool-sorted"); }
    return Evaluator(env, domain).truth(t);
}

Integer evaluate_int(const Term & t, const Valuation & env, const IntRange & domain) {
    if (t.sort() != Sort::Int) { throw SortMismatch("evaluate_int: term is not Int-sorted"); }
    return Evaluator(env, domain).num(t);
}

} // namespace aev
