#pragma once

#include "aev/integer.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace aev {

enum class Sort { Int, Bool };

const char * to_string(Sort sort);

enum class Kind {
    BoolConst,
    IntConst,
    Var,
    // Int x Int... -> Int
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Neg,
    // comparisons -> Bool
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    // connectives
    Not,
    And,
    Or,
    Implies,
    // binders
    Forall,
    Exists,
};

struct Binder {
    std::string name;
    Sort sort = Sort::Int;

    friend bool operator==(const Binder &, const Binder &) = default;
};

/// Immutable assertion-logic formula or Int expression over the SMT-LIB2 integer theory.
///
/// Terms share structure; copying a Term is a pointer copy. Every constructor checks sorts and
/// throws SortMismatch on ill-sorted input, so a constructed Term is always well-sorted.
class Term {
public:
    /// The constant `true`.
    Term();

    Kind kind() const { return node_->kind; }
    Sort sort() const { return node_->sort; }

    bool bool_value() const { return node_->boolean; }
    const Integer & int_value() const { return node_->integer; }
    /// Variable name for Var nodes.
    const std::string & name() const { return node_->name; }
    const std::vector<Term> & args() const { return node_->args; }
    const std::vector<Binder> & binders() const { return node_->binders; }
    /// Body of a quantifier.
    const Term & body() const { return node_->args.front(); }

    bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
    bool is_true() const { return kind() == Kind::BoolConst && bool_value(); }
    bool is_false() const { return kind() == Kind::BoolConst && !bool_value(); }

    static Term boolean(bool value);
    static Term integer(Integer value);
    static Term var(std::string name, Sort sort = Sort::Int);
    /// Application of an operator kind to arguments. Arity rules: Neg/Not unary; Div, Mod,
    /// comparisons and Implies binary; Add/Sub/Mul/And/Or take at least one argument.
    static Term apply(Kind kind, std::vector<Term> args);
    static Term quantify(Kind kind, std::vector<Binder> binders, Term body);

    /// Structural equality (names of bound variables matter; see alpha_equivalent).
    friend bool operator==(const Term & a, const Term & b);
    /// Total structural order, usable as a map key.
    friend bool operator<(const Term & a, const Term & b);

    const void * identity() const { return node_.get(); }

private:
    struct Node {
        Kind kind = Kind::BoolConst;
        Sort sort = Sort::Bool;
        bool boolean = true;
        Integer integer;
        std::string name;
        std::vector<Term> args;
        std::vector<Binder> binders;
    };

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Construction helpers. They perform no simplification except that mk_neg of a literal folds to a
// negative literal, matching how SMT-LIB2 writes negative numerals.
Term mk_true();
Term mk_false();
Term mk_int(Integer value);
Term mk_var(std::string name, Sort sort = Sort::Int);
Term mk_add(Term a, Term b);
Term mk_sub(Term a, Term b);
Term mk_mul(Term a, Term b);
Term mk_div(Term a, Term b);
Term mk_mod(Term a, Term b);
Term mk_neg(Term a);
Term mk_eq(Term a, Term b);
Term mk_lt(Term a, Term b);
Term mk_le(Term a, Term b);
Term mk_gt(Term a, Term b);
Term mk_ge(Term a, Term b);
Term mk_not(Term a);
Term mk_and(Term a, Term b);
Term mk_and(std::vector<Term> conjuncts);
Term mk_or(Term a, Term b);
Term mk_or(std::vector<Term> disjuncts);
Term mk_implies(Term a, Term b);
Term mk_forall(std::vector<Binder> binders, Term body);
Term mk_exists(std::vector<Binder> binders, Term body);
Term mk_forall(const std::string & name, Term body);
Term mk_exists(const std::string & name, Term body);

/// Free variables with their sorts.
std::map<std::string, Sort> free_vars(const Term & t);
std::set<std::string> free_var_names(const Term & t);
/// Every name occurring in t, free or bound.
std::set<std::string> all_names(const Term & t);
void collect_names(const Term & t, std::set<std::string> & out);

/// Returns hint if unused, else the first of hint!0, hint!1, ... not in used.
std::string fresh(const std::string & hint, const std::set<std::string> & used);

using Substitution = std::map<std::string, Term>;

/// Simultaneous capture-avoiding substitution of free variables. Bound variables that would
/// capture a free variable of a replacement term are renamed with fresh(). Throws SortMismatch
/// when a replacement's sort differs from the replaced variable's sort.
Term subst(const Term & t, const Substitution & mapping);
Term subst(const Term & t, const std::string & name, const Term & replacement);

/// Alpha-equivalence modulo re-association and flattening of nested conjunctions.
bool alpha_equivalent(const Term & a, const Term & b);

/// Number of nodes; used by tests and generators.
std::size_t term_size(const Term & t);

} // namespace aev
