#pragma once

#include "aev/eval.hpp"
#include "aev/indexing.hpp"
#include "aev/integer.hpp"
#include "aev/term.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aev {

// ---------------------------------------------------------------------------------------------
// Abstract syntax. Nodes are immutable and shared; the aliases below are non-null handles.

struct AExpNode;
struct BExpNode;
struct StmtNode;
using AExp = std::shared_ptr<const AExpNode>;
using BExp = std::shared_ptr<const BExpNode>;
using Stmt = std::shared_ptr<const StmtNode>;

enum class AOp { Lit, Var, Add, Sub, Mul };

struct AExpNode {
    AOp op = AOp::Lit;
    Integer value;
    std::string name;
    AExp lhs;
    AExp rhs;
};

enum class BOp { True, False, Eq, Lt, Not, And };

struct BExpNode {
    BOp op = BOp::True;
    AExp a;
    AExp b;
    BExp lhs;
    BExp rhs;
};

/// Annotation carried by a while loop: an invariant and, for existential copies, a variant.
struct LoopAnnotation {
    Term invariant;
    std::optional<Term> variant;
};

enum class SOp { Skip, Seq, If, While, Assign, Havoc, Call };

struct StmtNode {
    SOp op = SOp::Skip;
    BExp cond;
    Stmt first;   // Seq first, If then-branch, While body
    Stmt second;  // Seq second, If else-branch
    std::optional<LoopAnnotation> annotation;
    std::string target;
    AExp value;
    std::string fname;
    std::vector<AExp> args;
};

AExp a_lit(Integer value);
AExp a_var(std::string name);
AExp a_add(AExp l, AExp r);
AExp a_sub(AExp l, AExp r);
AExp a_mul(AExp l, AExp r);

BExp b_true();
BExp b_false();
BExp b_eq(AExp l, AExp r);
BExp b_lt(AExp l, AExp r);
BExp b_not(BExp b);
BExp b_and(BExp l, BExp r);

Stmt s_skip();
Stmt s_seq(Stmt first, Stmt second);
/// Right-nested sequence of the given statements; Skip when empty.
Stmt s_block(const std::vector<Stmt> & stmts);
Stmt s_if(BExp cond, Stmt then_branch, Stmt else_branch);
Stmt s_while(BExp cond, Stmt body, std::optional<LoopAnnotation> annotation = std::nullopt);
Stmt s_assign(std::string target, AExp value);
Stmt s_havoc(std::string target);
Stmt s_call(std::string target, std::string fname, std::vector<AExp> args);

bool structurally_equal(const AExp & a, const AExp & b);
bool structurally_equal(const BExp & a, const BExp & b);
/// Structural equality including loop annotations.
bool structurally_equal(const Stmt & a, const Stmt & b);

/// A concrete function implementation: body followed by `return ret`.
struct FunDef {
    std::string name;
    std::vector<std::string> params;
    Stmt body;
    AExp ret;
};

/// Function implementations available to concrete execution.
class ImplContext {
public:
    ImplContext() = default;
    ImplContext(std::initializer_list<FunDef> defs);

    /// Throws InvalidProblem on a duplicate name or duplicate parameters.
    void add(FunDef def);
    /// Throws UnknownFunction.
    const FunDef & at(const std::string & name) const;
    bool contains(const std::string & name) const { return defs_.count(name) != 0; }
    const std::map<std::string, FunDef> & defs() const { return defs_; }

private:
    std::map<std::string, FunDef> defs_;
};

/// Program state: finite map from variable names to integers.
using State = Valuation;

std::string to_string(const State & state);

// ---------------------------------------------------------------------------------------------
// Evaluation and execution.

/// Throws UnboundVariable.
Integer eval_aexp(const State & state, const AExp & e);
bool eval_bexp(const State & state, const BExp & b);

struct ExecResult {
    std::set<State> finals;
    /// Some derivation ran out of fuel.
    bool diverged = false;
};

/// Every final state reachable from `state`, with each havoc ranging over `havoc_domain`.
/// Each loop iteration and each call entry consumes one unit of fuel along a derivation; a
/// derivation that would need more sets `diverged` instead of producing a state.
/// Throws UnknownFunction, ArityMismatch, UnboundVariable.
ExecResult exec_concrete(const ImplContext & ctx, const State & state, const Stmt & s, const IntRange & havoc_domain,
                         std::size_t fuel);

// ---------------------------------------------------------------------------------------------
// Syntactic utilities.

/// Flattens nested Seq into a nonempty list of non-Seq statements.
std::vector<Stmt> normalize(const Stmt & s);
/// Inverse of normalize (right-nested Seq); an empty list yields Skip.
Stmt denormalize(const std::vector<Stmt> & stmts);

Term to_term(const AExp & e);
Term to_term(const BExp & b);

/// Variables written anywhere in s (assignment, havoc and call targets).
std::set<std::string> assigned_vars(const Stmt & s);
/// Every program variable mentioned in s, read or written; annotation terms excluded.
std::set<std::string> program_vars(const Stmt & s);
std::set<std::string> program_vars(const AExp & e);
/// Names of functions called anywhere in s.
std::set<std::string> called_functions(const Stmt & s);

/// Variables whose value on entry to `stmts` can influence their behaviour or the final value of a
/// variable in `live_out` (backward liveness; loop bodies iterated to a fixpoint).
std::set<std::string> live_in(const std::vector<Stmt> & stmts, std::set<std::string> live_out);

/// Renames every program variable of s, including inside loop annotations, for copy `id`.
/// Annotation names that are already indexed (another copy's variables) are kept unchanged.
Stmt index_stmt(const Stmt & s, const ExecId & id);

// Surface-syntax rendering (the format read by the frontend parser).
std::string to_source(const AExp & e);
std::string to_source(const BExp & b);
std::string to_source(const Stmt & s, int indent = 0);

} // namespace aev
