#include "aev/error.hpp"
#include "aev/eval.hpp"
#include "aev/oracles.hpp"
#include "aev/smtlib.hpp"
#include "aev/vcgen.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace aev;
using namespace aev::fixtures;

namespace {

// RandB contracts as used for the one-call-per-side example: no precondition on the universal
// side, and choices bounded by the argument on the existential side.
SpecContext randb_specs() {
    SpecContext s;
    s.add(UniversalSpec{"RandB", {"n"}, mk_true(), parse_term("(and (<= 0 ret!) (< ret! n))")});
    s.add(ExistentialSpec{"RandB", {"n"}, {"c"}, parse_term("(and (<= 0 c) (< c n))"), parse_term("(= ret! c)")});
    return s;
}

ProgramCopy copy(const std::string & program, Side side, std::vector<Stmt> stmts) {
    return ProgramCopy{ExecId{program, 1, side}, std::move(stmts)};
}

TEST(Vcgen, SingleCallPairMatchesHandDerivedFormula) {
    auto u = copy("a", Side::Universal, {s_call("a!1!x1", "RandB", {a_lit(5)})});
    auto e = copy("b", Side::Existential, {s_call("b!1!x2", "RandB", {a_lit(10)})});
    Term vc = rhle_vc(mk_true(), {u}, {e}, parse_term("(= |a!1!x1| |b!1!x2|)"), randb_specs());

    // The displayed worked formula writes `r1 = v` in the last conjunct, i.e. with the return already
    // replaced by the choice it equals. The rule substitutes the bound return itself, so the
    // syntactic golden has `r1 = r0`; the two are compared for logical equivalence end to end.
    Term expected = parse_term(
        "(=> true (and true (forall ((r1 Int)) (=> (and (<= 0 r1) (< r1 5))"
        "  (exists ((v Int)) (and (and (<= 0 v) (< v 10))"
        "                         (exists ((r0 Int)) (= r0 v))"
        "                         (forall ((r0 Int)) (=> (= r0 v) (= r1 r0)))))))))");
    EXPECT_TRUE(alpha_equivalent(vc, expected)) << to_smtlib(vc);
}

TEST(Vcgen, SkipIsIdentity) {
    Term post = parse_term("(< x (+ y 1))");
    EXPECT_EQ(statement_vc(s_skip(), Side::Universal, post, {}), post);
    EXPECT_EQ(statement_vc(s_skip(), Side::Existential, post, {}), post);
}

TEST(Vcgen, AssignmentSubstitutes) {
    Term vc = statement_vc(s_assign("x", a_add(a_var("y"), a_lit(1))), Side::Universal, parse_term("(< x 3)"), {});
    EXPECT_EQ(vc, parse_term("(< (+ y 1) 3)"));
}

TEST(Vcgen, HavocBinderAvoidsCapture) {
    Term post = parse_term("(< x v)");
    Term vc = statement_vc(s_havoc("x"), Side::Existential, post, {});
    ASSERT_EQ(vc.kind(), Kind::Exists);
    EXPECT_NE(vc.binders().front().name, "v");
    EXPECT_EQ(free_var_names(vc), std::set<std::string>{"v"});
}

TEST(Vcgen, ChooseStepDrainsExistentialsFirst) {
    std::vector<ProgramCopy> us{copy("u", Side::Universal, {s_havoc("a"), s_havoc("b")})};
    std::vector<ProgramCopy> es{copy("e", Side::Existential, {}), copy("f", Side::Existential, {s_havoc("c")})};
    Step s1 = choose_step(us, es);
    EXPECT_EQ(s1.tag, Side::Existential);
    EXPECT_EQ(s1.index, 1u);
    EXPECT_EQ(s1.stmt->target, "c");
    Step s2 = choose_step(us, es);
    EXPECT_EQ(s2.tag, Side::Universal);
    EXPECT_EQ(s2.stmt->target, "b");
    Step s3 = choose_step(us, es);
    EXPECT_EQ(s3.stmt->target, "a");
    EXPECT_THROW(choose_step(us, es), AllEmpty);
}

TEST(Vcgen, LoopErrors) {
    SpecContext none;
    Stmt bare = s_while(b_lt(a_var("i"), a_lit(3)), s_assign("i", a_add(a_var("i"), a_lit(1))));
    EXPECT_THROW(statement_vc(bare, Side::Universal, mk_true(), none), MissingInvariant);
    Stmt inv_only = s_while(b_lt(a_var("i"), a_lit(3)), s_assign("i", a_add(a_var("i"), a_lit(1))),
                            LoopAnnotation{parse_term("(<= i 3)"), std::nullopt});
    EXPECT_NO_THROW(statement_vc(inv_only, Side::Universal, mk_true(), none));
    EXPECT_THROW(statement_vc(inv_only, Side::Existential, mk_true(), none), MissingVariant);
    EXPECT_THROW(statement_vc(s_call("y", "Nope", {}), Side::Universal, mk_true(), none), MissingSpec);
    SpecContext ctx;
    ctx.add(randb_forall());
    EXPECT_THROW(statement_vc(s_call("y", "RandB", {}), Side::Universal, mk_true(), ctx), ArityMismatch);
}

// The counting loop i := 0..3 with a decreasing variant yields a VC that holds for every start.
TEST(Vcgen, ExistentialLoopVcHoldsForTerminatingLoop) {
    Stmt loop = s_while(b_lt(a_var("i"), a_lit(3)), s_assign("i", a_add(a_var("i"), a_lit(1))),
                        LoopAnnotation{parse_term("(<= i 3)"), parse_term("(- 3 i)")});
    Term vc = statement_vc(loop, Side::Existential, parse_term("(= i 3)"), {});
    IntRange dom{-4, 4};
    for (int i = -4; i <= 3; ++i) { EXPECT_TRUE(holds(vc, {{"i", i}}, dom)) << i; }
    EXPECT_FALSE(holds(vc, {{"i", 4}}, dom));

    // Without progress the variant condition fails.
    Stmt stuck = s_while(b_lt(a_var("i"), a_lit(3)), s_skip(), LoopAnnotation{parse_term("(<= i 3)"), parse_term("(- 3 i)")});
    Term bad = statement_vc(stuck, Side::Existential, parse_term("(= i 3)"), {});
    EXPECT_FALSE(holds(bad, {{"i", 0}}, dom));
    EXPECT_TRUE(holds(statement_vc(stuck, Side::Universal, parse_term("(= i 3)"), {}), {{"i", 0}}, dom));
}

bool has_forall_under_exists(const Term & t, bool under_exists) {
    if (t.kind() == Kind::Forall && under_exists) { return true; }
    bool next = under_exists || t.kind() == Kind::Exists;
    for (const auto & a : t.args()) {
        if (has_forall_under_exists(a, next)) { return true; }
    }
    return false;
}

TEST(Vcgen, UniversalQuantifiersScopeOverExistentialOnes) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ProgramCopy> us{copy("u", Side::Universal, {}), copy("w", Side::Universal, {})};
        std::vector<ProgramCopy> es{copy("e", Side::Existential, {}), copy("f", Side::Existential, {})};
        for (auto * group : {&us, &es}) {
            for (auto & c : *group) {
                int n = static_cast<int>(rng() % 3);
                for (int i = 0; i < n; ++i) { c.stmts.push_back(s_havoc(c.id.prefix() + "x" + std::to_string(i))); }
            }
        }
        Term vc = rhle_vc(mk_true(), us, es, mk_true(), {});
        EXPECT_FALSE(has_forall_under_exists(vc, false)) << to_smtlib(vc);
    }
}

// Random loop-free statements over x, y built from assignment, havoc, conditionals and calls.
class StmtGen {
public:
    explicit StmtGen(unsigned seed, bool calls) : rng_(seed), calls_(calls) {}

    Stmt stmt(int depth) {
        int pick = static_cast<int>(rng_() % (depth > 0 ? 6 : 4));
        switch (pick) {
            case 0: return s_assign(var(), aexp());
            case 1: return s_havoc(var());
            case 2:
                if (calls_) {
                    return rng_() % 2 ? s_call(var(), "RandB", {atom()}) : s_call(var(), "Choose", {atom(), atom()});
                }
                return s_assign(var(), atom());
            case 3: return s_skip();
            case 4: return s_seq(stmt(depth - 1), stmt(depth - 1));
            default: return s_if(bexp(), stmt(depth - 1), stmt(depth - 1));
        }
    }

    Term post() {
        static const char * posts[] = {"(< x y)", "(= x y)", "(<= y 1)", "(= x 0)", "(or (< x 0) (= y 2))", "(< (+ x y) 3)"};
        return parse_term(posts[rng_() % 6]);
    }

private:
    std::string var() { return rng_() % 2 ? "x" : "y"; }
    AExp atom() { return rng_() % 3 ? a_var(var()) : a_lit(static_cast<int>(rng_() % 5) - 1); }
    AExp aexp() {
        switch (rng_() % 3) {
            case 0: return atom();
            case 1: return a_sub(a_var(var()), a_lit(1));
            default: return a_add(a_var(var()), atom());
        }
    }
    BExp bexp() { return rng_() % 2 ? b_lt(atom(), atom()) : b_not(b_eq(atom(), atom())); }

    std::mt19937 rng_;
    bool calls_;
};

SpecContext call_specs() {
    SpecContext s;
    s.add(randb_forall());
    s.add(randb_exists());
    s.add(choose_forall());
    s.add(choose_exists());
    return s;
}

TEST(Vcgen, UniversalWpIsExactForCallFreeCode) {
    IntRange dom{-3, 3};
    for (unsigned seed = 0; seed < 150; ++seed) {
        StmtGen gen(seed, false);
        Stmt s = gen.stmt(3);
        Term post = gen.post();
        Term wp = statement_vc(s, Side::Universal, post, {});
        for (const auto & st : all_states({"x", "y"}, dom)) {
            OverResult r = exec_over({}, st, s, dom, 4);
            bool all = true;
            for (const auto & fin : r.finals) { all = all && holds(post, fin, dom); }
            ASSERT_EQ(holds(wp, st, dom), all) << to_source(s) << "\nfrom " << to_string(st);
        }
    }
}

TEST(Vcgen, UniversalWpIsSoundForOverapproximateSemantics) {
    IntRange dom{-3, 3};
    SpecContext specs = call_specs();
    for (unsigned seed = 0; seed < 150; ++seed) {
        StmtGen gen(seed, true);
        Stmt s = gen.stmt(3);
        Term post = gen.post();
        Term wp = statement_vc(s, Side::Universal, post, specs);
        for (const auto & st : all_states({"x", "y"}, dom)) {
            if (!holds(wp, st, dom)) { continue; }
            for (const auto & fin : exec_over(specs, st, s, dom, 4).finals) {
                ASSERT_TRUE(holds(post, fin, dom)) << to_source(s) << "\nfrom " << to_string(st) << " to " << to_string(fin);
            }
        }
    }
}

TEST(Vcgen, ExistentialWpIsSoundForUnderapproximateSemantics) {
    IntRange dom{-3, 3};
    SpecContext specs = call_specs();
    for (unsigned seed = 0; seed < 150; ++seed) {
        StmtGen gen(seed, true);
        Stmt s = gen.stmt(3);
        Term post = gen.post();
        Term wp = statement_vc(s, Side::Existential, post, specs);
        for (const auto & st : all_states({"x", "y"}, dom)) {
            if (!holds(wp, st, dom)) { continue; }
            UnderResult r = exec_under(specs, st, s, dom, 4);
            bool found = false;
            for (const auto & d : r.derivations) {
                bool all = true;
                for (const auto & fin : d.states) { all = all && holds(post, fin, dom); }
                if (all) {
                    found = true;
                    break;
                }
            }
            ASSERT_TRUE(found) << to_source(s) << "\nfrom " << to_string(st);
        }
    }
}

} // namespace
