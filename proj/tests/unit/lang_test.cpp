#include "aev/error.hpp"
#include "aev/lang.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace aev;

namespace {

std::set<Integer> values_of(const ExecResult & r, const std::string & var) {
    std::set<Integer> out;
    for (const auto & st : r.finals) { out.insert(st.at(var)); }
    return out;
}

// Random loop-free, call-free programs over {x, y}; havoc optional.
AExp random_aexp(std::mt19937 & rng, int depth) {
    if (depth == 0 || rng() % 3 == 0) {
        if (rng() % 2) { return a_var(rng() % 2 ? "x" : "y"); }
        return a_lit(static_cast<int>(rng() % 5) - 2);
    }
    switch (rng() % 3) {
        case 0: return a_add(random_aexp(rng, depth - 1), random_aexp(rng, depth - 1));
        case 1: return a_sub(random_aexp(rng, depth - 1), random_aexp(rng, depth - 1));
        default: return a_mul(random_aexp(rng, depth - 1), random_aexp(rng, depth - 1));
    }
}

BExp random_bexp(std::mt19937 & rng, int depth) {
    if (depth == 0 || rng() % 2 == 0) {
        return rng() % 2 ? b_lt(random_aexp(rng, 1), random_aexp(rng, 1)) : b_eq(random_aexp(rng, 1), random_aexp(rng, 1));
    }
    return rng() % 2 ? b_not(random_bexp(rng, depth - 1)) : b_and(random_bexp(rng, depth - 1), random_bexp(rng, depth - 1));
}

Stmt random_stmt(std::mt19937 & rng, int depth, bool allow_havoc) {
    std::string v = rng() % 2 ? "x" : "y";
    if (depth == 0) {
        if (allow_havoc && rng() % 4 == 0) { return s_havoc(v); }
        return rng() % 5 == 0 ? s_skip() : s_assign(v, random_aexp(rng, 2));
    }
    switch (rng() % 3) {
        case 0: return s_seq(random_stmt(rng, depth - 1, allow_havoc), random_stmt(rng, depth - 1, allow_havoc));
        case 1:
            return s_if(random_bexp(rng, 1), random_stmt(rng, depth - 1, allow_havoc),
                        random_stmt(rng, depth - 1, allow_havoc));
        default: return random_stmt(rng, 0, allow_havoc);
    }
}

const IntRange kDom{-2, 2};

} // namespace

TEST(Eval, ArithmeticExamples) {
    EXPECT_EQ(eval_aexp({{"x", 3}}, a_add(a_mul(a_var("x"), a_lit(2)), a_lit(1))), 7);
    EXPECT_EQ(eval_aexp({}, a_sub(a_lit(5), a_lit(8))), -3);
    EXPECT_THROW(eval_aexp({{"x", 3}}, a_var("y")), UnboundVariable);
}

TEST(Eval, BooleanExamples) {
    State s{{"x", 3}};
    EXPECT_TRUE(eval_bexp(s, b_and(b_lt(a_var("x"), a_lit(4)), b_not(b_eq(a_var("x"), a_lit(4))))));
    EXPECT_FALSE(eval_bexp({}, b_false()));
    EXPECT_FALSE(eval_bexp(s, b_lt(a_var("x"), a_lit(3))));
}

TEST(ExecConcrete, SkipIsIdentity) {
    State s{{"x", 1}};
    auto r = exec_concrete({}, s, s_skip(), kDom, 4);
    EXPECT_EQ(r.finals, std::set<State>{s});
    EXPECT_FALSE(r.diverged);
}

TEST(ExecConcrete, RandB1ReturnsZero) {
    ImplContext ctx{fixtures::randb1()};
    auto r = exec_concrete(ctx, {}, s_call("y", "RandB", {a_lit(5)}), IntRange{0, 5}, 10);
    EXPECT_EQ(r.finals, (std::set<State>{{{"y", 0}}}));
}

TEST(ExecConcrete, RandB2StaysBelowBound) {
    ImplContext ctx{fixtures::randb2()};
    auto r = exec_concrete(ctx, {}, s_call("y", "RandB", {a_lit(3)}), IntRange{0, 5}, 10);
    EXPECT_EQ(values_of(r, "y"), (std::set<Integer>{0, 1, 2}));
    EXPECT_FALSE(r.diverged);
}

TEST(ExecConcrete, StrictGuardVariantCanReturnItsBound) {
    ImplContext ctx{fixtures::randb2_strict_guard()};
    auto r = exec_concrete(ctx, {}, s_call("y", "RandB", {a_lit(3)}), IntRange{0, 5}, 10);
    EXPECT_EQ(values_of(r, "y"), (std::set<Integer>{0, 1, 2, 3}));
}

TEST(ExecConcrete, CallFrameSeesOnlyParameters) {
    FunDef peek{"peek", {"a"}, s_skip(), a_var("secret")};
    ImplContext ctx{peek};
    EXPECT_THROW(exec_concrete(ctx, {{"secret", 1}}, s_call("y", "peek", {a_lit(0)}), kDom, 4), UnboundVariable);
}

TEST(ExecConcrete, CallErrors) {
    ImplContext ctx{fixtures::randb1()};
    EXPECT_THROW(exec_concrete(ctx, {}, s_call("y", "Nope", {}), kDom, 4), UnknownFunction);
    EXPECT_THROW(exec_concrete(ctx, {}, s_call("y", "RandB", {}), kDom, 4), ArityMismatch);
}

TEST(ExecConcrete, FuelBoundsLoopsAndRecursion) {
    Stmt loop = s_while(b_true(), s_skip());
    auto r = exec_concrete({}, {}, loop, kDom, 5);
    EXPECT_TRUE(r.finals.empty());
    EXPECT_TRUE(r.diverged);

    FunDef rec{"f", {"n"}, s_call("n", "f", {a_var("n")}), a_var("n")};
    ImplContext ctx{rec};
    auto rr = exec_concrete(ctx, {}, s_call("y", "f", {a_lit(0)}), kDom, 6);
    EXPECT_TRUE(rr.finals.empty());
    EXPECT_TRUE(rr.diverged);

    Stmt count = s_block({s_assign("i", a_lit(0)),
                          s_while(b_lt(a_var("i"), a_lit(3)), s_assign("i", a_add(a_var("i"), a_lit(1))))});
    EXPECT_TRUE(exec_concrete({}, {}, count, kDom, 2).diverged);
    auto ok = exec_concrete({}, {}, count, kDom, 3);
    EXPECT_FALSE(ok.diverged);
    EXPECT_EQ(ok.finals, (std::set<State>{{{"i", 3}}}));
}

TEST(ExecConcrete, DeterministicWithoutHavoc) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Stmt s = random_stmt(rng, 3, false);
        for (int x = -2; x <= 2; ++x) {
            auto r = exec_concrete({}, {{"x", x}, {"y", 1}}, s, kDom, 4);
            EXPECT_LE(r.finals.size() + (r.diverged ? 1 : 0), 1u);
        }
    }
}

TEST(ExecConcrete, MonotoneInFuel) {
    ImplContext ctx{fixtures::randb2()};
    Stmt s = s_block({s_havoc("n"), s_assign("k", a_lit(0)),
                      s_while(b_lt(a_var("k"), a_var("n")),
                              s_block({s_assign("k", a_add(a_var("k"), a_lit(1))), s_call("y", "RandB", {a_lit(3)})}))});
    std::set<State> previous;
    for (std::size_t fuel = 0; fuel <= 10; ++fuel) {
        auto r = exec_concrete(ctx, {{"y", 0}}, s, IntRange{0, 3}, fuel);
        for (const auto & st : previous) { EXPECT_TRUE(r.finals.count(st)) << "fuel " << fuel; }
        previous = r.finals;
    }
}

TEST(ExecConcrete, CallChangesOnlyTarget) {
    ImplContext ctx{fixtures::randb2()};
    State seed{{"a", 7}, {"b", -1}, {"y", 100}};
    auto r = exec_concrete(ctx, seed, s_call("y", "RandB", {a_var("a")}), IntRange{0, 9}, 20);
    ASSERT_FALSE(r.finals.empty());
    for (auto st : r.finals) {
        st["y"] = 100;
        EXPECT_EQ(st, seed);
    }
}

TEST(Normalize, FlattensAndRoundTrips) {
    Stmt s = s_seq(s_seq(s_assign("x", a_lit(1)), s_skip()), s_seq(s_havoc("y"), s_assign("x", a_var("y"))));
    auto flat = normalize(s);
    ASSERT_EQ(flat.size(), 4u);
    for (const auto & n : flat) { EXPECT_NE(n->op, SOp::Seq); }
    EXPECT_EQ(normalize(denormalize(flat)).size(), 4u);

    std::mt19937 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Stmt t = random_stmt(rng, 3, true);
        auto once = normalize(t);
        auto twice = normalize(denormalize(once));
        ASSERT_EQ(once.size(), twice.size());
        for (std::size_t i = 0; i < once.size(); ++i) { EXPECT_TRUE(structurally_equal(once[i], twice[i])); }
        for (int x = -2; x <= 2; ++x) {
            for (int y = -2; y <= 2; ++y) {
                State seed{{"x", x}, {"y", y}};
                auto a = exec_concrete({}, seed, t, kDom, 4);
                auto b = exec_concrete({}, seed, denormalize(once), kDom, 4);
                EXPECT_EQ(a.finals, b.finals);
            }
        }
    }
}

TEST(IndexStmt, RenamesVariablesAndAnnotations) {
    Stmt s = s_while(b_lt(a_var("k"), a_lit(4)), s_call("k", "Choose", {a_add(a_var("k"), a_lit(1)), a_lit(0)}),
                     LoopAnnotation{parse_term("(and (<= 0 k) (<= k 4))"), parse_term("(- 4 k)")});
    ExecId id{"p", 2, Side::Existential};
    Stmt t = index_stmt(s, id);
    EXPECT_EQ(program_vars(t), std::set<std::string>{"p!2!k"});
    EXPECT_EQ(t->first->fname, "Choose");
    EXPECT_EQ(free_var_names(t->annotation->invariant), std::set<std::string>{"p!2!k"});
    EXPECT_EQ(free_var_names(*t->annotation->variant), std::set<std::string>{"p!2!k"});
    EXPECT_THROW(index_stmt(t, id), AlreadyIndexed);
}

TEST(AssignedVars, IncludesHavocAndCallTargets) {
    Stmt s = s_block({s_assign("a", a_var("b")), s_if(b_true(), s_havoc("c"), s_call("d", "f", {a_var("e")}))});
    EXPECT_EQ(assigned_vars(s), (std::set<std::string>{"a", "c", "d"}));
    EXPECT_EQ(program_vars(s), (std::set<std::string>{"a", "b", "c", "d", "e"}));
    EXPECT_EQ(called_functions(s), std::set<std::string>{"f"});
}
