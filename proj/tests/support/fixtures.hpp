#pragma once

// Specifications and implementations shared by unit and acceptance tests.

#include "aev/lang.hpp"
#include "aev/logic.hpp"
#include "aev/smtlib.hpp"

namespace aev::fixtures {

inline UniversalSpec randb_forall() {
    return {"RandB", {"x"}, parse_term("(< 0 x)"), parse_term("(and (<= 0 ret!) (< ret! x))")};
}

inline ExistentialSpec randb_exists() {
    return {"RandB", {"x"}, {"c"}, parse_term("(and (< 0 x) (<= 0 c) (< c x))"), parse_term("(= ret! c)")};
}

inline UniversalSpec choose_forall() {
    return {"Choose", {"x", "y"}, mk_true(), parse_term("(or (= ret! x) (= ret! y))")};
}

inline ExistentialSpec choose_exists() {
    return {"Choose", {"x", "y"}, {"c"}, parse_term("(or (= c x) (= c y))"), parse_term("(= ret! c)")};
}

inline UniversalSpec times_two_forall() { return {"TimesTwo", {"x"}, mk_true(), parse_term("(= ret! (* 2 x))")}; }

inline ExistentialSpec times_two_exists() {
    return {"TimesTwo", {"x"}, {}, mk_true(), parse_term("(= ret! (* 2 x))")};
}

inline ExistentialSpec randbucket_exists() {
    return {"RandBucket",
            {"x"},
            {"c"},
            parse_term("(and (or (= c 0) (= c 1)) (< 2 x))"),
            parse_term("(and (=> (= c 0) (and (<= 0 ret!) (< ret! (div x 2))))"
                       "     (=> (= c 1) (and (<= (div x 2) ret!) (< ret! x))))")};
}

/// skip; return 0
inline FunDef randb1() { return {"RandB", {"x"}, s_skip(), a_lit(0)}; }

/// r := havoc; while (x <= r) do r := r - x end; return r
///
/// The loop guard is `x <= r` so that reducing stops strictly below x; with a strict guard
/// `x < r` the function returns x itself when the havoc picks r = x (see randb2_strict_guard).
inline FunDef randb2() {
    Stmt body = s_block({s_havoc("r"),
                         s_while(b_not(b_lt(a_var("r"), a_var("x"))), s_assign("r", a_sub(a_var("r"), a_var("x"))))});
    return {"RandB", {"x"}, body, a_var("r")};
}

inline FunDef randb2_strict_guard() {
    Stmt body =
        s_block({s_havoc("r"), s_while(b_lt(a_var("x"), a_var("r")), s_assign("r", a_sub(a_var("r"), a_var("x"))))});
    return {"RandB", {"x"}, body, a_var("r")};
}

/// r := havoc; return r
inline FunDef randb3() { return {"RandB", {"x"}, s_havoc("r"), a_var("r")}; }

/// flipCoin(): r := havoc; if (r < 0 or 1 < r) r := 0; return r
inline FunDef flip_coin() {
    Stmt body = s_block({s_havoc("r"), s_if(b_and(b_not(b_lt(a_var("r"), a_lit(0))), b_not(b_lt(a_lit(1), a_var("r")))),
                                            s_skip(), s_assign("r", a_lit(0)))});
    return {"flipCoin", {}, body, a_var("r")};
}

} // namespace aev::fixtures
