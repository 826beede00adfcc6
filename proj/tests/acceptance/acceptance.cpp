// Acceptance gate: one PASS/FAIL line per criterion; exit status is the number of failures.

#include "aev/error.hpp"
#include "aev/eval.hpp"
#include "aev/frontend.hpp"
#include "aev/oracles.hpp"
#include "aev/smtlib.hpp"
#include "aev/vcgen.hpp"
#include "fixtures.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace aev;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kGoldenSeconds = 5.0;      // the two listings and the existential loop
constexpr double kBenchmarkSeconds = 30.0;  // per re-authored benchmark
constexpr int kSweepProblems = 200;
constexpr int kDualityFormulas = 50;
const IntRange kCompatDomain{0, 8};
constexpr std::size_t kCompatFuel = 32;
const IntRange kBucketDomain{0, 20};
const IntRange kSweepDomain{-2, 2};
constexpr std::size_t kSweepFuel = 8;
const IntRange kDualityDomain{-2, 2};

fs::path source(const std::string & rel) { return fs::path(AEV_SOURCE_DIR) / rel; }

std::string read_file(const fs::path & p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string & name, const std::function<Outcome()> & check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception & e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) { ++failures; }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " -- " << o.detail << std::endl;
}

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << "s";
    return o.str();
}

// 1 ------------------------------------------------------------------------------------------

Outcome noninterference_listings() {
    std::string detail;
    auto t1 = std::chrono::steady_clock::now();
    VerificationResult r1 = run_verification(parse_input(read_file(source("tests/data/ni_secure.imp"))));
    double s1 = seconds_since(t1);
    if (!r1.verdict.is_valid()) { return {false, "secure: " + to_string(r1.verdict)}; }

    auto t2 = std::chrono::steady_clock::now();
    VerificationResult r2 = run_verification(parse_input(read_file(source("tests/data/ni_leaky.imp"))));
    double s2 = seconds_since(t2);
    if (!r2.verdict.is_invalid()) { return {false, "leaky: " + to_string(r2.verdict)}; }

    // Substitute the model; the closed residue must be false, i.e. its negation valid.
    Substitution m;
    for (const auto & name : free_var_names(r2.vc)) {
        auto it = r2.verdict.model.find(name);
        if (it == r2.verdict.model.end()) { return {false, "model lacks " + name}; }
        m.emplace(name, mk_int(it->second));
    }
    Term residue = subst(r2.vc, m);
    if (!free_var_names(residue).empty()) { return {false, "residue not closed"}; }
    Verdict refuted = verify(mk_not(residue));
    if (!refuted.is_valid()) { return {false, "model does not falsify the VC: " + to_string(refuted)}; }
    bool fast = s1 < kGoldenSeconds && s2 < kGoldenSeconds;
    std::string model = r2.model_text();
    for (auto & c : model) { c = c == '\n' ? ' ' : c; }
    return {fast, "secure valid in " + fmt_seconds(s1) + ", leaky invalid in " + fmt_seconds(s2) +
                      " with model { " + model + "} refuted by substitution"};
}

// 2 ------------------------------------------------------------------------------------------

Outcome refinement_vc() {
    VerificationProblem p = parse_input(read_file(source("tests/data/refinement_randb.imp")));
    VerificationResult r = run_verification(p);
    // The rule's own output: the final conjunct compares r1 with the bound return r0.
    Term rule_form = parse_term(
        "(=> true (and true (forall ((r1 Int)) (=> (and (<= 0 r1) (< r1 5))"
        "  (exists ((v Int)) (and (<= 0 v) (< v 10) (exists ((r0 Int)) (= r0 v))"
        "                         (forall ((r0 Int)) (=> (= r0 v) (= r1 r0)))))))))");
    // The formula as displayed, with r0 already replaced by v.
    Term displayed = parse_term(
        "(forall ((r1 Int)) (=> (and (<= 0 r1) (< r1 5))"
        "  (exists ((v Int)) (and (<= 0 v) (< v 10) (exists ((r0 Int)) (= r0 v))"
        "                         (forall ((r0 Int)) (=> (= r0 v) (= r1 v)))))))");
    if (!alpha_equivalent(r.vc, rule_form)) { return {false, "VC not alpha-equivalent: " + to_smtlib(r.vc)}; }
    Verdict same = verify(mk_and(mk_implies(r.vc, displayed), mk_implies(displayed, r.vc)));
    if (!same.is_valid()) { return {false, "VC not equivalent to the displayed formula: " + to_string(same)}; }
    if (!r.verdict.is_valid()) { return {false, "verdict " + to_string(r.verdict)}; }
    return {true, "alpha-equivalent to the rule-derived form, solver-equivalent to the displayed form, valid"};
}

// 3 ------------------------------------------------------------------------------------------

Outcome exists_while() {
    auto t = std::chrono::steady_clock::now();
    VerificationProblem p = parse_input(read_file(source("tests/data/exists_while.imp")));
    VerificationResult r = run_verification(p);
    double s = seconds_since(t);
    return {r.verdict.is_valid() && s < kGoldenSeconds, to_string(r.verdict) + " in " + fmt_seconds(s)};
}

// 4 ------------------------------------------------------------------------------------------

Outcome compatibility_matrix() {
    using namespace fixtures;
    std::vector<std::pair<std::string, FunDef>> impls{{"RandB1", randb1()}, {"RandB2", randb2()}, {"RandB3", randb3()}};
    std::set<std::string> forall_ok, exists_ok;
    for (const auto & [name, def] : impls) {
        if (check_forall_compatible(def, randb_forall(), kCompatDomain, kCompatFuel).compatible) { forall_ok.insert(name); }
        CompatResult e = check_exists_compatible(def, randb_exists(), kCompatDomain, kCompatFuel);
        if (e.compatible) { exists_ok.insert(name); }
        if (!e.compatible && e.truncated) { return {false, name + ": inconclusive exists check"}; }
    }
    auto show = [](const std::set<std::string> & s) {
        std::string out = "{";
        for (const auto & n : s) { out += (out.size() > 1 ? "," : "") + n; }
        return out + "}";
    };
    bool ok = forall_ok == std::set<std::string>{"RandB1", "RandB2"} && exists_ok == std::set<std::string>{"RandB2", "RandB3"};
    return {ok, "forall-compatible " + show(forall_ok) + ", exists-compatible " + show(exists_ok) + " over [0..8], fuel 32"};
}

// 5 ------------------------------------------------------------------------------------------

std::set<State> grid(int xlo, int xhi, int ylo, int yhi) {
    std::set<State> out;
    for (int m = xlo; m < xhi; ++m) {
        for (int n = ylo; n < yhi; ++n) { out.insert(State{{"x", m}, {"y", n}}); }
    }
    return out;
}

Outcome randbucket() {
    SpecContext specs;
    specs.add(fixtures::randbucket_exists());
    Stmt pair = s_seq(s_call("x", "RandBucket", {a_lit(10)}), s_call("y", "RandBucket", {a_lit(20)}));
    UnderResult r = exec_under(specs, {}, pair, kBucketDomain, 4);
    std::set<std::set<State>> uniform;
    for (const auto & d : r.derivations) {
        if (site_uniform(d.trace)) { uniform.insert(d.states); }
    }
    std::set<std::set<State>> expected{grid(0, 5, 0, 10), grid(0, 5, 10, 20), grid(5, 10, 0, 10), grid(5, 10, 10, 20)};
    if (r.capped || uniform != expected) {
        return {false, std::to_string(uniform.size()) + " site-uniform sets, expected the 4 products"};
    }

    Stmt single = s_call("y", "RandBucket", {a_lit(20)});
    std::set<std::set<State>> singles;
    for (const auto & d : exec_under(specs, {}, single, kBucketDomain, 4).derivations) { singles.insert(d.states); }
    std::set<State> five{{{"y", 5}}}, middle;
    for (int n = 5; n < 15; ++n) { middle.insert(State{{"y", n}}); }
    if (singles.count(five) || singles.count(middle)) { return {false, "a rejected single-call set was produced"}; }

    // while y != 10 { y := RandBucket(20) }: the upper bucket is not a terminating outcome.
    Stmt loop = s_while(b_not(b_eq(a_var("y"), a_lit(10))), s_call("y", "RandBucket", {a_lit(20)}));
    std::set<State> upper;
    for (int n = 10; n < 20; ++n) { upper.insert(State{{"y", n}}); }
    UnderResult lr = exec_under(specs, State{{"y", 0}}, loop, kBucketDomain, 3);
    for (const auto & d : lr.derivations) {
        if (d.states == upper) { return {false, "loop produced the upper bucket"}; }
    }
    return {true, "4 site-uniform product sets over [0..20] (" + std::to_string(r.derivations.size()) +
                      " derivations in total); {y=5}, {5<=y<15} and the looping upper bucket rejected"};
}

// 6 ------------------------------------------------------------------------------------------

class ProblemGen {
public:
    explicit ProblemGen(unsigned seed) : rng_(seed) {}

    VerificationProblem problem() {
        VerificationProblem p;
        p.specs.add(UniversalSpec{"flip", {}, mk_true(), parse_term("(or (= ret! 0) (= ret! 1))")});
        p.specs.add(ExistentialSpec{"flip", {}, {"n"}, parse_term("(or (= n 0) (= n 1))"), parse_term("(= ret! n)")});
        p.specs.add(fixtures::choose_forall());
        p.specs.add(fixtures::choose_exists());
        loop_used_ = false;
        p.programs["u"] = Program{"u", {"x", "y"}, block(3)};
        loop_used_ = false;
        p.programs["e"] = Program{"e", {"x", "y"}, block(3)};

        int nu = 1 + pick(2), ne = 1 + pick(2);
        if (nu + ne > 3) { (pick(2) ? nu : ne) = 1; }
        for (int i = 1; i <= nu; ++i) { p.universal_copies.push_back({"u", i}); }
        for (int i = 1; i <= ne; ++i) { p.existential_copies.push_back({"e", i}); }

        std::vector<std::string> all;
        for (const auto & c : p.universal_copies) { all.push_back(c.program + "!" + std::to_string(c.index) + "!"); }
        for (const auto & c : p.existential_copies) { all.push_back(c.program + "!" + std::to_string(c.index) + "!"); }
        std::vector<Term> pre;
        for (std::size_t i = 1; i < all.size(); ++i) {
            pre.push_back(mk_eq(mk_var(all[0] + "x"), mk_var(all[i] + "x")));
            if (pick(2)) { pre.push_back(mk_eq(mk_var(all[0] + "y"), mk_var(all[i] + "y"))); }
        }
        if (pick(3) == 0) { pre.push_back(mk_le(mk_int(0), mk_var(all[0] + "x"))); }
        p.pre = pre.empty() ? mk_true() : mk_and(pre);

        std::string u = all[0], e = all[static_cast<std::size_t>(nu)];
        auto atom = [&]() -> Term {
            std::string v = pick(2) ? "x" : "y", w = pick(2) ? "x" : "y";
            switch (pick(5)) {
                case 0: return mk_eq(mk_var(u + v), mk_var(e + w));
                case 1: return mk_le(mk_var(u + v), mk_var(e + w));
                case 2: return mk_eq(mk_var(e + v), mk_int(pick(3)));
                case 3: return mk_lt(mk_var(u + v), mk_int(pick(4) + 1));
                default: return mk_not(mk_eq(mk_var(u + v), mk_var(e + w)));
            }
        };
        Term post = atom();
        if (pick(2)) { post = pick(2) ? mk_and(post, atom()) : mk_or(post, atom()); }
        p.post = post;
        return p;
    }

private:
    int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned>(n)); }
    std::string var() { return pick(2) ? "x" : "y"; }

    AExp aexp() {
        switch (pick(6)) {
            case 0: return a_var(var());
            case 1: return a_add(a_var(var()), a_lit(1));
            case 2: return a_sub(a_var(var()), a_lit(1));
            case 3: return a_sub(a_lit(1), a_var(var()));
            default: return a_lit(pick(2));
        }
    }

    BExp bexp() {
        switch (pick(3)) {
            case 0: return b_lt(a_var("x"), a_var("y"));
            case 1: return b_eq(a_var(var()), a_lit(0));
            default: return b_lt(a_var(var()), a_lit(1));
        }
    }

    Stmt simple() {
        switch (pick(5)) {
            case 0: return s_call(var(), "flip", {});
            case 1: return s_call(var(), "Choose", {a_var(var()), pick(2) ? a_var(var()) : a_lit(0)});
            default: return s_assign(var(), aexp());
        }
    }

    Stmt stmt(int depth) {
        int k = pick(depth > 0 ? 8 : 5);
        if (k < 5) { return simple(); }
        if (k == 5) { return s_if(bexp(), stmt(depth - 1), stmt(depth - 1)); }
        if (k == 6 && !loop_used_) {
            loop_used_ = true;
            int bound = 1 + pick(2);
            std::string b = std::to_string(bound);
            LoopAnnotation ann{parse_term("(and (<= 0 i) (<= i " + b + "))"), parse_term("(- " + b + " i)")};
            Stmt body = s_seq(s_assign("i", a_add(a_var("i"), a_lit(1))), simple());
            return s_seq(s_assign("i", a_lit(0)), s_while(b_lt(a_var("i"), a_lit(bound)), body, ann));
        }
        return s_seq(simple(), simple());
    }

    Stmt block(int n) {
        std::vector<Stmt> out;
        int len = 1 + pick(n);
        for (int i = 0; i < len; ++i) { out.push_back(stmt(2)); }
        return s_block(out);
    }

    std::mt19937 rng_;
    bool loop_used_ = false;
};

Outcome oracle_sweep() {
    int valid = 0, invalid = 0, unknown = 0, with_loops = 0;
    OracleOptions options;
    options.domain = kSweepDomain;
    options.fuel = kSweepFuel;
    for (int i = 0; i < kSweepProblems; ++i) {
        VerificationProblem p = ProblemGen(1000u + static_cast<unsigned>(i)).problem();
        bool loops = to_source(p.programs["u"].body).find("while") != std::string::npos ||
                     to_source(p.programs["e"].body).find("while") != std::string::npos;
        with_loops += loops;
        VerificationResult r = run_verification(p);
        if (r.verdict.is_unknown()) {
            ++unknown;
            continue;
        }
        if (r.verdict.is_invalid()) {
            ++invalid;
            continue;
        }
        ++valid;
        OracleReport rep = check_rhle_semantics(p, nullptr, options);
        if (!rep.ok()) {
            return {false, "problem " + std::to_string(i) + " verified valid but the oracle objects:\n" + print_input(p) +
                               rep.to_text()};
        }
    }
    bool ok = valid > 0;
    return {ok, std::to_string(kSweepProblems) + " problems (" + std::to_string(with_loops) + " with loops): " +
                    std::to_string(valid) + " valid, all confirmed with 0 counterexamples; " + std::to_string(invalid) +
                    " invalid, " + std::to_string(unknown) + " unknown"};
}

// 7 ------------------------------------------------------------------------------------------

Outcome benchmarks() {
    BenchmarkReport r = run_benchmarks(source("benchmarks"));
    std::map<std::string, bool> required{{"SimpleRefinement", true}, {"SimpleNonRefinement", false}, {"Denning1", true},
                                         {"Denning2", false},        {"Parity", true},              {"ParityNoDR", false},
                                         {"ThreeUsed", true},        {"CompletelyUnused", false}};
    double slowest = 0;
    std::size_t found = 0;
    for (const auto & row : r.rows) {
        slowest = std::max(slowest, row.seconds);
        if (!row.agree) { return {false, row.name + " verified " + row.verified + " " + row.detail}; }
        if (row.seconds >= kBenchmarkSeconds) { return {false, row.name + " took " + fmt_seconds(row.seconds)}; }
        auto it = required.find(row.name);
        if (it == required.end()) { continue; }
        if (row.expected != std::optional<bool>(it->second)) { return {false, row.name + " has the wrong expectation"}; }
        ++found;
    }
    if (found != required.size()) { return {false, "missing required benchmark files"}; }
    return {true, std::to_string(r.rows.size()) + " inputs agree with their expected verdicts, slowest " + fmt_seconds(slowest)};
}

// 8 ------------------------------------------------------------------------------------------

std::vector<Stmt> statements_up_to_depth(int depth) {
    std::vector<Stmt> base{s_assign("x", a_add(a_var("y"), a_lit(1))), s_assign("y", a_sub(a_var("x"), a_lit(1))),
                           s_havoc("x"), s_havoc("y")};
    if (depth == 1) { return base; }
    std::vector<Stmt> smaller = statements_up_to_depth(depth - 1);
    std::vector<Stmt> out = base;
    BExp cond = b_lt(a_var("x"), a_var("y"));
    for (const auto & a : smaller) {
        for (const auto & b : smaller) {
            out.push_back(s_seq(a, b));
            out.push_back(s_if(cond, a, b));
        }
    }
    return out;
}

Term random_post(std::mt19937 & rng) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    auto operand = [&]() -> Term {
        switch (pick(4)) {
            case 0: return mk_var("x");
            case 1: return mk_var("y");
            case 2: return mk_int(pick(5) - 2);
            default: return mk_add(mk_var(pick(2) ? "x" : "y"), mk_int(pick(3) - 1));
        }
    };
    auto atom = [&]() -> Term {
        Term a = operand(), b = operand();
        switch (pick(3)) {
            case 0: return mk_eq(a, b);
            case 1: return mk_lt(a, b);
            default: return mk_le(a, b);
        }
    };
    Term t = atom();
    switch (pick(4)) {
        case 0: return mk_and(t, atom());
        case 1: return mk_or(t, atom());
        case 2: return mk_not(t);
        default: return t;
    }
}

Outcome duality() {
    std::vector<Stmt> stmts = statements_up_to_depth(3);
    std::mt19937 rng(2024);
    std::vector<Term> posts;
    for (int i = 0; i < kDualityFormulas; ++i) { posts.push_back(random_post(rng)); }
    std::vector<State> seeds = all_states({"x", "y"}, kDualityDomain);
    ImplContext none;
    std::size_t checks = 0;
    for (const auto & s : stmts) {
        std::vector<std::set<State>> finals;
        for (const auto & seed : seeds) { finals.push_back(exec_concrete(none, seed, s, kDualityDomain, 0).finals); }
        for (const auto & post : posts) {
            Term wp_all = statement_vc(s, Side::Universal, post, {});
            Term wp_some = statement_vc(s, Side::Existential, post, {});
            for (std::size_t i = 0; i < seeds.size(); ++i) {
                bool all = true, some = false;
                for (const auto & f : finals[i]) {
                    bool h = holds(post, f, kDualityDomain);
                    all = all && h;
                    some = some || h;
                }
                ++checks;
                if (holds(wp_all, seeds[i], kDualityDomain) != all || holds(wp_some, seeds[i], kDualityDomain) != some) {
                    return {false, "disagreement on\n" + to_source(s) + "for " + to_smtlib(post) + " from " + to_string(seeds[i])};
                }
            }
        }
    }
    return {true, std::to_string(stmts.size()) + " statements x " + std::to_string(posts.size()) + " postconditions x " +
                      std::to_string(seeds.size()) + " seeds (" + std::to_string(checks) + " checks), 0 disagreements"};
}

} // namespace

int main() {
    report(1, "Non-interference listings: secure one valid, leaky one invalid with a falsifying model", noninterference_listings);
    report(2, "RandB refinement VC golden and verdict", refinement_vc);
    report(3, "Existential loop with variant verifies", exists_while);
    report(4, "RandB compatibility matrix", compatibility_matrix);
    report(5, "RandBucket underapproximate enumeration", randbucket);
    report(6, "Oracle soundness sweep over random problems", oracle_sweep);
    report(7, "Re-authored benchmark subset", benchmarks);
    report(8, "WP/oracle duality on loop-free call-free statements", duality);
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
    return failures;
}
