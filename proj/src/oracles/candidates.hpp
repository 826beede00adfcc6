#pragma once

// Value enumeration shared by the spec-level semantics.

#include "aev/eval.hpp"
#include "aev/logic.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace aev {

/// Domain values together with every value that an equation (= var e) or (= e var) occurring in
/// t assigns to var under env, where e is evaluable from env alone.
std::set<Integer> candidate_values(const Term & t, const std::string & var, const Valuation & env,
                                   const IntRange & domain);

/// Candidate returns r with env[ret! := r] satisfying post.
std::set<Integer> satisfying_returns(const Term & post, const Valuation & env, const IntRange & domain);

/// Enumerates choice vectors for spec given the bound parameters in env. Candidates for each
/// choice variable come from the precondition. The callback receives the vector and env extended
/// with the choices.
void for_each_choice(const ExistentialSpec & spec, const Valuation & env, const IntRange & domain,
                     const std::function<void(const std::vector<Integer> &, const Valuation &)> & visit);

std::string describe_choices(const ExistentialSpec & spec, const std::vector<Integer> & ks);

} // namespace aev
