#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hurdle/bitstring.hpp"
#include "hurdle/fitness.hpp"
#include "hurdle/records.hpp"
#include "hurdle/rng.hpp"

namespace hurdle {

enum class LSKind { FILS, BILS };

struct LSVariant {
    LSKind kind = LSKind::FILS;
    std::size_t delta = 1; // FILS: outer passes; BILS: single-step moves
};

/// Result of one local-search call. ls_evaluations counts neighbor
/// evaluations only; the one evaluation of the input point at call entry is
/// charged to the shared counter but belongs to the caller's accounting.
struct LSOutcome {
    Bitstring result;
    ScaledFitness result_fitness;
    std::uint64_t passes_or_moves = 0;
    std::uint64_t ls_evaluations = 0;
    bool improved = false; // result fitness strictly exceeds the input's
};

/// One first-improvement scan over `perm`: evaluates each single-bit flip
/// against the current point and keeps every strictly improving flip
/// immediately, continuing the same scan. Returns true iff any flip was kept.
/// Exactly n counter ticks. x/fx are updated in place.
template <class Problem>
bool fils_pass(Bitstring& x, ScaledFitness& fx, const std::vector<std::size_t>& perm,
               const Problem& problem, EvalCounter& counter) {
    bool accepted_any = false;
    for (std::size_t pos : perm) {
        x.flip(pos);
        const ScaledFitness fy = evaluate(problem, x, counter);
        if (fy > fx) {
            fx = fy;
            accepted_any = true;
        } else {
            x.flip(pos);
        }
    }
    return accepted_any;
}

/// One best-improvement step: evaluates all n single-bit neighbors, collects
/// the indices of those that strictly improve on fx and tie the running best,
/// then flips a uniformly random member. Returns false (no move) when no
/// neighbor strictly improves. Exactly n counter ticks.
template <class Problem>
bool bils_step(Bitstring& x, ScaledFitness& fx, const Problem& problem,
               RandomStream& rng, EvalCounter& counter) {
    ScaledFitness best = fx;
    std::vector<std::size_t> cur_best_inds;
    for (std::size_t pos = 1; pos <= x.size(); ++pos) {
        x.flip(pos);
        const ScaledFitness fy = evaluate(problem, x, counter);
        x.flip(pos);
        if (fy > best) {
            best = fy;
            cur_best_inds.assign(1, pos);
        } else if (!cur_best_inds.empty() && fy == best) {
            cur_best_inds.push_back(pos);
        }
    }
    if (cur_best_inds.empty()) return false;
    const std::size_t pick = cur_best_inds[rng.uniform_index(cur_best_inds.size())];
    x.flip(pick);
    fx = best;
    return true;
}

namespace detail {

/// FILS body starting from an already-evaluated point.
template <class Problem>
LSOutcome fils_from(Bitstring x, ScaledFitness fx, std::size_t delta,
                    const Problem& problem, RandomStream& rng, EvalCounter& counter) {
    const ScaledFitness f_in = fx;
    std::uint64_t passes = 0, evals = 0;
    while (passes < delta) {
        ++passes;
        const auto perm = random_permutation(x.size(), rng);
        const bool accepted = fils_pass(x, fx, perm, problem, counter);
        evals += x.size();
        if (!accepted) break;
    }
    return LSOutcome{std::move(x), fx, passes, evals, fx > f_in};
}

/// BILS body starting from an already-evaluated point.
template <class Problem>
LSOutcome bils_from(Bitstring x, ScaledFitness fx, std::size_t delta,
                    const Problem& problem, RandomStream& rng, EvalCounter& counter) {
    const ScaledFitness f_in = fx;
    std::uint64_t moves = 0, evals = 0;
    for (std::size_t i = 0; i < delta; ++i) {
        const bool moved = bils_step(x, fx, problem, rng, counter);
        evals += x.size();
        if (!moved) break;
        ++moves;
    }
    return LSOutcome{std::move(x), fx, moves, evals, fx > f_in};
}

} // namespace detail

/// First-improvement local search (at most delta passes; stops after the
/// first pass that accepts nothing). Evaluates the input point at entry.
template <class Problem>
LSOutcome fils(Bitstring x, std::size_t delta, const Problem& problem,
               RandomStream& rng, EvalCounter& counter) {
    const ScaledFitness fx = evaluate(problem, x, counter);
    return detail::fils_from(std::move(x), fx, delta, problem, rng, counter);
}

/// Best-improvement local search (at most delta moves; stops at the first
/// iteration with no strict improvement). Evaluates the input point at entry.
template <class Problem>
LSOutcome bils(Bitstring x, std::size_t delta, const Problem& problem,
               RandomStream& rng, EvalCounter& counter) {
    const ScaledFitness fx = evaluate(problem, x, counter);
    return detail::bils_from(std::move(x), fx, delta, problem, rng, counter);
}

template <class Problem>
LSOutcome run_local_search(Bitstring x, const LSVariant& variant, const Problem& problem,
                           RandomStream& rng, EvalCounter& counter) {
    return variant.kind == LSKind::FILS
               ? fils(std::move(x), variant.delta, problem, rng, counter)
               : bils(std::move(x), variant.delta, problem, rng, counter);
}

/// Pure restart scheme: fresh uniform point, local-search descent, repeat
/// until the optimum is evaluated or the budget runs out.
template <class Problem>
RunRecord restart_ls(const Problem& problem, const LSVariant& variant,
                     std::uint64_t budget, std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("restart_ls: budget must be >= 1");
    RandomStream rng(seed);
    EvalCounter counter(budget);
    RunRecord rec;
    rec.algorithm = variant.kind == LSKind::FILS ? "ls-fils" : "ls-bils";
    rec.problem = problem.name();
    rec.n = problem.dimension();
    rec.w = problem.width();
    rec.pm = 0.0;
    rec.delta = variant.delta;
    rec.seed = seed;
    std::optional<ScaledFitness> best;
    try {
        for (;;) {
            Bitstring x = random_bitstring(problem.dimension(), rng);
            const ScaledFitness f0 = evaluate(problem, x, counter);
            if (!best || f0 > *best) best = f0;
            LSOutcome out = variant.kind == LSKind::FILS
                                ? detail::fils_from(std::move(x), f0, variant.delta, problem, rng, counter)
                                : detail::bils_from(std::move(x), f0, variant.delta, problem, rng, counter);
            ++rec.restarts;
            ++rec.ls_calls;
            rec.ls_evaluations += out.ls_evaluations;
            if (out.improved) ++rec.improving_ls_calls;
            if (out.result_fitness > *best) best = out.result_fitness;
            if (out.result_fitness == problem.optimum()) {
                rec.success = true;
                break;
            }
        }
    } catch (const BudgetExhausted&) {
        rec.success = false;
    }
    rec.evaluations = counter.count();
    if (best) rec.best_scaled_fitness = best->value;
    return rec;
}

} // namespace hurdle
