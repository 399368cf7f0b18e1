#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "hurdle/bitstring.hpp"
#include "hurdle/fitness.hpp"
#include "hurdle/local_search.hpp"
#include "hurdle/records.hpp"
#include "hurdle/rng.hpp"

namespace hurdle {

enum class Algorithm { EA, MA_FILS, MA_BILS, LS_FILS, LS_BILS };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::EA: return "ea";
        case Algorithm::MA_FILS: return "ma-fils";
        case Algorithm::MA_BILS: return "ma-bils";
        case Algorithm::LS_FILS: return "ls-fils";
        case Algorithm::LS_BILS: return "ls-bils";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    if (s == "ea") return Algorithm::EA;
    if (s == "ma-fils") return Algorithm::MA_FILS;
    if (s == "ma-bils") return Algorithm::MA_BILS;
    if (s == "ls-fils") return Algorithm::LS_FILS;
    if (s == "ls-bils") return Algorithm::LS_BILS;
    return std::nullopt;
}

/// (1+1) EA: elitist single-individual hill climber with standard bit
/// mutation; offspring replaces the parent iff not worse. The optional fixed
/// start point replaces the uniform random initialization (used by tests that
/// pin the initial level).
template <class Problem>
RunRecord one_plus_one_ea(const Problem& problem, double pm, std::uint64_t budget,
                          std::uint64_t seed, const std::optional<Bitstring>& start = {}) {
    if (pm < 0.0 || pm > 1.0) throw std::invalid_argument("ea: need 0 <= pm <= 1");
    if (budget < 1) throw std::invalid_argument("ea: budget must be >= 1");
    RandomStream rng(seed);
    EvalCounter counter(budget);
    RunRecord rec;
    rec.algorithm = "ea";
    rec.problem = problem.name();
    rec.n = problem.dimension();
    rec.w = problem.width();
    rec.pm = pm;
    rec.delta = 0;
    rec.seed = seed;
    std::optional<ScaledFitness> cur;
    try {
        Bitstring x = start ? *start : random_bitstring(problem.dimension(), rng);
        ScaledFitness fx = evaluate(problem, x, counter);
        cur = fx;
        const ScaledFitness fopt = problem.optimum();
        while (fx < fopt) {
            Bitstring y = standard_bit_mutation(x, pm, rng);
            const ScaledFitness fy = evaluate(problem, y, counter);
            ++rec.generations;
            if (fy >= fx) {
                x = std::move(y);
                fx = fy;
                cur = fx;
            }
        }
        rec.success = true;
    } catch (const BudgetExhausted&) {
        rec.success = false;
    }
    rec.evaluations = counter.count();
    if (cur) rec.best_scaled_fitness = cur->value;
    return rec;
}

/// (1+1) MA: mutation followed by local-search refinement; the refined
/// offspring replaces the parent iff not worse. The mutant itself is never
/// evaluated — the local search evaluates its input at entry, so each
/// generation costs exactly 1 + that call's neighbor evaluations.
template <class Problem>
RunRecord one_plus_one_ma(const Problem& problem, const LSVariant& variant, double pm,
                          std::uint64_t budget, std::uint64_t seed,
                          const std::optional<Bitstring>& start = {}) {
    if (pm < 0.0 || pm > 1.0) throw std::invalid_argument("ma: need 0 <= pm <= 1");
    if (budget < 1) throw std::invalid_argument("ma: budget must be >= 1");
    if (variant.delta < 1) throw std::invalid_argument("ma: delta must be >= 1");
    RandomStream rng(seed);
    EvalCounter counter(budget);
    RunRecord rec;
    rec.algorithm = variant.kind == LSKind::FILS ? "ma-fils" : "ma-bils";
    rec.problem = problem.name();
    rec.n = problem.dimension();
    rec.w = problem.width();
    rec.pm = pm;
    rec.delta = variant.delta;
    rec.seed = seed;
    std::optional<ScaledFitness> cur;
    try {
        Bitstring x = start ? *start : random_bitstring(problem.dimension(), rng);
        ScaledFitness fx = evaluate(problem, x, counter);
        cur = fx;
        const ScaledFitness fopt = problem.optimum();
        while (fx < fopt) {
            Bitstring y = standard_bit_mutation(x, pm, rng);
            LSOutcome out = run_local_search(std::move(y), variant, problem, rng, counter);
            ++rec.generations;
            ++rec.ls_calls;
            rec.ls_evaluations += out.ls_evaluations;
            if (out.result_fitness > fx) ++rec.improving_ls_calls;
            if (out.result_fitness >= fx) {
                x = std::move(out.result);
                fx = out.result_fitness;
                cur = fx;
            }
        }
        rec.success = true;
    } catch (const BudgetExhausted&) {
        rec.success = false;
    }
    rec.evaluations = counter.count();
    if (cur) rec.best_scaled_fitness = cur->value;
    return rec;
}

} // namespace hurdle
