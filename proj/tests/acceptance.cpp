// Acceptance suite: pins the measurable claims of the runtime analysis as
// hard pass/fail checks. Each criterion prints exactly one line; the binary
// exits nonzero if any fails. Everything is seeded, so reruns are identical.

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hurdle/hurdle.hpp"

using namespace hurdle;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("[%s] C%d %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class Fn>
void criterion(int idx, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(idx, false, std::string("unexpected exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

Bitstring mask_to_bits(std::size_t n, std::uint32_t mask) {
    Bitstring x(n);
    for (std::size_t i = 1; i <= n; ++i) x.set(i, (mask >> (i - 1)) & 1u);
    return x;
}

FitResult single_group_fit(Algorithm algo, const std::vector<std::size_t>& ns, std::size_t w,
                           std::size_t reps, std::uint64_t base_seed, double budget_multiplier) {
    SweepConfig cfg;
    cfg.algorithms = {algo};
    cfg.ns = ns;
    cfg.ws = {w};
    cfg.reps = reps;
    cfg.base_seed = base_seed;
    cfg.budget_multiplier = budget_multiplier;
    const std::vector<RunRecord> records = run_sweep(cfg);
    for (const RunRecord& r : records)
        if (!r.success) throw std::runtime_error("budget-truncated run in slope sweep (n=" +
                                                 std::to_string(r.n) + ")");
    std::vector<std::string> warnings;
    const std::vector<FitResult> fits = loglog_fit(records, FitOptions{}, &warnings);
    if (fits.size() != 1) throw std::runtime_error("expected exactly one fit group");
    return fits[0];
}

std::map<std::size_t, double> mean_evals_by_w(Algorithm algo, std::size_t n,
                                              const std::vector<std::size_t>& ws, std::size_t reps,
                                              std::uint64_t base_seed, double budget_multiplier) {
    SweepConfig cfg;
    cfg.algorithms = {algo};
    cfg.ns = {n};
    cfg.ws = ws;
    cfg.reps = reps;
    cfg.base_seed = base_seed;
    cfg.budget_multiplier = budget_multiplier;
    std::map<std::size_t, std::pair<double, std::size_t>> acc;
    for (const RunRecord& r : run_sweep(cfg)) {
        if (!r.success) throw std::runtime_error("budget-truncated run in w-benefit sweep");
        acc[r.w].first += static_cast<double>(r.evaluations);
        acc[r.w].second += 1;
    }
    std::map<std::size_t, double> means;
    for (const auto& [w, sum_count] : acc)
        means[w] = sum_count.first / static_cast<double>(sum_count.second);
    return means;
}

// ---- C1: landscape structure, exhaustive over bitstrings ------------------

void c1() {
    for (std::size_t n = 2; n <= 12; ++n) {
        for (std::size_t w = 2; w <= n; ++w) {
            const HurdleProblem problem(n, w);
            std::vector<std::int64_t> F(n + 1);
            for (std::size_t z = 0; z <= n; ++z) F[z] = problem.level_fitness(z).value;

            // the level predicate must agree with the single-flip definition
            for (std::size_t z = 0; z <= n; ++z) {
                const bool has_improving = (z >= 1 && F[z - 1] > F[z]) || (z < n && F[z + 1] > F[z]);
                if (!has_improving != problem.is_local_optimum(z)) {
                    report(1, false, "local-optimum predicate disagrees at n=" + std::to_string(n) +
                                         " w=" + std::to_string(w) + " z=" + std::to_string(z));
                    return;
                }
            }

            // unique optimum 1^n over all 2^n bitstrings
            const std::uint32_t total = 1u << n;
            std::int64_t best = std::numeric_limits<std::int64_t>::min();
            std::uint32_t best_mask = 0, best_count = 0;
            for (std::uint32_t mask = 0; mask < total; ++mask) {
                const std::int64_t f = F[n - static_cast<std::size_t>(std::popcount(mask))];
                if (f > best) {
                    best = f;
                    best_mask = mask;
                    best_count = 1;
                } else if (f == best) {
                    ++best_count;
                }
            }
            if (best_count != 1 || best_mask != total - 1 || best != 0) {
                report(1, false, "optimum not unique at 1^n for n=" + std::to_string(n) +
                                     " w=" + std::to_string(w));
                return;
            }

            // every local optimum with z = kw > 0: nearest strictly fitter
            // point sits at Hamming distance exactly w, and all fitter points
            // at distance w have z-w zeros
            for (std::uint32_t x = 0; x < total; ++x) {
                const std::size_t z = n - static_cast<std::size_t>(std::popcount(x));
                if (z == 0 || z % w != 0) continue;
                std::size_t dmin = n + 1;
                bool level_ok = true;
                for (std::uint32_t y = 0; y < total; ++y) {
                    const std::size_t zy = n - static_cast<std::size_t>(std::popcount(y));
                    if (F[zy] <= F[z]) continue;
                    const std::size_t d = static_cast<std::size_t>(std::popcount(x ^ y));
                    dmin = std::min(dmin, d);
                    if (d == w && zy != z - w) level_ok = false;
                }
                if (dmin != w || !level_ok) {
                    report(1, false, "escape-distance structure broken at n=" + std::to_string(n) +
                                         " w=" + std::to_string(w) + " z=" + std::to_string(z) +
                                         " (dmin=" + std::to_string(dmin) + ")");
                    return;
                }
            }

            // consecutive local optima differ by exactly 1 in fitness (w scaled)
            for (std::size_t k = 0; (k + 1) * w <= n; ++k) {
                if (F[k * w] - F[(k + 1) * w] != static_cast<std::int64_t>(w)) {
                    report(1, false, "local-optima fitness gap wrong at n=" + std::to_string(n) +
                                         " w=" + std::to_string(w) + " k=" + std::to_string(k));
                    return;
                }
            }
        }
    }
    report(1, true,
           "landscape structure exhaustive for n<=12, all w: unique optimum 1^n, "
           "fitter points at exactly distance w (level z-w), consecutive local-optima gap 1");
}

// ---- C2: oracle golden value ----------------------------------------------

void c2() {
    const HurdleProblem problem(2, 2);
    const AcceptedChain chain = ea_accepted_chain(problem, mutation_level_kernel(2, 0.5));
    const double e = expected_hitting_time(chain, binomial_level_init(2));
    const bool ok = std::fabs(e - 3.0) < 1e-10;
    report(2, ok, "oracle n=2 w=2 p=1/2: expected generations " + fmt(e) + " (want 3 +- 1e-10)");
}

// ---- C3: oracle vs Monte Carlo --------------------------------------------

void c3() {
    bool ok = true;
    std::string detail = "EA generations, 10^4 runs:";
    const std::pair<std::size_t, std::size_t> cases[] = {{8, 2}, {12, 3}};
    std::uint64_t seed = 41010;
    for (const auto& [n, w] : cases) {
        const HurdleProblem problem(n, w);
        const double p = 1.0 / static_cast<double>(n);
        const AcceptedChain chain = ea_accepted_chain(problem, mutation_level_kernel(n, p));
        const double exact = expected_hitting_time(chain, binomial_level_init(n));
        RunParams params;
        params.algo = Algorithm::EA;
        params.pm = p;
        params.budget = 1ull << 50;
        const MonteCarloResult mc = monte_carlo(problem, params, 10000, seed++);
        const double se = mc.generations.sd / 100.0;
        const bool within = std::fabs(mc.generations.mean - exact) <= 3.0 * se;
        ok = ok && within;
        detail += " (" + std::to_string(n) + "," + std::to_string(w) + ") mean=" +
                  fmt(mc.generations.mean) + " exact=" + fmt(exact) + " |dev|=" +
                  fmt(std::fabs(mc.generations.mean - exact) / (se > 0 ? se : 1)) + "se;";
    }
    report(3, ok, detail + " want within 3se");
}

// ---- C4: EA exponents ------------------------------------------------------

void c4() {
    const FitResult w2 = single_group_fit(Algorithm::EA, {16, 24, 32, 48, 64}, 2, 200, 41002, 100);
    const FitResult w3 = single_group_fit(Algorithm::EA, {8, 12, 16, 20, 24}, 3, 200, 41003, 100);
    const FitResult w4 = single_group_fit(Algorithm::EA, {8, 10, 12, 14, 16}, 4, 100, 41004, 100);
    const bool ok = w2.slope >= 1.6 && w2.slope <= 2.4 && w3.slope >= 2.5 && w3.slope <= 3.5 &&
                    w4.slope >= 3.4 && w4.slope <= 4.6;
    report(4, ok,
           "EA log-log slopes: w=2 " + fmt(w2.slope) + " (want [1.6,2.4]), w=3 " + fmt(w3.slope) +
               " (want [2.5,3.5]), w=4 " + fmt(w4.slope) + " (want [3.4,4.6])");
}

// ---- C5: MA-FILS exponent and w-benefit ------------------------------------

void c5() {
    const FitResult fit =
        single_group_fit(Algorithm::MA_FILS, {32, 48, 64, 96, 128}, 2, 200, 41005, 1000);
    const std::map<std::size_t, double> means =
        mean_evals_by_w(Algorithm::MA_FILS, 96, {2, 4, 8}, 200, 41006, 1000);
    const double m2 = means.at(2), m4 = means.at(4), m8 = means.at(8);
    const bool slope_ok = fit.slope >= 2.6 && fit.slope <= 3.4;
    const bool mono_ok = m2 > m4 && m4 > m8;
    const bool ratio_ok = m2 / m8 >= 4.0;
    report(5, slope_ok && mono_ok && ratio_ok,
           "MA-FILS w=2 slope " + fmt(fit.slope) + " (want [2.6,3.4]); n=96 means w=2:" + fmt(m2) +
               " > w=4:" + fmt(m4) + " > w=8:" + fmt(m8) + " (strict), ratio w2/w8 " + fmt(m2 / m8) +
               " (want >= 4)");
}

// ---- C6: MA-BILS exponent, monotone w-benefit, w=2 reported ----------------

void c6() {
    const FitResult fit =
        single_group_fit(Algorithm::MA_BILS, {24, 32, 48, 64, 96}, 3, 200, 41007, 1000);
    const std::map<std::size_t, double> means =
        mean_evals_by_w(Algorithm::MA_BILS, 96, {3, 4, 6, 8}, 200, 41008, 1000);
    const std::map<std::size_t, double> w2cell =
        mean_evals_by_w(Algorithm::MA_BILS, 96, {2}, 200, 41009, 1000);
    const double m3 = means.at(3), m4 = means.at(4), m6 = means.at(6), m8 = means.at(8);
    const bool slope_ok = fit.slope >= 2.5 && fit.slope <= 3.5;
    const bool mono_ok = m3 > m4 && m4 > m6 && m6 > m8;
    report(6, slope_ok && mono_ok,
           "MA-BILS w=3 slope " + fmt(fit.slope) + " (want [2.5,3.5]); n=96 means w=3:" + fmt(m3) +
               " > w=4:" + fmt(m4) + " > w=6:" + fmt(m6) + " > w=8:" + fmt(m8) +
               "; w=2 cell mean " + fmt(w2cell.at(2)) + " reported, not asserted");
}

// ---- C7: local-search accounting, exhaustive -------------------------------

void c7() {
    // call-level accounting for both searches, every start point, n <= 10
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::size_t w = 2; w <= n; ++w) {
            const HurdleProblem problem(n, w);
            EvalCounter counter(std::numeric_limits<std::uint64_t>::max());
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                const Bitstring x0 = mask_to_bits(n, mask);
                for (std::uint64_t s = 0; s < 2; ++s) {
                    RandomStream rng(derive_stream_seed(414100 + n, mask * 2 + s));
                    const LSOutcome b = bils(x0, n, problem, rng, counter);
                    if (b.ls_evaluations < n || (b.improved && b.ls_evaluations > w * n)) {
                        report(7, false, "BILS accounting broken at n=" + std::to_string(n) + " w=" +
                                             std::to_string(w) + " start=" + x0.to_string() +
                                             " evals=" + std::to_string(b.ls_evaluations));
                        return;
                    }
                    const LSOutcome f = fils(x0, n, problem, rng, counter);
                    if (f.ls_evaluations < n || (f.improved && f.ls_evaluations > 2 * n)) {
                        report(7, false, "FILS accounting broken at n=" + std::to_string(n) + " w=" +
                                             std::to_string(w) + " start=" + x0.to_string() +
                                             " evals=" + std::to_string(f.ls_evaluations));
                        return;
                    }
                }
            }
        }
    }

    // one FILS pass ends at a local optimum: all permutations up to n = 7,
    // 10^3 sampled permutations for n in {8, 9, 10}; always all start points
    const auto pass_lands_on_local_opt = [](std::size_t n, std::size_t w,
                                            const std::vector<std::size_t>& perm,
                                            std::uint32_t mask) {
        const HurdleProblem problem(n, w);
        EvalCounter counter(std::numeric_limits<std::uint64_t>::max());
        Bitstring x = mask_to_bits(n, mask);
        ScaledFitness fx = evaluate(problem, x, counter);
        fils_pass(x, fx, perm, problem, counter);
        return problem.is_local_optimum(x.count_zeros());
    };
    for (std::size_t n = 2; n <= 7; ++n) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{1});
        do {
            for (std::size_t w = 2; w <= n; ++w)
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
                    if (!pass_lands_on_local_opt(n, w, perm, mask)) {
                        report(7, false, "FILS pass did not reach a local optimum: n=" +
                                             std::to_string(n) + " w=" + std::to_string(w));
                        return;
                    }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (std::size_t n = 8; n <= 10; ++n) {
        for (std::size_t w = 2; w <= n; ++w) {
            RandomStream rng(derive_stream_seed(5151, n * 16 + w));
            for (int t = 0; t < 1000; ++t) {
                const std::vector<std::size_t> perm = random_permutation(n, rng);
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
                    if (!pass_lands_on_local_opt(n, w, perm, mask)) {
                        report(7, false, "FILS pass did not reach a local optimum: n=" +
                                             std::to_string(n) + " w=" + std::to_string(w));
                        return;
                    }
            }
        }
    }
    report(7, true,
           "LS accounting exhaustive n<=10: BILS improving <= wn, FILS improving <= 2n, all >= n; "
           "FILS single pass always ends at a local optimum (all perms n<=7, 10^3 perms n=8..10)");
}

// ---- C8: MA-BILS evaluation floor ------------------------------------------

void c8() {
    const std::size_t n = 100, w = 3;
    const HurdleProblem problem(n, w);
    const std::uint64_t budget = default_budget(Algorithm::MA_BILS, n, w, 1000.0);
    const std::uint64_t floor_evals = static_cast<std::uint64_t>(n) * n / 12; // 833
    std::uint64_t min_evals = std::numeric_limits<std::uint64_t>::max();
    bool all_succeeded = true;
    for (int r = 0; r < 100; ++r) {
        const RunRecord rec = one_plus_one_ma(problem, LSVariant{LSKind::BILS, n},
                                              1.0 / static_cast<double>(n), budget,
                                              derive_stream_seed(41012, r));
        min_evals = std::min(min_evals, rec.evaluations);
        all_succeeded = all_succeeded && rec.success;
    }
    const bool ok = all_succeeded && min_evals >= floor_evals;
    report(8, ok, "MA-BILS n=100 w=3, 100 runs: min evaluations " + std::to_string(min_evals) +
                      " (want >= " + std::to_string(floor_evals) + "), all succeeded: " +
                      (all_succeeded ? "yes" : "no"));
}

// ---- C9: restart futility ---------------------------------------------------

void c9() {
    const HurdleProblem problem(30, 6);
    EvalCounter counter(std::numeric_limits<std::uint64_t>::max());
    int bils_successes = 0;
    {
        RandomStream rng(41013);
        for (int r = 0; r < 100000; ++r) {
            Bitstring x = random_bitstring(30, rng);
            const LSOutcome out = bils(std::move(x), 30, problem, rng, counter);
            if (out.result.count_zeros() == 0) ++bils_successes;
        }
    }
    int fils_successes = 0;
    {
        RandomStream rng(41014);
        for (int r = 0; r < 200000; ++r) {
            Bitstring x = random_bitstring(30, rng);
            const LSOutcome out = fils(std::move(x), 30, problem, rng, counter);
            if (out.result.count_zeros() == 0) ++fils_successes;
        }
    }
    const bool ok = bils_successes <= 15 && fils_successes >= 1 && fils_successes <= 30;
    report(9, ok, "restart futility n=30 w=6: BILS " + std::to_string(bils_successes) +
                      "/10^5 successes (want <= 15, expect ~3), FILS " +
                      std::to_string(fils_successes) + "/(2x10^5) (want in [1,30], expect ~10)");
}

// ---- C10: sweep determinism --------------------------------------------------

void c10() {
    SweepConfig cfg;
    cfg.algorithms = {Algorithm::EA, Algorithm::MA_FILS, Algorithm::MA_BILS};
    cfg.ns = {8, 12, 16};
    cfg.ws = {2, 3};
    cfg.reps = 5;
    cfg.base_seed = 2024;
    const std::string a = records_to_csv(run_sweep(cfg, 1));
    const std::string b = records_to_csv(run_sweep(cfg, 1));
    const std::string c = records_to_csv(run_sweep(cfg, 4));
    const std::string d = records_to_csv(run_sweep(cfg, 4));
    const bool ok = a == b && a == c && a == d;
    report(10, ok, "sweep CSV byte-identical across 2 repeats and worker counts {1,4} (" +
                       std::to_string(a.size()) + " bytes, 90 records)");
}

} // namespace

int main() {
    criterion(1, c1);
    criterion(2, c2);
    criterion(3, c3);
    criterion(4, c4);
    criterion(5, c5);
    criterion(6, c6);
    criterion(7, c7);
    criterion(8, c8);
    criterion(9, c9);
    criterion(10, c10);
    if (failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
