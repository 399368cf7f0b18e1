#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hurdle/fitness.hpp"
#include "hurdle/rng.hpp"
#include "hurdle/runner.hpp"
#include "hurdle/stats.hpp"

namespace hurdle {

/// Standard-bit-mutation transition probabilities between zero-count levels:
/// rows[i][j] = P(mutant of a point with i zeros has j zeros).
struct LevelKernel {
    std::size_t n = 0;
    double p = 0;
    std::vector<std::vector<double>> rows;
};

inline double log_choose(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
           std::lgamma(static_cast<double>(n - k) + 1);
}

/// P[i][j] = sum over a (zeros flipped), b = j-i+a (ones flipped) of
/// C(i,a)*C(n-i,b)*p^(a+b)*(1-p)^(n-a-b). Log-space terms with compensated
/// summation keep n in the hundreds accurate to ~1e-13 per row.
inline LevelKernel mutation_level_kernel(std::size_t n, double p) {
    if (n < 1) throw std::invalid_argument("kernel: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("kernel: need 0 < p < 1");
    LevelKernel kernel{n, p, std::vector<std::vector<double>>(n + 1, std::vector<double>(n + 1, 0.0))};
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            const std::size_t a_lo = i > j ? i - j : 0;
            const std::size_t a_hi = std::min(i, n - j);
            double sum = 0, comp = 0; // Kahan
            for (std::size_t a = a_lo; a <= a_hi; ++a) {
                const std::size_t b = a + j - i; // a >= i-j keeps this non-negative
                const double lt = log_choose(i, a) + log_choose(n - i, b) +
                                  static_cast<double>(a + b) * lp +
                                  static_cast<double>(n - a - b) * lq;
                const double term = std::exp(lt);
                const double y = term - comp;
                const double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            kernel.rows[i][j] = sum;
        }
    }
    return kernel;
}

/// Level chain of the elitist EA: moves to weakly better levels keep their
/// kernel probability, all rejected mass joins the self-loop, and every level
/// of optimal fitness is absorbing.
struct AcceptedChain {
    std::size_t n = 0;
    std::vector<std::vector<double>> rows;
    std::vector<bool> absorbing;
};

template <class Problem>
AcceptedChain ea_accepted_chain(const Problem& problem, const LevelKernel& kernel) {
    const std::size_t n = problem.dimension();
    if (kernel.n != n) throw std::invalid_argument("chain: kernel dimension mismatch");
    AcceptedChain chain{n, std::vector<std::vector<double>>(n + 1, std::vector<double>(n + 1, 0.0)),
                        std::vector<bool>(n + 1, false)};
    const ScaledFitness fopt = problem.optimum();
    for (std::size_t i = 0; i <= n; ++i) {
        const ScaledFitness fi = problem.level_fitness(i);
        if (fi == fopt) {
            chain.absorbing[i] = true;
            chain.rows[i][i] = 1.0;
            continue;
        }
        double accepted = 0, comp = 0;
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            if (problem.level_fitness(j) >= fi) {
                chain.rows[i][j] = kernel.rows[i][j];
                const double y = kernel.rows[i][j] - comp;
                const double t = accepted + y;
                comp = (t - accepted) - y;
                accepted = t;
            }
        }
        chain.rows[i][i] = std::max(0.0, 1.0 - accepted);
    }
    return chain;
}

/// Dense Gaussian elimination with partial pivoting on an augmented system;
/// solves in place and returns the solution vector.
inline std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                               std::vector<double> b) {
    const std::size_t m = a.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-300)
            throw std::runtime_error("hitting time: singular system (is some transition probability zero?)");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m);
    for (std::size_t r = 0; r < m; ++r) x[r] = b[r] / a[r][r];
    return x;
}

/// Expected generations to absorption from each level: solves (I - Q)t = 1
/// over the transient levels; t = 0 on absorbing levels.
inline std::vector<double> hitting_times(const AcceptedChain& chain) {
    std::vector<std::size_t> transient;
    for (std::size_t i = 0; i <= chain.n; ++i)
        if (!chain.absorbing[i]) transient.push_back(i);
    const std::size_t m = transient.size();
    std::vector<double> t(chain.n + 1, 0.0);
    if (m == 0) return t;
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            a[r][c] = (r == c ? 1.0 : 0.0) - chain.rows[transient[r]][transient[c]];
    const std::vector<double> sol = solve_linear_system(std::move(a), std::vector<double>(m, 1.0));
    for (std::size_t k = 0; k < m; ++k) t[transient[k]] = sol[k];
    return t;
}

/// Expected generations from an initial level distribution. Expected
/// evaluations under the run-loop convention = 1 + this.
inline double expected_hitting_time(const AcceptedChain& chain, const std::vector<double>& init) {
    if (init.size() != chain.n + 1) throw std::invalid_argument("hitting time: init size mismatch");
    double s = 0;
    for (double v : init) {
        if (v < 0) throw std::invalid_argument("hitting time: negative init mass");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument("hitting time: init must sum to 1");
    const std::vector<double> t = hitting_times(chain);
    double e = 0;
    for (std::size_t z = 0; z <= chain.n; ++z) e += init[z] * t[z];
    return e;
}

/// Zero-count distribution of a uniform random bitstring: Binomial(n, 1/2).
inline std::vector<double> binomial_level_init(std::size_t n) {
    std::vector<double> row(n + 1, 0.0);
    row[0] = std::pow(0.5, static_cast<double>(n));
    for (std::size_t z = 1; z <= n; ++z)
        row[z] = row[z - 1] * static_cast<double>(n - z + 1) / static_cast<double>(z);
    return row;
}

inline std::vector<double> point_level_init(std::size_t n, std::size_t z0) {
    if (z0 > n) throw std::invalid_argument("init: level out of range");
    std::vector<double> row(n + 1, 0.0);
    row[z0] = 1.0;
    return row;
}

struct SummaryStats {
    std::size_t reps = 0;
    double mean = 0, sd = 0, ci_lo = 0, ci_hi = 0;
};

struct MonteCarloResult {
    SummaryStats evaluations;
    SummaryStats generations;
};

/// Monte-Carlo ground truth for any algorithm: reps independent runs with
/// per-rep derived seeds, aggregated in rep order (schedule-independent).
template <class Problem>
MonteCarloResult monte_carlo(const Problem& problem, const RunParams& params, std::size_t reps,
                             std::uint64_t base_seed, std::size_t resamples = 2000,
                             double level = 0.95) {
    if (reps < 1) throw std::invalid_argument("monte_carlo: reps must be >= 1");
    std::vector<double> evals(reps), gens(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        RunParams p = params;
        p.seed = derive_stream_seed(base_seed, r);
        const RunRecord rec = execute_run(problem, p);
        evals[r] = static_cast<double>(rec.evaluations);
        gens[r] = static_cast<double>(rec.generations);
    }
    // The bootstrap stream is derived past the rep indices, so adding reps
    // never reuses a run seed.
    RandomStream boot_evals(derive_stream_seed(base_seed, reps));
    RandomStream boot_gens(derive_stream_seed(base_seed, reps + 1));
    auto summarize = [&](const std::vector<double>& xs, RandomStream& rng) {
        SummaryStats s;
        s.reps = xs.size();
        s.mean = mean(xs);
        s.sd = xs.size() >= 2 ? sample_sd(xs) : 0.0;
        if (xs.size() >= 2) {
            const Interval ci = bootstrap_ci(xs, level, resamples, rng);
            s.ci_lo = ci.lo;
            s.ci_hi = ci.hi;
        } else {
            s.ci_lo = s.ci_hi = s.mean;
        }
        return s;
    };
    return MonteCarloResult{summarize(evals, boot_evals), summarize(gens, boot_gens)};
}

} // namespace hurdle
