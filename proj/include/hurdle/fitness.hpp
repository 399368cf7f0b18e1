#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurdle/bitstring.hpp"

namespace hurdle {

/// Thrown by EvalCounter::tick when the next evaluation would exceed the
/// budget; run loops catch it and record evaluations_total == budget.
struct BudgetExhausted : std::exception {
    const char* what() const noexcept override { return "evaluation budget exhausted"; }
};

/// Filesystem-level failure (missing/unwritable file), as opposed to invalid
/// content; the CLI maps this to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-run fitness-evaluation meter with an optional hard cap.
class EvalCounter {
  public:
    EvalCounter() : max_(std::numeric_limits<std::uint64_t>::max()) {}
    explicit EvalCounter(std::uint64_t max_evaluations) : max_(max_evaluations) {}

    std::uint64_t count() const { return count_; }
    std::uint64_t budget() const { return max_; }

    /// Charge one evaluation. Throws BudgetExhausted instead of exceeding the
    /// cap, so a capped run ends with count() == budget() exactly.
    void tick() {
        if (count_ >= max_) throw BudgetExhausted{};
        ++count_;
    }

  private:
    std::uint64_t count_ = 0;
    std::uint64_t max_;
};

/// Exact fitness as value/scale. All comparisons are integer comparisons and
/// require equal scales (within one problem the scale is a constant), so tie
/// detection in the local searches is exact.
struct ScaledFitness {
    std::int64_t value = 0;
    std::int64_t scale = 1;

    double real() const { return static_cast<double>(value) / static_cast<double>(scale); }

    /// Reduced rational rendering, e.g. "-7/3", "-1", "0".
    std::string rational() const {
        const std::int64_t g = std::gcd(value < 0 ? -value : value, scale);
        const std::int64_t num = g ? value / g : value;
        const std::int64_t den = g ? scale / g : scale;
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline void require_same_scale(ScaledFitness a, ScaledFitness b) {
    if (a.scale != b.scale) throw std::logic_error("ScaledFitness: comparing different scales");
}

inline bool operator==(ScaledFitness a, ScaledFitness b) { require_same_scale(a, b); return a.value == b.value; }
inline bool operator!=(ScaledFitness a, ScaledFitness b) { return !(a == b); }
inline bool operator<(ScaledFitness a, ScaledFitness b) { require_same_scale(a, b); return a.value < b.value; }
inline bool operator>(ScaledFitness a, ScaledFitness b) { return b < a; }
inline bool operator<=(ScaledFitness a, ScaledFitness b) { return !(b < a); }
inline bool operator>=(ScaledFitness a, ScaledFitness b) { return !(a < b); }

/// Hurdle fitness of a zero-count, scaled by w:
///   F_s(z) = -(w*ceil(z/w) + rem(z,w)),  true fitness F_s/w.
/// Maximum 0 attained only at z = 0; local optima exactly at z = kw.
inline ScaledFitness hurdle_scaled_fitness(std::size_t z, std::size_t w) {
    if (w < 2) throw std::invalid_argument("hurdle: w must be >= 2");
    const std::int64_t q = static_cast<std::int64_t>(z / w);
    const std::int64_t r = static_cast<std::int64_t>(z % w);
    const std::int64_t ceil_div = q + (r > 0 ? 1 : 0);
    return ScaledFitness{-(static_cast<std::int64_t>(w) * ceil_div + r), static_cast<std::int64_t>(w)};
}

/// Hurdle problem: unitation landscape with local optima every w levels.
class HurdleProblem {
  public:
    HurdleProblem(std::size_t n, std::size_t w) : n_(n), w_(w) {
        if (w < 2 || w > n) throw std::invalid_argument("hurdle: need 2 <= w <= n");
    }

    std::size_t dimension() const { return n_; }
    std::size_t width() const { return w_; }
    std::string name() const { return "hurdle"; }

    /// Fitness by zero-count. Unmetered on purpose: only the oracle and the
    /// structural predicates use it; search points always go through
    /// evaluate(), which charges the counter.
    ScaledFitness level_fitness(std::size_t z) const {
        if (z > n_) throw std::out_of_range("hurdle: zero-count exceeds n");
        return hurdle_scaled_fitness(z, w_);
    }

    ScaledFitness optimum() const { return ScaledFitness{0, static_cast<std::int64_t>(w_)}; }

    /// True iff no single-bit flip strictly improves: exactly the levels kw.
    bool is_local_optimum(std::size_t z) const {
        if (z > n_) throw std::out_of_range("hurdle: zero-count exceeds n");
        return z % w_ == 0;
    }

    /// From a local optimum at z = kw > 0, the nearest strictly fitter points
    /// sit exactly w flips away at level z - w.
    std::size_t nearest_improving_level(std::size_t z) const {
        if (z == 0 || z % w_ != 0 || z > n_)
            throw std::invalid_argument("hurdle: z must be a positive multiple of w");
        return z - w_;
    }

  private:
    std::size_t n_, w_;
};

/// Ones-counting problem; scale 1.
class OneMaxProblem {
  public:
    explicit OneMaxProblem(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("onemax: n must be >= 1");
    }

    std::size_t dimension() const { return n_; }
    std::size_t width() const { return 0; }
    std::string name() const { return "onemax"; }

    ScaledFitness level_fitness(std::size_t z) const {
        if (z > n_) throw std::out_of_range("onemax: zero-count exceeds n");
        return ScaledFitness{static_cast<std::int64_t>(n_ - z), 1};
    }

    ScaledFitness optimum() const { return ScaledFitness{static_cast<std::int64_t>(n_), 1}; }

  private:
    std::size_t n_;
};

/// Arbitrary unitation function given as scaled-integer values by zero-count.
/// Used for tie-breaking tests and to drive the oracle on non-Hurdle inputs.
class UnitationTable {
  public:
    UnitationTable(std::size_t n, std::vector<std::int64_t> values) : n_(n), values_(std::move(values)) {
        if (n == 0) throw std::invalid_argument("table: n must be >= 1");
        if (values_.size() != n + 1) throw std::invalid_argument("table: need exactly n+1 values");
    }

    /// File format: first line n, then n+1 whitespace-separated integers.
    static UnitationTable from_stream(std::istream& in) {
        long long n = 0;
        if (!(in >> n) || n < 1) throw std::runtime_error("table: bad dimension line");
        std::vector<std::int64_t> vals;
        vals.reserve(static_cast<std::size_t>(n) + 1);
        for (long long i = 0; i <= n; ++i) {
            long long v = 0;
            if (!(in >> v)) throw std::runtime_error("table: expected n+1 integers");
            vals.push_back(v);
        }
        long long extra = 0;
        if (in >> extra) throw std::runtime_error("table: trailing data after n+1 values");
        return UnitationTable(static_cast<std::size_t>(n), std::move(vals));
    }

    static UnitationTable from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("table: cannot open " + path);
        return from_stream(in);
    }

    std::size_t dimension() const { return n_; }
    std::size_t width() const { return 0; }
    std::string name() const { return "table"; }

    ScaledFitness level_fitness(std::size_t z) const {
        if (z > n_) throw std::out_of_range("table: zero-count exceeds n");
        return ScaledFitness{values_[z], 1};
    }

    ScaledFitness optimum() const {
        return ScaledFitness{*std::max_element(values_.begin(), values_.end()), 1};
    }

  private:
    std::size_t n_;
    std::vector<std::int64_t> values_;
};

/// The one metered path from a search point to its fitness: every algorithm
/// charges exactly one counter tick per evaluated bitstring.
template <class Problem>
ScaledFitness evaluate(const Problem& problem, const Bitstring& x, EvalCounter& counter) {
    if (x.size() != problem.dimension()) throw std::invalid_argument("evaluate: dimension mismatch");
    counter.tick();
    return problem.level_fitness(x.count_zeros());
}

} // namespace hurdle
