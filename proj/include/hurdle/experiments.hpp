#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hurdle/fitness.hpp"
#include "hurdle/records.hpp"
#include "hurdle/rng.hpp"
#include "hurdle/runner.hpp"
#include "hurdle/stats.hpp"

namespace hurdle {

/// Leading-order evaluation counts from the runtime theorems, constants
/// dropped: EA n^w, MA-BILS n^2 + n^3/w^2, MA-FILS n^3/w^2, restart-LS 2^n.
inline double theory_prediction(Algorithm algo, std::size_t n, std::size_t w) {
    const double nd = static_cast<double>(n);
    const double wd = static_cast<double>(w);
    switch (algo) {
        case Algorithm::EA: return std::pow(nd, wd);
        case Algorithm::MA_BILS: return nd * nd + nd * nd * nd / (wd * wd);
        case Algorithm::MA_FILS: return nd * nd * nd / (wd * wd);
        case Algorithm::LS_FILS:
        case Algorithm::LS_BILS: return std::pow(2.0, nd);
    }
    return 0;
}

/// Restart-LS predictions overflow any usable number well before n = 62;
/// reports print this label instead of a meaningless value.
inline bool theory_is_exponential_label(Algorithm algo, std::size_t n) {
    return (algo == Algorithm::LS_FILS || algo == Algorithm::LS_BILS) && n > 62;
}

/// Budget rule: multiplier x theory prediction, at least 1, capped at 2^62.
inline std::uint64_t default_budget(Algorithm algo, std::size_t n, std::size_t w,
                                    double multiplier = 100.0) {
    const double cap = 4611686018427387904.0; // 2^62
    double b = std::ceil(multiplier * theory_prediction(algo, n, w));
    if (!(b >= 1.0)) b = 1.0;
    if (b > cap) b = cap;
    return static_cast<std::uint64_t>(b);
}

struct PmRule {
    enum class Kind { OneOverN, WOverN, Fixed } kind = Kind::OneOverN;
    double value = 0.0;

    double resolve(std::size_t n, std::size_t w) const {
        switch (kind) {
            case Kind::OneOverN: return 1.0 / static_cast<double>(n);
            case Kind::WOverN: return static_cast<double>(w) / static_cast<double>(n);
            case Kind::Fixed: return value;
        }
        return 0;
    }
};

struct DeltaRule {
    enum class Kind { N, Fixed } kind = Kind::N;
    std::size_t value = 0;

    std::size_t resolve(std::size_t n) const { return kind == Kind::N ? n : value; }
};

/// Declarative sweep grid: algorithms x n x w, reps runs per cell.
struct SweepConfig {
    std::vector<Algorithm> algorithms;
    std::vector<std::size_t> ns;
    std::vector<std::size_t> ws;
    PmRule pm;
    DeltaRule delta;
    std::size_t reps = 1;
    std::uint64_t base_seed = 1;
    double budget_multiplier = 100.0;
    std::vector<std::string> warnings; // filled at parse/validation time
};

inline PmRule parse_pm_rule(const nlohmann::json& j) {
    PmRule rule;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "1/n") rule.kind = PmRule::Kind::OneOverN;
        else if (s == "w/n") rule.kind = PmRule::Kind::WOverN;
        else throw std::runtime_error("config: pm string must be \"1/n\" or \"w/n\"");
    } else if (j.is_number()) {
        rule.kind = PmRule::Kind::Fixed;
        rule.value = j.get<double>();
        if (rule.value < 0.0 || rule.value > 1.0) throw std::runtime_error("config: fixed pm must be in [0,1]");
    } else {
        throw std::runtime_error("config: pm must be a string rule or a number");
    }
    return rule;
}

inline DeltaRule parse_delta_rule(const nlohmann::json& j) {
    DeltaRule rule;
    if (j.is_string()) {
        if (j.get<std::string>() != "n") throw std::runtime_error("config: delta string must be \"n\"");
        rule.kind = DeltaRule::Kind::N;
    } else if (j.is_number_unsigned() || j.is_number_integer()) {
        const std::int64_t v = j.get<std::int64_t>();
        if (v < 1) throw std::runtime_error("config: fixed delta must be >= 1");
        rule.kind = DeltaRule::Kind::Fixed;
        rule.value = static_cast<std::size_t>(v);
    } else {
        throw std::runtime_error("config: delta must be \"n\" or a positive integer");
    }
    return rule;
}

/// Strict parse of the sweep-config JSON object; unknown keys are rejected so
/// typos fail loudly instead of silently running defaults.
inline SweepConfig parse_sweep_config(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("config: top level must be a JSON object");
    static const std::set<std::string> known = {"algorithms", "n",         "w",
                                                "pm",         "delta",     "reps",
                                                "base_seed",  "budget_multiplier"};
    for (const auto& item : j.items())
        if (!known.count(item.key())) throw std::runtime_error("config: unknown key '" + item.key() + "'");

    SweepConfig cfg;
    if (!j.contains("algorithms") || !j.contains("n") || !j.contains("w"))
        throw std::runtime_error("config: required keys: algorithms, n, w");
    for (const auto& a : j.at("algorithms")) {
        const auto algo = parse_algorithm(a.get<std::string>());
        if (!algo) throw std::runtime_error("config: unknown algorithm '" + a.get<std::string>() + "'");
        cfg.algorithms.push_back(*algo);
    }
    if (cfg.algorithms.empty()) throw std::runtime_error("config: algorithms must be non-empty");
    for (const auto& v : j.at("n")) {
        const std::int64_t n = v.get<std::int64_t>();
        if (n < 2) throw std::runtime_error("config: every n must be >= 2");
        cfg.ns.push_back(static_cast<std::size_t>(n));
    }
    for (const auto& v : j.at("w")) {
        const std::int64_t w = v.get<std::int64_t>();
        if (w < 2) throw std::runtime_error("config: every w must be >= 2");
        cfg.ws.push_back(static_cast<std::size_t>(w));
    }
    if (cfg.ns.empty() || cfg.ws.empty()) throw std::runtime_error("config: n and w must be non-empty");
    if (j.contains("pm")) cfg.pm = parse_pm_rule(j.at("pm"));
    if (j.contains("delta")) cfg.delta = parse_delta_rule(j.at("delta"));
    if (j.contains("reps")) {
        const std::int64_t reps = j.at("reps").get<std::int64_t>();
        if (reps < 1) throw std::runtime_error("config: reps must be >= 1");
        cfg.reps = static_cast<std::size_t>(reps);
    }
    if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("budget_multiplier")) {
        cfg.budget_multiplier = j.at("budget_multiplier").get<double>();
        if (!(cfg.budget_multiplier > 0)) throw std::runtime_error("config: budget_multiplier must be > 0");
    }
    for (std::size_t n : cfg.ns)
        for (std::size_t w : cfg.ws) {
            if (w > n)
                throw std::runtime_error("config: invalid cell n=" + std::to_string(n) + " w=" +
                                         std::to_string(w) + " (need w <= n)");
            if (2 * w > n)
                cfg.warnings.push_back("cell n=" + std::to_string(n) + " w=" + std::to_string(w) +
                                       " is outside the w <= n/2 regime of the runtime bounds");
        }
    return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_sweep_config(j);
}

/// One grid cell, in deterministic enumeration order (algorithms x n x w).
struct SweepCell {
    std::size_t index = 0;
    Algorithm algo = Algorithm::EA;
    std::size_t n = 0, w = 0;
    double pm = 0;
    std::size_t delta = 0;
    std::uint64_t budget = 0;
};

inline std::vector<SweepCell> enumerate_cells(const SweepConfig& cfg) {
    std::vector<SweepCell> cells;
    std::size_t idx = 0;
    for (Algorithm algo : cfg.algorithms)
        for (std::size_t n : cfg.ns)
            for (std::size_t w : cfg.ws) {
                SweepCell cell;
                cell.index = idx++;
                cell.algo = algo;
                cell.n = n;
                cell.w = w;
                cell.pm = cfg.pm.resolve(n, w);
                cell.delta = cfg.delta.resolve(n);
                cell.budget = default_budget(algo, n, w, cfg.budget_multiplier);
                cells.push_back(cell);
            }
    return cells;
}

/// Seed for (cell, rep): two derivation hops so neither index can collide
/// with the other's stream. Part of the reproducibility contract.
inline std::uint64_t sweep_run_seed(std::uint64_t base_seed, std::size_t cell_index,
                                    std::size_t rep_index) {
    return derive_stream_seed(derive_stream_seed(base_seed, cell_index), rep_index);
}

/// Executes the whole grid. Records come back sorted by deterministic run id
/// (cell-major, then rep), and the output is identical for any worker count.
inline std::vector<RunRecord> run_sweep(const SweepConfig& cfg, unsigned threads = 1) {
    const std::vector<SweepCell> cells = enumerate_cells(cfg);
    const std::size_t total = cells.size() * cfg.reps;
    std::vector<RunRecord> records(total);
    auto run_one = [&](std::size_t job) {
        const SweepCell& cell = cells[job / cfg.reps];
        const std::size_t rep = job % cfg.reps;
        RunParams params;
        params.algo = cell.algo;
        params.pm = cell.pm;
        params.delta = cell.delta;
        params.budget = cell.budget;
        params.seed = sweep_run_seed(cfg.base_seed, cell.index, rep);
        records[job] = execute_run(HurdleProblem(cell.n, cell.w), params);
    };
    if (threads <= 1) {
        for (std::size_t job = 0; job < total; ++job) run_one(job);
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(threads, total ? static_cast<unsigned>(total) : 1u);
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t job = next.fetch_add(1);
                if (job >= total) return;
                run_one(job);
            }
        });
    for (auto& th : pool) th.join();
    return records;
}

/// --- grouping, fits, reports -------------------------------------------

inline std::string record_field_label(const RunRecord& r, const std::string& field) {
    if (field == "algo" || field == "algorithm") return "algo=" + r.algorithm;
    if (field == "problem") return "problem=" + r.problem;
    if (field == "n") return "n=" + std::to_string(r.n);
    if (field == "w") return "w=" + std::to_string(r.w);
    if (field == "pm") return "pm=" + format_double(r.pm);
    if (field == "delta") return "delta=" + std::to_string(r.delta);
    throw std::runtime_error("unknown group field '" + field + "'");
}

inline std::string group_key(const RunRecord& r, const std::vector<std::string>& group_by) {
    std::string key;
    for (std::size_t i = 0; i < group_by.size(); ++i) {
        if (i) key += ',';
        key += record_field_label(r, group_by[i]);
    }
    return key;
}

inline double record_x_value(const RunRecord& r, const std::string& x) {
    if (x == "n") return static_cast<double>(r.n);
    if (x == "w") return static_cast<double>(r.w);
    throw std::runtime_error("unknown x field '" + x + "'");
}

inline double record_y_value(const RunRecord& r, const std::string& y) {
    if (y == "evaluations") return static_cast<double>(r.evaluations);
    if (y == "generations") return static_cast<double>(r.generations);
    if (y == "ls_evaluations") return static_cast<double>(r.ls_evaluations);
    if (y == "ls_calls") return static_cast<double>(r.ls_calls);
    throw std::runtime_error("unknown y field '" + y + "'");
}

struct FitOptions {
    std::vector<std::string> group_by = {"algo", "w"};
    std::string x = "n";
    std::string y = "evaluations";
    double level = 0.95;
    std::size_t resamples = 1000;
    std::uint64_t seed = 1;
};

struct FitResult {
    std::string group;
    double slope = 0, intercept = 0, r2 = 0;
    double ci_lo = 0, ci_hi = 0;
    double level = 0.95;
};

/// Cells of one group: x value -> per-run y samples.
using GroupCells = std::map<double, std::vector<double>>;

inline std::map<std::string, GroupCells> collect_cells(const std::vector<RunRecord>& records,
                                                       const std::vector<std::string>& group_by,
                                                       const std::string& x, const std::string& y,
                                                       std::vector<std::string>* warnings) {
    std::map<std::string, GroupCells> groups;
    std::map<std::string, std::map<double, std::size_t>> truncated;
    for (const RunRecord& r : records) {
        const std::string key = group_key(r, group_by);
        const double xv = record_x_value(r, x);
        groups[key][xv].push_back(record_y_value(r, y));
        if (!r.success) ++truncated[key][xv];
    }
    // Cells containing any budget-truncated run carry a censored mean and are
    // dropped from fits.
    for (auto& [key, trunc] : truncated)
        for (auto& [xv, count] : trunc) {
            groups[key].erase(xv);
            if (warnings)
                warnings->push_back("dropping cell " + key + "," + x + "=" + format_double(xv) + ": " +
                                    std::to_string(count) + " budget-truncated run(s)");
        }
    for (auto it = groups.begin(); it != groups.end();)
        it = it->second.empty() ? groups.erase(it) : std::next(it);
    return groups;
}

/// Log-log least squares on per-cell means, slope CI by per-cell bootstrap
/// resampling of the runs.
inline FitResult fit_group(const std::string& group, const GroupCells& cells,
                           const FitOptions& opt, RandomStream& rng) {
    if (cells.size() < 3) throw std::runtime_error("fit: group '" + group + "' has fewer than 3 x values");
    std::vector<double> lx, ly;
    for (const auto& [xv, samples] : cells) {
        const double m = mean(samples);
        if (!(m > 0)) throw std::runtime_error("fit: non-positive cell mean in group '" + group + "'");
        lx.push_back(std::log(xv));
        ly.push_back(std::log(m));
    }
    const LinFit point = least_squares(lx, ly);
    std::vector<double> slopes(opt.resamples);
    for (std::size_t r = 0; r < opt.resamples; ++r) {
        std::vector<double> by;
        by.reserve(cells.size());
        for (const auto& [xv, samples] : cells) {
            double s = 0;
            for (std::size_t i = 0; i < samples.size(); ++i)
                s += samples[rng.uniform_index(samples.size())];
            by.push_back(std::log(s / static_cast<double>(samples.size())));
        }
        slopes[r] = least_squares(lx, by).slope;
    }
    std::sort(slopes.begin(), slopes.end());
    const double alpha = 1.0 - opt.level;
    FitResult res;
    res.group = group;
    res.slope = point.slope;
    res.intercept = point.intercept;
    res.r2 = point.r2;
    res.ci_lo = std::min(quantile_sorted(slopes, alpha / 2), point.slope);
    res.ci_hi = std::max(quantile_sorted(slopes, 1.0 - alpha / 2), point.slope);
    res.level = opt.level;
    return res;
}

inline std::vector<FitResult> loglog_fit(const std::vector<RunRecord>& records, const FitOptions& opt,
                                         std::vector<std::string>* warnings = nullptr) {
    const auto groups = collect_cells(records, opt.group_by, opt.x, opt.y, warnings);
    std::vector<FitResult> results;
    RandomStream rng(opt.seed);
    for (const auto& [key, cells] : groups) {
        try {
            results.push_back(fit_group(key, cells, opt, rng));
        } catch (const std::runtime_error& e) {
            if (warnings) warnings->push_back(std::string("skipping group: ") + e.what());
        }
    }
    return results;
}

struct ReportOptions {
    std::vector<std::string> group_by = {"algo", "w"};
    double level = 0.95;
    std::size_t resamples = 1000;
    std::uint64_t seed = 1;
};

struct ReportRow {
    std::string group;
    std::size_t n = 0;
    double mean = 0, ci_lo = 0, ci_hi = 0;
    double theory = 0;
    double ratio = 0;
    bool exponential_theory = false;
    std::size_t truncated_runs = 0;
};

/// Per-(group, n) mean evaluations with bootstrap CI, theory prediction, and
/// measured/theory ratio. Cells with truncated runs stay in the table but are
/// flagged (their means are budget-censored).
inline std::vector<ReportRow> make_report(const std::vector<RunRecord>& records,
                                          const ReportOptions& opt,
                                          std::vector<std::string>* warnings = nullptr) {
    struct CellAgg {
        std::vector<double> evals;
        Algorithm algo = Algorithm::EA;
        std::size_t w = 0;
        std::size_t truncated = 0;
    };
    std::map<std::string, std::map<std::size_t, CellAgg>> groups;
    for (const RunRecord& r : records) {
        const auto algo = parse_algorithm(r.algorithm);
        if (!algo) throw std::runtime_error("report: unknown algorithm '" + r.algorithm + "' in records");
        CellAgg& cell = groups[group_key(r, opt.group_by)][r.n];
        cell.evals.push_back(static_cast<double>(r.evaluations));
        cell.algo = *algo;
        cell.w = r.w;
        if (!r.success) ++cell.truncated;
    }
    std::vector<ReportRow> rows;
    RandomStream rng(opt.seed);
    for (const auto& [key, cells] : groups)
        for (const auto& [n, cell] : cells) {
            ReportRow row;
            row.group = key;
            row.n = n;
            row.mean = mean(cell.evals);
            if (cell.evals.size() >= 2) {
                const Interval ci = bootstrap_ci(cell.evals, opt.level, opt.resamples, rng);
                row.ci_lo = ci.lo;
                row.ci_hi = ci.hi;
            } else {
                row.ci_lo = row.ci_hi = row.mean;
            }
            row.theory = theory_prediction(cell.algo, n, cell.w);
            row.exponential_theory = theory_is_exponential_label(cell.algo, n);
            row.ratio = row.mean / row.theory;
            row.truncated_runs = cell.truncated;
            if (cell.truncated && warnings)
                warnings->push_back("cell " + key + ",n=" + std::to_string(n) + " has " +
                                    std::to_string(cell.truncated) +
                                    " budget-truncated run(s); its mean is censored");
            rows.push_back(row);
        }
    return rows;
}

inline std::string report_tsv(const std::vector<ReportRow>& rows) {
    std::string out = "group\tn\tmean\tci_lo\tci_hi\ttheory\tratio\n";
    for (const ReportRow& row : rows) {
        out += row.group;
        out += '\t';
        out += std::to_string(row.n);
        out += '\t';
        out += format_double(row.mean);
        out += '\t';
        out += format_double(row.ci_lo);
        out += '\t';
        out += format_double(row.ci_hi);
        out += '\t';
        out += row.exponential_theory ? "exponential" : format_double(row.theory);
        out += '\t';
        out += row.exponential_theory ? "nan" : format_double(row.ratio);
        out += '\n';
    }
    return out;
}

inline std::string fit_tsv(const std::vector<FitResult>& fits) {
    std::string out = "group\tslope\tintercept\tr2\tslope_ci_lo\tslope_ci_hi\tlevel\n";
    for (const FitResult& f : fits) {
        out += f.group;
        out += '\t';
        out += format_double(f.slope);
        out += '\t';
        out += format_double(f.intercept);
        out += '\t';
        out += format_double(f.r2);
        out += '\t';
        out += format_double(f.ci_lo);
        out += '\t';
        out += format_double(f.ci_hi);
        out += '\t';
        out += format_double(f.level);
        out += '\n';
    }
    return out;
}

} // namespace hurdle
