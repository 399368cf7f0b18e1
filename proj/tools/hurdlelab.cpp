// hurdlelab: command-line front end for the Hurdle runtime-analysis library.
//
// Subcommands: eval, run, sweep, oracle, fit, report.
// Exit codes: 0 success, 1 target not reached within budget, 2 usage/config
// error, 3 I/O failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hurdle/hurdle.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitBudget = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_pm_flag(const std::string& s, std::size_t n, std::size_t w) {
    if (s == "1/n") return 1.0 / static_cast<double>(n);
    if (s == "w/n") return static_cast<double>(w) / static_cast<double>(n);
    double v = 0;
    try {
        std::size_t pos = 0;
        v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw UsageError("--pm must be a number in [0,1], \"1/n\", or \"w/n\" (got '" + s + "')");
    }
    if (v < 0.0 || v > 1.0) throw UsageError("--pm must lie in [0,1]");
    return v;
}

std::size_t parse_delta_flag(const std::string& s, std::size_t n) {
    if (s == "n") return n;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 1) throw std::invalid_argument(s);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw UsageError("--delta must be a positive integer or \"n\" (got '" + s + "')");
    }
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_eval(std::size_t n_flag, std::size_t w, const std::string& bits, long long zeros_flag) {
    std::size_t n = n_flag;
    std::size_t zeros = 0;
    if (!bits.empty()) {
        const hurdle::Bitstring x = hurdle::Bitstring::from_string(bits);
        if (n != 0 && n != x.size())
            throw UsageError("--n disagrees with the length of --bits");
        n = x.size();
        zeros = x.count_zeros();
    } else {
        if (zeros_flag < 0) throw UsageError("eval needs --bits or --zeros");
        if (n == 0) throw UsageError("--zeros requires --n");
        if (static_cast<std::size_t>(zeros_flag) > n) throw UsageError("--zeros must be <= n");
        zeros = static_cast<std::size_t>(zeros_flag);
    }
    const hurdle::HurdleProblem problem(n, w);
    const hurdle::ScaledFitness f = problem.level_fitness(zeros);
    std::cout << "zeros=" << zeros << " scaled=" << f.value << " fitness=" << f.rational()
              << " local_optimum=" << (problem.is_local_optimum(zeros) ? "true" : "false") << "\n";
    return kExitSuccess;
}

int cmd_run(const std::string& algo_s, std::size_t n, std::size_t w, const std::string& pm_s,
            const std::string& delta_s, std::uint64_t seed, std::uint64_t budget_flag) {
    const auto algo = hurdle::parse_algorithm(algo_s);
    if (!algo) throw UsageError("unknown --algo '" + algo_s + "'");
    hurdle::RunParams params;
    params.algo = *algo;
    params.pm = parse_pm_flag(pm_s, n, w);
    params.delta = parse_delta_flag(delta_s, n);
    params.budget = budget_flag ? budget_flag : hurdle::default_budget(*algo, n, w);
    params.seed = seed;
    const hurdle::HurdleProblem problem(n, w);
    const hurdle::RunRecord rec = hurdle::execute_run(problem, params);
    std::cout << hurdle::to_json(rec).dump() << "\n";
    return rec.success ? kExitSuccess : kExitBudget;
}

int cmd_sweep(const std::string& config_path, const std::string& out_csv,
              const std::string& out_jsonl, unsigned threads) {
    const hurdle::SweepConfig cfg = hurdle::load_sweep_config(config_path);
    for (const std::string& wmsg : cfg.warnings) std::cerr << "warning: " << wmsg << "\n";
    const std::vector<hurdle::RunRecord> records = hurdle::run_sweep(cfg, threads);
    hurdle::write_text_file(out_csv, hurdle::records_to_csv(records));
    if (!out_jsonl.empty()) hurdle::write_text_file(out_jsonl, hurdle::records_to_jsonl(records));
    std::cerr << "wrote " << records.size() << " records to " << out_csv << "\n";
    return kExitSuccess;
}

int cmd_oracle(const std::string& algo_s, std::size_t n, std::size_t w, const std::string& pm_s,
               const std::string& table_path, long long level_flag) {
    if (algo_s != "ea")
        throw UsageError("oracle supports --algo ea only (the MA variants are not level-Markov; "
                         "use Monte-Carlo runs instead)");
    nlohmann::ordered_json out;
    out["algo"] = "ea";
    double gens = 0;
    if (!table_path.empty()) {
        const hurdle::UnitationTable table = hurdle::UnitationTable::from_file(table_path);
        const std::size_t tn = table.dimension();
        const double pm = parse_pm_flag(pm_s, tn, 0);
        if (!(pm > 0.0 && pm < 1.0)) throw UsageError("oracle needs 0 < pm < 1");
        const auto kernel = hurdle::mutation_level_kernel(tn, pm);
        const auto chain = hurdle::ea_accepted_chain(table, kernel);
        const auto init = level_flag >= 0
                              ? hurdle::point_level_init(tn, static_cast<std::size_t>(level_flag))
                              : hurdle::binomial_level_init(tn);
        gens = hurdle::expected_hitting_time(chain, init);
        out["problem"] = "table";
        out["n"] = tn;
        out["pm"] = pm;
    } else {
        if (n == 0) throw UsageError("oracle needs --n/--w or --table");
        const hurdle::HurdleProblem problem(n, w);
        const double pm = parse_pm_flag(pm_s, n, w);
        if (!(pm > 0.0 && pm < 1.0)) throw UsageError("oracle needs 0 < pm < 1");
        const auto kernel = hurdle::mutation_level_kernel(n, pm);
        const auto chain = hurdle::ea_accepted_chain(problem, kernel);
        const auto init = level_flag >= 0
                              ? hurdle::point_level_init(n, static_cast<std::size_t>(level_flag))
                              : hurdle::binomial_level_init(n);
        gens = hurdle::expected_hitting_time(chain, init);
        out["problem"] = "hurdle";
        out["n"] = n;
        out["w"] = w;
        out["pm"] = pm;
    }
    out["init"] = level_flag >= 0 ? nlohmann::ordered_json(level_flag)
                                  : nlohmann::ordered_json("binomial");
    out["expected_generations"] = gens;
    out["expected_evaluations"] = gens + 1.0;
    std::cout << out.dump() << "\n";
    return kExitSuccess;
}

int cmd_fit(const std::string& in_csv, const std::string& group_s, const std::string& x,
            const std::string& y, double level, std::size_t resamples, std::uint64_t seed) {
    const std::vector<hurdle::RunRecord> records = hurdle::read_csv_file(in_csv);
    hurdle::FitOptions opt;
    opt.group_by = split_tokens(group_s);
    if (opt.group_by.empty()) throw UsageError("--group must name at least one field");
    opt.x = x;
    opt.y = y;
    opt.level = level;
    opt.resamples = resamples;
    opt.seed = seed;
    std::vector<std::string> warnings;
    std::vector<hurdle::FitResult> fits;
    try {
        fits = hurdle::loglog_fit(records, opt, &warnings);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    for (const std::string& wmsg : warnings) std::cerr << "warning: " << wmsg << "\n";
    if (fits.empty()) throw UsageError("no group had >= 3 untruncated x values to fit");
    std::cout << hurdle::fit_tsv(fits);
    return kExitSuccess;
}

int cmd_report(const std::string& in_csv, const std::string& group_s, double level,
               std::size_t resamples, std::uint64_t seed) {
    const std::vector<hurdle::RunRecord> records = hurdle::read_csv_file(in_csv);
    hurdle::ReportOptions opt;
    opt.group_by = split_tokens(group_s);
    if (opt.group_by.empty()) throw UsageError("--group must name at least one field");
    opt.level = level;
    opt.resamples = resamples;
    opt.seed = seed;
    std::vector<std::string> warnings;
    std::vector<hurdle::ReportRow> rows;
    try {
        rows = hurdle::make_report(records, opt, &warnings);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    for (const std::string& wmsg : warnings) std::cerr << "warning: " << wmsg << "\n";
    std::cout << hurdle::report_tsv(rows);
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hurdle runtime-analysis laboratory"};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate Hurdle fitness of a point or zero-count");
    std::size_t eval_n = 0, eval_w = 2;
    std::string eval_bits;
    long long eval_zeros = -1;
    eval->add_option("--n", eval_n, "dimension");
    eval->add_option("--w", eval_w, "hurdle width")->required();
    eval->add_option("--bits", eval_bits, "bitstring of 0/1");
    eval->add_option("--zeros", eval_zeros, "zero-count");

    // run
    auto* run = app.add_subcommand("run", "Execute a single algorithm run; prints a JSON record");
    std::string run_algo, run_pm = "1/n", run_delta = "n";
    std::size_t run_n = 0, run_w = 0;
    std::uint64_t run_seed = 1, run_budget = 0;
    run->add_option("--algo", run_algo, "ea | ma-fils | ma-bils | ls-fils | ls-bils")->required();
    run->add_option("--n", run_n, "dimension")->required();
    run->add_option("--w", run_w, "hurdle width")->required();
    run->add_option("--pm", run_pm, "mutation probability, \"1/n\", or \"w/n\" (default 1/n)");
    run->add_option("--delta", run_delta, "local-search depth or \"n\" (default n)");
    run->add_option("--seed", run_seed, "run seed (default 1)");
    run->add_option("--budget", run_budget, "evaluation cap (default 100 x theory prediction)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a config-driven grid; writes CSV (and JSONL)");
    std::string sweep_config, sweep_out, sweep_jsonl;
    unsigned sweep_threads = 1;
    sweep->add_option("--config", sweep_config, "SweepConfig JSON file")->required();
    sweep->add_option("--out", sweep_out, "output CSV path")->required();
    sweep->add_option("--jsonl", sweep_jsonl, "optional JSONL output path");
    sweep->add_option("--threads", sweep_threads, "worker count (default 1)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exact expected EA runtime on a unitation function");
    std::string oracle_algo = "ea", oracle_pm = "1/n", oracle_table;
    std::size_t oracle_n = 0, oracle_w = 2;
    long long oracle_level = -1;
    oracle->add_option("--algo", oracle_algo, "ea (the only exactly solvable algorithm)");
    oracle->add_option("--n", oracle_n, "dimension (Hurdle input)");
    oracle->add_option("--w", oracle_w, "hurdle width (Hurdle input)");
    oracle->add_option("--pm", oracle_pm, "mutation probability, \"1/n\", or \"w/n\"");
    oracle->add_option("--table", oracle_table, "UnitationTable file instead of --n/--w");
    oracle->add_option("--level", oracle_level, "start from this zero-count (default: uniform init)");

    // fit
    auto* fit = app.add_subcommand("fit", "Log-log slope fits per group from a results CSV");
    std::string fit_in, fit_group = "algo,w", fit_x = "n", fit_y = "evaluations";
    double fit_level = 0.95;
    std::size_t fit_resamples = 1000;
    std::uint64_t fit_seed = 1;
    fit->add_option("--in", fit_in, "input CSV")->required();
    fit->add_option("--group", fit_group, "comma-separated group fields (default algo,w)");
    fit->add_option("--x", fit_x, "x field: n | w (default n)");
    fit->add_option("--y", fit_y, "y field: evaluations | generations | ls_evaluations | ls_calls");
    fit->add_option("--level", fit_level, "bootstrap CI level (default 0.95)");
    fit->add_option("--resamples", fit_resamples, "bootstrap resamples (default 1000)");
    fit->add_option("--seed", fit_seed, "bootstrap seed (default 1)");

    // report
    auto* report = app.add_subcommand("report", "Plot-ready TSV: mean/CI vs theory per group and n");
    std::string report_in, report_group = "algo,w";
    double report_level = 0.95;
    std::size_t report_resamples = 1000;
    std::uint64_t report_seed = 1;
    bool report_theory = true;
    report->add_option("--in", report_in, "input CSV")->required();
    report->add_option("--group", report_group, "comma-separated group fields (default algo,w)");
    report->add_flag("--theory", report_theory, "include theory/ratio columns (always on)");
    report->add_option("--level", report_level, "bootstrap CI level (default 0.95)");
    report->add_option("--resamples", report_resamples, "bootstrap resamples (default 1000)");
    report->add_option("--seed", report_seed, "bootstrap seed (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(eval_n, eval_w, eval_bits, eval_zeros);
        if (run->parsed()) return cmd_run(run_algo, run_n, run_w, run_pm, run_delta, run_seed, run_budget);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out, sweep_jsonl, sweep_threads);
        if (oracle->parsed()) return cmd_oracle(oracle_algo, oracle_n, oracle_w, oracle_pm, oracle_table, oracle_level);
        if (fit->parsed()) return cmd_fit(fit_in, fit_group, fit_x, fit_y, fit_level, fit_resamples, fit_seed);
        if (report->parsed()) return cmd_report(report_in, report_group, report_level, report_resamples, report_seed);
    } catch (const hurdle::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
