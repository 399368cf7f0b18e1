#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hurdle/fitness.hpp"

namespace hurdle {

/// One algorithm run's full accounting. evaluations is the counter total
/// (evaluations_total in serialized form); ls_* fields stay 0 for the plain EA
/// and restarts stays 0 for everything but restart-LS.
struct RunRecord {
    std::string algorithm;
    std::string problem;
    std::size_t n = 0;
    std::size_t w = 0;
    double pm = 0.0;
    std::size_t delta = 0;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t generations = 0;
    std::uint64_t ls_calls = 0;
    std::uint64_t ls_evaluations = 0;
    std::uint64_t improving_ls_calls = 0;
    std::uint64_t restarts = 0;
    std::int64_t best_scaled_fitness = 0;
    bool success = false;
};

/// Shortest round-trip decimal for a double; locale-free and deterministic.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("bad double: '" + s + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("bad integer: '" + s + "'");
    return v;
}

inline std::string csv_header() {
    return "algorithm,problem,n,w,pm,delta,seed,evaluations,generations,"
           "ls_calls,ls_evaluations,improving_ls_calls,success";
}

inline std::string to_csv_row(const RunRecord& r) {
    std::string out;
    out += r.algorithm; out += ',';
    out += r.problem; out += ',';
    out += std::to_string(r.n); out += ',';
    out += std::to_string(r.w); out += ',';
    out += format_double(r.pm); out += ',';
    out += std::to_string(r.delta); out += ',';
    out += std::to_string(r.seed); out += ',';
    out += std::to_string(r.evaluations); out += ',';
    out += std::to_string(r.generations); out += ',';
    out += std::to_string(r.ls_calls); out += ',';
    out += std::to_string(r.ls_evaluations); out += ',';
    out += std::to_string(r.improving_ls_calls); out += ',';
    out += r.success ? '1' : '0';
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') { fields.push_back(cur); cur.clear(); }
        else cur += c;
    }
    fields.push_back(cur);
    return fields;
}

inline RunRecord from_csv_row(const std::string& line) {
    const auto f = split_csv_line(line);
    if (f.size() != 13) throw std::runtime_error("csv: expected 13 fields, got " + std::to_string(f.size()));
    RunRecord r;
    r.algorithm = f[0];
    r.problem = f[1];
    r.n = static_cast<std::size_t>(parse_u64(f[2]));
    r.w = static_cast<std::size_t>(parse_u64(f[3]));
    r.pm = parse_double(f[4]);
    r.delta = static_cast<std::size_t>(parse_u64(f[5]));
    r.seed = parse_u64(f[6]);
    r.evaluations = parse_u64(f[7]);
    r.generations = parse_u64(f[8]);
    r.ls_calls = parse_u64(f[9]);
    r.ls_evaluations = parse_u64(f[10]);
    r.improving_ls_calls = parse_u64(f[11]);
    if (f[12] != "0" && f[12] != "1") throw std::runtime_error("csv: success must be 0 or 1");
    r.success = f[12] == "1";
    return r;
}

inline std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::string out = csv_header();
    out += '\n';
    for (const auto& r : records) { out += to_csv_row(r); out += '\n'; }
    return out;
}

inline std::vector<RunRecord> records_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header()) throw std::runtime_error("csv: unexpected header: '" + line + "'");
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        records.push_back(from_csv_row(line));
    }
    return records;
}

inline std::vector<RunRecord> read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("csv: cannot open " + path);
    return records_from_csv(in);
}

/// JSON object with the type's field names; evaluations serializes as
/// evaluations_total to match the documented record vocabulary.
inline nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["algorithm"] = r.algorithm;
    j["problem"] = r.problem;
    j["n"] = r.n;
    j["w"] = r.w;
    j["pm"] = r.pm;
    j["delta"] = r.delta;
    j["seed"] = r.seed;
    j["evaluations_total"] = r.evaluations;
    j["generations"] = r.generations;
    j["ls_calls"] = r.ls_calls;
    j["ls_evaluations"] = r.ls_evaluations;
    j["improving_ls_calls"] = r.improving_ls_calls;
    j["restarts"] = r.restarts;
    j["best_scaled_fitness"] = r.best_scaled_fitness;
    j["success"] = r.success;
    return j;
}

inline RunRecord record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.problem = j.at("problem").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.w = j.at("w").get<std::size_t>();
    r.pm = j.at("pm").get<double>();
    r.delta = j.at("delta").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.evaluations = j.at("evaluations_total").get<std::uint64_t>();
    r.generations = j.at("generations").get<std::uint64_t>();
    r.ls_calls = j.at("ls_calls").get<std::uint64_t>();
    r.ls_evaluations = j.at("ls_evaluations").get<std::uint64_t>();
    r.improving_ls_calls = j.at("improving_ls_calls").get<std::uint64_t>();
    r.restarts = j.at("restarts").get<std::uint64_t>();
    r.best_scaled_fitness = j.at("best_scaled_fitness").get<std::int64_t>();
    r.success = j.at("success").get<bool>();
    return r;
}

inline std::string records_to_jsonl(const std::vector<RunRecord>& records) {
    std::string out;
    for (const auto& r : records) { out += to_json(r).dump(); out += '\n'; }
    return out;
}

inline std::vector<RunRecord> records_from_jsonl(std::istream& in) {
    std::vector<RunRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json(nlohmann::json::parse(line)));
    }
    return records;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace hurdle
