#include "tolbip/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tolbip/baselines.hpp"
#include "tolbip/errors.hpp"
#include "tolbip/generators.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/rng.hpp"

namespace tolbip {

Interval wilson_interval(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be positive");
    if (successes > trials)
        throw std::invalid_argument("wilson_interval: successes exceed trials");
    if (!(z > 0.0)) throw std::invalid_argument("wilson_interval: z must be positive");
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    Interval iv{center - half, center + half};
    iv.lo = std::max(0.0, iv.lo);
    iv.hi = std::min(1.0, iv.hi);
    return iv;
}

uint64_t trial_seed(uint64_t master_seed, uint64_t trial) {
    return derive_seed(master_seed, trial);
}

namespace {

std::string strip(const std::string& raw) {
    std::string s = raw;
    if (size_t hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

uint64_t parse_u64(const std::string& v, size_t line, const std::string& key) {
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError(line, key + ": expected a nonnegative integer, got '" + v + "'");
    return out;
}

uint32_t parse_u32(const std::string& v, size_t line, const std::string& key) {
    uint64_t wide = parse_u64(v, line, key);
    if (wide > UINT32_MAX) throw ParseError(line, key + ": value out of range");
    return static_cast<uint32_t>(wide);
}

double parse_double(const std::string& v, size_t line, const std::string& key) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ParseError(line, key + ": expected a number, got '" + v + "'");
    }
}

Rat parse_rat(const std::string& v, size_t line, const std::string& key) {
    try {
        return Rat::from_decimal(v);
    } catch (const std::exception& e) {
        throw ParseError(line, key + ": " + e.what());
    }
}

bool parse_bool(const std::string& v, size_t line, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ParseError(line, key + ": expected true or false, got '" + v + "'");
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string raw, section;
    size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "experiment" && section != "family" && section != "algorithm")
                throw ParseError(lineno, "unknown section '" + section + "'");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError(lineno, "empty key or value");
        if (section.empty()) throw ParseError(lineno, "key before any section");

        if (section == "experiment") {
            if (key == "trials") {
                cfg.trials = parse_u64(value, lineno, key);
                if (cfg.trials == 0) throw ParseError(lineno, "trials must be at least 1");
            } else if (key == "master_seed") {
                cfg.master_seed = parse_u64(value, lineno, key);
            } else if (key == "output") {
                cfg.output = value;
            } else if (key == "format") {
                if (value == "csv") cfg.format = OutputFormat::Csv;
                else if (value == "record") cfg.format = OutputFormat::Record;
                else throw ParseError(lineno, "format must be csv or record");
            } else if (key == "fixed_instance") {
                cfg.fixed_instance = parse_bool(value, lineno, key);
            } else if (key == "measure_runtime") {
                cfg.measure_runtime = parse_bool(value, lineno, key);
            } else if (key == "majority") {
                cfg.majority = parse_u32(value, lineno, key);
                if (cfg.majority == 0 || cfg.majority % 2 == 0)
                    throw ParseError(lineno, "majority must be odd and positive");
            } else if (key == "threads") {
                cfg.threads = parse_u32(value, lineno, key);
            } else {
                throw ParseError(lineno, "unknown experiment key '" + key + "'");
            }
        } else if (section == "family") {
            if (key == "kind") cfg.family.kind = value;
            else if (key == "n") cfg.family.n = parse_u32(value, lineno, key);
            else if (key == "epsilon") cfg.family.epsilon = parse_rat(value, lineno, key);
            else if (key == "density") cfg.family.density = parse_double(value, lineno, key);
            else if (key == "noise") cfg.family.noise = parse_rat(value, lineno, key);
            else if (key == "p") cfg.family.p = parse_double(value, lineno, key);
            else if (key == "clique_size") cfg.family.clique_size = parse_u32(value, lineno, key);
            else if (key == "path") cfg.family.path = value;
            else throw ParseError(lineno, "unknown family key '" + key + "'");
        } else {
            AlgorithmConfig& a = cfg.algorithm;
            if (key == "kind") {
                if (value != "tester" && value != "baseline-decide")
                    throw ParseError(lineno, "algorithm kind must be tester or baseline-decide");
                a.kind = value;
            } else if (key == "epsilon") {
                a.tester.epsilon = parse_rat(value, lineno, key);
            } else if (key == "k") {
                a.tester.k = parse_rat(value, lineno, key);
            } else if (key == "c1") {
                a.tester.c1 = parse_double(value, lineno, key);
            } else if (key == "c2") {
                a.tester.c2 = parse_double(value, lineno, key);
            } else if (key == "c3") {
                a.tester.c3 = parse_double(value, lineno, key);
            } else if (key == "t") {
                a.tester.t_override = parse_u32(value, lineno, key);
            } else if (key == "x_size") {
                a.tester.x_size_override = parse_u32(value, lineno, key);
            } else if (key == "z_size") {
                a.tester.z_size_override = parse_u64(value, lineno, key);
            } else if (key == "x_size_cap") {
                a.tester.x_size_cap = parse_u32(value, lineno, key);
            } else if (key == "tie_break") {
                if (value == "always-l") a.tester.tie_break = TieBreak::AlwaysL;
                else if (value == "always-r") a.tester.tie_break = TieBreak::AlwaysR;
                else if (value == "coin") a.tester.tie_break = TieBreak::Coin;
                else throw ParseError(lineno, "tie_break must be always-l, always-r or coin");
            } else if (key == "t_induced") {
                a.t_induced = parse_u32(value, lineno, key);
            } else {
                throw ParseError(lineno, "unknown algorithm key '" + key + "'");
            }
        }
    }
    if (cfg.family.kind.empty()) throw ParseError(lineno, "missing family kind");
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

namespace {

DenseGraph make_instance(const FamilyConfig& f, uint64_t seed) {
    if (f.kind == "planted-close")
        return std::move(gen_planted_close(f.n, f.epsilon, f.density, f.noise, seed).graph);
    if (f.kind == "far-dense") return std::move(gen_far_dense(f.n, f.p, seed).graph);
    if (f.kind == "clique-union")
        return std::move(gen_union_of_cliques(f.n, f.clique_size).graph);
    if (f.kind == "file") return load_graph_file(f.path);
    throw std::invalid_argument("unknown family kind '" + f.kind + "'");
}

void accumulate(QueryLedger& into, const QueryLedger& from) {
    into.total_queries += from.total_queries;
    into.distinct_pairs += from.distinct_pairs;
    into.sampled_vertices += from.sampled_vertices;
}

struct TrialOutcome {
    TrialRow row;
    bool ledger_exact = true;
    bool capacity_error = false;
};

TrialOutcome run_trial(const ExperimentConfig& cfg, const DenseGraph* fixed, uint64_t trial) {
    TrialOutcome out;
    TrialRow& row = out.row;
    row.trial = trial;
    row.seed = trial_seed(cfg.master_seed, trial);

    auto started = std::chrono::steady_clock::now();
    try {
        std::optional<DenseGraph> own;
        const DenseGraph* g = fixed;
        if (!g) {
            own.emplace(make_instance(cfg.family, derive_seed(row.seed, 1)));
            g = &*own;
        }

        uint64_t votes = 0;
        std::vector<std::pair<bool, std::optional<Rat>>> reps;
        reps.reserve(cfg.majority);
        for (uint32_t rep = 0; rep < cfg.majority; ++rep) {
            DenseGraphOracle oracle(*g);
            uint64_t algo_seed = derive_seed(row.seed, 2 + rep);
            if (cfg.algorithm.kind == "tester") {
                TesterParams p = cfg.algorithm.tester;
                p.seed = algo_seed;
                Verdict v = run_tester(oracle, p);
                if (!(oracle.ledger() == v.ledger &&
                      v.ledger.total_queries == v.predicted_queries))
                    out.ledger_exact = false;
                votes += v.accept ? 1 : 0;
                reps.emplace_back(v.accept,
                                  v.witness ? std::optional<Rat>(v.witness->zeta)
                                            : std::nullopt);
            } else {
                BaselineDecision d = tolerant_decide_baseline(
                    oracle, cfg.algorithm.tester.epsilon, cfg.algorithm.tester.k, algo_seed,
                    cfg.algorithm.t_induced);
                if (oracle.ledger().total_queries != d.estimate.queries_used)
                    out.ledger_exact = false;
                votes += d.accept ? 1 : 0;
                reps.emplace_back(d.accept, d.estimate.value);
            }
            accumulate(row.ledger, oracle.ledger());
        }
        bool accept = 2 * votes > cfg.majority;
        row.decision = accept ? TrialDecision::Accept : TrialDecision::Reject;
        for (const auto& [rep_accept, rep_zeta] : reps)
            if (rep_accept == accept) {
                row.zeta = rep_zeta;
                break;
            }
    } catch (const CapacityError&) {
        row.decision = TrialDecision::Error;
        out.capacity_error = true;
        out.ledger_exact = false;
    }
    if (cfg.measure_runtime) {
        auto elapsed = std::chrono::steady_clock::now() - started;
        row.runtime_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials == 0) throw std::invalid_argument("run_experiment: trials must be positive");
    if (cfg.majority == 0 || cfg.majority % 2 == 0)
        throw std::invalid_argument("run_experiment: majority must be odd");

    std::optional<DenseGraph> fixed;
    if (cfg.fixed_instance || cfg.family.kind == "file")
        fixed.emplace(make_instance(cfg.family, derive_seed(trial_seed(cfg.master_seed, 0), 0)));

    ExperimentResult result;
    result.rows.resize(cfg.trials);
    std::vector<uint8_t> exact(cfg.trials, 0), cap_err(cfg.trials, 0);

    uint32_t hw = std::thread::hardware_concurrency();
    auto pool = static_cast<uint64_t>(cfg.threads ? cfg.threads : (hw ? hw : 1));
    pool = std::min<uint64_t>(pool, cfg.trials);

    std::atomic<uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&]() {
        for (;;) {
            uint64_t i = next.fetch_add(1);
            if (i >= cfg.trials) return;
            try {
                TrialOutcome o = run_trial(cfg, fixed ? &*fixed : nullptr, i);
                result.rows[i] = std::move(o.row);
                exact[i] = o.ledger_exact ? 1 : 0;
                cap_err[i] = o.capacity_error ? 1 : 0;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (uint64_t w = 0; w < pool; ++w) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    double runtime_sum = 0.0, query_sum = 0.0;
    for (uint64_t i = 0; i < cfg.trials; ++i) {
        const TrialRow& row = result.rows[i];
        result.accepts += row.decision == TrialDecision::Accept ? 1 : 0;
        result.capacity_errors += cap_err[i];
        result.ledger_exact_trials += exact[i];
        result.max_queries = std::max(result.max_queries, row.ledger.total_queries);
        query_sum += static_cast<double>(row.ledger.total_queries);
        runtime_sum += row.runtime_ms;
    }
    result.accept_rate = static_cast<double>(result.accepts) / static_cast<double>(cfg.trials);
    result.accept_interval = wilson_interval(result.accepts, cfg.trials);
    result.mean_queries = query_sum / static_cast<double>(cfg.trials);
    result.mean_runtime_ms = runtime_sum / static_cast<double>(cfg.trials);
    return result;
}

namespace {

const char* kCsvHeader = "trial,seed,decision,zeta,total_queries,distinct_pairs,"
                         "sampled_vertices,runtime_ms";

const char* decision_name(TrialDecision d) {
    switch (d) {
    case TrialDecision::Accept: return "accept";
    case TrialDecision::Reject: return "reject";
    case TrialDecision::Error: return "error";
    }
    return "?";
}

std::string runtime_text(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

TrialDecision decision_from(const std::string& s, size_t line) {
    if (s == "accept") return TrialDecision::Accept;
    if (s == "reject") return TrialDecision::Reject;
    if (s == "error") return TrialDecision::Error;
    throw ParseError(line, "unknown decision '" + s + "'");
}

Rat rat_from_text(const std::string& s, size_t line) {
    auto parse_ll = [&](const std::string& part) {
        long long out = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        if (ec != std::errc() || ptr != part.data() + part.size())
            throw ParseError(line, "bad rational '" + s + "'");
        return out;
    };
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_ll(s));
    return Rat(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
}

} // namespace

void write_csv(std::ostream& os, const ExperimentResult& r) {
    os << kCsvHeader << '\n';
    for (const TrialRow& row : r.rows) {
        os << row.trial << ',' << row.seed << ',' << decision_name(row.decision) << ','
           << (row.zeta ? row.zeta->to_string() : std::string()) << ','
           << row.ledger.total_queries << ',' << row.ledger.distinct_pairs << ','
           << row.ledger.sampled_vertices << ',' << runtime_text(row.runtime_ms) << '\n';
    }
}

std::vector<TrialRow> read_csv_rows(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty csv");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ParseError(1, "unexpected csv header");
    std::vector<TrialRow> rows;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        fields.push_back(cur);
        if (fields.size() != 8) throw ParseError(lineno, "expected 8 csv fields");
        TrialRow row;
        row.trial = parse_u64(fields[0], lineno, "trial");
        row.seed = parse_u64(fields[1], lineno, "seed");
        row.decision = decision_from(fields[2], lineno);
        if (!fields[3].empty()) row.zeta = rat_from_text(fields[3], lineno);
        row.ledger.total_queries = parse_u64(fields[4], lineno, "total_queries");
        row.ledger.distinct_pairs = parse_u64(fields[5], lineno, "distinct_pairs");
        row.ledger.sampled_vertices = parse_u64(fields[6], lineno, "sampled_vertices");
        row.runtime_ms = parse_double(fields[7], lineno, "runtime_ms");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_records(std::ostream& os, const ExperimentResult& r) {
    for (const TrialRow& row : r.rows) {
        os << "trial=" << row.trial << " seed=" << row.seed
           << " decision=" << decision_name(row.decision)
           << " zeta=" << (row.zeta ? row.zeta->to_string() : std::string("-"))
           << " total_queries=" << row.ledger.total_queries
           << " distinct_pairs=" << row.ledger.distinct_pairs
           << " sampled_vertices=" << row.ledger.sampled_vertices
           << " runtime_ms=" << runtime_text(row.runtime_ms) << '\n';
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# accepts=%llu rate=%.6f wilson_lo=%.6f wilson_hi=%.6f mean_queries=%.3f "
                  "max_queries=%llu capacity_errors=%llu ledger_exact_trials=%llu "
                  "mean_runtime_ms=%.3f",
                  static_cast<unsigned long long>(r.accepts), r.accept_rate,
                  r.accept_interval.lo, r.accept_interval.hi, r.mean_queries,
                  static_cast<unsigned long long>(r.max_queries),
                  static_cast<unsigned long long>(r.capacity_errors),
                  static_cast<unsigned long long>(r.ledger_exact_trials),
                  r.mean_runtime_ms);
    os << buf << '\n';
}

} // namespace tolbip
