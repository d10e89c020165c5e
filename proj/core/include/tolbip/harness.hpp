#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tolbip/oracle.hpp"
#include "tolbip/rational.hpp"
#include "tolbip/tester.hpp"

namespace tolbip {

// Wilson score interval for a binomial rate, clamped to [0,1].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
Interval wilson_interval(uint64_t successes, uint64_t trials, double z = 1.96);

struct FamilyConfig {
    std::string kind;       // planted-close | far-dense | clique-union | file
    uint32_t n = 0;
    Rat epsilon{1, 20};     // planted-close distance scale
    double density = 0.5;   // planted-close crossing density
    Rat noise{0};           // planted-close noise fraction
    double p = 0.5;         // far-dense edge probability
    uint32_t clique_size = 3;
    std::string path;       // file family
};

struct AlgorithmConfig {
    std::string kind = "tester"; // tester | baseline-decide
    TesterParams tester;         // epsilon and k feed the baseline too
    std::optional<uint32_t> t_induced; // induced MaxCut sample size (baseline)
};

enum class OutputFormat { Csv, Record };

struct ExperimentConfig {
    uint64_t trials = 1;
    uint64_t master_seed = 0;
    std::string output;   // empty: no file written by run_experiment callers
    OutputFormat format = OutputFormat::Csv;
    bool fixed_instance = false; // generate once, reuse across trials
    bool measure_runtime = false; // off keeps reruns byte-identical
    uint32_t majority = 1;        // odd; decision by majority over this many runs
    uint32_t threads = 0;         // 0: hardware concurrency
    FamilyConfig family;
    AlgorithmConfig algorithm;
};

// Line-oriented config: [experiment] / [family] / [algorithm] sections,
// key = value pairs, '#' comments. Unknown keys or bad values raise
// ParseError with the line number.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

enum class TrialDecision : uint8_t { Reject = 0, Accept = 1, Error = 2 };

struct TrialRow {
    uint64_t trial = 0;
    uint64_t seed = 0; // per-trial seed derived from the master seed
    TrialDecision decision = TrialDecision::Reject;
    std::optional<Rat> zeta; // tester witness zeta, or the baseline estimate
    QueryLedger ledger;
    double runtime_ms = 0.0;

    friend bool operator==(const TrialRow&, const TrialRow&) = default;
};

struct ExperimentResult {
    std::vector<TrialRow> rows; // ordered by trial index
    uint64_t accepts = 0;
    uint64_t capacity_errors = 0;
    uint64_t ledger_exact_trials = 0; // trials whose ledger matched the predicted plan
    double accept_rate = 0.0;
    Interval accept_interval;
    double mean_queries = 0.0;
    uint64_t max_queries = 0;
    double mean_runtime_ms = 0.0;
};

// Runs cfg.trials seeded trials (worker pool; rows ordered by index),
// generating one instance per trial unless fixed_instance is set, and
// aggregates acceptance statistics. Capacity errors become Error rows.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Fixed CSV schema: trial,seed,decision,zeta,total_queries,distinct_pairs,
// sampled_vertices,runtime_ms. Decision is accept|reject|error; a missing
// zeta prints as an empty field; rationals print as num/den.
void write_csv(std::ostream& os, const ExperimentResult& r);
std::vector<TrialRow> read_csv_rows(std::istream& in);

// Same fields as key=value pairs, one line per trial, then aggregate
// lines prefixed with '#'.
void write_records(std::ostream& os, const ExperimentResult& r);

// Derivation used for everything seeded from the experiment master seed:
// trial seed = derive_seed(master, trial); generator and algorithm seeds
// hang off the trial seed at fixed indices.
uint64_t trial_seed(uint64_t master_seed, uint64_t trial);

} // namespace tolbip
