#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tolbip/errors.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/harness.hpp"
#include "tolbip/rng.hpp"

using namespace tolbip;

namespace {

ExperimentConfig config_from(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

size_t parse_failure_line(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_config(in);
    } catch (const ParseError& e) {
        return e.line_no;
    }
    return 0; // no throw: caller's CHECK will flag it
}

// Small deterministic experiment used by several cases.
ExperimentConfig tiny_tester_config() {
    return config_from("[experiment]\n"
                       "trials = 6\n"
                       "master_seed = 41\n"
                       "[family]\n"
                       "kind = clique-union\n"
                       "n = 12\n"
                       "clique_size = 3\n"
                       "[algorithm]\n"
                       "kind = tester\n"
                       "epsilon = 0.1\n"
                       "k = 1\n"
                       "t = 2\n"
                       "x_size = 3\n"
                       "z_size = 40\n");
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/tolbip_harness_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("wilson interval basics") {
    Interval zero = wilson_interval(0, 10);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi > 0.0);
    Interval full = wilson_interval(10, 10);
    CHECK(full.hi == 1.0);
    CHECK(full.lo < 1.0);

    Interval half = wilson_interval(50, 100);
    CHECK(half.lo > 0.40);
    CHECK(half.hi < 0.60);
    double width = half.hi - half.lo;
    CHECK(width > 0.18);
    CHECK(width < 0.20);
    CHECK(half.lo + half.hi == doctest::Approx(1.0)); // symmetric at p = 1/2

    CHECK(wilson_interval(9, 10).lo > wilson_interval(5, 10).lo);
    CHECK(wilson_interval(50, 100, 2.58).hi > half.hi); // wider at higher z

    CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(11, 10), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(5, 10, 0.0), std::invalid_argument);
}

TEST_CASE("trial seeds derive from the master seed") {
    for (uint64_t t : {0ull, 1ull, 17ull, 999ull})
        CHECK(trial_seed(12345, t) == derive_seed(12345, t));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("parse_config reads every section and key") {
    ExperimentConfig cfg = config_from("# full coverage\n"
                                       "[experiment]\n"
                                       "trials = 7\n"
                                       "master_seed = 99\n"
                                       "output = out.csv\n"
                                       "format = record\n"
                                       "fixed_instance = true\n"
                                       "measure_runtime = false\n"
                                       "majority = 3\n"
                                       "threads = 2\n"
                                       "[family]\n"
                                       "kind = planted-close\n"
                                       "n = 64\n"
                                       "epsilon = 0.05\n"
                                       "density = 0.7\n"
                                       "noise = 0.25\n"
                                       "p = 0.9\n"
                                       "clique_size = 5\n"
                                       "path = some/graph.txt\n"
                                       "[algorithm]\n"
                                       "kind = tester\n"
                                       "epsilon = 0.1\n"
                                       "k = 2\n"
                                       "c1 = 500\n"
                                       "c2 = 80000\n"
                                       "c3 = 1000000\n"
                                       "t = 3\n"
                                       "x_size = 4\n"
                                       "z_size = 128\n"
                                       "x_size_cap = 20\n"
                                       "tie_break = coin\n"
                                       "t_induced = 9\n");
    CHECK(cfg.trials == 7);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.output == "out.csv");
    CHECK(cfg.format == OutputFormat::Record);
    CHECK(cfg.fixed_instance);
    CHECK_FALSE(cfg.measure_runtime);
    CHECK(cfg.majority == 3);
    CHECK(cfg.threads == 2);

    CHECK(cfg.family.kind == "planted-close");
    CHECK(cfg.family.n == 64);
    CHECK(cfg.family.epsilon == Rat(1, 20));
    CHECK(cfg.family.density == doctest::Approx(0.7));
    CHECK(cfg.family.noise == Rat(1, 4));
    CHECK(cfg.family.p == doctest::Approx(0.9));
    CHECK(cfg.family.clique_size == 5);
    CHECK(cfg.family.path == "some/graph.txt");

    CHECK(cfg.algorithm.kind == "tester");
    CHECK(cfg.algorithm.tester.epsilon == Rat(1, 10));
    CHECK(cfg.algorithm.tester.k == Rat(2));
    CHECK(cfg.algorithm.tester.c1 == doctest::Approx(500.0));
    CHECK(cfg.algorithm.tester.c2 == doctest::Approx(80000.0));
    CHECK(cfg.algorithm.tester.c3 == doctest::Approx(1000000.0));
    REQUIRE(cfg.algorithm.tester.t_override.has_value());
    CHECK(*cfg.algorithm.tester.t_override == 3);
    REQUIRE(cfg.algorithm.tester.x_size_override.has_value());
    CHECK(*cfg.algorithm.tester.x_size_override == 4);
    REQUIRE(cfg.algorithm.tester.z_size_override.has_value());
    CHECK(*cfg.algorithm.tester.z_size_override == 128);
    CHECK(cfg.algorithm.tester.x_size_cap == 20);
    CHECK(cfg.algorithm.tester.tie_break == TieBreak::Coin);
    REQUIRE(cfg.algorithm.t_induced.has_value());
    CHECK(*cfg.algorithm.t_induced == 9);
}

TEST_CASE("parse_config defaults") {
    ExperimentConfig cfg = config_from("[family]\nkind = file\npath = g.txt\n");
    CHECK(cfg.trials == 1);
    CHECK(cfg.master_seed == 0);
    CHECK(cfg.output.empty());
    CHECK(cfg.format == OutputFormat::Csv);
    CHECK_FALSE(cfg.fixed_instance);
    CHECK_FALSE(cfg.measure_runtime);
    CHECK(cfg.majority == 1);
    CHECK(cfg.threads == 0);
    CHECK(cfg.algorithm.kind == "tester");
    CHECK_FALSE(cfg.algorithm.tester.t_override.has_value());
    CHECK_FALSE(cfg.algorithm.t_induced.has_value());
}

TEST_CASE("parse_config reports the offending line") {
    CHECK(parse_failure_line("[bogus]\n") == 1);
    CHECK(parse_failure_line("[experiment\n") == 1);
    CHECK(parse_failure_line("trials = 3\n") == 1); // key before any section
    CHECK(parse_failure_line("[experiment]\nbogus = 1\n") == 2);
    CHECK(parse_failure_line("[experiment]\nmajority = 2\n") == 2);
    CHECK(parse_failure_line("[experiment]\ntrials = 0\n") == 2);
    CHECK(parse_failure_line("[experiment]\nformat = xml\n") == 2);
    CHECK(parse_failure_line("[experiment]\ntrials\n") == 2);     // no '='
    CHECK(parse_failure_line("[experiment]\noutput =\n") == 2);   // empty value
    CHECK(parse_failure_line("[experiment]\ntrials = many\n") == 2);
    CHECK(parse_failure_line("[family]\nwidth = 3\n") == 2);
    CHECK(parse_failure_line("[algorithm]\nkind = quantum\n") == 2);
    CHECK(parse_failure_line("[algorithm]\ntie_break = dice\n") == 2);
    CHECK(parse_failure_line("[experiment]\nfixed_instance = yes\n") == 2);
    // A config that never names a family kind fails at its last line.
    CHECK(parse_failure_line("[experiment]\ntrials = 2\nmaster_seed = 1\n") == 3);
    // what() carries the same number.
    try {
        config_from("[experiment]\nmajority = 2\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
    }
}

TEST_CASE("load_config_file") {
    TempFile tmp("cfg.ini");
    {
        std::ofstream out(tmp.path);
        out << "[family]\nkind = clique-union\nn = 9\nclique_size = 3\n";
    }
    ExperimentConfig cfg = load_config_file(tmp.path);
    CHECK(cfg.family.kind == "clique-union");
    CHECK(cfg.family.n == 9);
    CHECK_THROWS_AS(load_config_file("/nonexistent/tolbip.ini"), std::runtime_error);
}

TEST_CASE("experiment rows are seeded, ordered, and csv round trips") {
    ExperimentConfig cfg = tiny_tester_config();
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.rows.size() == 6);
    for (uint64_t i = 0; i < 6; ++i) {
        CHECK(res.rows[i].trial == i);
        CHECK(res.rows[i].seed == trial_seed(41, i));
        CHECK(res.rows[i].ledger.total_queries > 0);
        CHECK(res.rows[i].runtime_ms == 0.0); // measure_runtime off
    }
    CHECK(res.accepts <= 6);
    CHECK(res.accept_rate == doctest::Approx(static_cast<double>(res.accepts) / 6.0));
    CHECK(res.capacity_errors == 0);
    CHECK(res.ledger_exact_trials == 6);
    CHECK(res.max_queries >= static_cast<uint64_t>(res.mean_queries));

    std::ostringstream out;
    write_csv(out, res);
    std::istringstream back(out.str());
    std::vector<TrialRow> rows = read_csv_rows(back);
    CHECK(rows == res.rows);
    CHECK(out.str().rfind("trial,seed,decision,zeta,total_queries,distinct_pairs,"
                          "sampled_vertices,runtime_ms\n",
                          0) == 0);
}

TEST_CASE("reruns of the same config are byte identical") {
    ExperimentConfig cfg = tiny_tester_config();
    std::ostringstream a, b;
    write_csv(a, run_experiment(cfg));
    write_csv(b, run_experiment(cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str().find("nan") == std::string::npos);
}

TEST_CASE("record output carries per-trial lines and an aggregate line") {
    ExperimentResult res = run_experiment(tiny_tester_config());
    std::ostringstream out;
    write_records(out, res);
    std::string text = out.str();
    CHECK(text.find("trial=0 seed=") != std::string::npos);
    CHECK(text.find("# accepts=") != std::string::npos);
    CHECK(text.find("ledger_exact_trials=6") != std::string::npos);
    CHECK(text.find("zeta=") != std::string::npos);
}

TEST_CASE("capacity errors become error rows, not crashes") {
    ExperimentConfig cfg = config_from("[experiment]\n"
                                       "trials = 3\n"
                                       "[family]\n"
                                       "kind = planted-close\n"
                                       "n = 4\n"
                                       "epsilon = 0.9\n"
                                       "noise = 0.9\n"
                                       "[algorithm]\n"
                                       "kind = tester\n"
                                       "epsilon = 0.5\n"
                                       "t = 1\n"
                                       "x_size = 2\n"
                                       "z_size = 4\n");
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.rows.size() == 3);
    for (const TrialRow& row : res.rows) {
        CHECK(row.decision == TrialDecision::Error);
        CHECK_FALSE(row.zeta.has_value());
        CHECK(row.ledger.total_queries == 0);
    }
    CHECK(res.capacity_errors == 3);
    CHECK(res.accepts == 0);
    CHECK(res.ledger_exact_trials == 0);

    // "error" decisions and empty zeta fields survive the CSV round trip.
    std::ostringstream out;
    write_csv(out, res);
    CHECK(out.str().find(",error,,") != std::string::npos);
    std::istringstream back(out.str());
    CHECK(read_csv_rows(back) == res.rows);

    std::ostringstream rec;
    write_records(rec, res);
    CHECK(rec.str().find("decision=error zeta=-") != std::string::npos);
}

TEST_CASE("file families load once and reuse the instance") {
    TempFile tmp("family.graph");
    {
        DenseGraph g(6);
        for (uint32_t u = 0; u < 3; ++u)
            for (uint32_t v = 3; v < 6; ++v) g.add_edge(u, v);
        save_graph_file(g, tmp.path);
    }
    ExperimentConfig cfg = config_from("[experiment]\n"
                                       "trials = 4\n"
                                       "master_seed = 7\n"
                                       "[family]\n"
                                       "kind = file\n"
                                       "path = " +
                                       tmp.path +
                                       "\n"
                                       "[algorithm]\n"
                                       "epsilon = 0.5\n"
                                       "t = 2\n"
                                       "x_size = 3\n"
                                       "z_size = 12\n");
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.rows.size() == 4);
    CHECK(res.capacity_errors == 0);
    CHECK(res.ledger_exact_trials == 4);
    // Distinct per-trial seeds even on a fixed instance.
    CHECK(res.rows[0].seed != res.rows[1].seed);
}

TEST_CASE("baseline-decide experiments populate zeta with the estimate") {
    ExperimentConfig cfg = config_from("[experiment]\n"
                                       "trials = 3\n"
                                       "master_seed = 5\n"
                                       "[family]\n"
                                       "kind = clique-union\n"
                                       "n = 30\n"
                                       "clique_size = 3\n"
                                       "[algorithm]\n"
                                       "kind = baseline-decide\n"
                                       "epsilon = 0.1\n"
                                       "k = 1\n"
                                       "t_induced = 10\n");
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.rows.size() == 3);
    for (const TrialRow& row : res.rows) {
        CHECK(row.decision != TrialDecision::Error);
        // The estimate is always reported, even when the difference of the
        // two estimator halves dips below zero.
        REQUIRE(row.zeta.has_value());
        CHECK(row.ledger.total_queries > 0);
    }
    CHECK(res.ledger_exact_trials == 3);
}

TEST_CASE("majority voting runs an odd panel per trial") {
    ExperimentConfig single = tiny_tester_config();
    single.trials = 2;
    ExperimentConfig panel = single;
    panel.majority = 3;
    ExperimentResult r1 = run_experiment(single);
    ExperimentResult r3 = run_experiment(panel);
    REQUIRE(r3.rows.size() == 2);
    for (uint64_t i = 0; i < 2; ++i) {
        // Rep 0 of the panel reuses the single run's seed, so the panel
        // ledger strictly extends it; per-rep vertex sampling is fixed.
        CHECK(r3.rows[i].ledger.total_queries > r1.rows[i].ledger.total_queries);
        CHECK(r3.rows[i].ledger.sampled_vertices ==
              3 * r1.rows[i].ledger.sampled_vertices);
        // Tester reps carry a witness only when they accept, and the row
        // reports the first rep that voted with the majority.
        CHECK(r3.rows[i].zeta.has_value() ==
              (r3.rows[i].decision == TrialDecision::Accept));
    }
    CHECK(r3.ledger_exact_trials == 2);
}

TEST_CASE("run_experiment validates its direct inputs") {
    ExperimentConfig cfg = tiny_tester_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = tiny_tester_config();
    cfg.majority = 4;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = tiny_tester_config();
    cfg.family.kind = "mystery";
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
