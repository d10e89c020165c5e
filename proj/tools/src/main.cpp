#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "tolbip/analysis.hpp"
#include "tolbip/baselines.hpp"
#include "tolbip/brute_force.hpp"
#include "tolbip/errors.hpp"
#include "tolbip/generators.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/harness.hpp"
#include "tolbip/oracle.hpp"
#include "tolbip/rational.hpp"
#include "tolbip/tester.hpp"

namespace {

using namespace tolbip;

Rat rat_arg(const std::string& text, const char* name) {
    try {
        return Rat::from_decimal(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void write_sidecar(const std::string& graph_path, const Instance& inst, uint64_t seed,
                   const std::string& extra) {
    std::ofstream meta = open_out(graph_path + ".meta");
    meta << "family=" << inst.family_tag << '\n';
    meta << "n=" << inst.graph.n() << '\n';
    meta << "edges=" << inst.graph.edge_count() << '\n';
    meta << "seed=" << seed << '\n';
    if (!extra.empty()) meta << extra;
    if (inst.certified_distance) {
        meta << "certified_lo=" << inst.certified_distance->lo << '\n';
        meta << "certified_hi=" << inst.certified_distance->hi << '\n';
    }
    if (inst.planted) meta << "planted=" << inst.planted->to_string() << '\n';
}

struct GlobalArgs {
    uint64_t seed = 0;
    std::string output;
    std::string format = "csv";
};

int cmd_generate(const GlobalArgs& g, const std::string& family, uint32_t n,
                 const std::string& eps_text, double density, const std::string& noise_text,
                 double p, uint32_t clique_size) {
    if (g.output.empty()) throw std::runtime_error("generate: --output is required");
    Instance inst = [&]() {
        if (family == "planted-close")
            return gen_planted_close(n, rat_arg(eps_text, "epsilon"), density,
                                     rat_arg(noise_text, "noise"), g.seed);
        if (family == "far-dense") return gen_far_dense(n, p, g.seed);
        return gen_union_of_cliques(n, clique_size);
    }();

    save_graph_file(inst.graph, g.output);
    std::string extra;
    if (family == "planted-close")
        extra = "epsilon=" + rat_arg(eps_text, "epsilon").to_string() +
                "\ndensity=" + std::to_string(density) +
                "\nnoise=" + rat_arg(noise_text, "noise").to_string() + "\n";
    write_sidecar(g.output, inst, g.seed, extra);

    std::cout << "wrote " << g.output << " family=" << inst.family_tag
              << " n=" << inst.graph.n() << " edges=" << inst.graph.edge_count();
    if (inst.certified_distance)
        std::cout << " certified=[" << inst.certified_distance->lo << ','
                  << inst.certified_distance->hi << ']';
    std::cout << '\n';
    return 0;
}

int cmd_distance(const std::string& input) {
    DenseGraph g = load_graph_file(input);
    DistanceWitness w = exact_bip_distance(g);
    std::cout << "distance=" << w.distance << " labeling=" << w.labeling.to_string() << '\n';
    return 0;
}

int cmd_test(const GlobalArgs& g, const std::string& input, TesterParams params) {
    DenseGraph graph = load_graph_file(input);
    DenseGraphOracle oracle(graph);
    params.seed = g.seed;
    Verdict v = run_tester(oracle, params);
    std::cout << "decision=" << (v.accept ? "accept" : "reject");
    if (v.witness)
        std::cout << " witness_i=" << v.witness->set_index
                  << " witness_j=" << v.witness->bipartition_index
                  << " zeta=" << v.witness->zeta.to_string();
    else
        std::cout << " witness_i=- witness_j=- zeta=-";
    std::cout << " threshold=" << v.zeta_threshold.to_string()
              << " clamped=" << (v.clamped ? "true" : "false")
              << " total_queries=" << v.ledger.total_queries
              << " distinct_pairs=" << v.ledger.distinct_pairs
              << " sampled_vertices=" << v.ledger.sampled_vertices
              << " predicted_queries=" << v.predicted_queries << '\n';
    return 0;
}

int cmd_baseline(const GlobalArgs& g, const std::string& estimator, const std::string& input,
                 const std::string& eps_text, const std::string& k_text,
                 std::optional<uint32_t> t_induced, std::optional<uint64_t> samples) {
    DenseGraph graph = load_graph_file(input);
    DenseGraphOracle oracle(graph);
    Rat eps = rat_arg(eps_text, "epsilon");

    if (estimator == "decide") {
        BaselineDecision d =
            tolerant_decide_baseline(oracle, eps, rat_arg(k_text, "k"), g.seed, t_induced);
        std::cout << "estimator=decide accept=" << (d.accept ? "true" : "false")
                  << " value=" << d.estimate.value.to_string()
                  << " threshold=" << d.threshold.to_string()
                  << " queries=" << d.estimate.queries_used << '\n';
        return 0;
    }

    Estimate e = [&]() {
        if (estimator == "edges") return estimate_edges(oracle, eps, g.seed, samples);
        if (estimator == "maxcut-pairs") return estimate_maxcut_pairs(oracle, eps, g.seed);
        if (estimator == "maxcut-induced")
            return estimate_maxcut_induced(oracle, eps, t_induced, g.seed);
        return estimate_bip_distance(oracle, eps, g.seed, t_induced);
    }();
    std::cout << "estimator=" << estimator << " value=" << e.value.to_string()
              << " queries=" << e.queries_used << " target=" << e.additive_target.to_string()
              << '\n';
    return 0;
}

int cmd_verify(uint32_t max_n, uint32_t max_x, const std::string& eps_text,
               const std::string& k_text, uint32_t threads) {
    SweepOptions opt;
    opt.max_n = max_n;
    opt.max_x_size = max_x;
    opt.epsilon = rat_arg(eps_text, "epsilon");
    opt.k = rat_arg(k_text, "k");
    opt.threads = threads;
    SweepStats s = run_decomposition_sweep(opt);

    auto line = [](const char* name, uint64_t checks, uint64_t failures) {
        std::cout << name << " checks=" << checks << " failures=" << failures << " "
                  << (failures == 0 ? "pass" : "FAIL") << '\n';
    };
    std::cout << "graphs=" << s.graphs << " contexts=" << s.contexts << '\n';
    line("decomposition-coverage   ", s.decomposition_checks, s.cover_failures);
    line("distance-minus-pi-bound  ", s.decomposition_checks, s.a_bound_failures);
    line("balanced-degree-bound    ", s.decomposition_checks, s.c_bound_failures);
    line("optimal-placement        ", s.graphs, s.placement_failures);
    return s.all_ok() ? 0 : 2;
}

int cmd_experiment(const GlobalArgs& g, const std::string& config_path,
                   bool output_flag_given, bool format_flag_given, uint32_t threads) {
    ExperimentConfig cfg = load_config_file(config_path);
    if (output_flag_given) cfg.output = g.output;
    if (format_flag_given)
        cfg.format = g.format == "record" ? OutputFormat::Record : OutputFormat::Csv;
    if (threads) cfg.threads = threads;

    ExperimentResult r = run_experiment(cfg);
    if (!cfg.output.empty()) {
        std::ofstream out = open_out(cfg.output);
        if (cfg.format == OutputFormat::Csv) write_csv(out, r);
        else write_records(out, r);
    }
    std::cout << "trials=" << r.rows.size() << " accepts=" << r.accepts
              << " rate=" << r.accept_rate << " wilson=[" << r.accept_interval.lo << ','
              << r.accept_interval.hi << "]"
              << " mean_queries=" << r.mean_queries << " max_queries=" << r.max_queries
              << " capacity_errors=" << r.capacity_errors
              << " ledger_exact_trials=" << r.ledger_exact_trials << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tolerant bipartiteness testing toolkit"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--seed", g.seed, "master RNG seed");
    auto* output_opt = app.add_option("--output", g.output, "output file path");
    auto* format_opt = app.add_option("--format", g.format, "output format")
                           ->check(CLI::IsMember({"csv", "record"}));

    int rc = 0;

    auto* gen = app.add_subcommand("generate", "generate an instance with certified distance");
    gen->fallthrough();
    std::string gen_family;
    uint32_t gen_n = 0, gen_clique = 3;
    std::string gen_eps = "0.05", gen_noise = "0";
    double gen_density = 0.5, gen_p = 0.5;
    gen->add_option("--family", gen_family, "planted-close | far-dense | clique-union")
        ->required()
        ->check(CLI::IsMember({"planted-close", "far-dense", "clique-union"}));
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--epsilon", gen_eps, "distance scale (planted-close)");
    gen->add_option("--density", gen_density, "crossing density (planted-close)");
    gen->add_option("--noise", gen_noise, "noise fraction (planted-close)");
    gen->add_option("--p", gen_p, "edge probability (far-dense)");
    gen->add_option("--clique-size", gen_clique, "clique size (clique-union)");
    gen->callback([&]() {
        rc = cmd_generate(g, gen_family, gen_n, gen_eps, gen_density, gen_noise, gen_p,
                          gen_clique);
    });

    auto* dist = app.add_subcommand("distance", "exact bipartite distance by brute force");
    dist->fallthrough();
    std::string dist_input;
    dist->add_option("--input", dist_input, "graph file")->required();
    dist->callback([&]() { rc = cmd_distance(dist_input); });

    auto* test = app.add_subcommand("test", "run the tolerant tester on a graph file");
    test->fallthrough();
    std::string test_input, test_eps = "0.1", test_k = "1", test_tie = "always-l";
    TesterParams test_params;
    std::optional<uint32_t> test_t, test_x;
    std::optional<uint64_t> test_z;
    test->add_option("--input", test_input, "graph file")->required();
    test->add_option("--epsilon", test_eps, "distance scale");
    test->add_option("--k", test_k, "tolerance gap");
    test->add_option("--t", test_t, "override: number of sample sets");
    test->add_option("--x-size", test_x, "override: sample set size");
    test->add_option("--z-size", test_z, "override: pair sample size");
    test->add_option("--x-size-cap", test_params.x_size_cap, "cap on derived x_size");
    test->add_option("--c1", test_params.c1, "t constant");
    test->add_option("--c2", test_params.c2, "x_size constant");
    test->add_option("--c3", test_params.c3, "z_size constant");
    test->add_option("--tie", test_tie, "tie policy")
        ->check(CLI::IsMember({"always-l", "always-r", "coin"}));
    test->callback([&]() {
        test_params.epsilon = rat_arg(test_eps, "epsilon");
        test_params.k = rat_arg(test_k, "k");
        test_params.t_override = test_t;
        test_params.x_size_override = test_x;
        test_params.z_size_override = test_z;
        test_params.tie_break = test_tie == "coin"
                                    ? TieBreak::Coin
                                    : (test_tie == "always-r" ? TieBreak::AlwaysR
                                                              : TieBreak::AlwaysL);
        rc = cmd_test(g, test_input, test_params);
    });

    auto* base = app.add_subcommand("baseline", "run a sampling estimator or decider");
    base->fallthrough();
    std::string base_estimator, base_input, base_eps = "0.1", base_k = "1";
    std::optional<uint32_t> base_t_induced;
    std::optional<uint64_t> base_samples;
    base->add_option("--estimator", base_estimator,
                     "edges | maxcut-pairs | maxcut-induced | distance | decide")
        ->required()
        ->check(CLI::IsMember({"edges", "maxcut-pairs", "maxcut-induced", "distance",
                               "decide"}));
    base->add_option("--input", base_input, "graph file")->required();
    base->add_option("--epsilon", base_eps, "additive accuracy");
    base->add_option("--k", base_k, "tolerance gap (decide)");
    base->add_option("--t-induced", base_t_induced, "induced sample size override");
    base->add_option("--samples", base_samples, "edge estimator sample override");
    base->callback([&]() {
        rc = cmd_baseline(g, base_estimator, base_input, base_eps, base_k, base_t_induced,
                          base_samples);
    });

    auto* verify = app.add_subcommand("verify", "exhaustive small-graph decomposition checks");
    verify->fallthrough();
    uint32_t verify_n = 6, verify_x = 3, verify_threads = 0;
    std::string verify_eps = "0.5", verify_k = "1";
    verify->add_option("--max-n", verify_n, "largest vertex count (<= 8)");
    verify->add_option("--max-x", verify_x, "largest sample set size");
    verify->add_option("--epsilon", verify_eps, "classification distance scale");
    verify->add_option("--k", verify_k, "classification gap");
    verify->add_option("--threads", verify_threads, "worker threads (0 = auto)");
    verify->callback(
        [&]() { rc = cmd_verify(verify_n, verify_x, verify_eps, verify_k, verify_threads); });

    auto* exp = app.add_subcommand("experiment", "run a config-driven trial farm");
    exp->fallthrough();
    std::string exp_config;
    uint32_t exp_threads = 0;
    exp->add_option("--config", exp_config, "experiment config file")->required();
    exp->add_option("--threads", exp_threads, "worker threads (0 = config/auto)");
    exp->callback([&]() {
        rc = cmd_experiment(g, exp_config, output_opt->count() > 0, format_opt->count() > 0,
                            exp_threads);
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
