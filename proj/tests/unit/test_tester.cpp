#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tolbip/graph.hpp"
#include "tolbip/oracle.hpp"
#include "tolbip/tester.hpp"

using namespace tolbip;

namespace {

DenseGraph complete(uint32_t n) {
    DenseGraph g(n);
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

DenseGraph complete_bipartite(uint32_t a, uint32_t b) {
    DenseGraph g(a + b);
    for (uint32_t u = 0; u < a; ++u)
        for (uint32_t v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
}

TesterParams small_params(uint32_t t, uint32_t x, uint64_t z, uint64_t seed) {
    TesterParams p;
    p.epsilon = Rat(1, 10);
    p.k = Rat(1);
    p.t_override = t;
    p.x_size_override = x;
    p.z_size_override = z;
    p.seed = seed;
    return p;
}

} // namespace

TEST_CASE("derived parameter sizes at eps=0.05, k=1") {
    TesterParams p;
    p.epsilon = Rat(1, 20);
    p.k = Rat(1);
    CHECK(p.t() == 5);           // smallest t with 2^t * 0.05 >= 1
    CHECK(p.x_size() == 16);     // ceil(20 log2 20) = 87, clamped to the cap
    CHECK(p.x_size_clamped());
    CHECK(p.z_size() == 1729);   // ceil(400 log2 20)
    CHECK(p.theta() == Rat(16, 4500000));
    CHECK(p.zeta_threshold() == Rat(41, 400));

    p.x_size_override = 12;
    CHECK(p.x_size() == 12);
    CHECK_FALSE(p.x_size_clamped()); // overrides are taken as given
    p.x_size_override.reset();
    p.x_size_cap = 100;
    CHECK(p.x_size() == 87);
    CHECK_FALSE(p.x_size_clamped());
}

TEST_CASE("derived sizes never drop below one") {
    TesterParams p;
    p.epsilon = Rat(1, 2);
    p.k = Rat(100); // k*eps = 50 > 1 makes every logarithm negative
    CHECK(p.t() == 1);
    CHECK(p.x_size() == 1);
    CHECK(p.z_size() == 1);
}

TEST_CASE("parameter validation") {
    TesterParams p;
    p.epsilon = Rat(0);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.epsilon = Rat(1);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.epsilon = Rat(1, 10);
    p.k = Rat(0);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.k = Rat(1);
    p.c2 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.c2 = 1.0;
    p.x_size_cap = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.x_size_cap = 16;
    p.z_size_override = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.z_size_override.reset();
    p.validate();
}

TEST_CASE("extension rule follows the majority side beyond theta") {
    Rat theta(1, 10);
    // Mostly-R neighborhoods send the vertex to L and vice versa.
    CHECK(extend_label(0, 5, theta, TieBreak::AlwaysL) == Side::L);
    CHECK(extend_label(5, 0, theta, TieBreak::AlwaysL) == Side::R);
    // Within the margin: the tie policy decides.
    CHECK(extend_label(3, 3, theta, TieBreak::AlwaysL) == Side::L);
    CHECK(extend_label(3, 3, theta, TieBreak::AlwaysR) == Side::R);
    CHECK(extend_label(2, 2, theta, TieBreak::Coin, Side::R) == Side::R);
    // A difference of exactly theta is still a tie (strict comparison).
    CHECK(extend_label(0, 1, Rat(1), TieBreak::AlwaysR) == Side::R);
    CHECK(extend_label(0, 2, Rat(1), TieBreak::AlwaysR) == Side::L);
    CHECK_THROWS_AS(extend_label(0, 0, Rat(-1), TieBreak::AlwaysL), std::invalid_argument);
}

TEST_CASE("extension rule is swap equivariant on the margin branches") {
    Rat theta(1, 2);
    for (uint64_t l = 0; l <= 6; ++l)
        for (uint64_t r = 0; r <= 6; ++r) {
            if (l == r) continue; // tie branch follows policy, not symmetry
            Side a = extend_label(l, r, theta, TieBreak::AlwaysL);
            Side b = extend_label(r, l, theta, TieBreak::AlwaysL);
            if (a != b) CHECK(a == opposite(b));
        }
}

TEST_CASE("zeta is an exact rational in [0,2]") {
    std::vector<std::pair<uint32_t, uint32_t>> pairs{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    Bipartition f = Bipartition::from_string("LLRR");
    CHECK(compute_zeta(pairs, {1, 0, 0, 0}, f) == Rat(1, 2)); // {0,1} is a mono edge
    CHECK(compute_zeta(pairs, {0, 0, 0, 0}, f) == Rat(0));
    CHECK(compute_zeta(pairs, {1, 1, 1, 1}, Bipartition::from_string("LLLL")) == Rat(2));
    // Bichromatic edges do not count even when present.
    CHECK(compute_zeta(pairs, {0, 1, 0, 1}, f) == Rat(0));
    CHECK_THROWS_AS(compute_zeta({}, {}, f), std::invalid_argument);
    CHECK_THROWS_AS(compute_zeta(pairs, {1, 0}, f), std::invalid_argument);
}

TEST_CASE("sampled sets have the promised shape") {
    Rng rng(11);
    SampledSets s = sample_sets(40, 3, 5, 20, rng);
    REQUIRE(s.x_sets.size() == 3);
    for (const auto& x : s.x_sets) {
        CHECK(x.size() == 5);
        std::set<uint32_t> uniq(x.begin(), x.end());
        CHECK(uniq.size() == 5);
    }
    CHECK(s.z_pairs.size() == 20);
    for (auto [a, b] : s.z_pairs) {
        CHECK(a != b);
        CHECK(a < 40);
        CHECK(b < 40);
    }
    CHECK(std::is_sorted(s.c_vertices.begin(), s.c_vertices.end()));
    CHECK(std::is_sorted(s.z_vertices.begin(), s.z_vertices.end()));
    CHECK(s.z_edge_bits.empty()); // filled by the query phase, not sampling
    CHECK_THROWS_AS(sample_sets(4, 1, 5, 1, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_sets(1, 1, 1, 1, rng), std::invalid_argument);
}

TEST_CASE("predicted query count on hand-built sets") {
    SampledSets s;
    // Two disjoint X-sets and two Z-pairs disjoint from everything:
    // block = 6*4 = 24 distinct pairs, both Z-pairs fresh -> 26.
    s.x_sets = {{0, 1, 2}, {3, 4, 5}};
    s.c_vertices = {0, 1, 2, 3, 4, 5};
    s.z_pairs = {{6, 7}, {8, 9}};
    s.z_vertices = {6, 7, 8, 9};
    CHECK(predicted_query_count(s) == 26);

    // A Z-pair inside the block costs nothing extra.
    SampledSets t;
    t.x_sets = {{0, 1, 2}};
    t.c_vertices = {0, 1, 2};
    t.z_pairs = {{0, 1}};
    t.z_vertices = {0, 1};
    CHECK(predicted_query_count(t) == 3); // {0,1}, {0,2}, {1,2} block only

    // Repeated Z-pairs outside the block are re-queried each time.
    SampledSets u;
    u.x_sets = {{0}};
    u.c_vertices = {0};
    u.z_pairs = {{1, 2}, {2, 1}, {1, 2}};
    u.z_vertices = {1, 2};
    CHECK(predicted_query_count(u) == 5); // {0,1}, {0,2} block + 3 pair queries

    SampledSets empty;
    CHECK(predicted_query_count(empty) == 0);
}

TEST_CASE("tester accepts a 2-vertex graph immediately") {
    DenseGraph g(2);
    DenseGraphOracle o(g);
    Verdict v = run_tester(o, small_params(1, 2, 10, 0));
    CHECK(v.accept);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->set_index == 0);
    CHECK(v.witness->bipartition_index == 0);
    CHECK(v.witness->zeta == Rat(0));
    CHECK(v.zeta_threshold == Rat(41, 200)); // (2 + 1/20) * 1/10
}

TEST_CASE("ledger freezes after the query phase and matches the prediction") {
    DenseGraph g = complete_bipartite(8, 8);
    DenseGraphOracle o(g);
    TesterParams p = small_params(2, 4, 120, 5);
    Verdict v = run_tester(o, p);
    // No queries after the gather phase: the returned snapshot still equals
    // the live ledger, and totals match the plan exactly.
    CHECK(o.ledger() == v.ledger);
    CHECK(v.ledger.total_queries == v.predicted_queries);
    CHECK(v.ledger.distinct_pairs <= v.ledger.total_queries);
    CHECK(v.ledger.sampled_vertices == 2 * 4 + 2 * 120);
}

TEST_CASE("accepting verdicts carry a threshold-respecting witness") {
    DenseGraph g = complete_bipartite(6, 6);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        DenseGraphOracle o(g);
        Verdict v = run_tester(o, small_params(2, 4, 300, seed));
        CHECK(v.accept == v.witness.has_value());
        if (v.witness) {
            CHECK(v.witness->zeta <= v.zeta_threshold);
            CHECK(v.witness->set_index < 2);
            CHECK(v.witness->bipartition_index < 8); // 2^(4-1) swap classes
        }
    }
}

TEST_CASE("bipartite graphs accept and complete graphs reject at desk scale") {
    uint64_t bip_accepts = 0, clique_rejects = 0;
    DenseGraph kbb = complete_bipartite(6, 6);
    DenseGraph k12 = complete(12);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        DenseGraphOracle bip(kbb);
        bip_accepts += run_tester(bip, small_params(2, 4, 300, seed)).accept ? 1 : 0;
        DenseGraphOracle cl(k12);
        clique_rejects += run_tester(cl, small_params(2, 4, 300, seed)).accept ? 0 : 1;
    }
    CHECK(bip_accepts >= 8);
    CHECK(clique_rejects == 10); // every labeling leaves >= 10/11 of pairs monochromatic
}

TEST_CASE("runs are deterministic per seed, including coin ties") {
    DenseGraph g(10); // edgeless: every extension is a tie
    TesterParams p = small_params(2, 3, 40, 77);
    p.tie_break = TieBreak::Coin;
    DenseGraphOracle o1(g), o2(g);
    Verdict a = run_tester(o1, p);
    Verdict b = run_tester(o2, p);
    CHECK(a.accept == b.accept);
    CHECK(a.ledger == b.ledger);
    CHECK(a.predicted_queries == b.predicted_queries);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(a.witness->set_index == b.witness->set_index);
    CHECK(a.witness->bipartition_index == b.witness->bipartition_index);
    CHECK(a.witness->zeta == b.witness->zeta);
    CHECK(a.sets.z_pairs == b.sets.z_pairs);
}

TEST_CASE("configuration errors") {
    DenseGraph four = complete(4);
    DenseGraphOracle small(four);
    TesterParams p = small_params(1, 5, 10, 0); // x_size 5 > n = 4
    CHECK_THROWS_AS(run_tester(small, p), std::invalid_argument);

    DenseGraph empty30(30);
    DenseGraphOracle wide(empty30);
    TesterParams q = small_params(1, 26, 10, 0); // enumeration would be 2^25
    CHECK_THROWS_AS(run_tester(wide, q), std::invalid_argument);

    DenseGraph one(1);
    DenseGraphOracle tiny(one);
    CHECK_THROWS_AS(run_tester(tiny, small_params(1, 1, 1, 0)), std::invalid_argument);
}

TEST_CASE("clamped flag reflects the derived size hitting the cap") {
    DenseGraph g = complete_bipartite(15, 15);
    DenseGraphOracle o(g);
    TesterParams p;
    p.epsilon = Rat(1, 20);
    p.k = Rat(1);
    p.t_override = 1;
    p.z_size_override = 50;
    Verdict v = run_tester(o, p); // derived x_size 87 -> clamped to 16
    CHECK(v.clamped);

    p.x_size_override = 4;
    DenseGraphOracle o2(g);
    CHECK_FALSE(run_tester(o2, p).clamped);
}
