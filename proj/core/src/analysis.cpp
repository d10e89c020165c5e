#include "tolbip/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <thread>

#include "tolbip/brute_force.hpp"
#include "tolbip/errors.hpp"
#include "tolbip/rng.hpp"

namespace tolbip {

namespace {

std::vector<uint8_t> membership(uint32_t n, const std::vector<uint32_t>& verts,
                                const char* who) {
    std::vector<uint8_t> in(n, 0);
    for (uint32_t v : verts) {
        if (v >= n) throw std::invalid_argument(std::string(who) + ": vertex out of range");
        if (in[v]) throw std::invalid_argument(std::string(who) + ": repeated vertex");
        in[v] = 1;
    }
    return in;
}

uint64_t same_side_count(const DenseGraph& g, const Bipartition& f,
                         const std::vector<std::vector<uint64_t>>& side_masks, uint32_t v) {
    return g.neighbors_in(v, side_masks[static_cast<size_t>(f.side(v))].data());
}

std::vector<std::vector<uint64_t>> side_masks_of(const DenseGraph& g, const Bipartition& f) {
    return {f.mask(Side::L, g.words_per_row()), f.mask(Side::R, g.words_per_row())};
}

} // namespace

std::vector<uint32_t> heavy_set(const DenseGraph& g, const Bipartition& f,
                                const ClassificationParams& p) {
    std::vector<VertexClass> classes = classify(g, f, p);
    std::vector<uint32_t> out;
    for (uint32_t v = 0; v < g.n(); ++v)
        if (is_heavy(classes[v])) out.push_back(v);
    return out;
}

uint64_t compute_pi(const DenseGraph& g, const Bipartition& f,
                    const std::vector<uint32_t>& x_set, const ClassificationParams& p) {
    std::vector<uint8_t> in_x = membership(g.n(), x_set, "compute_pi");
    std::vector<VertexClass> classes = classify(g, f, p);
    auto masks = side_masks_of(g, f);
    uint64_t pi = 0;
    for (uint32_t v = 0; v < g.n(); ++v)
        if (!is_heavy(classes[v]) && !in_x[v]) pi += same_side_count(g, f, masks, v);
    return pi;
}

ProofContext ProofContext::make(DenseGraph g, Bipartition f_opt, std::vector<uint32_t> x_set,
                                ClassificationParams params,
                                std::optional<std::vector<uint32_t>> h_prime) {
    if (f_opt.n() != g.n() || !f_opt.is_full())
        throw std::invalid_argument("proof context: f_opt must be full over the graph");
    if (params.n != g.n())
        throw std::invalid_argument("proof context: params sized for a different n");
    membership(g.n(), x_set, "proof context x_set");
    if (bip_distance_wrt(g, f_opt) != exact_bip_distance(g).distance)
        throw std::invalid_argument("proof context: f_opt is not optimal");

    std::vector<VertexClass> classes = classify(g, f_opt, params);
    std::vector<uint32_t> hp;
    if (h_prime) {
        hp = *h_prime;
        membership(g.n(), hp, "proof context h_prime");
        for (uint32_t v : hp)
            if (!is_heavy(classes[v]))
                throw std::invalid_argument("proof context: h_prime vertex is not heavy");
    } else {
        for (uint32_t v = 0; v < g.n(); ++v)
            if (is_heavy(classes[v])) hp.push_back(v);
    }
    return ProofContext{std::move(g), std::move(f_opt), std::move(x_set), params,
                        std::move(hp), std::move(classes)};
}

Bipartition build_special_bipartition(const ProofContext& ctx, RestPolicy policy,
                                      uint64_t seed) {
    const DenseGraph& g = ctx.graph;
    Bipartition spl(g.n());
    for (uint32_t v : ctx.x_set) spl.set(v, ctx.f_opt.side(v));
    for (uint32_t v : ctx.h_prime) {
        if (spl.assigned(v)) continue; // x_set assignment wins; identical for optimal f
        spl.set(v, (ctx.classes[v] & kLHeavy) ? Side::R : Side::L);
    }

    Rng rng(seed);
    for (uint32_t v = 0; v < g.n(); ++v) {
        if (spl.assigned(v)) continue;
        switch (policy) {
        case RestPolicy::CopyF: spl.set(v, ctx.f_opt.side(v)); break;
        case RestPolicy::Arbitrary: spl.set(v, rng.coin() ? Side::R : Side::L); break;
        case RestPolicy::AdversarialWorst: {
            uint64_t on_l = 0, on_r = 0;
            for (uint32_t u = 0; u < g.n(); ++u) {
                if (u == v || !spl.assigned(u) || !g.has_edge(u, v)) continue;
                (spl.side(u) == Side::L ? on_l : on_r) += 1;
            }
            spl.set(v, on_r > on_l ? Side::R : Side::L);
            break;
        }
        }
    }
    return spl;
}

bool agrees_on(const Bipartition& candidate, const Bipartition& f,
               const std::vector<uint32_t>& verts) {
    for (uint32_t v : verts)
        if (candidate.side(v) != f.side(v)) return false;
    return true;
}

bool is_derived(const Bipartition& candidate, const Bipartition& f,
                const std::vector<uint32_t>& x_set) {
    return candidate.n() == f.n() && candidate.is_full() && agrees_on(candidate, f, x_set);
}

DecompositionReport check_decomposition(const ProofContext& ctx, const Bipartition& spl) {
    const DenseGraph& g = ctx.graph;
    const uint32_t n = g.n();
    if (spl.n() != n || !spl.is_full())
        throw std::invalid_argument("check_decomposition: spl must be full");
    if (!agrees_on(spl, ctx.f_opt, ctx.x_set))
        throw std::invalid_argument("check_decomposition: spl must copy f_opt on x_set");
    for (uint32_t v : ctx.h_prime) {
        Side expected = (ctx.classes[v] & kLHeavy) ? Side::R : Side::L;
        if (spl.side(v) != expected)
            throw std::invalid_argument(
                "check_decomposition: spl must oppose the heavy side on h_prime");
    }

    std::vector<uint8_t> in_x = membership(n, ctx.x_set, "check_decomposition");
    std::vector<uint8_t> in_a = in_x;
    for (uint32_t v : ctx.h_prime) in_a[v] = 1;

    std::vector<uint8_t> heavy_off_a(n, 0), balanced_off_x(n, 0);
    for (uint32_t v = 0; v < n; ++v) {
        bool heavy = is_heavy(ctx.classes[v]);
        heavy_off_a[v] = heavy && !in_a[v];
        balanced_off_x[v] = !heavy && !in_x[v];
    }

    DecompositionReport r;
    for (uint32_t u = 0; u + 1 < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v) {
            if (!g.has_edge(u, v) || spl.side(u) != spl.side(v)) continue;
            if (in_a[u] && in_a[v]) r.d_a += 2;
            if (heavy_off_a[u] || heavy_off_a[v]) r.d_b += 2;
            if (balanced_off_x[u] || balanced_off_x[v]) r.d_c += 2;
        }
    r.d_spl = bip_distance_wrt(g, spl);
    r.d_f = bip_distance_wrt(g, ctx.f_opt);
    r.pi = compute_pi(g, ctx.f_opt, ctx.x_set, ctx.params);

    auto masks = side_masks_of(g, ctx.f_opt);
    Rat type1_sum(0), type2_sum(0);
    for (uint32_t v = 0; v < n; ++v) {
        if (is_heavy(ctx.classes[v]) || in_x[v]) continue;
        auto same = static_cast<long long>(same_side_count(g, ctx.f_opt, masks, v));
        if (ctx.classes[v] & kBalanced1) type1_sum = type1_sum + Rat(same);
        if (ctx.classes[v] & kBalanced2) type2_sum = type2_sum + Rat(same);
    }
    long long nn = static_cast<long long>(n) * n;
    r.t1 = Rat(2) * type1_sum + ctx.params.k * ctx.params.epsilon * Rat(nn, 150);
    r.t2 = (Rat(2) + ctx.params.k / Rat(200)) * type2_sum;

    r.covers = r.d_spl <= r.d_a + r.d_b + r.d_c;
    r.a_bound = r.d_a + r.pi <= r.d_f;
    r.c_bound = Rat(static_cast<long long>(r.d_c)) <= r.t1 + r.t2;
    return r;
}

bool check_optimal_placement(const DenseGraph& g, const ClassificationParams& p) {
    const uint32_t n = g.n();
    if (n == 0) return true;
    if (n > kBipartitionEnumCap)
        throw CapacityError("check_optimal_placement: graph beyond brute-force cap");
    uint64_t best = exact_bip_distance(g).distance;
    uint64_t half = uint64_t{1} << (n - 1);
    for (uint64_t s = 0; s < half; ++s) {
        Bipartition f = Bipartition::from_mask(n, s << 1);
        if (bip_distance_wrt(g, f) != best) continue;
        std::vector<VertexClass> classes = classify(g, f, p);
        for (uint32_t v = 0; v < n; ++v) {
            if ((classes[v] & kLHeavy) && f.side(v) != Side::R) return false;
            if ((classes[v] & kRHeavy) && f.side(v) != Side::L) return false;
        }
    }
    return true;
}

std::vector<HeavyMarginStat> heavy_margin_statistic(const DenseGraph& g, const Bipartition& f,
                                                    const std::vector<uint32_t>& x_set,
                                                    const ClassificationParams& p) {
    membership(g.n(), x_set, "heavy_margin_statistic");
    std::vector<VertexClass> classes = classify(g, f, p);
    size_t words = g.words_per_row();
    std::vector<uint64_t> in_x_l(words, 0), in_x_r(words, 0);
    for (uint32_t v : x_set)
        (f.side(v) == Side::L ? in_x_l : in_x_r)[v >> 6] |= uint64_t{1} << (v & 63);

    Rat threshold = p.k * p.k * p.epsilon *
                    Rat(static_cast<long long>(x_set.size()), 225000);
    std::vector<HeavyMarginStat> out;
    for (uint32_t v = 0; v < g.n(); ++v) {
        if (!is_heavy(classes[v])) continue;
        HeavyMarginStat s;
        s.v = v;
        s.l_heavy = (classes[v] & kLHeavy) != 0;
        auto on_l = static_cast<long long>(g.neighbors_in(v, in_x_l.data()));
        auto on_r = static_cast<long long>(g.neighbors_in(v, in_x_r.data()));
        s.in_sample_margin = s.l_heavy ? on_l - on_r : on_r - on_l;
        s.threshold = threshold;
        s.meets = Rat(s.in_sample_margin) >= threshold;
        out.push_back(s);
    }
    return out;
}

namespace {

DenseGraph graph_from_pair_mask(uint32_t n, uint64_t mask) {
    DenseGraph g(n);
    uint32_t bit = 0;
    for (uint32_t u = 0; u + 1 < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v, ++bit)
            if (mask & (uint64_t{1} << bit)) g.add_edge(u, v);
    return g;
}

std::vector<std::vector<uint32_t>> small_subsets(uint32_t n, uint32_t max_size) {
    std::vector<std::vector<uint32_t>> out;
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
        if (static_cast<uint32_t>(std::popcount(mask)) > max_size) continue;
        std::vector<uint32_t> verts;
        for (uint32_t v = 0; v < n; ++v)
            if (mask & (uint32_t{1} << v)) verts.push_back(v);
        out.push_back(std::move(verts));
    }
    return out;
}

void sweep_one_graph(uint32_t n, uint64_t mask,
                     const std::vector<std::vector<uint32_t>>& subsets,
                     const ClassificationParams& params, SweepStats& stats) {
    DenseGraph g = graph_from_pair_mask(n, mask);
    ++stats.graphs;
    if (!check_optimal_placement(g, params)) ++stats.placement_failures;

    DistanceWitness w = exact_bip_distance(g);
    for (size_t si = 0; si < subsets.size(); ++si) {
        ProofContext ctx =
            ProofContext::make(g, w.labeling, subsets[si], params, std::nullopt);
        ++stats.contexts;
        constexpr RestPolicy kPolicies[] = {RestPolicy::CopyF, RestPolicy::AdversarialWorst,
                                            RestPolicy::Arbitrary};
        for (RestPolicy policy : kPolicies) {
            uint64_t seed = derive_seed(derive_seed(mask, si), static_cast<uint64_t>(policy));
            Bipartition spl = build_special_bipartition(ctx, policy, seed);
            DecompositionReport r = check_decomposition(ctx, spl);
            ++stats.decomposition_checks;
            if (!r.covers) ++stats.cover_failures;
            if (!r.a_bound) ++stats.a_bound_failures;
            if (!r.c_bound) ++stats.c_bound_failures;
        }
    }
}

void merge(SweepStats& into, const SweepStats& from) {
    into.graphs += from.graphs;
    into.contexts += from.contexts;
    into.decomposition_checks += from.decomposition_checks;
    into.cover_failures += from.cover_failures;
    into.a_bound_failures += from.a_bound_failures;
    into.c_bound_failures += from.c_bound_failures;
    into.placement_failures += from.placement_failures;
}

} // namespace

SweepStats run_decomposition_sweep(const SweepOptions& opt) {
    if (opt.max_n == 0 || opt.max_n > 8)
        throw std::invalid_argument("sweep: max_n must lie in [1,8]");
    uint32_t hw = std::thread::hardware_concurrency();
    uint32_t pool = opt.threads ? opt.threads : (hw ? hw : 1);

    SweepStats total;
    for (uint32_t n = 1; n <= opt.max_n; ++n) {
        ClassificationParams params(opt.epsilon, opt.k, n);
        std::vector<std::vector<uint32_t>> subsets = small_subsets(n, opt.max_x_size);
        uint64_t graph_count = uint64_t{1} << (n * (n - 1) / 2);
        uint32_t workers = static_cast<uint32_t>(std::min<uint64_t>(pool, graph_count));

        std::vector<SweepStats> partial(workers);
        std::atomic<uint64_t> next{0};
        auto body = [&](uint32_t w) {
            for (;;) {
                uint64_t mask = next.fetch_add(1);
                if (mask >= graph_count) return;
                sweep_one_graph(n, mask, subsets, params, partial[w]);
            }
        };
        if (workers <= 1) {
            body(0);
        } else {
            std::vector<std::thread> threads;
            threads.reserve(workers);
            for (uint32_t w = 0; w < workers; ++w) threads.emplace_back(body, w);
            for (auto& th : threads) th.join();
        }
        for (const SweepStats& s : partial) merge(total, s);
    }
    return total;
}

} // namespace tolbip
