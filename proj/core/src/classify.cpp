#include "tolbip/classify.hpp"

#include <stdexcept>

namespace tolbip {

ClassificationParams::ClassificationParams(Rat epsilon_, Rat k_, uint32_t n_)
    : epsilon(epsilon_), k(k_), n(n_) {
    if (!(epsilon > Rat(0) && epsilon < Rat(1)))
        throw std::invalid_argument("classification: epsilon must lie in (0,1)");
    if (!(k > Rat(0) && k <= Rat(100)))
        throw std::invalid_argument("classification: k must lie in (0,100]");
    if (n_ == 0) throw std::invalid_argument("classification: n must be positive");
}

Rat ClassificationParams::margin() const {
    return k * epsilon * Rat(static_cast<long long>(n), 150);
}

Rat ClassificationParams::ratio() const { return Rat(1) + k / Rat(200); }

VertexClass classify_counts(uint64_t n_l, uint64_t n_r, const ClassificationParams& p) {
    const Rat margin = p.margin();
    const Rat ratio = p.ratio();
    const Rat l(static_cast<long long>(n_l));
    const Rat r(static_cast<long long>(n_r));

    auto heavy_toward = [&](const Rat& big, const Rat& small) {
        if (!(big >= small + margin)) return false;
        // The ratio condition only binds once the minority side is sizable.
        if (small >= margin / ratio && !(big >= ratio * small)) return false;
        return true;
    };

    VertexClass c = 0;
    if (heavy_toward(l, r)) c |= kLHeavy;
    if (heavy_toward(r, l)) c |= kRHeavy;

    Rat diff = n_r >= n_l ? r - l : l - r;
    if (diff < margin) c |= kBalanced1;

    const Rat& lo = n_l <= n_r ? l : r;
    const Rat& hi = n_l <= n_r ? r : l;
    if (hi < ratio * lo || n_l == n_r) c |= kBalanced2;

    return c;
}

std::vector<VertexClass> classify(const DenseGraph& g, const Bipartition& f,
                                  const ClassificationParams& p) {
    if (f.n() != g.n() || !f.is_full())
        throw std::invalid_argument("classify: labeling must be full over the graph");
    if (p.n != g.n()) throw std::invalid_argument("classify: params sized for a different n");
    size_t words = g.words_per_row();
    std::vector<uint64_t> l_mask = f.mask(Side::L, words);
    std::vector<uint64_t> r_mask = f.mask(Side::R, words);
    std::vector<VertexClass> out(g.n());
    for (uint32_t v = 0; v < g.n(); ++v)
        out[v] = classify_counts(g.neighbors_in(v, l_mask.data()),
                                 g.neighbors_in(v, r_mask.data()), p);
    return out;
}

} // namespace tolbip
