#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tolbip/graph.hpp"

namespace tolbip {

// Unordered pair key; requires u != v, both < 2^32.
inline uint64_t pair_key(uint32_t u, uint32_t v) {
    uint32_t lo = u < v ? u : v;
    uint32_t hi = u < v ? v : u;
    return (static_cast<uint64_t>(lo) << 32) | hi;
}

struct QueryLedger {
    uint64_t total_queries = 0;    // every query() call, repeats included
    uint64_t distinct_pairs = 0;   // unique unordered pairs seen so far
    uint64_t sampled_vertices = 0; // vertex samples charged via record_sampled_vertices

    friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

// Adjacency-query access to a graph on vertices 0..n-1. All concrete
// oracles count through the same ledger bookkeeping here.
class QueryOracle {
public:
    explicit QueryOracle(uint32_t n) : n_(n) {}
    virtual ~QueryOracle() = default;

    uint32_t n() const { return n_; }
    const QueryLedger& ledger() const { return ledger_; }
    void record_sampled_vertices(uint64_t count) { ledger_.sampled_vertices += count; }
    void reset_ledger();

    // Is {u,v} an edge? Throws out_of_range / invalid_argument on bad pairs.
    bool query(uint32_t u, uint32_t v);

protected:
    virtual bool answer(uint32_t u, uint32_t v) = 0;

private:
    uint32_t n_;
    QueryLedger ledger_;
    std::unordered_set<uint64_t> seen_;
};

class DenseGraphOracle : public QueryOracle {
public:
    explicit DenseGraphOracle(const DenseGraph& g) : QueryOracle(g.n()), g_(g) {}
    // The oracle only references the graph; a temporary would dangle.
    explicit DenseGraphOracle(DenseGraph&&) = delete;

protected:
    bool answer(uint32_t u, uint32_t v) override { return g_.has_edge(u, v); }

private:
    const DenseGraph& g_;
};

// Caches answers so the wrapped oracle is consulted at most once per pair.
// Its own ledger still counts every call made through it.
class MemoizingOracle : public QueryOracle {
public:
    explicit MemoizingOracle(QueryOracle& inner) : QueryOracle(inner.n()), inner_(inner) {}

protected:
    bool answer(uint32_t u, uint32_t v) override;

private:
    QueryOracle& inner_;
    std::unordered_map<uint64_t, bool> cache_;
};

// Passes every query through and keeps the full (u, v, answer) trace.
class RecordingOracle : public QueryOracle {
public:
    struct Entry {
        uint32_t u;
        uint32_t v;
        bool edge;
    };

    explicit RecordingOracle(QueryOracle& inner) : QueryOracle(inner.n()), inner_(inner) {}

    const std::vector<Entry>& trace() const { return trace_; }
    void dump_trace(std::ostream& os) const; // one "u v 0|1" line per query

protected:
    bool answer(uint32_t u, uint32_t v) override;

private:
    QueryOracle& inner_;
    std::vector<Entry> trace_;
};

} // namespace tolbip
