#include "tolbip/oracle.hpp"

#include <ostream>
#include <stdexcept>

namespace tolbip {

void QueryOracle::reset_ledger() {
    ledger_ = QueryLedger{};
    seen_.clear();
}

bool QueryOracle::query(uint32_t u, uint32_t v) {
    if (u >= n_ || v >= n_) throw std::out_of_range("oracle: vertex out of range");
    if (u == v) throw std::invalid_argument("oracle: diagonal query");
    ++ledger_.total_queries;
    if (seen_.insert(pair_key(u, v)).second) ++ledger_.distinct_pairs;
    return answer(u, v);
}

bool MemoizingOracle::answer(uint32_t u, uint32_t v) {
    uint64_t key = pair_key(u, v);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    bool edge = inner_.query(u, v);
    cache_.emplace(key, edge);
    return edge;
}

bool RecordingOracle::answer(uint32_t u, uint32_t v) {
    bool edge = inner_.query(u, v);
    trace_.push_back({u, v, edge});
    return edge;
}

void RecordingOracle::dump_trace(std::ostream& os) const {
    for (const Entry& e : trace_) os << e.u << ' ' << e.v << ' ' << (e.edge ? 1 : 0) << '\n';
}

} // namespace tolbip
