#include "tolbip/graph.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tolbip/errors.hpp"

namespace tolbip {

DenseGraph::DenseGraph(uint32_t n)
    : n_(n), stride_((static_cast<size_t>(n) + 63) / 64), bits_(static_cast<size_t>(n) * stride_, 0) {}

DenseGraph DenseGraph::from_edges(uint32_t n,
                                  const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
    DenseGraph g(n);
    for (const auto& [u, v] : edges) {
        if (!g.add_edge(u, v))
            throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    return g;
}

void DenseGraph::check_pair(uint32_t u, uint32_t v) const {
    if (u >= n_ || v >= n_)
        throw std::out_of_range("vertex out of range: " + std::to_string(u) + "," +
                                std::to_string(v) + " with n=" + std::to_string(n_));
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
}

bool DenseGraph::add_edge(uint32_t u, uint32_t v) {
    check_pair(u, v);
    uint64_t& wu = bits_[static_cast<size_t>(u) * stride_ + v / 64];
    uint64_t bu = 1ULL << (v % 64);
    if (wu & bu) return false;
    wu |= bu;
    bits_[static_cast<size_t>(v) * stride_ + u / 64] |= 1ULL << (u % 64);
    ++m_;
    return true;
}

bool DenseGraph::has_edge(uint32_t u, uint32_t v) const {
    check_pair(u, v);
    return (row(u)[v / 64] >> (v % 64)) & 1u;
}

uint32_t DenseGraph::degree(uint32_t v) const {
    if (v >= n_) throw std::out_of_range("vertex out of range: " + std::to_string(v));
    uint32_t d = 0;
    const uint64_t* r = row(v);
    for (size_t w = 0; w < stride_; ++w) d += std::popcount(r[w]);
    return d;
}

uint64_t DenseGraph::neighbors_in(uint32_t v, const uint64_t* mask) const {
    uint64_t c = 0;
    const uint64_t* r = row(v);
    for (size_t w = 0; w < stride_; ++w) c += std::popcount(r[w] & mask[w]);
    return c;
}

DenseGraph DenseGraph::induced(const std::vector<uint32_t>& verts) const {
    DenseGraph g(static_cast<uint32_t>(verts.size()));
    for (uint32_t i = 0; i < verts.size(); ++i) {
        if (verts[i] >= n_) throw std::out_of_range("induced: vertex out of range");
        for (uint32_t j = i + 1; j < verts.size(); ++j) {
            if (verts[i] == verts[j]) throw std::invalid_argument("induced: repeated vertex");
            if (has_edge(verts[i], verts[j])) g.add_edge(i, j);
        }
    }
    return g;
}

namespace {

// Strips a trailing '#' comment and surrounding whitespace.
std::string strip(const std::string& line) {
    std::string s = line;
    if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_u32(const std::string& tok, uint32_t& out) {
    if (tok.empty()) return false;
    uint64_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<uint64_t>(c - '0');
        if (v > UINT32_MAX) return false;
    }
    out = static_cast<uint32_t>(v);
    return true;
}

} // namespace

DenseGraph parse_graph_text(std::istream& in) {
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    uint32_t n = 0;
    DenseGraph g(0);
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = strip(line);
        if (s.empty()) continue;
        std::istringstream ls(s);
        if (!have_header) {
            std::string kw, ntok, extra;
            ls >> kw >> ntok;
            if (kw != "n" || !(ls >> extra ? false : true) || !parse_u32(ntok, n))
                throw ParseError(line_no, "expected header 'n <count>', got '" + s + "'");
            g = DenseGraph(n);
            have_header = true;
            continue;
        }
        std::string utok, vtok, extra;
        ls >> utok >> vtok;
        uint32_t u, v;
        if (!parse_u32(utok, u) || !parse_u32(vtok, v) || (ls >> extra))
            throw ParseError(line_no, "expected edge 'u v', got '" + s + "'");
        if (u >= n || v >= n)
            throw ParseError(line_no, "endpoint out of range [0," + std::to_string(n) + ")");
        if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
        if (!g.add_edge(u, v)) throw ParseError(line_no, "duplicate edge");
    }
    if (!have_header) throw ParseError(line_no, "missing 'n <count>' header");
    return g;
}

DenseGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return parse_graph_text(in);
}

void write_graph_text(const DenseGraph& g, std::ostream& out) {
    out << "n " << g.n() << "\n";
    for (uint32_t u = 0; u < g.n(); ++u)
        for (uint32_t v = u + 1; v < g.n(); ++v)
            if (g.has_edge(u, v)) out << u << " " << v << "\n";
}

void save_graph_file(const DenseGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_graph_text(g, out);
}

} // namespace tolbip
