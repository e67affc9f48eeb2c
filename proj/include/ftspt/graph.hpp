#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ftspt {

constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

// Relative tolerance used for every floating-point distance comparison.
// Integer-weight inputs never get near it, so they behave exactly.
constexpr double kRelTolerance = 1e-9;

inline bool approx_eq(double a, double b) {
    if (a == b) return true;
    if (std::isinf(a) || std::isinf(b)) return false;
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= kRelTolerance * scale;
}

// a < b beyond tolerance
inline bool definitely_less(double a, double b) {
    return a < b && !approx_eq(a, b);
}

// a <= b, allowing relative slack
inline bool approx_le(double a, double b) {
    return a <= b || approx_eq(a, b);
}

inline std::string format_weight(double w) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, res.ptr);
}

struct Edge {
    int u = -1;
    int v = -1;
    double weight = 1.0;

    int other(int endpoint) const { return endpoint == u ? v : u; }
};

/*
 * Immutable undirected graph with strictly positive edge weights.
 * Vertices are 0..n-1; edges keep their insertion order as ids, which
 * every deterministic tie-breaking rule downstream relies on.
 */
class Graph {
public:
    Graph() = default;

    Graph(int vertex_count, std::vector<Edge> edges)
        : n_(vertex_count), edges_(std::move(edges)) {
        if (n_ <= 0) throw std::invalid_argument("graph needs at least one vertex");
        adj_.assign(n_, {});
        std::unordered_map<std::uint64_t, int> seen;
        seen.reserve(edges_.size() * 2);
        for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
            const Edge& e = edges_[id];
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
                throw std::invalid_argument("edge endpoint out of range: " +
                                            std::to_string(e.u) + " " + std::to_string(e.v));
            if (e.u == e.v)
                throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
            if (!(e.weight > 0.0))
                throw std::invalid_argument("edge weight must be strictly positive");
            auto key = pair_key(e.u, e.v);
            if (!seen.emplace(key, id).second)
                throw std::invalid_argument("parallel edge " + std::to_string(e.u) + "-" +
                                            std::to_string(e.v));
            adj_[e.u].push_back({e.v, id});
            adj_[e.v].push_back({e.u, id});
        }
        edge_index_ = std::move(seen);
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int id) const { return edges_.at(id); }
    const std::vector<Edge>& edges() const { return edges_; }

    // (neighbor, edge id), sorted by neighbor id
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_.at(v); }

    std::optional<int> find_edge(int u, int v) const {
        auto it = edge_index_.find(pair_key(u, v));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

    bool unit_weighted() const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [](const Edge& e) { return e.weight == 1.0; });
    }

    double total_weight() const {
        double sum = 0.0;
        for (const Edge& e : edges_) sum += e.weight;
        return sum;
    }

private:
    static std::uint64_t pair_key(int u, int v) {
        auto lo = static_cast<std::uint64_t>(std::min(u, v));
        auto hi = static_cast<std::uint64_t>(std::max(u, v));
        return (hi << 32) | lo;
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::unordered_map<std::uint64_t, int> edge_index_;
};

/*
 * A single failure: nothing, one edge, or one vertex.
 * A vertex fault removes the vertex's incident edges; the vertex id itself
 * stays valid so distance arrays keep their indexing.
 */
struct Fault {
    enum class Kind { None, Edge, Vertex };

    Kind kind = Kind::None;
    int index = -1;  // edge id or vertex id

    static Fault none() { return {}; }
    static Fault edge(int edge_id) { return {Kind::Edge, edge_id}; }
    static Fault vertex(int v) { return {Kind::Vertex, v}; }

    bool is_none() const { return kind == Kind::None; }

    bool operator==(const Fault&) const = default;

    void validate(const Graph& g, int source) const {
        switch (kind) {
            case Kind::None:
                return;
            case Kind::Edge:
                if (index < 0 || index >= g.edge_count())
                    throw std::invalid_argument("fault references edge id " +
                                                std::to_string(index) + " out of range");
                return;
            case Kind::Vertex:
                if (index < 0 || index >= g.vertex_count())
                    throw std::invalid_argument("fault references vertex " +
                                                std::to_string(index) + " out of range");
                if (index == source)
                    throw std::invalid_argument("vertex fault may not remove the source");
                return;
        }
    }

    bool removes_edge(const Graph& g, int edge_id) const {
        if (kind == Kind::Edge) return edge_id == index;
        if (kind == Kind::Vertex) {
            const Edge& e = g.edge(edge_id);
            return e.u == index || e.v == index;
        }
        return false;
    }

    std::string describe(const Graph& g) const {
        switch (kind) {
            case Kind::Edge: {
                const Edge& e = g.edge(index);
                return "edge(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
            }
            case Kind::Vertex:
                return "vertex(" + std::to_string(index) + ")";
            default:
                return "none";
        }
    }
};

// Graph with the fault applied; the original is untouched.
inline Graph faulted_view(const Graph& g, const Fault& fault) {
    std::vector<Edge> kept;
    kept.reserve(g.edges().size());
    for (int id = 0; id < g.edge_count(); ++id)
        if (!fault.removes_edge(g, id)) kept.push_back(g.edge(id));
    return Graph(g.vertex_count(), std::move(kept));
}

/*
 * Set of edge ids of a fixed parent graph. Backed by a membership mask so
 * structure/fault filters stay O(1) per edge.
 */
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(int universe_size) : mask_(universe_size, 0) {}

    static EdgeSet all_of(const Graph& g) {
        EdgeSet s(g.edge_count());
        for (int id = 0; id < g.edge_count(); ++id) s.insert(id);
        return s;
    }

    bool contains(int id) const { return id >= 0 && id < universe() && mask_[id]; }

    // returns true if the edge was newly added
    bool insert(int id) {
        if (mask_.at(id)) return false;
        mask_[id] = 1;
        ++count_;
        return true;
    }

    int size() const { return count_; }
    int universe() const { return static_cast<int>(mask_.size()); }
    const std::vector<char>& mask() const { return mask_; }
    bool empty() const { return count_ == 0; }

    std::vector<int> ids() const {
        std::vector<int> out;
        out.reserve(count_);
        for (int id = 0; id < universe(); ++id)
            if (mask_[id]) out.push_back(id);
        return out;
    }

    bool operator==(const EdgeSet&) const = default;

private:
    std::vector<char> mask_;
    int count_ = 0;
};

// ---- Shared edge-list file format ------------------------------------------
//
// One edge per line: "u v w", whitespace separated, weight optional and
// defaulting to 1. '#' starts a comment. Vertex count is max id + 1 unless a
// larger count is passed explicitly.

inline Graph parse_graph(std::istream& in, int min_vertex_count = 0) {
    std::vector<Edge> edges;
    std::string line;
    int max_id = min_vertex_count - 1;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v))
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'u v [w]'");
        double w = 1.0;
        if (ls >> w) {
            if (!(w > 0.0))
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": weight must be strictly positive");
        }
        std::string rest;
        if (ls >> rest)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": trailing tokens");
        if (u < 0 || v < 0)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": negative vertex id");
        edges.push_back({u, v, w});
        max_id = std::max({max_id, u, v});
    }
    if (max_id < 0) throw std::invalid_argument("graph file has no edges");
    return Graph(max_id + 1, std::move(edges));
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    try {
        return parse_graph(in);
    } catch (const std::invalid_argument& err) {
        throw std::invalid_argument(path + ": " + err.what());
    }
}

inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<int>& edge_ids,
                            const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments) out << "# " << c << "\n";
    for (int id : edge_ids) {
        const Edge& e = g.edge(id);
        out << e.u << " " << e.v << " " << format_weight(e.weight) << "\n";
    }
}

inline void write_graph(std::ostream& out, const Graph& g,
                        const std::vector<std::string>& comments = {}) {
    std::vector<int> ids(g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i) ids[i] = i;
    write_edge_list(out, g, ids, comments);
}

inline void save_graph(const std::string& path, const Graph& g,
                       const std::vector<std::string>& comments = {}) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    write_graph(out, g, comments);
}

}  // namespace ftspt
