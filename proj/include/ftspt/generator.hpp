#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftspt/graph.hpp"

namespace ftspt {

enum class GraphFamily { gnp, grid, cycle };

inline std::string to_string(GraphFamily f) {
    switch (f) {
        case GraphFamily::gnp: return "gnp";
        case GraphFamily::grid: return "grid";
        case GraphFamily::cycle: return "cycle";
    }
    return "?";
}

struct GeneratorSpec {
    GraphFamily family = GraphFamily::gnp;
    int n = 0;          // gnp, cycle
    double p = 0.0;     // gnp
    int rows = 0;       // grid
    int cols = 0;       // grid
    bool unit_weights = true;
    double weight_lo = 1.0;
    double weight_hi = 1.0;
    std::uint64_t seed = 0;
};

struct GeneratedGraph {
    Graph graph{1, {}};
    int attempts = 1;  // connectivity retries consumed (gnp only)
    std::string description;
};

namespace detail {

inline bool connected(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [v, id] : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

inline void assign_weights(std::vector<Edge>& edges, const GeneratorSpec& spec,
                           std::mt19937_64& rng) {
    if (spec.unit_weights) return;
    std::uniform_real_distribution<double> draw(spec.weight_lo, spec.weight_hi);
    for (Edge& e : edges) e.weight = draw(rng);
}

}  // namespace detail

/*
 * Deterministic graph generation. gnp draws each pair independently and
 * retries with a reseeded stream until connected (at most 100 attempts);
 * grid and cycle are connected by construction. Weights are 1 or uniform
 * from [lo, hi). Equal specs produce byte-identical graphs.
 */
inline GeneratedGraph generate(const GeneratorSpec& spec) {
    if (!spec.unit_weights && (!(spec.weight_lo > 0.0) || spec.weight_hi < spec.weight_lo))
        throw std::invalid_argument("generate: need 0 < lo <= hi");

    GeneratedGraph out;
    switch (spec.family) {
        case GraphFamily::gnp: {
            if (spec.n < 1) throw std::invalid_argument("generate: gnp needs n >= 1");
            if (spec.p < 0.0 || spec.p > 1.0)
                throw std::invalid_argument("generate: gnp needs p in [0, 1]");
            constexpr int kMaxAttempts = 100;
            bool made = false;
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                std::mt19937_64 rng(spec.seed + 0x9e3779b97f4a7c15ull * attempt);
                std::bernoulli_distribution keep(spec.p);
                std::vector<Edge> edges;
                for (int u = 0; u < spec.n; ++u)
                    for (int v = u + 1; v < spec.n; ++v)
                        if (keep(rng)) edges.push_back({u, v, 1.0});
                detail::assign_weights(edges, spec, rng);
                Graph g(spec.n, std::move(edges));
                if (detail::connected(g)) {
                    out.graph = std::move(g);
                    out.attempts = attempt + 1;
                    out.description = "gnp n=" + std::to_string(spec.n) +
                                      " p=" + format_weight(spec.p);
                    made = true;
                    break;
                }
            }
            if (!made)
                throw std::runtime_error("generate: no connected gnp sample in 100 attempts");
            break;
        }
        case GraphFamily::grid: {
            if (spec.rows < 1 || spec.cols < 1)
                throw std::invalid_argument("generate: grid needs rows, cols >= 1");
            std::mt19937_64 rng(spec.seed);
            std::vector<Edge> edges;
            auto id = [&](int r, int c) { return r * spec.cols + c; };
            for (int r = 0; r < spec.rows; ++r)
                for (int c = 0; c < spec.cols; ++c) {
                    if (c + 1 < spec.cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
                    if (r + 1 < spec.rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
                }
            detail::assign_weights(edges, spec, rng);
            out.graph = Graph(spec.rows * spec.cols, std::move(edges));
            out.description = "grid rows=" + std::to_string(spec.rows) +
                              " cols=" + std::to_string(spec.cols);
            break;
        }
        case GraphFamily::cycle: {
            if (spec.n < 3) throw std::invalid_argument("generate: cycle needs n >= 3");
            std::mt19937_64 rng(spec.seed);
            std::vector<Edge> edges;
            for (int v = 0; v < spec.n; ++v) edges.push_back({v, (v + 1) % spec.n, 1.0});
            detail::assign_weights(edges, spec, rng);
            out.graph = Graph(spec.n, std::move(edges));
            out.description = "cycle n=" + std::to_string(spec.n);
            break;
        }
    }
    out.description += spec.unit_weights
                           ? " weights=unit"
                           : " weights=uniform lo=" + format_weight(spec.weight_lo) +
                                 " hi=" + format_weight(spec.weight_hi);
    out.description += " seed=" + std::to_string(spec.seed);
    if (spec.family == GraphFamily::gnp)
        out.description += " attempts=" + std::to_string(out.attempts);
    return out;
}

}  // namespace ftspt
