#pragma once

#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftspt/easpt.hpp"
#include "ftspt/graph.hpp"
#include "ftspt/shortest_path_tree.hpp"
#include "ftspt/structure.hpp"
#include "ftspt/vaspt.hpp"

namespace ftspt {

struct SpannerResult {
    EdgeSet edges;
    double alpha = 1.0;
    double beta = 0.0;
    int k = 1;

    int sigma() const { return edges.size(); }
};

/*
 * Greedy multiplicative (2k-1)-spanner for unit weights: scan edges in id
 * order and keep one exactly when the endpoints are further than 2k-1 apart
 * in what has been kept so far. The kept graph has girth above 2k.
 */
inline SpannerResult greedy_spanner(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("greedy_spanner: need k >= 1");
    if (!g.unit_weighted()) throw std::invalid_argument("greedy_spanner: weights must be 1");

    SpannerResult result;
    result.k = k;
    result.alpha = 2.0 * k - 1.0;
    result.beta = 0.0;
    result.edges = EdgeSet(g.edge_count());

    int n = g.vertex_count();
    int bound = 2 * k - 1;
    std::vector<std::vector<int>> adj(n);
    std::vector<int> dist(n);
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        // breadth-first search from e.u, cut off at depth 2k-1
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{e.u};
        dist[e.u] = 0;
        bool within = false;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            if (x == e.v) {
                within = true;
                break;
            }
            if (dist[x] == bound) continue;
            for (int y : adj[x])
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
        }
        if (!within) {
            result.edges.insert(id);
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    return result;
}

inline FtStructure spanner_to_structure(const SpannerResult& s) {
    FtStructure h;
    h.kind = StructureKind::spanner;
    h.params.alpha = s.alpha;
    h.params.beta = s.beta;
    h.params.k = s.k;
    h.edges = s.edges;
    h.note_base_complete();
    return h;
}

struct BfsAugmentBuild {
    FtStructure structure;
    ShortestPathTree tree;
    PathDecomposition decomposition;  // empty for the edge-fault variant
    int base_size = 0;                // tree (edge case) or vertex base (vertex case)
    int augmentation_added = 0;
    int spanner_added = 0;
    std::vector<std::string> warnings;
};

/*
 * Edge-fault BFS structure: the BFS tree, plus per tree-edge failure the
 * last edge of the replacement path of every detached t whose replacement
 * path meets the detached set only at t, plus a spanner for the rest.
 * Post-failure distances inherit the spanner's (alpha, beta) stretch.
 */
inline BfsAugmentBuild build_eabfs(const Graph& g, int source, const SpannerResult& spanner) {
    if (!g.unit_weighted()) throw std::invalid_argument("build_eabfs: weights must be 1");
    if (spanner.edges.universe() != g.edge_count())
        throw std::invalid_argument("build_eabfs: spanner built for a different graph");

    BfsAugmentBuild result;
    result.tree = dijkstra(g, source);
    const ShortestPathTree& tree = result.tree;
    EdgeSet tree_edges = tree.tree_edges(g);

    FtStructure& h = result.structure;
    h.kind = StructureKind::eabfs;
    h.params.alpha = spanner.alpha;
    h.params.beta = spanner.beta;
    h.params.k = spanner.k;
    h.edges = tree_edges;
    h.base_size = h.edges.size();
    result.base_size = h.base_size;

    for (int child : tree.preorder) {
        int tree_edge = tree.parent_edge[child];
        if (tree_edge < 0) continue;
        Fault fault = Fault::edge(tree_edge);
        Cut cut = cut_of_edge(g, tree, tree_edge);
        ShortestPathTree replacement = dijkstra(g, source, fault, tree_edges);
        std::vector<double> tree_dist =
            dijkstra(g, source, fault, {}, &tree_edges.mask()).dist;

        for (int t : cut.down_set) {
            if (!replacement.reachable(t)) continue;
            if (!definitely_less(replacement.dist[t], tree_dist[t])) continue;
            std::vector<int> path = replacement.path_to(t);
            bool clean = true;
            for (size_t i = 0; i + 1 < path.size(); ++i)
                if (cut.in_down(path[i])) {
                    clean = false;
                    break;
                }
            if (!clean) continue;
            h.edges.insert(replacement.path_edges_to(t).back());
        }
    }
    result.augmentation_added = h.edges.size() - result.base_size;

    for (int id : spanner.edges.ids())
        if (h.edges.insert(id)) ++result.spanner_added;
    h.added = h.edges.size() - h.base_size;
    return result;
}

inline BfsAugmentBuild build_eabfs(const Graph& g, int source, int k) {
    return build_eabfs(g, source, greedy_spanner(g, k));
}

/*
 * Vertex-fault BFS structure: the vertex-fault base, plus per failed vertex
 * the last edge of the replacement path of every detached t whose path
 * meets the detached set only at t and whose base distance is still off,
 * plus a spanner. The base distance test sees earlier additions.
 */
inline BfsAugmentBuild build_vabfs(const Graph& g, int source, const SpannerResult& spanner) {
    if (!g.unit_weighted()) throw std::invalid_argument("build_vabfs: weights must be 1");
    if (spanner.edges.universe() != g.edge_count())
        throw std::invalid_argument("build_vabfs: spanner built for a different graph");

    VertexBaseBuild base = build_vertex_base_structure(g, source);
    BfsAugmentBuild result;
    result.tree = std::move(base.tree);
    result.decomposition = std::move(base.decomposition);
    result.warnings = std::move(base.warnings);
    const ShortestPathTree& tree = result.tree;
    EdgeSet tree_edges = tree.tree_edges(g);

    FtStructure& h = result.structure;
    h.kind = StructureKind::vabfs;
    h.params.alpha = spanner.alpha;
    h.params.beta = spanner.beta;
    h.params.k = spanner.k;
    h.edges = base.structure.edges;
    h.base_size = h.edges.size();
    result.base_size = h.base_size;

    for (int u : tree.preorder) {
        if (u == source) continue;
        VertexCutPartition part = partition_udo(tree, result.decomposition, u);
        if (part.down_set.empty()) continue;
        Fault fault = Fault::vertex(u);
        ShortestPathTree replacement = dijkstra(g, source, fault, tree_edges);
        std::vector<double> base_dist =
            dijkstra(g, source, fault, {}, &h.edges.mask()).dist;

        for (int t : part.down_set) {
            if (!replacement.reachable(t)) continue;
            if (!definitely_less(replacement.dist[t], base_dist[t])) continue;
            std::vector<int> path = replacement.path_to(t);
            bool clean = true;
            for (size_t i = 0; i + 1 < path.size(); ++i)
                if (part.in_down(path[i])) {
                    clean = false;
                    break;
                }
            if (!clean) continue;
            if (h.edges.insert(replacement.path_edges_to(t).back()))
                base_dist = dijkstra(g, source, fault, {}, &h.edges.mask()).dist;
        }
    }
    result.augmentation_added = h.edges.size() - result.base_size;

    for (int id : spanner.edges.ids())
        if (h.edges.insert(id)) ++result.spanner_added;
    h.added = h.edges.size() - h.base_size;
    return result;
}

inline BfsAugmentBuild build_vabfs(const Graph& g, int source, int k) {
    return build_vabfs(g, source, greedy_spanner(g, k));
}

/*
 * Distance preservation through the detached set: for every target whose
 * replacement path meets it, the augmented vertex-fault base reproduces the
 * exact post-failure distance to the first such vertex and the exact
 * remaining distance from the last one. `failures` collects human-readable
 * counterexamples when the check does not hold.
 */
inline bool check_detour_preservation(const Graph& g, int source, int failed, const EdgeSet& augmented_base,
                        const ShortestPathTree& tree, const PathDecomposition& decomp,
                        std::vector<std::string>* failures = nullptr) {
    VertexCutPartition part = partition_udo(tree, decomp, failed);
    EdgeSet tree_edges = tree.tree_edges(g);
    Fault fault = Fault::vertex(failed);
    ShortestPathTree replacement = dijkstra(g, source, fault, tree_edges);
    std::vector<double> base_dist = dijkstra(g, source, fault, {}, &augmented_base.mask()).dist;

    bool ok = true;
    auto record = [&](const std::string& msg) {
        ok = false;
        if (failures) failures->push_back(msg);
    };

    for (int t : replacement.preorder) {
        if (t == source) continue;
        std::vector<int> path = replacement.path_to(t);
        int first = -1, last = -1;
        for (int i = 0; i < static_cast<int>(path.size()); ++i)
            if (part.in_down(path[i])) {
                if (first < 0) first = i;
                last = i;
            }
        if (first < 0) continue;
        int x = path[first];
        int y = path[last];
        if (!approx_eq(base_dist[x], replacement.dist[x]))
            record("fault " + std::to_string(failed) + ": entry vertex " + std::to_string(x) +
                   " has base distance " + format_weight(base_dist[x]) + " vs exact " +
                   format_weight(replacement.dist[x]));
        double exact_tail = dijkstra(g, y, fault).dist[t];
        double base_tail = dijkstra(g, y, fault, {}, &augmented_base.mask()).dist[t];
        if (!approx_eq(base_tail, exact_tail))
            record("fault " + std::to_string(failed) + ": tail " + std::to_string(y) + "->" +
                   std::to_string(t) + " has base distance " + format_weight(base_tail) +
                   " vs exact " + format_weight(exact_tail));
    }
    return ok;
}

// Convenience form: rebuilds the augmented base (no spanner) from scratch.
inline bool check_detour_preservation(const Graph& g, int source, int failed,
                        std::vector<std::string>* failures = nullptr) {
    SpannerResult empty;
    empty.edges = EdgeSet(g.edge_count());
    empty.alpha = 1.0;
    empty.beta = 0.0;
    empty.k = 1;
    BfsAugmentBuild build = build_vabfs(g, source, empty);
    return check_detour_preservation(g, source, failed, build.structure.edges, build.tree,
                       build.decomposition, failures);
}

}  // namespace ftspt
