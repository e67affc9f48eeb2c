#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftspt/easpt.hpp"
#include "ftspt/graph.hpp"
#include "ftspt/shortest_path_tree.hpp"
#include "ftspt/structure.hpp"

namespace ftspt {

// Root-to-leaf paths covering the tree; each vertex lies on exactly one.
// path_of/pos_on_path are -1 for vertices outside the tree.
struct PathDecomposition {
    std::vector<std::vector<int>> paths;
    std::vector<int> path_of;
    std::vector<int> pos_on_path;
};

/*
 * Heavy-path decomposition: from each subtree root walk down through the
 * child with the largest subtree (smallest id on ties) until a leaf, then
 * recurse into the hanging subtrees in path order. Every hanging subtree
 * has at most half the vertices of the one it hangs off.
 */
inline PathDecomposition heavy_path_decomposition(const ShortestPathTree& tree) {
    int n = static_cast<int>(tree.dist.size());
    PathDecomposition decomp;
    decomp.path_of.assign(n, -1);
    decomp.pos_on_path.assign(n, -1);
    if (tree.preorder.empty()) return decomp;

    std::vector<std::vector<int>> children(n);
    for (int v : tree.preorder)
        if (tree.parent[v] >= 0) children[tree.parent[v]].push_back(v);
    auto subtree_size = [&](int v) { return tree.subtree_end[v] - tree.subtree_begin[v]; };

    std::vector<int> pending{tree.source};
    while (!pending.empty()) {
        int root = pending.back();
        pending.pop_back();
        std::vector<int> path;
        std::vector<int> hanging;
        int u = root;
        while (true) {
            path.push_back(u);
            int heavy = -1;
            for (int c : children[u]) {
                if (heavy < 0 || subtree_size(c) > subtree_size(heavy)) heavy = c;
            }
            for (int c : children[u])
                if (c != heavy) hanging.push_back(c);
            if (heavy < 0) break;
            u = heavy;
        }
        int index = static_cast<int>(decomp.paths.size());
        for (int pos = 0; pos < static_cast<int>(path.size()); ++pos) {
            decomp.path_of[path[pos]] = index;
            decomp.pos_on_path[path[pos]] = pos;
        }
        decomp.paths.push_back(std::move(path));
        for (auto it = hanging.rbegin(); it != hanging.rend(); ++it) pending.push_back(*it);
    }
    return decomp;
}

// Vertex sets a failed vertex splits the tree into: U keeps the source,
// D hangs below the failed vertex's path successor, O is the rest of its
// subtree. The successor is -1 when the vertex ends its path (a leaf).
struct VertexCutPartition {
    int failed = -1;
    int next_on_path = -1;
    std::vector<int> up_set;
    std::vector<int> down_set;
    std::vector<int> other_set;
    std::vector<char> down_mask;
    std::vector<char> other_mask;

    bool in_down(int v) const { return down_mask[v] != 0; }
};

inline VertexCutPartition partition_udo(const ShortestPathTree& tree,
                                        const PathDecomposition& decomp, int failed) {
    int n = static_cast<int>(tree.dist.size());
    if (failed == tree.source)
        throw std::invalid_argument("partition_udo: cannot fail the source");
    if (decomp.path_of[failed] < 0)
        throw std::invalid_argument("partition_udo: vertex not in the tree");

    VertexCutPartition part;
    part.failed = failed;
    part.down_mask.assign(n, 0);
    part.other_mask.assign(n, 0);

    const std::vector<int>& path = decomp.paths[decomp.path_of[failed]];
    int pos = decomp.pos_on_path[failed];
    bool leaf = tree.subtree_end[failed] - tree.subtree_begin[failed] == 1;
    if (pos + 1 < static_cast<int>(path.size())) {
        part.next_on_path = path[pos + 1];
    } else if (!leaf) {
        throw std::logic_error("partition_udo: path ends at an internal vertex");
    }

    if (part.next_on_path >= 0) {
        for (int i = tree.subtree_begin[part.next_on_path]; i < tree.subtree_end[part.next_on_path]; ++i) {
            int v = tree.preorder[i];
            part.down_mask[v] = 1;
            part.down_set.push_back(v);
        }
    }
    for (int i = tree.subtree_begin[failed]; i < tree.subtree_end[failed]; ++i) {
        int v = tree.preorder[i];
        if (v == failed || part.down_mask[v]) continue;
        part.other_mask[v] = 1;
        part.other_set.push_back(v);
    }
    for (int v : tree.preorder)
        if (v != failed && !part.down_mask[v] && !part.other_mask[v]) part.up_set.push_back(v);
    std::sort(part.down_set.begin(), part.down_set.end());
    std::sort(part.other_set.begin(), part.other_set.end());
    std::sort(part.up_set.begin(), part.up_set.end());
    return part;
}

struct VertexBaseBuild {
    FtStructure structure;
    ShortestPathTree tree;
    PathDecomposition decomposition;
    // Edges selected while processing the vertices of one path (before
    // dedup against other paths); bounded by subtree size plus path length.
    std::vector<int> per_path_selected;
    std::vector<std::string> warnings;
};

/*
 * Vertex-fault base structure: the tree plus, per failed non-leaf vertex u,
 * the replacement-tree edges that are new and do not lead into D, plus the
 * last edge entering D on the canonical replacement path to u's successor.
 * Distances inside D are 3-stretched after the fault; everything else is
 * exact.
 */
inline VertexBaseBuild build_vertex_base_structure(const Graph& g, int source) {
    VertexBaseBuild result;
    result.tree = dijkstra(g, source);
    const ShortestPathTree& tree = result.tree;
    EdgeSet tree_edges = tree.tree_edges(g);
    result.decomposition = heavy_path_decomposition(tree);

    FtStructure& h = result.structure;
    h.kind = StructureKind::vertex_base;
    h.edges = tree_edges;
    int tree_size = h.edges.size();
    result.per_path_selected.assign(result.decomposition.paths.size(), 0);

    for (size_t qi = 0; qi < result.decomposition.paths.size(); ++qi) {
        for (int u : result.decomposition.paths[qi]) {
            if (u == source) continue;
            if (tree.subtree_end[u] - tree.subtree_begin[u] == 1) continue;  // leaf
            VertexCutPartition part = partition_udo(tree, result.decomposition, u);
            ShortestPathTree replacement = dijkstra(g, source, Fault::vertex(u), tree_edges);

            std::vector<int> selected;
            for (int w : replacement.preorder) {
                int eid = replacement.parent_edge[w];
                if (eid < 0 || tree_edges.contains(eid) || part.in_down(w)) continue;
                if (!part.other_mask[w])
                    throw std::logic_error("vertex base: new edge into the up set");
                selected.push_back(eid);
            }
            if (part.next_on_path >= 0) {
                if (replacement.reachable(part.next_on_path)) {
                    std::vector<int> path = replacement.path_to(part.next_on_path);
                    std::vector<int> path_edges = replacement.path_edges_to(part.next_on_path);
                    int entry = detail::last_entry_position(path, part.down_mask);
                    if (entry < 0)
                        throw std::logic_error("vertex base: replacement path never enters D");
                    selected.push_back(path_edges[entry]);
                } else {
                    result.warnings.push_back("vertex " + std::to_string(u) +
                                              ": successor unreachable after the fault");
                }
            }
            std::sort(selected.begin(), selected.end());
            selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
            result.per_path_selected[qi] += static_cast<int>(selected.size());
            for (int eid : selected) h.edges.insert(eid);
        }
    }
    h.base_size = tree_size;
    h.added = h.edges.size() - tree_size;
    return result;
}

struct VasptBuild {
    FtStructure structure;
    std::vector<SelectionTrace> traces;
    ShortestPathTree tree;
    PathDecomposition decomposition;
    std::vector<std::string> warnings;
};

/*
 * The (1+eps) vertex-fault structure: start from the vertex base, walk
 * vertex failures in tree preorder, and repair bad replacement-tree
 * vertices in preorder with the same harmonic selection as the edge case.
 * Bad vertices are expected inside D; the trace flags any that are not.
 */
inline VasptBuild build_vaspt(const Graph& g, int source, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("build_vaspt: eps must be positive");

    VertexBaseBuild base = build_vertex_base_structure(g, source);
    VasptBuild result;
    result.tree = std::move(base.tree);
    result.decomposition = std::move(base.decomposition);
    result.warnings = std::move(base.warnings);
    const ShortestPathTree& tree = result.tree;
    EdgeSet tree_edges = tree.tree_edges(g);
    EdgeSet base_edges = base.structure.edges;

    FtStructure& h = result.structure;
    h.kind = StructureKind::vaspt;
    h.params.eps = eps;
    h.edges = base_edges;
    h.note_base_complete();

    for (int u : tree.preorder) {
        if (u == source) continue;
        Fault fault = Fault::vertex(u);
        VertexCutPartition part = partition_udo(tree, result.decomposition, u);
        ShortestPathTree replacement = dijkstra(g, source, fault, tree_edges);
        std::vector<double> structure_dist =
            dijkstra(g, source, fault, {}, &h.edges.mask()).dist;

        for (int t : replacement.preorder) {
            if (t == source) continue;
            if (!exceeds_stretch(structure_dist[t], replacement.dist[t], eps)) continue;
            SelectionTrace trace = select_edges(replacement, structure_dist, part.down_mask,
                                                base_edges, h, t, eps);
            for (int id : trace.added_edges) h.add_edge(id);
            result.traces.push_back(std::move(trace));
            structure_dist = dijkstra(g, source, fault, {}, &h.edges.mask()).dist;
            if (exceeds_stretch(structure_dist[t], replacement.dist[t], eps))
                throw std::logic_error("build_vaspt: selection did not repair the bad vertex");
        }
    }
    return result;
}

// Decomposition sidecar payload: one array of vertex ids per path.
inline nlohmann::json decomposition_to_json(const PathDecomposition& decomp) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& path : decomp.paths) out.push_back(path);
    return out;
}

}  // namespace ftspt
