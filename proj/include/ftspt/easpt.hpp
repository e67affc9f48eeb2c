#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ftspt/graph.hpp"
#include "ftspt/shortest_path_tree.hpp"
#include "ftspt/structure.hpp"

namespace ftspt {

// n-th harmonic number, harmonic(0) == 0
inline double harmonic(int n) {
    if (n < 0) throw std::invalid_argument("harmonic: negative argument");
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) sum += 1.0 / i;
    return sum;
}

// H_0 .. H_k
inline std::vector<double> harmonic_prefix(int k) {
    std::vector<double> h(k + 1, 0.0);
    for (int i = 1; i <= k; ++i) h[i] = h[i - 1] + 1.0 / i;
    return h;
}

// Thresholds 1 + eps/H_k * (H_k - H_{k-i}) for i = 0..k; increasing from 1
// to 1 + eps. They decide how many tail vertices of a selection get an edge.
inline std::vector<double> harmonic_thresholds(int k, double eps) {
    if (k < 1) throw std::invalid_argument("harmonic_thresholds: need k >= 1");
    std::vector<double> h = harmonic_prefix(k);
    std::vector<double> gamma(k + 1);
    for (int i = 0; i <= k; ++i) gamma[i] = 1.0 + eps / h[k] * (h[k] - h[k - i]);
    return gamma;
}

// Largest index j in [0, k) with alpha[j] <= gamma[j]; -1 when none exists
// (the expected alpha[0] = 1 always qualifies).
inline int largest_feasible_index(const std::vector<double>& alpha,
                                  const std::vector<double>& gamma) {
    int k = static_cast<int>(alpha.size()) - 1;
    for (int j = k - 1; j >= 0; --j)
        if (approx_le(alpha[j], gamma[j])) return j;
    return -1;
}

// Bad-vertex predicate: structure distance beyond (1+eps) times the true
// post-failure distance, past tolerance.
inline bool exceeds_stretch(double structure_dist, double exact_dist, double eps) {
    double bound = (1.0 + eps) * exact_dist;
    return structure_dist > bound && !approx_eq(structure_dist, bound);
}

namespace detail {

// Position p such that path[p] -> path[p+1] is the last edge entering the
// down set (head inside, tail outside); -1 when the path never enters it.
inline int last_entry_position(const std::vector<int>& path, const std::vector<char>& down_mask) {
    int last = -1;
    for (int i = 0; i + 1 < static_cast<int>(path.size()); ++i)
        if (!down_mask[path[i]] && down_mask[path[i + 1]]) last = i;
    return last;
}

}  // namespace detail

/*
 * Harmonic edge selection for one bad vertex.
 *
 * Walks the canonical replacement path to the bad vertex, takes the last
 * edge crossing into the down set, collects the path vertices whose
 * incoming edge is missing from the base structure, measures their stretch
 * in the current structure and picks the pivot index against the harmonic
 * thresholds. Everything on the path past the pivot that the structure
 * still lacks becomes the added edge set, which always includes the final
 * edge into the bad vertex.
 */
inline SelectionTrace select_edges(const ShortestPathTree& replacement_tree,
                                   const std::vector<double>& structure_dist,
                                   const std::vector<char>& down_mask, const EdgeSet& base_edges,
                                   const FtStructure& current, int bad_vertex, double eps) {
    const std::vector<double>& exact = replacement_tree.dist;
    if (!replacement_tree.reachable(bad_vertex))
        throw std::logic_error("select_edges: vertex unreachable after the fault");
    if (!exceeds_stretch(structure_dist[bad_vertex], exact[bad_vertex], eps))
        throw std::logic_error("select_edges: vertex is not bad");

    SelectionTrace trace;
    trace.fault = replacement_tree.fault;
    trace.bad_vertex = bad_vertex;

    std::vector<int> path = replacement_tree.path_to(bad_vertex);
    std::vector<int> path_edges = replacement_tree.path_edges_to(bad_vertex);

    int entry = detail::last_entry_position(path, down_mask);
    trace.bad_vertex_in_down_set = down_mask[bad_vertex] != 0 && entry >= 0;
    if (!trace.bad_vertex_in_down_set) {
        // The bad vertex sits outside the detached side, which vertex faults
        // can produce in corner cases. Select over the whole path from the
        // source so the distance guarantee still lands; the flag marks the
        // trace so callers can report the anomaly.
        entry = 0;
        trace.crossing_edge = path_edges.front();
    } else {
        trace.crossing_edge = path_edges[entry];
    }

    // z_0 is the crossing edge's tail; z_1.. are the path vertices past it
    // whose incoming edge is not in the base structure.
    std::vector<int> z_pos;  // positions in `path`
    z_pos.push_back(entry);
    for (int i = entry + 1; i < static_cast<int>(path.size()); ++i)
        if (!base_edges.contains(path_edges[i - 1])) z_pos.push_back(i);

    if (z_pos.back() != static_cast<int>(path.size()) - 1)
        throw std::logic_error("select_edges: bad vertex has its incoming edge in the base");

    int k = static_cast<int>(z_pos.size()) - 1;
    trace.z_list.reserve(k + 1);
    trace.alpha.reserve(k + 1);
    for (int pos : z_pos) {
        int z = path[pos];
        trace.z_list.push_back(z);
        trace.alpha.push_back(exact[z] == 0.0 ? 1.0 : structure_dist[z] / exact[z]);
    }
    trace.gamma = harmonic_thresholds(k, eps);

    int pivot = largest_feasible_index(trace.alpha, trace.gamma);
    if (pivot < 0) pivot = 0;  // only reachable through the anomaly path above
    trace.pivot_index = pivot;
    trace.tail_count = k - pivot;

    for (int i = z_pos[pivot] + 1; i < static_cast<int>(path.size()); ++i)
        if (!current.contains(path_edges[i - 1])) trace.added_edges.push_back(path_edges[i - 1]);

    if (static_cast<int>(trace.added_edges.size()) > trace.tail_count)
        throw std::logic_error("select_edges: more new edges than tail vertices");
    return trace;
}

struct SwapBuild {
    FtStructure structure;
    ShortestPathTree tree;  // the no-fault tree every later step reuses
    std::vector<int> unprotected_edges;  // tree edges whose removal disconnects
};

/*
 * Swap-edge base structure: the shortest-path tree plus, per tree edge, the
 * cut edge lying on the canonical replacement path to the detached endpoint.
 * At most 2n-2 edges; post-failure distances are 3-stretched.
 */
inline SwapBuild build_swap_3easpt(const Graph& g, int source) {
    SwapBuild result;
    result.tree = dijkstra(g, source);
    const ShortestPathTree& tree = result.tree;
    EdgeSet tree_edges = tree.tree_edges(g);

    FtStructure& h = result.structure;
    h.kind = StructureKind::swap3_easpt;
    h.edges = tree_edges;

    for (int child : tree.preorder) {
        int tree_edge = tree.parent_edge[child];
        if (tree_edge < 0) continue;
        Cut cut = cut_of_edge(g, tree, tree_edge);
        ShortestPathTree replacement =
            dijkstra(g, source, Fault::edge(tree_edge), tree_edges);
        if (!replacement.reachable(child)) {
            result.unprotected_edges.push_back(tree_edge);
            continue;
        }
        std::vector<int> path = replacement.path_to(child);
        std::vector<int> path_edges = replacement.path_edges_to(child);
        int entry = detail::last_entry_position(path, cut.down_mask);
        if (entry < 0) throw std::logic_error("swap edge: replacement path never crosses");
        h.edges.insert(path_edges[entry]);
    }
    h.note_base_complete();
    return result;
}

struct EasptBuild {
    FtStructure structure;
    std::vector<SelectionTrace> traces;
    ShortestPathTree tree;
    std::vector<int> unprotected_edges;
};

/*
 * The (1+eps) edge-fault structure: start from the swap base, walk tree
 * edge failures in preorder, and repair every bad vertex of the replacement
 * tree (again in preorder) with a harmonic edge selection.
 */
inline EasptBuild build_easpt(const Graph& g, int source, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("build_easpt: eps must be positive");

    SwapBuild base = build_swap_3easpt(g, source);
    EasptBuild result;
    result.tree = std::move(base.tree);
    result.unprotected_edges = std::move(base.unprotected_edges);
    const ShortestPathTree& tree = result.tree;
    EdgeSet tree_edges = tree.tree_edges(g);
    EdgeSet base_edges = base.structure.edges;

    FtStructure& h = result.structure;
    h.kind = StructureKind::easpt;
    h.params.eps = eps;
    h.edges = base_edges;
    h.note_base_complete();

    for (int child : tree.preorder) {
        int tree_edge = tree.parent_edge[child];
        if (tree_edge < 0) continue;
        Fault fault = Fault::edge(tree_edge);
        Cut cut = cut_of_edge(g, tree, tree_edge);
        ShortestPathTree replacement = dijkstra(g, source, fault, tree_edges);
        std::vector<double> structure_dist =
            dijkstra(g, source, fault, {}, &h.edges.mask()).dist;

        for (int t : replacement.preorder) {
            if (t == source) continue;
            if (!exceeds_stretch(structure_dist[t], replacement.dist[t], eps)) continue;
            SelectionTrace trace = select_edges(replacement, structure_dist, cut.down_mask,
                                                base_edges, h, t, eps);
            for (int id : trace.added_edges) h.add_edge(id);
            result.traces.push_back(std::move(trace));
            structure_dist = dijkstra(g, source, fault, {}, &h.edges.mask()).dist;
            if (exceeds_stretch(structure_dist[t], replacement.dist[t], eps))
                throw std::logic_error("build_easpt: selection did not repair the bad vertex");
        }
    }
    return result;
}

}  // namespace ftspt
