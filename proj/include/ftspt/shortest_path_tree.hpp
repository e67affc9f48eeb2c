#pragma once

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ftspt/graph.hpp"

namespace ftspt {

/*
 * Shortest-path tree of a (possibly faulted) graph, rooted at a source.
 *
 * Ties between equally short parents are broken the same way everywhere:
 * a parent reached through a preferred edge beats one that is not, then the
 * smaller parent id wins, then the smaller edge id. With the preferred set
 * fixed to the edges of the no-fault tree this realizes consistent
 * tie-breaking across all replacement trees, and it makes every structure
 * built on top byte-reproducible.
 */
struct ShortestPathTree {
    int source = 0;
    Fault fault;
    std::vector<double> dist;        // kInfiniteDistance when unreachable
    std::vector<int> parent;         // -1 at the source / unreachable
    std::vector<int> parent_edge;    // edge id into parent, -1 likewise
    std::vector<int> preorder;       // reachable vertices, parents first
    std::vector<int> preorder_pos;   // inverse of preorder, -1 when unreachable
    std::vector<int> subtree_begin;  // preorder interval [begin, end) of v's subtree
    std::vector<int> subtree_end;

    bool reachable(int v) const { return dist[v] < kInfiniteDistance; }

    bool is_tree_edge(int edge_id) const {
        if (edge_id < 0) return false;
        for (int pe : parent_edge)
            if (pe == edge_id) return true;
        return false;
    }

    // true iff v lies in the subtree rooted at root (root included)
    bool in_subtree(int root, int v) const {
        if (!reachable(v) || !reachable(root)) return false;
        int p = preorder_pos[v];
        return subtree_begin[root] <= p && p < subtree_end[root];
    }

    // vertices on the tree path source..t, in order
    std::vector<int> path_to(int t) const {
        if (!reachable(t)) throw std::invalid_argument("path_to: unreachable vertex");
        std::vector<int> path;
        for (int v = t; v != -1; v = parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        return path;
    }

    // edge ids on the tree path source..t, in order
    std::vector<int> path_edges_to(int t) const {
        if (!reachable(t)) throw std::invalid_argument("path_edges_to: unreachable vertex");
        std::vector<int> edges;
        for (int v = t; parent[v] != -1; v = parent[v]) edges.push_back(parent_edge[v]);
        std::reverse(edges.begin(), edges.end());
        return edges;
    }

    EdgeSet tree_edges(const Graph& g) const {
        EdgeSet set(g.edge_count());
        for (int v = 0; v < static_cast<int>(parent_edge.size()); ++v)
            if (parent_edge[v] >= 0) set.insert(parent_edge[v]);
        return set;
    }
};

namespace detail {

// Depth-first preorder, children in ascending vertex id.
inline void build_preorder(ShortestPathTree& t) {
    int n = static_cast<int>(t.dist.size());
    std::vector<std::vector<int>> children(n);
    for (int v = 0; v < n; ++v)
        if (t.parent[v] >= 0) children[t.parent[v]].push_back(v);
    // adjacency scan already yields ascending order, but keep it explicit
    for (auto& c : children) std::sort(c.begin(), c.end());

    t.preorder.clear();
    t.preorder.reserve(n);
    t.preorder_pos.assign(n, -1);
    t.subtree_begin.assign(n, 0);
    t.subtree_end.assign(n, 0);

    std::vector<std::pair<int, bool>> stack;  // (vertex, entering?)
    if (t.reachable(t.source)) stack.push_back({t.source, true});
    while (!stack.empty()) {
        auto [v, entering] = stack.back();
        stack.pop_back();
        if (!entering) {
            t.subtree_end[v] = static_cast<int>(t.preorder.size());
            continue;
        }
        t.preorder_pos[v] = static_cast<int>(t.preorder.size());
        t.subtree_begin[v] = t.preorder_pos[v];
        t.preorder.push_back(v);
        stack.push_back({v, false});
        for (auto it = children[v].rbegin(); it != children[v].rend(); ++it)
            stack.push_back({*it, true});
    }
}

}  // namespace detail

/*
 * Dijkstra with deterministic tie-breaking and optional edge filtering.
 * edge_filter, when given, restricts the traversal to a subgraph (by edge
 * id mask) without renumbering anything; the fault is applied on top.
 */
inline ShortestPathTree dijkstra(const Graph& g, int source, const Fault& fault = Fault::none(),
                                 const EdgeSet& preferred_edges = {},
                                 const std::vector<char>* edge_filter = nullptr) {
    int n = g.vertex_count();
    if (source < 0 || source >= n) throw std::invalid_argument("dijkstra: source out of range");
    fault.validate(g, source);

    ShortestPathTree t;
    t.source = source;
    t.fault = fault;
    t.dist.assign(n, kInfiniteDistance);
    t.parent.assign(n, -1);
    t.parent_edge.assign(n, -1);

    auto usable = [&](int edge_id) {
        if (edge_filter && !(*edge_filter)[edge_id]) return false;
        return !fault.removes_edge(g, edge_id);
    };
    auto preferred = [&](int edge_id) { return preferred_edges.contains(edge_id); };

    // (dist, vertex) min-heap; vertex id as secondary key keeps pops stable
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    std::vector<char> settled(n, 0);

    t.dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        int u = heap.top().second;
        heap.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        for (auto [v, eid] : g.neighbors(u)) {
            if (settled[v] || !usable(eid)) continue;
            double nd = t.dist[u] + g.edge(eid).weight;
            if (definitely_less(nd, t.dist[v])) {
                t.dist[v] = nd;
                t.parent[v] = u;
                t.parent_edge[v] = eid;
                heap.push({nd, v});
            } else if (approx_eq(nd, t.dist[v])) {
                // equally short: preferred edge, then parent id, then edge id
                bool take = false;
                bool np = preferred(eid), op = preferred(t.parent_edge[v]);
                if (np != op) {
                    take = np;
                } else if (u != t.parent[v]) {
                    take = u < t.parent[v];
                } else {
                    take = eid < t.parent_edge[v];
                }
                if (take) {
                    t.dist[v] = std::min(t.dist[v], nd);
                    t.parent[v] = u;
                    t.parent_edge[v] = eid;
                }
            }
        }
    }

    detail::build_preorder(t);
    return t;
}

inline std::vector<int> preorder(const ShortestPathTree& t) { return t.preorder; }

/*
 * Partition of the vertices induced by removing a tree edge: the up set
 * keeps the source, the down set is the subtree hanging below the edge,
 * and the cutset is every graph edge with one endpoint on each side.
 */
struct Cut {
    int failed_edge = -1;
    int upper_endpoint = -1;  // endpoint closer to the source
    int lower_endpoint = -1;  // endpoint rooting the down set
    std::vector<char> down_mask;
    std::vector<int> up_set;
    std::vector<int> down_set;
    std::vector<int> cutset;  // edge ids, ascending

    bool in_down(int v) const { return down_mask[v]; }
};

inline Cut cut_of_edge(const Graph& g, const ShortestPathTree& t, int edge_id) {
    if (edge_id < 0 || edge_id >= g.edge_count())
        throw std::invalid_argument("cut_of_edge: edge id out of range");
    const Edge& e = g.edge(edge_id);
    int lower;
    if (t.parent_edge[e.v] == edge_id)
        lower = e.v;
    else if (t.parent_edge[e.u] == edge_id)
        lower = e.u;
    else
        throw std::invalid_argument("cut_of_edge: not a tree edge");

    Cut cut;
    cut.failed_edge = edge_id;
    cut.lower_endpoint = lower;
    cut.upper_endpoint = e.other(lower);
    cut.down_mask.assign(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (t.in_subtree(lower, v)) cut.down_mask[v] = 1;
    for (int v = 0; v < g.vertex_count(); ++v)
        (cut.down_mask[v] ? cut.down_set : cut.up_set).push_back(v);
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& f = g.edge(id);
        if (cut.down_mask[f.u] != cut.down_mask[f.v]) cut.cutset.push_back(id);
    }
    return cut;
}

}  // namespace ftspt
