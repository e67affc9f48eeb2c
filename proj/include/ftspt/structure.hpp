#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftspt/graph.hpp"

namespace ftspt {

enum class StructureKind {
    swap3_easpt,
    easpt,
    vertex_base,
    vaspt,
    eabfs,
    vabfs,
    spanner,
};

inline std::string to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::swap3_easpt: return "Swap3EASPT";
        case StructureKind::easpt: return "EASPT";
        case StructureKind::vertex_base: return "VertexBaseH0";
        case StructureKind::vaspt: return "VASPT";
        case StructureKind::eabfs: return "EABFS";
        case StructureKind::vabfs: return "VABFS";
        case StructureKind::spanner: return "Spanner";
    }
    return "?";
}

struct StructureParams {
    double eps = 0.0;
    double alpha = 1.0;
    double beta = 0.0;
    int k = 0;
};

/*
 * A fault-tolerant structure: a subset of the parent graph's edges plus
 * the parameters it was built with. base_size counts the edges of the
 * initial structure (tree, swap tree, or H0); added counts everything
 * selected on top of it.
 */
struct FtStructure {
    StructureKind kind = StructureKind::swap3_easpt;
    StructureParams params;
    EdgeSet edges;
    int base_size = 0;
    int added = 0;

    bool contains(int edge_id) const { return edges.contains(edge_id); }
    int size() const { return edges.size(); }

    void note_base_complete() {
        base_size = edges.size();
        added = 0;
    }

    // insert and keep the added counter consistent
    bool add_edge(int edge_id) {
        bool fresh = edges.insert(edge_id);
        if (fresh) ++added;
        return fresh;
    }
};

/*
 * Audit record of one harmonic edge selection: the crossing edge, the
 * vertices of the replacement path whose incoming edge was missing from the
 * base, their stretch values against the thresholds, and what got added.
 */
struct SelectionTrace {
    Fault fault;
    int bad_vertex = -1;
    int crossing_edge = -1;
    std::vector<int> z_list;       // z_0 .. z_k (z_0 = crossing edge tail)
    std::vector<double> alpha;     // measured stretch per z_i
    std::vector<double> gamma;     // harmonic thresholds per z_i
    int pivot_index = 0;           // largest index with alpha <= gamma
    int tail_count = 0;            // vertices past the pivot
    std::vector<int> added_edges;  // edge ids actually new to the structure
    bool bad_vertex_in_down_set = true;  // vertex faults: the expected location
};

// ---- JSON forms -------------------------------------------------------------

inline nlohmann::json fault_to_json(const Graph& g, const Fault& fault) {
    nlohmann::json j;
    switch (fault.kind) {
        case Fault::Kind::None:
            j["kind"] = "none";
            break;
        case Fault::Kind::Edge:
            j["kind"] = "edge";
            j["u"] = g.edge(fault.index).u;
            j["v"] = g.edge(fault.index).v;
            break;
        case Fault::Kind::Vertex:
            j["kind"] = "vertex";
            j["v"] = fault.index;
            break;
    }
    return j;
}

inline nlohmann::json structure_meta_json(const FtStructure& h) {
    nlohmann::json params;
    switch (h.kind) {
        case StructureKind::easpt:
        case StructureKind::vaspt:
            params["eps"] = h.params.eps;
            break;
        case StructureKind::eabfs:
        case StructureKind::vabfs:
        case StructureKind::spanner:
            params["alpha"] = h.params.alpha;
            params["beta"] = h.params.beta;
            if (h.params.k > 0) params["k"] = h.params.k;
            break;
        case StructureKind::swap3_easpt:
        case StructureKind::vertex_base:
            break;
    }
    return {{"kind", to_string(h.kind)},
            {"params", params},
            {"base_size", h.base_size},
            {"added", h.added},
            {"total", h.edges.size()}};
}

inline nlohmann::json trace_to_json(const Graph& g, const SelectionTrace& trace) {
    nlohmann::json edges = nlohmann::json::array();
    for (int id : trace.added_edges) {
        const Edge& e = g.edge(id);
        edges.push_back({{"u", e.u}, {"v", e.v}});
    }
    const Edge& f = g.edge(trace.crossing_edge);
    return {{"fault", fault_to_json(g, trace.fault)},
            {"bad_vertex", trace.bad_vertex},
            {"crossing_edge", {{"u", f.u}, {"v", f.v}}},
            {"z_list", trace.z_list},
            {"alpha", trace.alpha},
            {"gamma", trace.gamma},
            {"j", trace.pivot_index},
            {"eta", trace.tail_count},
            {"added_edges", edges}};
}

inline nlohmann::json traces_to_json(const Graph& g, const std::vector<SelectionTrace>& traces) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : traces) arr.push_back(trace_to_json(g, t));
    return arr;
}

// ---- Structure files --------------------------------------------------------

inline std::string structure_to_edge_list(const Graph& g, const FtStructure& h,
                                          const std::vector<std::string>& comments = {}) {
    std::ostringstream out;
    write_edge_list(out, g, h.edges.ids(), comments);
    return out.str();
}

inline void save_structure(const std::string& path, const Graph& g, const FtStructure& h,
                           const std::vector<std::string>& comments = {}) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write structure file: " + path);
    out << structure_to_edge_list(g, h, comments);
}

// Re-attach an edge-list file to its parent graph; every line must name an
// existing edge, otherwise the file is not a subgraph and is rejected.
inline EdgeSet load_edge_subset(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open structure file: " + path);
    Graph as_graph = parse_graph(in, g.vertex_count());
    if (as_graph.vertex_count() > g.vertex_count())
        throw std::invalid_argument(path + ": vertex ids exceed the parent graph");
    EdgeSet set(g.edge_count());
    for (const Edge& e : as_graph.edges()) {
        auto id = g.find_edge(e.u, e.v);
        if (!id || !approx_eq(g.edge(*id).weight, e.weight))
            throw std::invalid_argument(path + ": edge " + std::to_string(e.u) + "-" +
                                        std::to_string(e.v) + " is not in the parent graph");
        set.insert(*id);
    }
    return set;
}

}  // namespace ftspt
