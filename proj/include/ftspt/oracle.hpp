#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftspt/graph.hpp"
#include "ftspt/shortest_path_tree.hpp"
#include "ftspt/structure.hpp"

namespace ftspt {

// Exact distances from the source after the fault, by full recomputation.
inline std::vector<double> exact_failure_distances(const Graph& g, int source,
                                                   const Fault& fault) {
    return dijkstra(g, source, fault).dist;
}

enum class FaultModel {
    all_tree_edges,
    all_edges,
    all_vertices_except_source,
};

inline std::string to_string(FaultModel model) {
    switch (model) {
        case FaultModel::all_tree_edges: return "tree-edges";
        case FaultModel::all_edges: return "all-edges";
        case FaultModel::all_vertices_except_source: return "vertices";
    }
    return "?";
}

inline std::vector<Fault> enumerate_faults(const Graph& g, int source, FaultModel model) {
    std::vector<Fault> faults;
    switch (model) {
        case FaultModel::all_tree_edges: {
            ShortestPathTree t = dijkstra(g, source);
            for (int v : t.preorder)
                if (t.parent_edge[v] >= 0) faults.push_back(Fault::edge(t.parent_edge[v]));
            break;
        }
        case FaultModel::all_edges:
            for (int id = 0; id < g.edge_count(); ++id) faults.push_back(Fault::edge(id));
            break;
        case FaultModel::all_vertices_except_source:
            for (int v = 0; v < g.vertex_count(); ++v)
                if (v != source) faults.push_back(Fault::vertex(v));
            break;
    }
    return faults;
}

struct FaultVerdict {
    Fault fault;
    double max_stretch = 1.0;
    int witness = -1;  // vertex attaining max_stretch
    double additive_worst = 0.0;
};

struct Violation {
    Fault fault;
    int vertex = -1;
    double got = 0.0;    // distance in H - x
    double bound = 0.0;  // alpha * d_{G-x} + beta
};

/*
 * Oracle verdict for one structure: worst stretch per fault and overall,
 * plus every vertex whose post-failure distance in the structure exceeds
 * alpha * d_{G-x}(t) + beta. Vertices unreachable in G - x are out of the
 * model; vertices reachable in G - x but not in H - x are violations.
 */
struct StretchReport {
    std::vector<FaultVerdict> per_fault;
    double global_max_stretch = 1.0;
    int structure_size = 0;
    std::vector<Violation> violations;

    bool passed() const { return violations.empty(); }
};

inline StretchReport verify(const Graph& g, const FtStructure& h, int source, FaultModel model,
                            double alpha, double beta) {
    if (h.edges.universe() != g.edge_count())
        throw std::invalid_argument("verify: structure does not belong to this graph");
    StretchReport report;
    report.structure_size = h.edges.size();
    for (const Fault& fault : enumerate_faults(g, source, model)) {
        std::vector<double> in_graph = exact_failure_distances(g, source, fault);
        std::vector<double> in_structure =
            dijkstra(g, source, fault, {}, &h.edges.mask()).dist;
        FaultVerdict verdict;
        verdict.fault = fault;
        for (int t = 0; t < g.vertex_count(); ++t) {
            if (fault.kind == Fault::Kind::Vertex && t == fault.index) continue;
            if (in_graph[t] >= kInfiniteDistance) continue;  // not reachable at all
            double got = in_structure[t];
            double stretch = in_graph[t] == 0.0 ? 1.0 : got / in_graph[t];
            if (stretch > verdict.max_stretch ||
                (stretch == verdict.max_stretch && verdict.witness < 0)) {
                verdict.max_stretch = stretch;
                verdict.witness = t;
            }
            verdict.additive_worst = std::max(verdict.additive_worst, got - in_graph[t]);
            double bound = alpha * in_graph[t] + beta;
            // only a relative excess beyond tolerance counts as a violation
            if (got > bound && !approx_eq(got, bound))
                report.violations.push_back({fault, t, got, bound});
        }
        report.global_max_stretch = std::max(report.global_max_stretch, verdict.max_stretch);
        report.per_fault.push_back(verdict);
    }
    return report;
}

// ---- Report serialization ---------------------------------------------------

inline nlohmann::json report_to_json(const Graph& g, const StretchReport& report) {
    nlohmann::json faults = nlohmann::json::array();
    for (const auto& v : report.per_fault)
        faults.push_back({{"fault", fault_to_json(g, v.fault)},
                          {"max_stretch", v.max_stretch},
                          {"witness", v.witness},
                          {"additive_worst", v.additive_worst}});
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"fault", fault_to_json(g, v.fault)},
                              {"vertex", v.vertex},
                              {"got", v.got},
                              {"bound", v.bound}});
    return {{"faults", faults},
            {"global_max_stretch", report.global_max_stretch},
            {"size", report.structure_size},
            {"violations", violations}};
}

// One row per fault: kind,u,v,max_stretch,witness,additive_worst,violations
inline std::string report_to_csv(const Graph& g, const StretchReport& report) {
    std::ostringstream out;
    out << "fault_kind,fault_u,fault_v,max_stretch,witness,additive_worst,violations\n";
    for (const auto& v : report.per_fault) {
        int violation_count = 0;
        for (const auto& viol : report.violations)
            if (viol.fault == v.fault) ++violation_count;
        switch (v.fault.kind) {
            case Fault::Kind::Edge: {
                const Edge& e = g.edge(v.fault.index);
                out << "edge," << e.u << "," << e.v;
                break;
            }
            case Fault::Kind::Vertex:
                out << "vertex," << v.fault.index << ",";
                break;
            case Fault::Kind::None:
                out << "none,,";
                break;
        }
        out << "," << format_weight(v.max_stretch) << "," << v.witness << ","
            << format_weight(v.additive_worst) << "," << violation_count << "\n";
    }
    return out.str();
}

}  // namespace ftspt
