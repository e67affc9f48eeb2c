// Acceptance sweep: one line per criterion, PASS or FAIL, with the first few
// counterexamples printed under a failing line. Exit code is the number of
// failing criteria (0 when everything holds).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "ftspt/bfs_spanner.hpp"
#include "ftspt/easpt.hpp"
#include "ftspt/generator.hpp"
#include "ftspt/graph.hpp"
#include "ftspt/oracle.hpp"
#include "ftspt/structure.hpp"
#include "ftspt/vaspt.hpp"
#include "test_util.hpp"
#include "trace_checks.hpp"

using namespace ftspt;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void fail(const std::string& note) {
        ok = false;
        if (notes.size() < 12) notes.push_back(note);
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 30 connected weighted graphs: n in {25, 50, 100}, ten per size, m <= 4n.
std::vector<Graph> weighted_family() {
    std::vector<Graph> graphs;
    for (int n : {25, 50, 100}) {
        int accepted = 0;
        for (std::uint64_t seed = 1; accepted < 10; ++seed) {
            Graph g = testutil::random_connected(n, 7.0, seed, false);
            if (g.edge_count() > 4 * n) continue;
            graphs.push_back(std::move(g));
            ++accepted;
        }
    }
    return graphs;
}

const std::vector<double> kEpsValues{0.1, 0.25, 0.5, 1.0};

struct EasptRun {
    const Graph* g;
    double eps;
    EasptBuild build;
};

struct VasptRun {
    const Graph* g;
    double eps;
    VasptBuild build;
};

std::string instance_tag(const Graph& g, double param) {
    return "n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) +
           " eps=" + format_weight(param);
}

Outcome check_swap3(const std::vector<Graph>& family) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    for (const Graph& g : family) {
        SwapBuild build = build_swap_3easpt(g, 0);
        if (build.structure.size() > 2 * g.vertex_count() - 2)
            out.fail(instance_tag(g, 3) + ": size " + std::to_string(build.structure.size()) +
                     " above 2n-2");
        StretchReport report = verify(g, build.structure, 0, FaultModel::all_tree_edges, 3.0, 0.0);
        if (!report.passed())
            out.fail(instance_tag(g, 3) + ": " + std::to_string(report.violations.size()) +
                     " violations, max stretch " + format_weight(report.global_max_stretch));
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 10.0) out.fail("runtime " + format_weight(elapsed) + "s, budget 10s");
    return out;
}

Outcome check_easpt(const std::vector<Graph>& family, std::vector<EasptRun>& runs) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    for (const Graph& g : family)
        for (double eps : kEpsValues) {
            runs.push_back({&g, eps, build_easpt(g, 0, eps)});
            const EasptBuild& build = runs.back().build;
            StretchReport report =
                verify(g, build.structure, 0, FaultModel::all_tree_edges, 1.0 + eps, 0.0);
            if (!report.passed())
                out.fail(instance_tag(g, eps) + ": " + std::to_string(report.violations.size()) +
                         " violations, max stretch " + format_weight(report.global_max_stretch));
        }

    // size regression: calibrate the constant on the n=25 instances, then
    // demand it as an upper bound everywhere
    double c = 0.0;
    bool calibrated = false;
    for (const EasptRun& run : runs)
        if (run.g->vertex_count() == 25 && run.build.structure.added > 0) {
            double n = run.g->vertex_count();
            c = std::max(c, run.build.structure.added * run.eps * run.eps / (n * std::log(n)));
            calibrated = true;
        }
    if (!calibrated) out.fail("no n=25 run added edges; size constant cannot be calibrated");
    for (const EasptRun& run : runs) {
        double n = run.g->vertex_count();
        double bound = c * n * std::log(n) / (run.eps * run.eps);
        if (run.build.structure.added > bound)
            out.fail(instance_tag(*run.g, run.eps) + ": added " +
                     std::to_string(run.build.structure.added) + " above bound " +
                     format_weight(bound));
    }

    double elapsed = seconds_since(start);
    if (elapsed >= 120.0) out.fail("runtime " + format_weight(elapsed) + "s, budget 120s");
    return out;
}

Outcome check_traces(const std::vector<EasptRun>& easpt_runs,
                     const std::vector<VasptRun>& vaspt_runs) {
    Outcome out;
    int checked = 0;
    for (const EasptRun& run : easpt_runs) {
        EdgeSet base = build_swap_3easpt(*run.g, 0).structure.edges;
        std::vector<std::string> problems =
            testutil::check_selection_traces(*run.g, 0, run.eps, run.build.tree, nullptr, base,
                                             run.build.traces, run.build.structure.edges);
        checked += static_cast<int>(run.build.traces.size());
        for (const std::string& p : problems) out.fail(instance_tag(*run.g, run.eps) + ": " + p);
    }
    for (const VasptRun& run : vaspt_runs) {
        EdgeSet base = build_vertex_base_structure(*run.g, 0).structure.edges;
        std::vector<std::string> problems = testutil::check_selection_traces(
            *run.g, 0, run.eps, run.build.tree, &run.build.decomposition, base, run.build.traces,
            run.build.structure.edges);
        checked += static_cast<int>(run.build.traces.size());
        for (const std::string& p : problems) out.fail(instance_tag(*run.g, run.eps) + ": " + p);
    }
    if (checked == 0) out.fail("no traces were produced by the family");
    out.notes.insert(out.notes.begin(), std::to_string(checked) + " traces checked");
    return out;
}

Outcome check_vaspt(const std::vector<Graph>& family, std::vector<VasptRun>& runs) {
    Outcome out;
    for (const Graph& g : family) {
        VertexBaseBuild base = build_vertex_base_structure(g, 0);
        const ShortestPathTree& tree = base.tree;

        // decomposition half-size invariant and per-path selection budget
        for (size_t pi = 0; pi < base.decomposition.paths.size(); ++pi) {
            const auto& path = base.decomposition.paths[pi];
            int head = path.front();
            if (head != 0) {
                int parent = tree.parent[head];
                int head_size = tree.subtree_end[head] - tree.subtree_begin[head];
                int parent_size = tree.subtree_end[parent] - tree.subtree_begin[parent];
                if (2 * head_size > parent_size)
                    out.fail(instance_tag(g, 0) + ": hanging subtree at " + std::to_string(head) +
                             " larger than half its parent");
            }
            int budget = tree.subtree_end[head] - tree.subtree_begin[head] +
                         static_cast<int>(path.size());
            if (base.per_path_selected[pi] > budget)
                out.fail(instance_tag(g, 0) + ": path " + std::to_string(pi) + " selected " +
                         std::to_string(base.per_path_selected[pi]) + " above budget " +
                         std::to_string(budget));
        }

        // detached-side distance guarantees of the base structure
        for (int u : tree.preorder) {
            if (u == 0 || tree.subtree_end[u] - tree.subtree_begin[u] == 1) continue;
            VertexCutPartition part = partition_udo(tree, base.decomposition, u);
            Fault fault = Fault::vertex(u);
            std::vector<double> exact = dijkstra(g, 0, fault).dist;
            std::vector<double> in_base =
                dijkstra(g, 0, fault, {}, &base.structure.edges.mask()).dist;
            int v = part.next_on_path;
            if (v >= 0 && exact[v] < kInfiniteDistance && !approx_eq(in_base[v], exact[v]))
                out.fail(instance_tag(g, 0) + ": base distance to successor of " +
                         std::to_string(u) + " is " + format_weight(in_base[v]) + ", exact " +
                         format_weight(exact[v]));
            for (int z : part.down_set)
                if (exact[z] < kInfiniteDistance && !approx_le(in_base[z], 3.0 * exact[z]))
                    out.fail(instance_tag(g, 0) + ": base distance to " + std::to_string(z) +
                             " after losing " + std::to_string(u) + " above three times exact");
        }

        for (double eps : kEpsValues) {
            runs.push_back({&g, eps, build_vaspt(g, 0, eps)});
            const VasptBuild& build = runs.back().build;
            StretchReport report = verify(g, build.structure, 0,
                                          FaultModel::all_vertices_except_source, 1.0 + eps, 0.0);
            if (!report.passed())
                out.fail(instance_tag(g, eps) + ": " + std::to_string(report.violations.size()) +
                         " violations, max stretch " + format_weight(report.global_max_stretch));
            for (const SelectionTrace& trace : build.traces)
                if (!trace.bad_vertex_in_down_set)
                    out.fail(instance_tag(g, eps) + ": bad vertex " +
                             std::to_string(trace.bad_vertex) + " outside D for " +
                             trace.fault.describe(g));
        }
    }
    return out;
}

Outcome check_spanner() {
    Outcome out;
    for (int n : {50, 100, 150}) {
        Graph g = testutil::random_connected(n, 5.0, 17 + n, true);
        for (int k : {2, 3}) {
            SpannerResult s = greedy_spanner(g, k);
            for (int x = 0; x < n; ++x) {
                std::vector<double> in_g = dijkstra(g, x).dist;
                std::vector<double> in_s = dijkstra(g, x, Fault::none(), {}, &s.edges.mask()).dist;
                for (int y = 0; y < n; ++y)
                    if (in_s[y] > (2.0 * k - 1.0) * in_g[y]) {
                        out.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": pair (" +
                                 std::to_string(x) + "," + std::to_string(y) + ") stretched to " +
                                 format_weight(in_s[y] / in_g[y]));
                        break;
                    }
            }
            if (n == 50) {
                for (int id : s.edges.ids()) {
                    std::vector<char> mask = s.edges.mask();
                    mask[id] = 0;
                    const Edge& e = g.edge(id);
                    double alt = dijkstra(g, e.u, Fault::none(), {}, &mask).dist[e.v];
                    if (alt < 2.0 * k)
                        out.fail("n=50 k=" + std::to_string(k) + ": spanner edge " +
                                 std::to_string(id) + " closes a cycle of length " +
                                 format_weight(alt + 1));
                }
            }
        }
    }
    return out;
}

Outcome check_bfs_structures() {
    Outcome out;
    int instance = 0;
    for (int n : {40, 80})
        for (int k : {2, 3})
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                ++instance;
                Graph g = testutil::random_connected(n, 5.0, seed * 31 + n, true);
                SpannerResult s = greedy_spanner(g, k);
                std::string tag = "instance " + std::to_string(instance) + " (n=" +
                                  std::to_string(n) + " k=" + std::to_string(k) + ")";

                BfsAugmentBuild ea = build_eabfs(g, 0, s);
                if (ea.structure.size() > s.sigma() + 3 * n)
                    out.fail(tag + ": eabfs size " + std::to_string(ea.structure.size()) +
                             " above sigma+3n = " + std::to_string(s.sigma() + 3 * n));
                if (!verify(g, ea.structure, 0, FaultModel::all_tree_edges, 2.0 * k - 1.0, 0.0)
                         .passed())
                    out.fail(tag + ": eabfs verification violations");

                BfsAugmentBuild va = build_vabfs(g, 0, s);
                if (va.structure.size() > s.sigma() + va.base_size + n)
                    out.fail(tag + ": vabfs size " + std::to_string(va.structure.size()) +
                             " above sigma+|H0|+n = " +
                             std::to_string(s.sigma() + va.base_size + n));
                if (!verify(g, va.structure, 0, FaultModel::all_vertices_except_source,
                            2.0 * k - 1.0, 0.0)
                         .passed())
                    out.fail(tag + ": vabfs verification violations");

                if (k == 2) {
                    SpannerResult bare;
                    bare.edges = EdgeSet(g.edge_count());
                    BfsAugmentBuild base = build_vabfs(g, 0, bare);
                    for (int u = 1; u < n; ++u) {
                        std::vector<std::string> failures;
                        if (!check_detour_preservation(g, 0, u, base.structure.edges, base.tree,
                                         base.decomposition, &failures))
                            out.fail(tag + ": " + (failures.empty() ? "fact check failed"
                                                                    : failures.front()));
                    }
                }
            }
    return out;
}

Outcome check_oracle_consistency() {
    Outcome out;
    for (int pair = 0; pair < 50; ++pair) {
        std::uint64_t seed = 1000 + pair;
        int n = 20 + (pair * 7) % 41;
        bool integer = pair % 2 == 0;
        Graph g = testutil::random_connected(n, 5.0, seed, true);
        if (integer)
            g = testutil::with_integer_weights(g, seed * 13);
        else
            g = testutil::random_connected(n, 5.0, seed, false);

        Fault fault = pair % 3 == 0 ? Fault::none()
                      : pair % 3 == 1
                          ? Fault::edge(pair % g.edge_count())
                          : Fault::vertex(1 + pair % (g.vertex_count() - 1));
        std::vector<double> heap = dijkstra(g, 0, fault).dist;
        std::vector<double> rounds = testutil::bellman_ford(g, 0, fault);
        for (int v = 0; v < n; ++v) {
            bool match = integer ? heap[v] == rounds[v] : approx_eq(heap[v], rounds[v]);
            if (!match)
                out.fail("pair " + std::to_string(pair) + ": vertex " + std::to_string(v) +
                         " heap " + format_weight(heap[v]) + " vs rounds " +
                         format_weight(rounds[v]));
        }
    }
    return out;
}

Outcome check_determinism() {
    Outcome out;
    Graph weighted = testutil::random_connected(40, 6.0, 2024, false);
    Graph unit = testutil::random_connected(40, 6.0, 2024, true);

    auto expect_equal = [&](const std::string& what, const std::string& a, const std::string& b) {
        if (a != b) out.fail(what + ": two identical builds differ");
    };

    {
        std::string a = structure_to_edge_list(weighted, build_swap_3easpt(weighted, 0).structure);
        std::string b = structure_to_edge_list(weighted, build_swap_3easpt(weighted, 0).structure);
        expect_equal("swap3", a, b);
    }
    {
        EasptBuild a = build_easpt(weighted, 0, 0.25);
        EasptBuild b = build_easpt(weighted, 0, 0.25);
        expect_equal("easpt edges", structure_to_edge_list(weighted, a.structure),
                     structure_to_edge_list(weighted, b.structure));
        expect_equal("easpt traces", traces_to_json(weighted, a.traces).dump(),
                     traces_to_json(weighted, b.traces).dump());
    }
    {
        VasptBuild a = build_vaspt(weighted, 0, 0.25);
        VasptBuild b = build_vaspt(weighted, 0, 0.25);
        expect_equal("vaspt edges", structure_to_edge_list(weighted, a.structure),
                     structure_to_edge_list(weighted, b.structure));
        expect_equal("vaspt meta", structure_meta_json(a.structure).dump(),
                     structure_meta_json(b.structure).dump());
    }
    {
        expect_equal("eabfs", structure_to_edge_list(unit, build_eabfs(unit, 0, 2).structure),
                     structure_to_edge_list(unit, build_eabfs(unit, 0, 2).structure));
        expect_equal("vabfs", structure_to_edge_list(unit, build_vabfs(unit, 0, 2).structure),
                     structure_to_edge_list(unit, build_vabfs(unit, 0, 2).structure));
        expect_equal("spanner",
                     structure_to_edge_list(unit, spanner_to_structure(greedy_spanner(unit, 2))),
                     structure_to_edge_list(unit, spanner_to_structure(greedy_spanner(unit, 2))));
    }
    {
        GeneratorSpec spec;
        spec.family = GraphFamily::gnp;
        spec.n = 40;
        spec.p = 0.15;
        spec.seed = 99;
        spec.unit_weights = false;
        spec.weight_lo = 1.0;
        spec.weight_hi = 10.0;
        std::ostringstream a, b;
        write_graph(a, generate(spec).graph);
        write_graph(b, generate(spec).graph);
        expect_equal("generator", a.str(), b.str());
    }
    return out;
}

}  // namespace

int main() {
    std::vector<Graph> family = weighted_family();
    std::vector<EasptRun> easpt_runs;
    std::vector<VasptRun> vaspt_runs;

    auto guarded = [](std::function<Outcome()> fn) {
        try {
            return fn();
        } catch (const std::exception& e) {
            Outcome out;
            out.fail(std::string("exception: ") + e.what());
            return out;
        }
    };

    Outcome swap3 = guarded([&] { return check_swap3(family); });
    Outcome easpt = guarded([&] { return check_easpt(family, easpt_runs); });
    Outcome vaspt = guarded([&] { return check_vaspt(family, vaspt_runs); });
    Outcome traces = guarded([&] { return check_traces(easpt_runs, vaspt_runs); });
    Outcome spanner = guarded([&] { return check_spanner(); });
    Outcome bfs = guarded([&] { return check_bfs_structures(); });
    Outcome oracle = guarded([&] { return check_oracle_consistency(); });
    Outcome determinism = guarded([&] { return check_determinism(); });

    std::vector<std::pair<std::string, const Outcome*>> table = {
        {"swap-edge structure: zero violations at stretch 3, size <= 2n-2, under 10s", &swap3},
        {"(1+eps) edge-fault structure: zero violations, size regression, under 120s", &easpt},
        {"selection traces: harmonic invariants, ordering, progress, 2/eps bound", &traces},
        {"(1+eps) vertex-fault structure: zero violations, budgets, base guarantees", &vaspt},
        {"greedy spanner: all-pairs stretch 2k-1 and girth above 2k", &spanner},
        {"unweighted structures: size bounds, zero violations, distance preservation", &bfs},
        {"oracle self-consistency: heap search vs round-based relaxation", &oracle},
        {"determinism: identical seeds give byte-identical structures", &determinism},
    };

    int failed = 0;
    for (const auto& [name, outcome] : table) {
        std::cout << (outcome->ok ? "PASS" : "FAIL") << "  " << name << "\n";
        for (const std::string& note : outcome->notes) std::cout << "      - " << note << "\n";
        if (!outcome->ok) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed"
                              : std::to_string(failed) + " criteria failed")
              << "\n";
    return failed == 0 ? 0 : 1;
}
