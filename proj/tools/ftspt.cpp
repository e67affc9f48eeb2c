// Command-line harness: generate graphs, build fault-tolerant structures,
// verify stretch bounds, and benchmark across instance families.

#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftspt/bfs_spanner.hpp"
#include "ftspt/easpt.hpp"
#include "ftspt/generator.hpp"
#include "ftspt/graph.hpp"
#include "ftspt/oracle.hpp"
#include "ftspt/structure.hpp"
#include "ftspt/vaspt.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

void write_json(const std::string& path, const nlohmann::json& body) {
    write_text(path, body.dump(2) + "\n");
}

struct GenOptions {
    std::string type = "gnp";
    int n = 0;
    double p = 0.0;
    int rows = 0;
    int cols = 0;
    std::string weights = "unit";
    double lo = 1.0;
    double hi = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenOptions& opt) {
    ftspt::GeneratorSpec spec;
    if (opt.type == "gnp")
        spec.family = ftspt::GraphFamily::gnp;
    else if (opt.type == "grid")
        spec.family = ftspt::GraphFamily::grid;
    else if (opt.type == "cycle")
        spec.family = ftspt::GraphFamily::cycle;
    else
        throw std::invalid_argument("unknown graph type: " + opt.type);
    spec.n = opt.n;
    spec.p = opt.p;
    spec.rows = opt.rows;
    spec.cols = opt.cols;
    if (opt.weights == "unit") {
        spec.unit_weights = true;
    } else if (opt.weights == "uniform") {
        spec.unit_weights = false;
        spec.weight_lo = opt.lo;
        spec.weight_hi = opt.hi;
    } else {
        throw std::invalid_argument("unknown weight model: " + opt.weights);
    }
    spec.seed = opt.seed;

    ftspt::GeneratedGraph made = ftspt::generate(spec);
    std::ostringstream body;
    ftspt::write_graph(body, made.graph, {made.description});
    if (opt.out.empty())
        std::cout << body.str();
    else
        write_text(opt.out, body.str());
    std::cerr << "generated " << made.graph.vertex_count() << " vertices, "
              << made.graph.edge_count() << " edges\n";
    return kExitOk;
}

struct BuildOptions {
    std::string kind;
    std::string graph_path;
    int source = 0;
    double eps = 0.0;
    int k = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::string spanner_path;
    std::string out;
};

ftspt::SpannerResult obtain_spanner(const ftspt::Graph& g, const BuildOptions& opt) {
    if (!opt.spanner_path.empty()) {
        ftspt::SpannerResult s;
        s.edges = ftspt::load_edge_subset(opt.spanner_path, g);
        s.alpha = opt.alpha > 0.0 ? opt.alpha : (opt.k >= 1 ? 2.0 * opt.k - 1.0 : 1.0);
        s.beta = opt.beta;
        s.k = opt.k >= 1 ? opt.k : 1;
        return s;
    }
    if (opt.k < 1) throw std::invalid_argument("need --k (or --spanner FILE) for this kind");
    return ftspt::greedy_spanner(g, opt.k);
}

int run_build(const BuildOptions& opt) {
    ftspt::Graph g = ftspt::load_graph(opt.graph_path);
    if (opt.source < 0 || opt.source >= g.vertex_count())
        throw std::invalid_argument("source out of range");
    if (opt.out.empty()) throw std::invalid_argument("build requires --out");

    ftspt::FtStructure structure;
    nlohmann::json traces = nlohmann::json::array();
    std::optional<nlohmann::json> paths;
    std::vector<std::string> warnings;

    if (opt.kind == "swap3") {
        structure = ftspt::build_swap_3easpt(g, opt.source).structure;
    } else if (opt.kind == "easpt") {
        if (!(opt.eps > 0.0)) throw std::invalid_argument("easpt requires --eps > 0");
        ftspt::EasptBuild build = ftspt::build_easpt(g, opt.source, opt.eps);
        structure = std::move(build.structure);
        traces = ftspt::traces_to_json(g, build.traces);
    } else if (opt.kind == "vaspt") {
        if (!(opt.eps > 0.0)) throw std::invalid_argument("vaspt requires --eps > 0");
        ftspt::VasptBuild build = ftspt::build_vaspt(g, opt.source, opt.eps);
        structure = std::move(build.structure);
        traces = ftspt::traces_to_json(g, build.traces);
        paths = ftspt::decomposition_to_json(build.decomposition);
        warnings = std::move(build.warnings);
    } else if (opt.kind == "eabfs") {
        ftspt::BfsAugmentBuild build = ftspt::build_eabfs(g, opt.source, obtain_spanner(g, opt));
        structure = std::move(build.structure);
        warnings = std::move(build.warnings);
    } else if (opt.kind == "vabfs") {
        ftspt::BfsAugmentBuild build = ftspt::build_vabfs(g, opt.source, obtain_spanner(g, opt));
        structure = std::move(build.structure);
        paths = ftspt::decomposition_to_json(build.decomposition);
        warnings = std::move(build.warnings);
    } else if (opt.kind == "spanner") {
        if (opt.k < 1) throw std::invalid_argument("spanner requires --k >= 1");
        structure = ftspt::spanner_to_structure(ftspt::greedy_spanner(g, opt.k));
    } else {
        throw std::invalid_argument("unknown structure kind: " + opt.kind);
    }

    ftspt::save_structure(opt.out, g, structure,
                          {ftspt::to_string(structure.kind) + " of " + opt.graph_path});
    write_json(opt.out + ".meta.json", ftspt::structure_meta_json(structure));
    if (opt.kind == "easpt" || opt.kind == "vaspt")
        write_json(opt.out + ".trace.json", traces);
    if (paths) write_json(opt.out + ".paths.json", *paths);

    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << ftspt::to_string(structure.kind) << ": " << structure.size() << " edges ("
              << structure.base_size << " base + " << structure.added << " added)\n";
    return kExitOk;
}

struct VerifyOptions {
    std::string graph_path;
    std::string structure_path;
    int source = 0;
    std::string model = "tree-edges";
    double alpha = 0.0;
    double beta = 0.0;
    double eps = 0.0;
    std::string format = "json";
    std::string out;
};

int run_verify(const VerifyOptions& opt) {
    ftspt::Graph g = ftspt::load_graph(opt.graph_path);
    if (opt.source < 0 || opt.source >= g.vertex_count())
        throw std::invalid_argument("source out of range");
    ftspt::EdgeSet edges = ftspt::load_edge_subset(opt.structure_path, g);
    ftspt::FtStructure h;
    h.edges = edges;
    h.note_base_complete();

    ftspt::FaultModel model;
    if (opt.model == "tree-edges")
        model = ftspt::FaultModel::all_tree_edges;
    else if (opt.model == "all-edges")
        model = ftspt::FaultModel::all_edges;
    else if (opt.model == "vertices")
        model = ftspt::FaultModel::all_vertices_except_source;
    else
        throw std::invalid_argument("unknown fault model: " + opt.model);

    double alpha = opt.alpha;
    if (opt.eps > 0.0) {
        if (alpha > 0.0) throw std::invalid_argument("give either --alpha or --eps, not both");
        alpha = 1.0 + opt.eps;
    }
    if (!(alpha > 0.0)) throw std::invalid_argument("need --alpha > 0 (or --eps)");

    ftspt::StretchReport report = ftspt::verify(g, h, opt.source, model, alpha, opt.beta);
    std::string body = opt.format == "csv" ? ftspt::report_to_csv(g, report)
                                           : ftspt::report_to_json(g, report).dump(2) + "\n";
    if (opt.format != "csv" && opt.format != "json")
        throw std::invalid_argument("unknown format: " + opt.format);
    if (opt.out.empty())
        std::cout << body;
    else
        write_text(opt.out, body);

    std::cerr << (report.passed() ? "PASS" : "FAIL") << ": max stretch "
              << ftspt::format_weight(report.global_max_stretch) << ", "
              << report.violations.size() << " violation(s)\n";
    return report.passed() ? kExitOk : kExitViolation;
}

struct BenchOptions {
    std::string kind = "easpt";
    std::vector<int> sizes;
    std::vector<std::uint64_t> seeds;
    double eps = 0.5;
    int k = 2;
    double degree = 8.0;
    std::string weights = "uniform";
    double lo = 1.0;
    double hi = 10.0;
    int source = 0;
    std::string format = "csv";
    std::string out;
};

struct BenchRow {
    int n = 0;
    int m = 0;
    double eps = 0.0;
    std::string kind;
    int base_size = 0;
    int added = 0;
    int total = 0;
    double max_stretch = 0.0;
    double seconds = 0.0;
    bool ok = true;
};

int run_bench(const BenchOptions& opt) {
    if (opt.sizes.empty()) throw std::invalid_argument("bench requires --sizes");
    if (opt.kind != "swap3" && opt.kind != "easpt" && opt.kind != "vaspt" &&
        opt.kind != "eabfs" && opt.kind != "vabfs")
        throw std::invalid_argument("unknown bench kind: " + opt.kind);
    bool unit = opt.kind == "eabfs" || opt.kind == "vabfs" || opt.weights == "unit";
    std::vector<std::uint64_t> seeds = opt.seeds.empty() ? std::vector<std::uint64_t>{1} : opt.seeds;

    std::vector<BenchRow> rows;
    bool all_ok = true;
    for (int n : opt.sizes) {
        for (std::uint64_t seed : seeds) {
            ftspt::GeneratorSpec spec;
            spec.family = ftspt::GraphFamily::gnp;
            spec.n = n;
            spec.p = n > 1 ? std::min(1.0, opt.degree / (n - 1)) : 1.0;
            spec.unit_weights = unit;
            spec.weight_lo = opt.lo;
            spec.weight_hi = opt.hi;
            spec.seed = seed;
            ftspt::Graph g = ftspt::generate(spec).graph;

            BenchRow row;
            row.n = n;
            row.m = g.edge_count();
            row.kind = opt.kind;

            ftspt::FtStructure structure;
            double alpha = 0.0;
            ftspt::FaultModel model = ftspt::FaultModel::all_tree_edges;
            auto start = std::chrono::steady_clock::now();
            if (opt.kind == "swap3") {
                structure = ftspt::build_swap_3easpt(g, opt.source).structure;
                alpha = 3.0;
            } else if (opt.kind == "easpt") {
                structure = ftspt::build_easpt(g, opt.source, opt.eps).structure;
                alpha = 1.0 + opt.eps;
                row.eps = opt.eps;
            } else if (opt.kind == "vaspt") {
                structure = ftspt::build_vaspt(g, opt.source, opt.eps).structure;
                alpha = 1.0 + opt.eps;
                row.eps = opt.eps;
                model = ftspt::FaultModel::all_vertices_except_source;
            } else if (opt.kind == "eabfs") {
                structure = ftspt::build_eabfs(g, opt.source, opt.k).structure;
                alpha = 2.0 * opt.k - 1.0;
                row.eps = opt.k;
            } else {
                structure = ftspt::build_vabfs(g, opt.source, opt.k).structure;
                alpha = 2.0 * opt.k - 1.0;
                row.eps = opt.k;
                model = ftspt::FaultModel::all_vertices_except_source;
            }
            row.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            row.base_size = structure.base_size;
            row.added = structure.added;
            row.total = structure.size();

            ftspt::StretchReport report = ftspt::verify(g, structure, opt.source, model, alpha, 0.0);
            row.max_stretch = report.global_max_stretch;
            row.ok = report.passed();
            if (!row.ok) {
                all_ok = false;
                std::cerr << "violation: kind=" << opt.kind << " n=" << n << " seed=" << seed
                          << "\n";
            }
            rows.push_back(row);
        }
    }

    std::ostringstream body;
    if (opt.format == "csv") {
        body << "n,m,eps,kind,base_size,added,total,max_stretch,seconds\n";
        for (const BenchRow& r : rows)
            body << r.n << ',' << r.m << ',' << ftspt::format_weight(r.eps) << ',' << r.kind << ','
                 << r.base_size << ',' << r.added << ',' << r.total << ','
                 << ftspt::format_weight(r.max_stretch) << ',' << ftspt::format_weight(r.seconds)
                 << "\n";
    } else if (opt.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const BenchRow& r : rows)
            arr.push_back({{"n", r.n},
                           {"m", r.m},
                           {"eps", r.eps},
                           {"kind", r.kind},
                           {"base_size", r.base_size},
                           {"added", r.added},
                           {"total", r.total},
                           {"max_stretch", r.max_stretch},
                           {"seconds", r.seconds},
                           {"ok", r.ok}});
        body << arr.dump(2) << "\n";
    } else {
        throw std::invalid_argument("unknown format: " + opt.format);
    }
    if (opt.out.empty())
        std::cout << body.str();
    else
        write_text(opt.out, body.str());
    return all_ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fault-tolerant approximate shortest-path structures"};
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* cgen = app.add_subcommand("gen", "Generate a graph file");
    cgen->add_option("--type", gen.type, "gnp | grid | cycle")->capture_default_str();
    cgen->add_option("--n", gen.n, "vertex count (gnp, cycle)");
    cgen->add_option("--p", gen.p, "edge probability (gnp)");
    cgen->add_option("--rows", gen.rows, "grid rows");
    cgen->add_option("--cols", gen.cols, "grid columns");
    cgen->add_option("--weights", gen.weights, "unit | uniform")->capture_default_str();
    cgen->add_option("--lo", gen.lo, "uniform weight lower bound")->capture_default_str();
    cgen->add_option("--hi", gen.hi, "uniform weight upper bound")->capture_default_str();
    cgen->add_option("--seed", gen.seed, "random seed")->capture_default_str();
    cgen->add_option("--out", gen.out, "output path (default stdout)");

    BuildOptions build;
    CLI::App* cbuild = app.add_subcommand("build", "Build a structure from a graph");
    cbuild->add_option("kind", build.kind, "swap3 | easpt | vaspt | eabfs | vabfs | spanner")
        ->required();
    cbuild->add_option("graph", build.graph_path, "input graph file")->required();
    cbuild->add_option("--source", build.source, "source vertex")->capture_default_str();
    cbuild->add_option("--eps", build.eps, "stretch slack (easpt, vaspt)");
    cbuild->add_option("--k", build.k, "spanner parameter (spanner, eabfs, vabfs)");
    cbuild->add_option("--alpha", build.alpha, "external spanner multiplicative stretch");
    cbuild->add_option("--beta", build.beta, "external spanner additive stretch");
    cbuild->add_option("--spanner", build.spanner_path, "edge list of a prebuilt spanner");
    cbuild->add_option("--out", build.out, "output path for the structure edge list")->required();

    VerifyOptions verify;
    CLI::App* cverify = app.add_subcommand("verify", "Check stretch of a structure");
    cverify->add_option("graph", verify.graph_path, "input graph file")->required();
    cverify->add_option("structure", verify.structure_path, "structure edge list")->required();
    cverify->add_option("--source", verify.source, "source vertex")->capture_default_str();
    cverify->add_option("--model", verify.model, "tree-edges | all-edges | vertices")
        ->capture_default_str();
    cverify->add_option("--alpha", verify.alpha, "multiplicative stretch bound");
    cverify->add_option("--beta", verify.beta, "additive stretch bound")->capture_default_str();
    cverify->add_option("--eps", verify.eps, "shorthand for --alpha 1+eps");
    cverify->add_option("--format", verify.format, "csv | json")->capture_default_str();
    cverify->add_option("--out", verify.out, "report path (default stdout)");

    BenchOptions bench;
    CLI::App* cbench = app.add_subcommand("bench", "Time builds over random instances");
    cbench->add_option("--kind", bench.kind, "swap3 | easpt | vaspt | eabfs | vabfs")
        ->capture_default_str();
    cbench->add_option("--sizes", bench.sizes, "vertex counts")->required()->delimiter(',');
    cbench->add_option("--seeds", bench.seeds, "seeds, one run per (size, seed)")->delimiter(',');
    cbench->add_option("--eps", bench.eps, "stretch slack (easpt, vaspt)")->capture_default_str();
    cbench->add_option("--k", bench.k, "spanner parameter (eabfs, vabfs)")->capture_default_str();
    cbench->add_option("--degree", bench.degree, "expected average degree")->capture_default_str();
    cbench->add_option("--weights", bench.weights, "unit | uniform")->capture_default_str();
    cbench->add_option("--lo", bench.lo, "uniform weight lower bound")->capture_default_str();
    cbench->add_option("--hi", bench.hi, "uniform weight upper bound")->capture_default_str();
    cbench->add_option("--source", bench.source, "source vertex")->capture_default_str();
    cbench->add_option("--format", bench.format, "csv | json")->capture_default_str();
    cbench->add_option("--out", bench.out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cgen->parsed()) return run_gen(gen);
        if (cbuild->parsed()) return run_build(build);
        if (cverify->parsed()) return run_verify(verify);
        if (cbench->parsed()) return run_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
