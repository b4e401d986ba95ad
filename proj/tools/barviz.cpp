#include <CLI11.hpp>

#include <barviz/barviz.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

// Exit codes: 0 success, 2 parse/precondition trouble, 3 verification failure,
// 4 search budget exhausted.

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;
constexpr int kExitBudget = 4;

void print_histogram(const barviz::BarLayout& l) {
    std::map<std::size_t, std::size_t> hist;
    for (const auto& [v, bs] : l.per_vertex()) hist[bs.size()]++;
    std::cout << "bars-per-vertex";
    for (const auto& [k, c] : hist) std::cout << " " << k << ":" << c;
    std::cout << "\n";
}

void emit_layout(const barviz::BarLayout& l, const std::string& outPath) {
    if (outPath.empty())
        barviz::write_layout(std::cout, l);
    else
        barviz::write_layout_file(outPath, l);
}

int verify_and_report(const barviz::BarLayout& l, const barviz::Graph& g, std::size_t t) {
    const auto rep = barviz::verify_representation(l, g, t);
    barviz::write_verdict(std::cout, rep);
    print_histogram(l);
    return rep.pass ? kExitOk : kExitVerify;
}

int cmd_check(const std::string& graphFile) {
    const auto g = barviz::read_graph_file(graphFile);
    if (!barviz::is_planar(g)) {
        std::cout << "bar-visibility-graph: false (nonplanar)\n";
    } else if (!barviz::cutvertices_on_common_face(g)) {
        std::cout << "bar-visibility-graph: false (cut-vertices not on one face)\n";
    } else {
        std::cout << "bar-visibility-graph: true\n";
    }
    return kExitOk;
}

barviz::BarLayout one_bar_layout(const barviz::Graph& g) {
    if (!barviz::is_planar(g)) throw barviz::precondition_error("nonplanar");
    if (!barviz::cutvertices_on_common_face(g))
        throw barviz::precondition_error("cut-vertices not on one face");
    if (!barviz::is_connected(g) || !barviz::cut_vertices(g).empty())
        throw barviz::precondition_error("not 2-connected");
    if (g.num_vertices() >= 3) {
        const auto e = g.edges().front();
        return barviz::tt_layout(g, e.first, e.second);
    }
    barviz::BarLayout l;  // one or two vertices: a unit stack
    long y = 0;
    for (const auto& v : g.vertices()) l.bars.push_back({v, y++, 0, 1});
    return l;
}

int cmd_layout(const std::string& graphFile, const std::string& mode,
               const std::string& splitFile, const std::string& outPath, long grid,
               bool traceOn, bool debugVerify) {
    const auto g = barviz::read_graph_file(graphFile);
    (void)traceOn;
    (void)debugVerify;

    if (mode == "one-bar") {
        const auto l = one_bar_layout(g);
        emit_layout(l, outPath);
        return verify_and_report(l, g, 1);
    }
    if (mode == "two-bar") {
        const auto l = barviz::two_bar_layout(g);
        emit_layout(l, outPath);
        return verify_and_report(l, g, 2);
    }
    if (mode != "bound") throw barviz::precondition_error("unknown mode '" + mode + "'");

    std::optional<barviz::SplitInstance> source;
    if (!splitFile.empty()) {
        const auto kn = barviz::detail::complete_graph(g.vertices());
        source = barviz::read_split_file(splitFile, kn);
    }
    barviz::BoundReport rep = barviz::visibility_bound(g, source, grid);
    std::cout << "bound " << rep.bound << " constructive "
              << (rep.constructive ? "true" : "false") << "\n";
    if (rep.layout) {
        emit_layout(*rep.layout, outPath);
        print_histogram(*rep.layout);
    }
    return kExitOk;
}

int cmd_pipeline(const std::string& graphFileG, const std::string& splitFile,
                 const std::string& graphFileH, const std::string& outPath, bool traceOn,
                 bool debugVerify) {
    const auto g = barviz::read_graph_file(graphFileG);
    const auto h = barviz::read_graph_file(graphFileH);
    const auto inst = barviz::read_split_file(splitFile, g);

    std::function<void(const barviz::TransferStep&)> trace;
    if (traceOn)
        trace = [](const barviz::TransferStep& s) {
            std::cout << barviz::format_trace_line(s) << "\n";
        };
    const auto l = barviz::pipeline_layout(inst, h, trace, debugVerify);
    emit_layout(l, outPath);
    std::cout << "max-bars " << l.max_bars_per_vertex() << "\n";
    return verify_and_report(l, h, inst.map.t + 1);
}

int cmd_render(const std::string& layoutFile, const std::string& svgOut, bool overlay) {
    const auto l = barviz::read_layout_file(layoutFile);
    std::ofstream out(svgOut);
    if (!out) throw barviz::error("cannot write '" + svgOut + "'");
    barviz::write_svg(out, l, overlay);
    return kExitOk;
}

int cmd_sigma(const std::string& graphFile, std::size_t tMax, std::size_t budget) {
    const auto g = barviz::read_graph_file(graphFile);
    const auto res = barviz::sigma_exact(g, tMax, budget);
    switch (res.kind) {
        case barviz::SigmaResult::Kind::exact:
            std::cout << "sigma " << res.value << "\n";
            return kExitOk;
        case barviz::SigmaResult::Kind::above_tmax:
            std::cout << "sigma above " << tMax << "\n";
            return kExitOk;
        case barviz::SigmaResult::Kind::unknown:
        default:
            std::cout << "sigma unknown\n";
            return kExitBudget;
    }
}

int cmd_split_verify(const std::string& graphFile, const std::string& splitFile) {
    const auto g = barviz::read_graph_file(graphFile);
    const auto inst = barviz::read_split_file(splitFile, g);
    const auto rep = barviz::validate_split(inst);
    if (rep.valid()) {
        std::cout << "valid " << (rep.planar ? "planar" : "nonplanar") << " t="
                  << inst.map.t << "\n";
        return kExitOk;
    }
    std::cout << "invalid\n";
    for (const auto& p : rep.problems) std::cout << "problem " << p << "\n";
    return kExitVerify;
}

int cmd_paths(const std::string& graphFile, std::size_t k) {
    const auto g = barviz::read_graph_file(graphFile);
    const auto got = barviz::decompose_into_paths(g, k);
    if (!got) {
        std::cout << "none\n";
        return kExitOk;
    }
    for (const auto& p : *got) {
        std::cout << "path";
        for (const auto& v : p) std::cout << " " << v;
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_transfer(const std::string& graphFile, const std::string& u, const std::string& v,
                 const std::string& outPath) {
    const auto g = barviz::read_graph_file(graphFile);
    const auto rep = barviz::check_transfer(g, u, v);
    std::cout << "planar " << (rep.planarPreserved ? "true" : "false") << "\n";
    std::cout << "u-not-cut " << (rep.uNotCut ? "true" : "false") << "\n";
    std::cout << "others-unchanged " << (rep.othersUnchanged ? "true" : "false") << "\n";
    std::cout << "same-component " << (rep.sameComponent ? "true" : "false") << "\n";
    std::cout << "v-cut " << (rep.vIsCut ? "true" : "false") << "\n";
    for (const auto& f : rep.failures) std::cout << "failure " << f << "\n";
    std::cout << (rep.pass() ? "pass" : "fail") << "\n";
    if (!outPath.empty()) barviz::write_graph_file(outPath, rep.transferred);
    return rep.pass() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bar visibility representations: construction and verification"};
    app.require_subcommand(1);

    std::string graphFile, graphFileH, splitFile, layoutFile, outPath, svgOut, mode, uId, vId;
    long grid = 8;
    std::size_t budget = 2'000'000, tMax = 2, kPaths = 3;
    bool traceOn = false, debugVerify = false, overlay = false;

    auto* check = app.add_subcommand("check", "bar-visibility-graph test");
    check->add_option("graph", graphFile, "graph file")->required();

    auto* layout = app.add_subcommand("layout", "construct a verified layout");
    layout->add_option("graph", graphFile, "graph file")->required();
    layout->add_option("mode", mode, "one-bar | two-bar | bound")->required();
    layout->add_option("--split", splitFile, "split file of K_n (bound mode)");
    layout->add_option("-o,--out", outPath, "layout output file (default stdout)");
    layout->add_option("--grid", grid, "grid bound for small-graph search");
    layout->add_flag("--trace", traceOn, "print transfer trace lines");
    layout->add_flag("--debug-verify", debugVerify, "revalidate after every step");

    auto* pipeline = app.add_subcommand("pipeline", "split-based layout of a subgraph");
    pipeline->add_option("graphG", graphFile, "base graph G")->required();
    pipeline->add_option("split", splitFile, "split file of G")->required();
    pipeline->add_option("graphH", graphFileH, "spanning subgraph H")->required();
    pipeline->add_option("-o,--out", outPath, "layout output file (default stdout)");
    pipeline->add_flag("--trace", traceOn, "print transfer trace lines");
    pipeline->add_flag("--debug-verify", debugVerify, "revalidate after every step");

    auto* render = app.add_subcommand("render", "layout to SVG");
    render->add_option("layout", layoutFile, "layout file")->required();
    render->add_option("svg", svgOut, "SVG output file")->required();
    render->add_flag("--overlay", overlay, "draw sightline channels");

    auto* sigma = app.add_subcommand("sigma", "split thickness by exhaustive search");
    sigma->add_option("graph", graphFile, "graph file")->required();
    sigma->add_option("tmax", tMax, "largest t to try")->required();
    sigma->add_option("--budget", budget, "search budget");

    auto* splitVerify = app.add_subcommand("split-verify", "validate a split file");
    splitVerify->add_option("graph", graphFile, "base graph file")->required();
    splitVerify->add_option("split", splitFile, "split file")->required();

    auto* paths = app.add_subcommand("paths", "edge-disjoint path decomposition");
    paths->add_option("graph", graphFile, "graph file")->required();
    paths->add_option("k", kPaths, "maximum number of paths")->required();

    auto* transferCmd = app.add_subcommand("transfer", "apply one transfer, report the clauses");
    transferCmd->add_option("graph", graphFile, "graph file")->required();
    transferCmd->add_option("u", uId, "cut-vertex to unload")->required();
    transferCmd->add_option("v", vId, "vertex receiving the edges")->required();
    transferCmd->add_option("-o,--out", outPath, "write the transferred graph here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(graphFile);
        if (layout->parsed())
            return cmd_layout(graphFile, mode, splitFile, outPath, grid, traceOn, debugVerify);
        if (pipeline->parsed())
            return cmd_pipeline(graphFile, splitFile, graphFileH, outPath, traceOn, debugVerify);
        if (render->parsed()) return cmd_render(layoutFile, svgOut, overlay);
        if (sigma->parsed()) return cmd_sigma(graphFile, tMax, budget);
        if (splitVerify->parsed()) return cmd_split_verify(graphFile, splitFile);
        if (paths->parsed()) return cmd_paths(graphFile, kPaths);
        if (transferCmd->parsed()) return cmd_transfer(graphFile, uId, vId, outPath);
    } catch (const barviz::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const barviz::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const barviz::budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const barviz::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerify;
    } catch (const barviz::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
