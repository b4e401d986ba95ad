#include <barviz/graph_io.hpp>
#include <barviz/layout.hpp>
#include <barviz/split.hpp>

#include <catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "support/catalog.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace barviz;

namespace {

// Independent path-decomposition re-verification: edge-disjoint paths (no
// repeated vertices) whose union is exactly E(g).
void reverify_paths(const Graph& g, const std::vector<Path>& paths, std::size_t k) {
    REQUIRE(paths.size() <= k);
    std::set<Edge> covered;
    for (const auto& p : paths) {
        REQUIRE(p.size() >= 2);
        std::set<VertexId> seen(p.begin(), p.end());
        REQUIRE(seen.size() == p.size());  // simple path
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            REQUIRE(g.has_edge(p[i], p[i + 1]));
            Edge e{std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])};
            REQUIRE(covered.insert(e).second);  // edge-disjoint
        }
    }
    REQUIRE(covered.size() == g.num_edges());
}

SplitInstance k5_decomposition_split() {
    Graph k5 = support::complete(5);
    Graph minus = k5;
    minus.remove_edge("d", "e");
    Graph justE;
    justE.add_edge("d", "e");
    return split_from_decomposition(k5, {minus, justE});
}

}  // namespace

TEST_CASE("copy identifiers split on the final hash", "[split]") {
    REQUIRE(make_copy_id("a", 1) == "a#1");
    auto back = split_copy_id("a#1");
    REQUIRE(back.has_value());
    REQUIRE(back->first == "a");
    REQUIRE(back->second == 1);

    auto weird = split_copy_id("x#2#3");  // final-# rule
    REQUIRE(weird.has_value());
    REQUIRE(weird->first == "x#2");
    REQUIRE(weird->second == 3);

    REQUIRE_FALSE(split_copy_id("plain").has_value());
    REQUIRE_FALSE(split_copy_id("a#").has_value());
    REQUIRE_FALSE(split_copy_id("a#zero").has_value());
}

TEST_CASE("identity split of K2 is a valid planar 1-split", "[split]") {
    Graph k2;
    k2.add_edge("u", "v");
    auto inst = identity_split(k2);
    auto rep = validate_split(inst);
    REQUIRE(rep.valid());
    REQUIRE(rep.planar);
    REQUIRE(inst.map.t == 1);
    REQUIRE(inst.splitGraph.has_edge("u#1", "v#1"));
}

TEST_CASE("K5 decomposition split is valid and planar", "[split]") {
    auto inst = k5_decomposition_split();
    auto rep = validate_split(inst);
    REQUIRE(rep.valid());
    REQUIRE(rep.planar);
    REQUIRE(inst.map.t == 2);
    // d and e got a second copy, the rest only one.
    REQUIRE(inst.map.assignment.at("d").size() == 2);
    REQUIRE(inst.map.assignment.at("e").size() == 2);
    REQUIRE(inst.map.assignment.at("a").size() == 1);
}

TEST_CASE("independence violations are reported, not thrown", "[split]") {
    Graph k2;
    k2.add_edge("u", "v");
    auto inst = identity_split(k2);
    inst.map.t = 2;
    inst.map.assign("u", "u#2");
    inst.splitGraph.add_edge("u#1", "u#2");
    auto rep = validate_split(inst);
    REQUIRE_FALSE(rep.valid());
    bool mentioned = false;
    for (const auto& p : rep.problems)
        if (p.find("inside S(u)") != std::string::npos) mentioned = true;
    REQUIRE(mentioned);
}

TEST_CASE("adjacency-iff violations in both directions", "[split]") {
    Graph k3 = support::complete(3);
    auto inst = identity_split(k3);
    // Remove a represented adjacency.
    SplitInstance broken = inst;
    broken.splitGraph.remove_edge("a#1", "b#1");
    REQUIRE_FALSE(validate_split(broken).valid());
    // Add an unrepresented adjacency.
    Graph p3 = support::path_graph(3);  // a-b-c
    auto inst2 = identity_split(p3);
    inst2.splitGraph.add_edge("a#1", "c#1");
    REQUIRE_FALSE(validate_split(inst2).valid());
}

TEST_CASE("copy-count and hygiene problems", "[split]") {
    Graph k2;
    k2.add_edge("u", "v");
    auto inst = identity_split(k2);
    inst.map.assign("u", "u#2");  // exceeds t=1
    REQUIRE_FALSE(validate_split(inst).valid());

    auto inst2 = identity_split(k2);
    inst2.splitGraph.add_edge("u#1", "w#1");  // undeclared copy in split graph
    REQUIRE_FALSE(validate_split(inst2).valid());
}

TEST_CASE("prune_to_subgraph: identity, edge drop, C5 in K5", "[split]") {
    Graph k3 = support::complete(3);
    auto inst = identity_split(k3);
    auto same = prune_to_subgraph(inst, k3);
    REQUIRE(same.splitGraph == inst.splitGraph);
    REQUIRE(same.base == k3);

    Graph p3 = support::path_graph(3);
    p3.add_vertex("c");
    auto pruned = prune_to_subgraph(inst, p3);
    REQUIRE_FALSE(pruned.splitGraph.has_edge("a#1", "c#1"));
    REQUIRE(pruned.splitGraph.num_edges() == 2);
    REQUIRE(validate_split(pruned).valid());

    auto k5inst = k5_decomposition_split();
    Graph c5 = support::cycle(5);
    auto c5inst = prune_to_subgraph(k5inst, c5);
    REQUIRE(c5inst.splitGraph.num_edges() == 5);
    REQUIRE(validate_split(c5inst).valid());

    Graph notSpanning = support::complete(2);
    REQUIRE_THROWS_AS(prune_to_subgraph(inst, notSpanning), precondition_error);
    Graph extraEdge = k3;
    extraEdge.add_edge("a", "z");
    REQUIRE_THROWS_AS(prune_to_subgraph(inst, extraEdge), precondition_error);
}

TEST_CASE("prune preserves validity on random subgraphs", "[split]") {
    auto r = support::rng(401);
    int cases = 0;
    for (int i = 0; i < 150; ++i) {
        Graph g = support::random_connected_planar(4 + i % 8, 0.5, r);
        auto inst = identity_split(g);
        Graph h = support::random_spanning_subgraph(g, 0.6, r);
        auto pruned = prune_to_subgraph(inst, h);
        REQUIRE(validate_split(pruned).valid());
        REQUIRE(pruned.base == h);
        ++cases;
    }
    auto k5inst = k5_decomposition_split();
    for (int i = 0; i < 50; ++i) {
        Graph h = support::random_spanning_subgraph(k5inst.base, 0.5, r);
        auto pruned = prune_to_subgraph(k5inst, h);
        auto rep = validate_split(pruned);
        REQUIRE(rep.valid());
        REQUIRE(rep.planar);  // subgraph of planar stays planar
        ++cases;
    }
    REQUIRE(cases == 200);
}

TEST_CASE("split_from_decomposition basics and errors", "[split]") {
    Graph k4 = support::complete(4);
    auto one = split_from_decomposition(k4, {k4});
    REQUIRE(validate_split(one).valid());
    REQUIRE(one.map.t == 1);
    REQUIRE(is_isomorphic(one.splitGraph, k4));

    auto inst = k5_decomposition_split();
    REQUIRE(validate_split(inst).planar);

    // Parts must partition E(g): duplicated edge.
    Graph p1 = support::path_graph(3);
    Graph dup = p1;
    REQUIRE_THROWS_AS(split_from_decomposition(p1, {p1, dup}), precondition_error);
    // Missing edge.
    Graph partial;
    partial.add_edge("a", "b");
    REQUIRE_THROWS_AS(split_from_decomposition(p1, {partial}), precondition_error);
    // Nonplanar part.
    Graph k5 = support::complete(5);
    REQUIRE_THROWS_AS(split_from_decomposition(k5, {k5}), precondition_error);
}

TEST_CASE("search_biplanar on K3, K5, K7; determinism; budget", "[split]") {
    Graph k3 = support::complete(3);
    auto triv = search_biplanar(k3);
    REQUIRE(triv.status == SearchStatus::found);
    REQUIRE(triv.part1.num_edges() == 3);
    REQUIRE(triv.part2.num_edges() == 0);

    for (auto* g : {new Graph(support::complete(5)), new Graph(support::complete(7))}) {
        auto res = search_biplanar(*g);
        REQUIRE(res.status == SearchStatus::found);
        REQUIRE(is_planar(res.part1));
        REQUIRE(is_planar(res.part2));
        std::set<Edge> all;
        for (const auto& e : res.part1.edges()) REQUIRE(all.insert(e).second);
        for (const auto& e : res.part2.edges()) REQUIRE(all.insert(e).second);
        REQUIRE(all.size() == g->num_edges());
        // First edge pinned to part 1.
        REQUIRE(res.part1.has_edge(g->edges().front().first, g->edges().front().second));

        auto again = search_biplanar(*g);
        REQUIRE(again.part1 == res.part1);
        REQUIRE(again.part2 == res.part2);
        delete g;
    }

    auto starved = search_biplanar(support::complete(7), 3);
    REQUIRE(starved.status == SearchStatus::budget_exceeded);
}

TEST_CASE("sigma_exact values and budget honesty", "[split]") {
    auto k4 = sigma_exact(support::complete(4), 2);
    REQUIRE(k4.exact());
    REQUIRE(k4.value == 1);

    auto k5 = sigma_exact(support::complete(5), 2);
    REQUIRE(k5.exact());
    REQUIRE(k5.value == 2);

    auto k33 = sigma_exact(support::complete_bipartite(3, 3), 2);
    REQUIRE(k33.exact());
    REQUIRE(k33.value == 2);

    auto above = sigma_exact(support::complete(5), 1);
    REQUIRE(above.kind == SigmaResult::Kind::above_tmax);

    auto starved = sigma_exact(support::complete(5), 2, 5);
    REQUIRE(starved.kind == SigmaResult::Kind::unknown);

    REQUIRE_THROWS_AS(sigma_exact(support::complete(4), 0), precondition_error);
}

TEST_CASE("find_planar_split output validates", "[split]") {
    auto found = find_planar_split(support::complete(5), 2);
    REQUIRE(found.has_value());
    auto rep = validate_split(*found);
    REQUIRE(rep.valid());
    REQUIRE(rep.planar);
    REQUIRE_FALSE(find_planar_split(support::complete(5), 1).has_value());
}

TEST_CASE("sigma lower-bounds every layout the artifact produces", "[split]") {
    // sigma(G) <= b(G): any verified layout's bars-per-vertex is an upper
    // witness. Planar graphs: sigma 1 vs tt/two-bar; K5: sigma 2 vs k5_layout.
    for (std::uint32_t m : support::two_connected_planar_classes(5)) {
        Graph g = support::mask_to_graph(5, m);
        auto sigma = sigma_exact(g, 2);
        REQUIRE(sigma.exact());
        auto l = two_bar_layout(g);
        REQUIRE(sigma.value <= l.max_bars_per_vertex());
    }
    auto k5sigma = sigma_exact(support::complete(5), 2);
    auto k5bars = k5_layout(support::complete(5)).max_bars_per_vertex();
    REQUIRE(k5sigma.value <= k5bars);
}

TEST_CASE("decompose_into_paths: K4, C6, and the guard", "[split]") {
    Graph k4 = support::complete(4);
    auto two = decompose_into_paths(k4, 2);
    REQUIRE(two.has_value());
    reverify_paths(k4, *two, 2);

    Graph c6 = support::cycle(6);
    REQUIRE_FALSE(decompose_into_paths(c6, 1).has_value());  // a cycle is no path
    auto pair = decompose_into_paths(c6, 2);
    REQUIRE(pair.has_value());
    reverify_paths(c6, *pair, 2);
    REQUIRE(pair->size() == 2);

    REQUIRE_THROWS_AS(decompose_into_paths(support::complete(9), 3), precondition_error);
}

TEST_CASE("path decompositions reverify across the connected 6-vertex classes",
          "[split]") {
    // The connected premise holds with room to spare; disconnected graphs can
    // genuinely need four paths (two triangles), which acceptance reports.
    std::size_t done = 0;
    for (std::uint32_t m : support::connected_classes(6)) {
        Graph g = support::mask_to_graph(6, m);
        if (g.num_edges() == 0) continue;
        auto got = decompose_into_paths(g, 3);
        REQUIRE(got.has_value());
        reverify_paths(g, *got, 3);
        ++done;
    }
    REQUIRE(done == 112);
}

TEST_CASE("split file format round trip and determinism", "[split]") {
    auto inst = k5_decomposition_split();
    std::string text = split_to_string(inst);
    auto back = split_from_string(text, inst.base);
    REQUIRE(split_to_string(back) == text);
    REQUIRE(back.splitGraph == inst.splitGraph);
    REQUIRE(back.map.t == inst.map.t);
    REQUIRE(back.map.assignment == inst.map.assignment);
}

TEST_CASE("split parser errors carry line numbers", "[split]") {
    Graph k2;
    k2.add_edge("u", "v");
    auto lineOf = [&](const std::string& text) -> std::string {
        try {
            split_from_string(text, k2);
        } catch (const parse_error& e) {
            return e.what();
        }
        return "";
    };
    REQUIRE(lineOf("c u u#1\nt 1\n").find("line 1") != std::string::npos);  // t first
    REQUIRE(lineOf("t 1\nc u u#1\nc u u#1\n").find("line 3") != std::string::npos);
    REQUIRE(lineOf("t 1\nc u u#1\nc v v#1\ne u#1 w#9\n").find("line 4") !=
            std::string::npos);  // undeclared copy
    REQUIRE(lineOf("t 1\nc u u#1\nc v v#1\ne u#1 u#1\n").find("line 4") !=
            std::string::npos);  // self-loop
    REQUIRE(lineOf("t 0\n").find("line 1") != std::string::npos);
}

TEST_CASE("data fixture splits parse and validate", "[split]") {
    for (const char* name : {"k5", "k7", "k8"}) {
        Graph base = read_graph_file(support::data_file(std::string(name) + ".graph"));
        auto inst =
            read_split_file(support::data_file(std::string(name) + ".split"), base);
        auto rep = validate_split(inst);
        INFO(name);
        REQUIRE(rep.valid());
        REQUIRE(rep.planar);
        REQUIRE(inst.map.t == 2);
    }
}
