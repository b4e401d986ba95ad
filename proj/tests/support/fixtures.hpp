#pragma once

// Shared graph fixtures for the test suites. sample_h is the standard
// "planar but not a bar visibility graph" example: two cut-vertices d and e
// that no embedding can place on one face. sample_g is its 2-connected planar
// supergraph (adds ca and hf).

#include <barviz/graph.hpp>

#include <string>
#include <vector>

namespace support {

inline barviz::Graph sample_h() {
    barviz::Graph g;
    for (char c = 'a'; c <= 'h'; ++c) g.add_vertex(std::string(1, c));
    for (const char* e : {"ad", "ab", "be", "eh", "gh", "dg", "cd", "ef", "ah", "bg"})
        g.add_edge(std::string(1, e[0]), std::string(1, e[1]));
    return g;
}

inline barviz::Graph sample_g() {
    barviz::Graph g = sample_h();
    g.add_edge("c", "a");
    g.add_edge("h", "f");
    return g;
}

inline std::string vertex_name(std::size_t i) {
    if (i < 26) return std::string(1, char('a' + i));
    return "v" + std::to_string(i + 1);
}

inline barviz::Graph complete(std::size_t n) {
    barviz::Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(vertex_name(i));
    auto vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) g.add_edge(vs[i], vs[j]);
    return g;
}

inline barviz::Graph complete_bipartite(std::size_t a, std::size_t b) {
    barviz::Graph g;
    for (std::size_t i = 0; i < a + b; ++i) g.add_vertex(vertex_name(i));
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) g.add_edge(vertex_name(i), vertex_name(a + j));
    return g;
}

inline barviz::Graph cycle(std::size_t n) {
    barviz::Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(vertex_name(i));
    for (std::size_t i = 0; i < n; ++i) g.add_edge(vertex_name(i), vertex_name((i + 1) % n));
    return g;
}

inline barviz::Graph path_graph(std::size_t n) {
    barviz::Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(vertex_name(i));
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(vertex_name(i), vertex_name(i + 1));
    return g;
}

inline std::string data_file(const std::string& name) {
    return std::string(BARVIZ_DATA_DIR) + "/" + name;
}

}  // namespace support
