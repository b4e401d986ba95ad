#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "barviz/graph.hpp"

namespace barviz {

// Graph text format:
//   # comment
//   v <id>
//   e <id1> <id2>
// Duplicate `e` lines (either orientation) and self-loops are parse errors, so
// multigraph inputs are rejected here rather than silently simplified.

inline Graph read_graph(std::istream& in) {
    Graph g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;  // blank
        if (tok[0] == '#') continue;
        if (tok == "v") {
            std::string id, extra;
            if (!(ss >> id)) throw parse_error(lineno, "v line needs an identifier");
            if (ss >> extra) throw parse_error(lineno, "trailing tokens after v line");
            g.add_vertex(id);
        } else if (tok == "e") {
            std::string a, b, extra;
            if (!(ss >> a >> b)) throw parse_error(lineno, "e line needs two identifiers");
            if (ss >> extra) throw parse_error(lineno, "trailing tokens after e line");
            if (a == b) throw parse_error(lineno, "self-loop on '" + a + "'");
            if (g.has_edge(a, b))
                throw parse_error(lineno, "duplicate edge " + a + " " + b);
            g.add_edge(a, b);
        } else {
            throw parse_error(lineno, "unknown directive '" + tok + "'");
        }
    }
    return g;
}

inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open graph file '" + path + "'");
    return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    for (const auto& v : g.vertices()) out << "v " << v << "\n";
    for (const auto& [a, b] : g.edges()) out << "e " << a << " " << b << "\n";
}

inline std::string graph_to_string(const Graph& g) {
    std::ostringstream ss;
    write_graph(ss, g);
    return ss.str();
}

inline void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw error("cannot write graph file '" + path + "'");
    write_graph(out, g);
}

/// Parses a graph from an inline literal; handy in tests and fixtures.
inline Graph graph_from_string(const std::string& text) {
    std::istringstream ss(text);
    return read_graph(ss);
}

}  // namespace barviz
