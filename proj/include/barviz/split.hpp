#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "barviz/graph.hpp"
#include "barviz/planarity.hpp"

namespace barviz {

// t-splits: each vertex u is replaced by an independent set S(u) of at most t
// copies, and u,v are adjacent in the base iff some copy of u is adjacent to
// some copy of v in the split graph. Split thickness sigma(g) is the least t
// with a planar t-split.

inline VertexId make_copy_id(const VertexId& original, std::size_t index) {
    return original + "#" + std::to_string(index);
}

/// Splits on the final '#'; returns nothing if the tail is not a positive int.
inline std::optional<std::pair<VertexId, std::size_t>> split_copy_id(const VertexId& copy) {
    auto pos = copy.rfind('#');
    if (pos == std::string::npos || pos == 0 || pos + 1 == copy.size()) return std::nullopt;
    std::size_t idx = 0;
    for (std::size_t i = pos + 1; i < copy.size(); ++i) {
        char c = copy[i];
        if (c < '0' || c > '9') return std::nullopt;
        idx = idx * 10 + static_cast<std::size_t>(c - '0');
    }
    if (idx == 0) return std::nullopt;
    return std::make_pair(copy.substr(0, pos), idx);
}

struct SplitMap {
    std::size_t t = 1;
    std::map<VertexId, std::vector<VertexId>> assignment;  // original -> copies, in order
    std::map<VertexId, VertexId> inverse;                  // copy -> original

    void assign(const VertexId& original, const VertexId& copy) {
        assignment[original].push_back(copy);
        inverse[copy] = original;
    }
};

struct SplitInstance {
    Graph base;
    SplitMap map;
    Graph splitGraph;
};

/// The 1-split in which every vertex keeps a single copy.
inline SplitInstance identity_split(const Graph& g) {
    SplitInstance inst;
    inst.base = g;
    inst.map.t = 1;
    for (const auto& v : g.vertices()) {
        inst.map.assign(v, make_copy_id(v, 1));
        inst.splitGraph.add_vertex(make_copy_id(v, 1));
    }
    for (const auto& [a, b] : g.edges())
        inst.splitGraph.add_edge(make_copy_id(a, 1), make_copy_id(b, 1));
    return inst;
}

struct ValidationReport {
    std::vector<std::string> problems;
    bool planar = false;

    bool valid() const { return problems.empty(); }
};

/// Checks every SplitMap/SplitInstance invariant and reports all violations;
/// planarity of the split graph is a separate flag, not a validity clause.
/// Isolated copies are tolerated (they cannot affect any clause).
inline ValidationReport validate_split(const SplitInstance& inst) {
    ValidationReport rep;
    auto bad = [&](std::string msg) { rep.problems.push_back(std::move(msg)); };

    const auto& m = inst.map;
    if (m.t < 1) bad("t must be positive");

    // Copy-count and identifier hygiene.
    std::set<VertexId> allCopies;
    for (const auto& [orig, copies] : m.assignment) {
        if (!inst.base.has_vertex(orig)) bad("assignment for unknown vertex '" + orig + "'");
        if (copies.empty()) bad("empty copy list for '" + orig + "'");
        if (copies.size() > m.t)
            bad("'" + orig + "' has " + std::to_string(copies.size()) + " copies, t=" +
                std::to_string(m.t));
        for (const auto& c : copies) {
            if (!allCopies.insert(c).second) bad("copy '" + c + "' occurs twice");
            auto it = m.inverse.find(c);
            if (it == m.inverse.end() || it->second != orig)
                bad("inverse of '" + c + "' does not point to '" + orig + "'");
            if (!inst.splitGraph.has_vertex(c))
                bad("copy '" + c + "' missing from the split graph");
        }
    }
    for (const auto& v : inst.base.vertices())
        if (!m.assignment.count(v)) bad("no copies assigned to '" + v + "'");
    for (const auto& [c, orig] : m.inverse)
        if (!allCopies.count(c)) bad("inverse entry '" + c + "' not in any copy list");
    for (const auto& c : inst.splitGraph.vertices())
        if (!allCopies.count(c)) bad("split-graph vertex '" + c + "' is not a declared copy");

    // From here on, only sensible if hygiene held.
    if (!rep.problems.empty()) {
        rep.planar = is_planar(inst.splitGraph);
        return rep;
    }

    // Independence inside each S(u).
    for (const auto& [a, b] : inst.splitGraph.edges()) {
        if (m.inverse.at(a) == m.inverse.at(b))
            bad("edge " + a + " " + b + " inside S(" + m.inverse.at(a) + ")");
    }

    // Adjacency-iff between originals.
    std::set<Edge> represented;
    for (const auto& [a, b] : inst.splitGraph.edges()) {
        const auto &oa = m.inverse.at(a), &ob = m.inverse.at(b);
        if (oa != ob) represented.insert(make_edge(oa, ob));
    }
    for (const auto& e : inst.base.edges())
        if (!represented.count(e))
            bad("base edge " + e.first + " " + e.second + " has no representative");
    for (const auto& [a, b] : represented)
        if (!inst.base.has_edge(a, b))
            bad("copies of non-adjacent " + a + " " + b + " are adjacent");

    rep.planar = is_planar(inst.splitGraph);
    return rep;
}

/// Restricts a split to a spanning subgraph h of the base: keep exactly the
/// copy edges whose endpoint originals are adjacent in h.
inline SplitInstance prune_to_subgraph(const SplitInstance& inst, const Graph& h) {
    std::set<VertexId> bv, hv;
    for (const auto& v : inst.base.vertices()) bv.insert(v);
    for (const auto& v : h.vertices()) hv.insert(v);
    if (bv != hv) throw precondition_error("prune_to_subgraph: h is not spanning");
    for (const auto& [a, b] : h.edges())
        if (!inst.base.has_edge(a, b))
            throw precondition_error("prune_to_subgraph: edge " + a + " " + b +
                                     " is not in the base graph");

    SplitInstance out;
    out.base = h;
    out.map = inst.map;
    for (const auto& v : inst.splitGraph.vertices()) out.splitGraph.add_vertex(v);
    for (const auto& [a, b] : inst.splitGraph.edges())
        if (h.has_edge(inst.map.inverse.at(a), inst.map.inverse.at(b)))
            out.splitGraph.add_edge(a, b);
    return out;
}

/// Builds the disjoint-union split of a planar edge decomposition: part i
/// contributes copy i of each vertex it touches; vertices in no part keep
/// copy 1. A decomposition into t planar parts is thus a planar t-split.
inline SplitInstance split_from_decomposition(const Graph& g,
                                              const std::vector<Graph>& parts) {
    if (parts.empty()) throw precondition_error("split_from_decomposition: no parts");
    std::set<Edge> seen;
    for (const auto& p : parts) {
        for (const auto& e : p.edges()) {
            if (!g.has_edge(e.first, e.second))
                throw precondition_error("part edge " + e.first + " " + e.second +
                                         " not in the base graph");
            if (!seen.insert(e).second)
                throw precondition_error("edge " + e.first + " " + e.second +
                                         " appears in two parts");
        }
        if (!is_planar(p)) throw precondition_error("nonplanar part");
    }
    if (seen.size() != g.num_edges())
        throw precondition_error("parts do not cover every edge");

    SplitInstance inst;
    inst.base = g;
    inst.map.t = parts.size();
    for (const auto& v : g.vertices()) {
        bool touched = false;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& p = parts[i];
            if (p.has_vertex(v) && p.degree(v) > 0) {
                inst.map.assign(v, make_copy_id(v, i + 1));
                inst.splitGraph.add_vertex(make_copy_id(v, i + 1));
                touched = true;
            }
        }
        if (!touched) {
            inst.map.assign(v, make_copy_id(v, 1));
            inst.splitGraph.add_vertex(make_copy_id(v, 1));
        }
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (const auto& [a, b] : parts[i].edges())
            inst.splitGraph.add_edge(make_copy_id(a, i + 1), make_copy_id(b, i + 1));
    return inst;
}

enum class SearchStatus { found, exhausted, budget_exceeded };

struct BiplanarResult {
    SearchStatus status = SearchStatus::exhausted;
    Graph part1, part2;  // meaningful only when status == found
};

/// Exhaustive 2-coloring of the edges with incremental planarity pruning.
/// The first edge is pinned to part 1 (colorings come in mirror pairs), and
/// part 1 is tried first at every branch, so the returned partition is the
/// lexicographically least one. `budget` caps planarity tests.
inline BiplanarResult search_biplanar(const Graph& g, std::size_t budget = 5'000'000) {
    BiplanarResult res;
    auto es = g.edges();
    const std::size_t n = g.num_vertices();
    const std::size_t cap = n >= 3 ? 3 * n - 6 : es.size();  // planar edge bound
    if (es.size() > 2 * cap) {
        res.status = SearchStatus::exhausted;  // counting argument, no search needed
        return res;
    }

    Graph parts[2];
    for (const auto& v : g.vertices()) {
        parts[0].add_vertex(v);
        parts[1].add_vertex(v);
    }
    std::size_t used = 0;
    bool out_of_budget = false;

    // Iterative DFS: choice[i] is the part of edge i; -1 = not yet placed.
    std::vector<int> choice(es.size(), -1);

    auto feasible = [&](int side) {
        if (parts[side].num_edges() > cap) return false;
        if (used >= budget) {
            out_of_budget = true;
            return false;
        }
        ++used;
        return is_planar(parts[side]);
    };

    std::size_t i = 0;
    while (true) {
        if (i == es.size()) {
            res.status = SearchStatus::found;
            // Rebuild from edges: backtracking leaves stale isolated vertices.
            for (const auto& [a, b] : parts[0].edges()) res.part1.add_edge(a, b);
            for (const auto& [a, b] : parts[1].edges()) res.part2.add_edge(a, b);
            return res;
        }
        int start = choice[i] + 1;
        int limit = (i == 0) ? 1 : 2;  // symmetry break: edge 0 goes to part 1
        bool advanced = false;
        for (int side = start; side < limit; ++side) {
            parts[side].add_edge(es[i].first, es[i].second);
            if (feasible(side)) {
                choice[i] = side;
                advanced = true;
                ++i;
                break;
            }
            parts[side].remove_edge(es[i].first, es[i].second);
            choice[i] = side;
            if (out_of_budget) {
                res.status = SearchStatus::budget_exceeded;
                return res;
            }
        }
        if (advanced) continue;
        // Backtrack.
        choice[i] = -1;
        if (i == 0) {
            res.status = SearchStatus::exhausted;
            return res;
        }
        --i;
        parts[choice[i]].remove_edge(es[i].first, es[i].second);
    }
}

struct SigmaResult {
    enum class Kind { exact, above_tmax, unknown } kind = Kind::unknown;
    std::size_t value = 0;  // sigma, when kind == exact

    bool exact() const { return kind == Kind::exact; }
};

namespace detail {

// One fixed-t attempt: assign every base edge a pair of copy indices, with
// first-use-canonical numbering per vertex (a copy index may exceed the
// largest used so far by at most one), pruning by planarity of the partial
// split graph every `checkEvery` placements. Sound because edge addition
// preserves nonplanarity. Returns nullopt on budget exhaustion, otherwise
// the found instance or an empty optional wrapped in `found=false`.
struct TSplitSearch {
    const Graph& g;
    std::size_t t;
    std::size_t budget;
    std::size_t checkEvery;

    std::vector<Edge> es;
    Graph split;
    std::map<VertexId, std::size_t> highest;  // vertex -> highest copy index used
    std::size_t steps = 0;
    bool out_of_budget = false;

    TSplitSearch(const Graph& graph, std::size_t tt, std::size_t b, std::size_t ce)
        : g(graph), t(tt), budget(b), checkEvery(ce), es(graph.edges()) {
        for (const auto& v : graph.vertices()) highest[v] = 0;
    }

    std::optional<SplitInstance> build_instance() {
        SplitInstance inst;
        inst.base = g;
        inst.map.t = t;
        for (const auto& v : g.vertices()) {
            std::size_t h = std::max<std::size_t>(1, highest[v]);
            for (std::size_t i = 1; i <= h; ++i) inst.map.assign(v, make_copy_id(v, i));
        }
        // `split` carries isolated leftovers of abandoned branches (remove_edge
        // keeps endpoints), so rebuild from declared copies plus placed edges.
        for (const auto& [orig, copies] : inst.map.assignment)
            for (const auto& c : copies) inst.splitGraph.add_vertex(c);
        for (const auto& [x, z] : split.edges()) inst.splitGraph.add_edge(x, z);
        return inst;
    }

    std::optional<SplitInstance> run(std::size_t i) {
        if (out_of_budget) return std::nullopt;
        if (++steps > budget) {
            out_of_budget = true;
            return std::nullopt;
        }
        if (i == es.size()) {
            if (is_planar(split)) return build_instance();
            return std::nullopt;
        }
        if (steps % checkEvery == 0 && !is_planar(split)) return std::nullopt;

        const auto& [a, b] = es[i];
        std::size_t maxA = std::min(t, highest[a] + 1);
        std::size_t maxB = std::min(t, highest[b] + 1);
        for (std::size_t ca = 1; ca <= maxA; ++ca) {
            for (std::size_t cb = 1; cb <= maxB; ++cb) {
                std::size_t prevA = highest[a], prevB = highest[b];
                highest[a] = std::max(prevA, ca);
                highest[b] = std::max(prevB, cb);
                split.add_edge(make_copy_id(a, ca), make_copy_id(b, cb));
                auto got = run(i + 1);
                split.remove_edge(make_copy_id(a, ca), make_copy_id(b, cb));
                highest[a] = prevA;
                highest[b] = prevB;
                if (got || out_of_budget) return got;
            }
        }
        return std::nullopt;
    }
};

}  // namespace detail

/// Smallest t <= tMax admitting a planar t-split, by exhaustive assignment of
/// copy pairs to edges. Planar inputs short-circuit to 1. Budget exhaustion
/// yields Unknown, which is distinct from a definitive "above tMax".
inline SigmaResult sigma_exact(const Graph& g, std::size_t tMax,
                               std::size_t budget = 2'000'000) {
    SigmaResult res;
    if (tMax < 1) throw precondition_error("sigma_exact: tMax must be positive");
    if (is_planar(g)) {
        res.kind = SigmaResult::Kind::exact;
        res.value = 1;
        return res;
    }
    for (std::size_t t = 2; t <= tMax; ++t) {
        detail::TSplitSearch search(g, t, budget, 64);
        auto found = search.run(0);
        if (found) {
            res.kind = SigmaResult::Kind::exact;
            res.value = t;
            return res;
        }
        if (search.out_of_budget) {
            res.kind = SigmaResult::Kind::unknown;
            return res;
        }
    }
    res.kind = SigmaResult::Kind::above_tmax;
    return res;
}

/// Convenience: the planar t-split witnessing sigma_exact's answer.
inline std::optional<SplitInstance> find_planar_split(const Graph& g, std::size_t t,
                                                      std::size_t budget = 2'000'000) {
    if (t < 1) throw precondition_error("find_planar_split: t must be positive");
    detail::TSplitSearch search(g, t, budget, 64);
    return search.run(0);
}

using Path = std::vector<VertexId>;  // vertex sequence, edges between neighbors

namespace detail {

struct PathDecompSearch {
    std::vector<Edge> es;
    std::map<Edge, std::size_t> edgeIndex;
    std::map<VertexId, std::vector<std::pair<VertexId, std::size_t>>> adj;
    std::unordered_set<std::uint64_t> dead;  // failed (mask, budget) states

    std::uint64_t key(std::uint32_t mask, std::size_t k) const {
        return (static_cast<std::uint64_t>(mask) << 4) | static_cast<std::uint64_t>(k);
    }

    // Enumerates simple paths through the given seed edge using only uncovered
    // edges: first grow the b-end, then the a-end; every undirected path
    // through ab arises exactly once.
    bool solve(std::uint32_t mask, std::size_t k, std::vector<Path>& out) {
        if (mask == 0) return true;
        if (k == 0) return false;
        if (dead.count(key(mask, k))) return false;

        std::size_t seed = 0;
        while (!(mask & (1u << seed))) ++seed;
        const auto& [sa, sb] = es[seed];

        Path path = {sa, sb};
        std::set<VertexId> onPath = {sa, sb};
        std::uint32_t pathMask = 1u << seed;
        if (try_extend(mask, k, path, onPath, pathMask, /*growFront=*/false, out))
            return true;
        dead.insert(key(mask, k));
        return false;
    }

    bool try_extend(std::uint32_t mask, std::size_t k, Path& path,
                    std::set<VertexId>& onPath, std::uint32_t pathMask,
                    bool growFront, std::vector<Path>& out) {
        // Option 1: stop here (and, in back-growing phase, switch to the front).
        if (!growFront) {
            if (try_extend(mask, k, path, onPath, pathMask, true, out)) return true;
        } else {
            std::vector<Path> rest;
            if (solve(mask & ~pathMask, k - 1, rest)) {
                out.push_back(path);
                out.insert(out.end(), rest.begin(), rest.end());
                return true;
            }
        }
        // Option 2: extend the growing end by one uncovered edge.
        const VertexId& end = growFront ? path.front() : path.back();
        for (const auto& [w, ei] : adj.at(end)) {
            if (!(mask & (1u << ei))) continue;   // already covered
            if (pathMask & (1u << ei)) continue;  // on this path
            if (onPath.count(w)) continue;        // must stay simple
            if (growFront)
                path.insert(path.begin(), w);
            else
                path.push_back(w);
            onPath.insert(w);
            bool ok = try_extend(mask, k, path, onPath, pathMask | (1u << ei), growFront, out);
            onPath.erase(w);
            if (growFront)
                path.erase(path.begin());
            else
                path.pop_back();
            if (ok) return true;
        }
        return false;
    }
};

}  // namespace detail

/// Partitions E(g) into at most k edge-disjoint simple paths, or definitively
/// reports that none exists. Exhaustive with memoized failure states.
inline std::optional<std::vector<Path>> decompose_into_paths(const Graph& g, std::size_t k) {
    if (g.num_vertices() > 8)
        throw precondition_error("decompose_into_paths: size guard exceeded (|V| <= 8)");
    if (k > 15) throw precondition_error("decompose_into_paths: k too large");

    detail::PathDecompSearch s;
    s.es = g.edges();
    if (s.es.size() > 28)  // cannot happen under the vertex guard; belt and braces
        throw precondition_error("decompose_into_paths: too many edges");
    for (std::size_t i = 0; i < s.es.size(); ++i) s.edgeIndex[s.es[i]] = i;
    for (const auto& v : g.vertices()) {
        auto& lst = s.adj[v];
        for (const auto& w : g.neighbors(v)) lst.emplace_back(w, s.edgeIndex.at(make_edge(v, w)));
    }

    std::uint32_t full = s.es.empty() ? 0 : ((1u << s.es.size()) - 1);
    std::vector<Path> out;
    if (!s.solve(full, k, out)) return std::nullopt;
    return out;
}

// Split file format:
//   t <int>
//   c <original> <copy>     (one per copy, listed in S(u) order)
//   e <copy1> <copy2>       (split-graph edges)
// The base graph travels separately in graph format.

inline SplitInstance read_split(std::istream& in, const Graph& base) {
    SplitInstance inst;
    inst.base = base;
    bool sawT = false;
    std::string line;
    std::size_t lineno = 0;
    std::set<VertexId> declared;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok[0] == '#') continue;
        if (tok == "t") {
            long t = 0;
            std::string extra;
            if (!(ss >> t) || t < 1) throw parse_error(lineno, "t line needs a positive integer");
            if (ss >> extra) throw parse_error(lineno, "trailing tokens after t line");
            if (sawT) throw parse_error(lineno, "duplicate t line");
            sawT = true;
            inst.map.t = static_cast<std::size_t>(t);
        } else if (tok == "c") {
            std::string orig, copy, extra;
            if (!(ss >> orig >> copy)) throw parse_error(lineno, "c line needs two identifiers");
            if (ss >> extra) throw parse_error(lineno, "trailing tokens after c line");
            if (!sawT) throw parse_error(lineno, "c line before t line");
            if (!declared.insert(copy).second)
                throw parse_error(lineno, "duplicate copy '" + copy + "'");
            inst.map.assign(orig, copy);
            inst.splitGraph.add_vertex(copy);
        } else if (tok == "e") {
            std::string a, b, extra;
            if (!(ss >> a >> b)) throw parse_error(lineno, "e line needs two identifiers");
            if (ss >> extra) throw parse_error(lineno, "trailing tokens after e line");
            if (!sawT) throw parse_error(lineno, "e line before t line");
            if (a == b) throw parse_error(lineno, "self-loop on '" + a + "'");
            if (!declared.count(a)) throw parse_error(lineno, "undeclared copy '" + a + "'");
            if (!declared.count(b)) throw parse_error(lineno, "undeclared copy '" + b + "'");
            if (inst.splitGraph.has_edge(a, b))
                throw parse_error(lineno, "duplicate edge " + a + " " + b);
            inst.splitGraph.add_edge(a, b);
        } else {
            throw parse_error(lineno, "unknown directive '" + tok + "'");
        }
    }
    if (!sawT) throw parse_error(lineno, "missing t line");
    return inst;
}

inline SplitInstance read_split_file(const std::string& path, const Graph& base) {
    std::ifstream in(path);
    if (!in) throw error("cannot open split file '" + path + "'");
    return read_split(in, base);
}

inline void write_split(std::ostream& out, const SplitInstance& inst) {
    out << "t " << inst.map.t << "\n";
    for (const auto& [orig, copies] : inst.map.assignment)
        for (const auto& c : copies) out << "c " << orig << " " << c << "\n";
    for (const auto& [a, b] : inst.splitGraph.edges()) out << "e " << a << " " << b << "\n";
}

inline void write_split_file(const std::string& path, const SplitInstance& inst) {
    std::ofstream out(path);
    if (!out) throw error("cannot write split file '" + path + "'");
    write_split(out, inst);
}

inline std::string split_to_string(const SplitInstance& inst) {
    std::ostringstream ss;
    write_split(ss, inst);
    return ss.str();
}

inline SplitInstance split_from_string(const std::string& text, const Graph& base) {
    std::istringstream ss(text);
    return read_split(ss, base);
}

}  // namespace barviz
