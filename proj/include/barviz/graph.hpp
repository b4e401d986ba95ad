#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "barviz/errors.hpp"

namespace barviz {

using VertexId = std::string;
using Edge = std::pair<VertexId, VertexId>;  // stored with first < second

inline Edge make_edge(const VertexId& a, const VertexId& b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Undirected simple graph over text vertex identifiers.
/// All iteration orders are lexicographic, so everything downstream is deterministic.
class Graph {
public:
    Graph() = default;

    bool add_vertex(const VertexId& v) { return adj_.try_emplace(v).second; }

    /// Adds an edge, declaring endpoints as needed. Returns false if it already existed.
    bool add_edge(const VertexId& a, const VertexId& b) {
        if (a == b) throw precondition_error("self-loop on vertex '" + a + "'");
        add_vertex(a);
        add_vertex(b);
        bool inserted = adj_[a].insert(b).second;
        adj_[b].insert(a);
        if (inserted) ++edge_count_;
        return inserted;
    }

    bool remove_edge(const VertexId& a, const VertexId& b) {
        auto it = adj_.find(a);
        if (it == adj_.end()) return false;
        if (it->second.erase(b) == 0) return false;
        adj_[b].erase(a);
        --edge_count_;
        return true;
    }

    bool has_vertex(const VertexId& v) const { return adj_.count(v) != 0; }

    bool has_edge(const VertexId& a, const VertexId& b) const {
        auto it = adj_.find(a);
        return it != adj_.end() && it->second.count(b) != 0;
    }

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const { return edge_count_; }

    const std::set<VertexId>& neighbors(const VertexId& v) const {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw precondition_error("unknown vertex '" + v + "'");
        return it->second;
    }

    std::size_t degree(const VertexId& v) const { return neighbors(v).size(); }

    std::vector<VertexId> vertices() const {
        std::vector<VertexId> out;
        out.reserve(adj_.size());
        for (const auto& [v, _] : adj_) out.push_back(v);
        return out;
    }

    /// All edges as ordered pairs (first < second), lexicographically sorted.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (const auto& [v, ns] : adj_)
            for (const auto& w : ns)
                if (v < w) out.emplace_back(v, w);
        return out;
    }

    /// Subgraph induced on `keep`; vertices of `keep` absent from the graph are ignored.
    Graph induced(const std::set<VertexId>& keep) const {
        Graph h;
        for (const auto& [v, ns] : adj_) {
            if (!keep.count(v)) continue;
            h.add_vertex(v);
            for (const auto& w : ns)
                if (keep.count(w) && v < w) h.add_edge(v, w);
        }
        return h;
    }

    Graph without_vertex(const VertexId& v) const {
        std::set<VertexId> keep;
        for (const auto& [u, _] : adj_)
            if (u != v) keep.insert(u);
        return induced(keep);
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::map<VertexId, std::set<VertexId>> adj_;
    std::size_t edge_count_ = 0;
};

/// Connected components as sorted vertex sets, ordered by least member.
inline std::vector<std::set<VertexId>> connected_components(const Graph& g) {
    std::vector<std::set<VertexId>> comps;
    std::set<VertexId> seen;
    for (const auto& s : g.vertices()) {
        if (seen.count(s)) continue;
        std::set<VertexId> comp;
        std::vector<VertexId> stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comp.insert(v);
            for (const auto& w : g.neighbors(v))
                if (seen.insert(w).second) stack.push_back(w);
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected(const Graph& g) {
    return g.num_vertices() <= 1 || connected_components(g).size() == 1;
}

namespace detail {

// Shared DFS for articulation points and biconnected components (lowpoint method).
struct BiconnectivityDfs {
    const Graph& g;
    std::map<VertexId, int> num, low;
    std::set<VertexId> cuts;
    std::vector<Edge> edge_stack;
    std::vector<std::vector<Edge>> block_edges;
    int counter = 0;

    explicit BiconnectivityDfs(const Graph& graph) : g(graph) {
        for (const auto& v : g.vertices())
            if (!num.count(v)) root(v);
    }

    void root(const VertexId& r) {
        // Iterative DFS; child counting at the root decides its cut status.
        struct Frame {
            VertexId v;
            VertexId parent;
            std::vector<VertexId> ns;
            std::size_t next = 0;
        };
        std::vector<Frame> stack;
        auto open = [&](const VertexId& v, const VertexId& parent) {
            num[v] = low[v] = counter++;
            Frame f{v, parent, {g.neighbors(v).begin(), g.neighbors(v).end()}, 0};
            stack.push_back(std::move(f));
        };
        open(r, r);
        int root_children = 0;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < f.ns.size()) {
                VertexId w = f.ns[f.next++];
                if (w == f.parent && f.v != r) continue;
                if (!num.count(w)) {
                    edge_stack.push_back(make_edge(f.v, w));
                    if (f.v == r) ++root_children;
                    open(w, f.v);
                } else if (num[w] < num[f.v]) {
                    edge_stack.push_back(make_edge(f.v, w));
                    low[f.v] = std::min(low[f.v], num[w]);
                }
            } else {
                Frame done = stack.back();
                stack.pop_back();
                if (stack.empty()) break;
                Frame& p = stack.back();
                low[p.v] = std::min(low[p.v], low[done.v]);
                if (low[done.v] >= num[p.v]) {
                    // p.v separates `done.v`'s subtree: pop one block.
                    std::vector<Edge> block;
                    Edge top = make_edge(p.v, done.v);
                    while (!edge_stack.empty()) {
                        Edge e = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(e);
                        if (e == top) break;
                    }
                    block_edges.push_back(std::move(block));
                    if (p.v != r) cuts.insert(p.v);
                }
            }
        }
        if (root_children >= 2) cuts.insert(r);
    }
};

}  // namespace detail

/// Vertices whose removal increases the number of connected components.
inline std::set<VertexId> cut_vertices(const Graph& g) {
    return detail::BiconnectivityDfs(g).cuts;
}

/// One subgraph per component of g - v, induced on the component plus v.
inline std::vector<Graph> lobes(const Graph& g, const VertexId& v) {
    if (!g.has_vertex(v)) throw precondition_error("unknown vertex '" + v + "'");
    std::vector<Graph> out;
    for (auto& comp : connected_components(g.without_vertex(v))) {
        comp.insert(v);
        out.push_back(g.induced(comp));
    }
    return out;
}

/// Blocks, cut-vertices and their incidence. Blocks are maximal 2-connected
/// subgraphs, bridges, and isolated vertices; every edge lies in exactly one block.
struct BlockCutTree {
    std::vector<std::set<VertexId>> blocks;
    std::vector<std::vector<Edge>> blockEdges;  // parallel to blocks
    std::set<VertexId> cutVertices;
    std::map<VertexId, std::vector<std::size_t>> blocksOf;  // vertex -> block indices

    Graph block_subgraph(std::size_t i) const {
        Graph h;
        for (const auto& v : blocks[i]) h.add_vertex(v);
        for (const auto& [a, b] : blockEdges[i]) h.add_edge(a, b);
        return h;
    }
};

inline BlockCutTree block_cut_tree(const Graph& g) {
    detail::BiconnectivityDfs dfs(g);
    BlockCutTree t;
    t.cutVertices = dfs.cuts;
    for (auto& edges : dfs.block_edges) {
        std::sort(edges.begin(), edges.end());
        std::set<VertexId> vs;
        for (const auto& [a, b] : edges) {
            vs.insert(a);
            vs.insert(b);
        }
        t.blocks.push_back(std::move(vs));
        t.blockEdges.push_back(std::move(edges));
    }
    // Isolated vertices become singleton blocks.
    for (const auto& v : g.vertices())
        if (g.degree(v) == 0) {
            t.blocks.push_back({v});
            t.blockEdges.push_back({});
        }
    // Deterministic block order: by sorted vertex set.
    std::vector<std::size_t> order(t.blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return t.blocks[a] < t.blocks[b];
    });
    std::vector<std::set<VertexId>> blocks;
    std::vector<std::vector<Edge>> blockEdges;
    for (std::size_t i : order) {
        blocks.push_back(std::move(t.blocks[i]));
        blockEdges.push_back(std::move(t.blockEdges[i]));
    }
    t.blocks = std::move(blocks);
    t.blockEdges = std::move(blockEdges);
    for (std::size_t i = 0; i < t.blocks.size(); ++i)
        for (const auto& v : t.blocks[i]) t.blocksOf[v].push_back(i);
    return t;
}

/// Exhaustive isomorphism test with degree-class pruning. Guarded to |V| <= 10.
inline bool is_isomorphic(const Graph& g1, const Graph& g2) {
    if (g1.num_vertices() > 10 || g2.num_vertices() > 10)
        throw precondition_error("is_isomorphic: size guard exceeded (|V| <= 10)");
    if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges())
        return false;

    const auto v1 = g1.vertices();
    const auto v2 = g2.vertices();
    const std::size_t n = v1.size();

    auto degseq = [](const Graph& g, const std::vector<VertexId>& vs) {
        std::vector<std::size_t> d;
        for (const auto& v : vs) d.push_back(g.degree(v));
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degseq(g1, v1) != degseq(g2, v2)) return false;

    std::vector<int> map(n, -1);       // v1 index -> v2 index
    std::vector<bool> used(n, false);  // v2 index taken
    // Map highest-degree vertices first; prunes faster.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return g1.degree(v1[a]) > g1.degree(v1[b]);
    });

    auto compatible = [&](std::size_t i, std::size_t j) {
        if (g1.degree(v1[i]) != g2.degree(v2[j])) return false;
        for (std::size_t k = 0; k < n; ++k) {
            if (map[k] < 0) continue;
            bool e1 = g1.has_edge(v1[i], v1[k]);
            bool e2 = g2.has_edge(v2[j], v2[static_cast<std::size_t>(map[k])]);
            if (e1 != e2) return false;
        }
        return true;
    };

    std::vector<std::size_t> pos(n, 0);
    std::size_t depth = 0;
    while (true) {
        if (depth == n) return true;
        std::size_t i = order[depth];
        bool advanced = false;
        for (std::size_t j = pos[depth]; j < n; ++j) {
            if (used[j] || !compatible(i, j)) continue;
            map[i] = static_cast<int>(j);
            used[j] = true;
            pos[depth] = j + 1;
            ++depth;
            if (depth < n) pos[depth] = 0;
            advanced = true;
            break;
        }
        if (advanced) continue;
        if (depth == 0) return false;
        --depth;
        std::size_t prev = order[depth];
        used[static_cast<std::size_t>(map[prev])] = false;
        map[prev] = -1;
    }
}

}  // namespace barviz
