#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "barviz/bars.hpp"
#include "barviz/graph.hpp"
#include "barviz/planarity.hpp"
#include "barviz/split.hpp"
#include "barviz/transfer.hpp"
#include "barviz/visibility.hpp"

namespace barviz {

// Layout constructions. Everything here self-verifies with the sweep oracle
// before returning: a layout that does not reproduce its target graph exactly
// is a bug, never a return value.

/// st-numbering by open ear decomposition: grow from the edge st, repeatedly
/// attaching an ear (a path through unplaced vertices between two placed ones)
/// and splicing its interior into the order just after the earlier endpoint.
/// Every interior vertex then has both a lower and a higher neighbor.
inline std::vector<VertexId> st_numbering(const Graph& g, const VertexId& s,
                                          const VertexId& t) {
    if (!g.has_edge(s, t)) throw precondition_error("st_numbering: st must be an edge");
    if (!is_connected(g) || !cut_vertices(g).empty())
        throw precondition_error("st_numbering: graph must be 2-connected");

    std::vector<VertexId> order = {s, t};
    std::set<VertexId> placed = {s, t};

    while (order.size() < g.num_vertices()) {
        // Least-position placed vertex with an unplaced neighbor starts the ear.
        VertexId a, x;
        bool found = false;
        for (const auto& va : order) {
            for (const auto& w : g.neighbors(va))
                if (!placed.count(w)) {
                    a = va;
                    x = w;
                    found = true;
                    break;
                }
            if (found) break;
        }
        if (!found) throw internal_error("st_numbering: stuck on a connected graph");

        // BFS from x through unplaced vertices, avoiding a (g - a stays
        // connected), until some other placed vertex b is hit.
        std::map<VertexId, VertexId> parent = {{x, x}};
        std::vector<VertexId> frontier = {x};
        VertexId b, last;
        bool hit = false;
        while (!hit) {
            if (frontier.empty())
                throw internal_error("st_numbering: ear search exhausted");
            std::vector<VertexId> next;
            for (const auto& f : frontier) {
                for (const auto& w : g.neighbors(f)) {
                    if (w == a) continue;
                    if (placed.count(w)) {
                        b = w;
                        last = f;
                        hit = true;
                        break;
                    }
                    if (parent.emplace(w, f).second) next.push_back(w);
                }
                if (hit) break;
            }
            frontier = std::move(next);
        }

        std::vector<VertexId> interior;  // x ... last along the ear
        for (VertexId c = last;; c = parent.at(c)) {
            interior.push_back(c);
            if (c == x) break;
        }
        std::reverse(interior.begin(), interior.end());

        auto pa = std::find(order.begin(), order.end(), a);
        auto pb = std::find(order.begin(), order.end(), b);
        if (pa < pb) {
            order.insert(pa + 1, interior.begin(), interior.end());
        } else {
            std::reverse(interior.begin(), interior.end());
            order.insert(pb + 1, interior.begin(), interior.end());
        }
        for (const auto& w : interior) placed.insert(w);
    }

    // Certify before handing out: s first, t last, everyone else sandwiched.
    std::map<VertexId, std::size_t> rank;
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    if (order.front() != s || order.back() != t)
        throw internal_error("st_numbering: endpoints drifted");
    for (const auto& v : order) {
        if (v == s || v == t) continue;
        bool lower = false, higher = false;
        for (const auto& w : g.neighbors(v)) {
            if (rank[w] < rank[v]) lower = true;
            if (rank[w] > rank[v]) higher = true;
        }
        if (!lower || !higher)
            throw internal_error("st_numbering: '" + v + "' lacks a two-sided neighbor");
    }
    return order;
}

/// One bar per vertex for a 2-connected planar graph, with the edge st on the
/// outer face. Classical face-numbering scheme: orient edges by st-rank; in
/// the dual, split the face holding the dart t->s into a source s* and sink
/// t*, add one arc per edge from its reverse-dart face to its forward-dart
/// face, and x-number faces by longest path from s*. A vertex's bar sits at
/// its longest-path level and stretches between its two in/out corner faces;
/// s and t get full-width bars (the pocket construction below relies on that).
inline BarLayout tt_layout(const Graph& g, const VertexId& s, const VertexId& t) {
    if (g.num_vertices() < 3) throw precondition_error("tt_layout: need at least 3 vertices");
    auto embOpt = embed(g);
    if (!embOpt) throw precondition_error("tt_layout: graph is not planar");
    const PlanarEmbedding& emb = *embOpt;

    const auto order = st_numbering(g, s, t);  // validates 2-connectivity and st
    std::map<VertexId, std::size_t> rank;
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    // Vertex levels: longest directed path from s (rank order is topological).
    std::map<VertexId, long> y;
    for (const auto& v : order) {
        long best = 0;
        for (const auto& w : g.neighbors(v))
            if (rank[w] < rank[v]) best = std::max(best, y.at(w) + 1);
        y[v] = best;
    }

    const int Fo = emb.face_of({t, s});
    if (Fo < 0) throw internal_error("tt_layout: dart (t,s) missing from the embedding");
    const int F = static_cast<int>(emb.faces.size());
    const int sStar = F, tStar = F + 1;
    auto node = [&](const Dart& d) -> int {
        int f = emb.face_of(d);
        if (f < 0) throw internal_error("tt_layout: dart missing from face map");
        if (f != Fo) return f;
        return d == Dart{t, s} ? sStar : tStar;
    };

    std::vector<std::vector<int>> arcs(F + 2);
    std::vector<int> indeg(F + 2, 0), outdeg(F + 2, 0);
    std::vector<char> live(F + 2, 0);
    live[sStar] = live[tStar] = 1;
    for (int f = 0; f < F; ++f)
        if (f != Fo) live[f] = 1;
    for (const auto& [a, b] : g.edges()) {
        const VertexId& lo = rank[a] < rank[b] ? a : b;
        const VertexId& hi = rank[a] < rank[b] ? b : a;
        int from = node({hi, lo});
        int to = node({lo, hi});
        arcs[from].push_back(to);
        ++indeg[to];
        ++outdeg[from];
    }

    for (int f = 0; f < F + 2; ++f) {
        if (!live[f]) continue;
        if (indeg[f] == 0 && f != sStar) throw internal_error("tt_layout: dual source not unique");
        if (outdeg[f] == 0 && f != tStar) throw internal_error("tt_layout: dual sink not unique");
    }
    if (indeg[sStar] != 0 || outdeg[tStar] != 0)
        throw internal_error("tt_layout: dual endpoints misdirected");

    // Longest path from s*; Kahn order doubles as the acyclicity certificate.
    std::vector<long> x(F + 2, 0);
    std::vector<int> todo = {sStar}, deg = indeg;
    std::size_t processed = 0, liveCount = 0;
    for (int f = 0; f < F + 2; ++f) liveCount += live[f];
    while (!todo.empty()) {
        int f = todo.back();
        todo.pop_back();
        ++processed;
        for (int to : arcs[f]) {
            x[to] = std::max(x[to], x[f] + 1);
            if (--deg[to] == 0) todo.push_back(to);
        }
    }
    if (processed != liveCount) throw internal_error("tt_layout: dual graph has a cycle");

    // Doubled face coordinates; a bar runs between its two corner faces'
    // columns, closed on both ends. Bars meeting at a face share one endpoint,
    // which carries no sightline (channels need positive width), so each face's
    // interior is pinched shut and cannot leak a source-to-sink visibility.
    const long width = 2 * x[tStar];
    if (width < 2) throw internal_error("tt_layout: degenerate width");

    BarLayout out;
    for (const auto& v : g.vertices()) {
        if (v == s || v == t) {
            out.bars.push_back({v, y.at(v), 0, width});
            continue;
        }
        const auto& rot = emb.rotation.at(v);
        const std::size_t d = rot.size();
        std::vector<long> corners;
        for (std::size_t i = 0; i < d; ++i) {
            const VertexId& p = rot[i];
            const VertexId& q = rot[(i + 1) % d];
            bool pin = rank.at(p) < rank.at(v);
            bool qin = rank.at(q) < rank.at(v);
            if (pin != qin) corners.push_back(x[node({v, q})]);
        }
        if (corners.size() != 2)
            throw internal_error("tt_layout: in/out edges not consecutive at '" + v + "'");
        long xl = 2 * std::min(corners[0], corners[1]);
        long xr = 2 * std::max(corners[0], corners[1]);
        if (xl >= xr) throw internal_error("tt_layout: collapsed bar for '" + v + "'");
        out.bars.push_back({v, y.at(v), xl, xr});
    }
    out.normalize();

    if (width > 4 * static_cast<long>(g.num_vertices()))
        throw internal_error("tt_layout: width exceeds the sanity bound");
    if (!(visibility_graph(out) == g)) throw internal_error("tt_layout: oracle mismatch");
    return out;
}

namespace detail {

// Child-block layout for a pocket: lay the block out with the cut-vertex as
// source, then drop that full-width bottom bar. The columns left open from
// below are exactly the old source-bar columns, so the pocket bar underneath
// will see exactly the cut-vertex's neighbors in this block.
inline BarLayout pocket_child(const Graph& block, const VertexId& src) {
    if (block.num_vertices() == 2) {
        const auto vs = block.vertices();
        const VertexId& other = vs[0] == src ? vs[1] : vs[0];
        BarLayout l;
        l.bars.push_back({other, 1, 0, 1});
        return l;
    }
    const VertexId snk = *block.neighbors(src).begin();
    BarLayout l = tt_layout(block, src, snk);
    std::erase_if(l.bars, [&](const Bar& b) { return b.owner == src; });
    l.shift(-l.min_x(), 0);
    return l;
}

inline BarLayout root_block_layout(const Graph& block) {
    if (block.num_vertices() == 1) {
        BarLayout l;
        l.bars.push_back({block.vertices().front(), 0, 0, 1});
        return l;
    }
    if (block.num_vertices() == 2) {
        const auto vs = block.vertices();
        BarLayout l;
        l.bars.push_back({vs[0], 0, 0, 1});
        l.bars.push_back({vs[1], 1, 0, 1});
        return l;
    }
    const Edge e = block.edges().front();
    return tt_layout(block, e.first, e.second);
}

}  // namespace detail

/// Two bars suffice for any planar graph: one bar for every vertex via block
/// layouts, plus one long "pocket" bar per cut-vertex. Each component's
/// block-cut tree is rooted at its first block; every cut-vertex v gets a
/// fresh x-strip holding its child blocks side by side (laid out with v as the
/// deleted source) over a single long bar for v. Strips are x-disjoint, so no
/// sightline crosses between them.
inline BarLayout two_bar_layout(const Graph& g) {
    if (!is_planar(g)) throw precondition_error("two_bar_layout: graph is not planar");

    BarLayout out;
    long cursor = 0;
    std::size_t pockets = 0;
    auto place = [&](BarLayout strip) {
        strip.shift(cursor - strip.min_x(), 0);
        cursor = strip.max_x() + 1;  // one empty column between strips
        out.bars.insert(out.bars.end(), strip.bars.begin(), strip.bars.end());
    };

    for (const auto& comp : connected_components(g)) {
        const Graph cg = g.induced(comp);
        const auto bct = block_cut_tree(cg);

        std::vector<std::size_t> queue = {0};
        std::set<std::size_t> expanded = {0};
        place(detail::root_block_layout(bct.block_subgraph(0)));

        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::size_t bi = queue[qi];
            for (const auto& v : bct.blocks[bi]) {
                if (!bct.cutVertices.count(v)) continue;
                std::vector<std::size_t> children;
                for (std::size_t ci : bct.blocksOf.at(v))
                    if (!expanded.count(ci)) children.push_back(ci);
                if (children.empty()) continue;

                ++pockets;
                BarLayout strip;
                long pc = 0;
                for (std::size_t ci : children) {
                    expanded.insert(ci);
                    queue.push_back(ci);
                    BarLayout child = detail::pocket_child(bct.block_subgraph(ci), v);
                    child.shift(pc - child.min_x(), 0);
                    pc = child.max_x() + 1;
                    strip.bars.insert(strip.bars.end(), child.bars.begin(), child.bars.end());
                }
                strip.bars.push_back({v, 0, 0, pc - 1});
                place(std::move(strip));
            }
        }
    }
    out.normalize();

    validate_layout(out);
    if (!(visibility_graph(out) == g)) throw internal_error("two_bar_layout: oracle mismatch");
    const auto cuts = cut_vertices(g);
    for (const auto& [v, bs] : out.per_vertex())
        if (cuts.count(v) ? bs.size() > 2 : bs.size() != 1)
            throw internal_error("two_bar_layout: bar profile violated at '" + v + "'");
    if (out.max_x() - out.min_x() >
        12 * static_cast<long>(g.num_vertices() + pockets + 2))
        throw internal_error("two_bar_layout: width exceeds the sanity bound");
    return out;
}

/// Exhaustive one-bar search for graphs on at most 4 vertices. Bars live on
/// distinct levels 0..n-1 (any layout perturbs to one such, and visibility
/// only reads the y-order), x-endpoints range over [0, gridMax]. Levels fill
/// bottom-up; later bars sit above finished ones and cannot block or reveal
/// them, so each prefix must already match the target exactly — that prunes
/// hard. Returns the first hit or a definitive none-within-grid.
inline std::optional<BarLayout> small_graph_layout(const Graph& g,
                                                   std::size_t barsPerVertex = 1,
                                                   long gridMax = 8) {
    if (g.num_vertices() > 4 || barsPerVertex != 1)
        throw precondition_error("small_graph_layout: guarded to |V| <= 4, one bar each");
    if (gridMax < 1) throw precondition_error("small_graph_layout: empty grid");

    const auto vs = g.vertices();
    const std::size_t n = vs.size();
    if (n == 0) return BarLayout{};

    std::vector<std::pair<long, long>> spans;
    for (long xl = 0; xl < gridMax; ++xl)
        for (long xr = xl + 1; xr <= gridMax; ++xr) spans.emplace_back(xl, xr);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<Bar> placed;
        auto prefix_ok = [&]() {
            BarLayout l;
            l.bars = placed;
            const Graph seen = visibility_graph(l);
            for (std::size_t i = 0; i < placed.size(); ++i)
                for (std::size_t j = i + 1; j < placed.size(); ++j) {
                    bool want = g.has_edge(placed[i].owner, placed[j].owner);
                    if (seen.has_edge(placed[i].owner, placed[j].owner) != want) return false;
                }
            return true;
        };
        std::function<bool(std::size_t)> fill = [&](std::size_t k) {
            if (k == n) return true;
            for (const auto& [xl, xr] : spans) {
                placed.push_back({vs[perm[k]], static_cast<long>(k), xl, xr});
                if (prefix_ok() && fill(k + 1)) return true;
                placed.pop_back();
            }
            return false;
        };
        if (fill(0)) {
            BarLayout l;
            l.bars = placed;
            l.normalize();
            if (!(visibility_graph(l) == g))
                throw internal_error("small_graph_layout: oracle mismatch");
            return l;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// Layouts for 5-vertex graphs with at most 2 bars per vertex. K5 itself is
/// split as (K5 - e) plus a separate two-bar stack realizing e in its own
/// x-strip; anything smaller is planar and goes through two_bar_layout.
inline BarLayout k5_layout(const Graph& h) {
    if (h.num_vertices() != 5) throw precondition_error("k5_layout: need exactly 5 vertices");
    if (h.num_edges() < 10) return two_bar_layout(h);

    const Edge e = h.edges().front();
    Graph rest = h;
    rest.remove_edge(e.first, e.second);
    const Edge st = rest.edges().front();
    BarLayout l = tt_layout(rest, st.first, st.second);
    const long off = l.max_x() + 2;
    l.bars.push_back({e.first, 0, off, off + 1});
    l.bars.push_back({e.second, 1, off, off + 1});
    l.normalize();

    if (!(visibility_graph(l) == h)) throw internal_error("k5_layout: oracle mismatch");
    if (l.max_bars_per_vertex() > 2) throw internal_error("k5_layout: more than two bars");
    return l;
}

/// Relabels every bar with the original vertex of its copy; geometry is
/// untouched, so per-vertex bar counts simply add up across the copies.
inline BarLayout merge_copies(const BarLayout& l, const SplitMap& m) {
    BarLayout out;
    for (const auto& b : l.bars) {
        auto it = m.inverse.find(b.owner);
        if (it == m.inverse.end())
            throw precondition_error("merge_copies: unknown copy '" + b.owner + "'");
        out.bars.push_back({it->second, b.y, b.xl, b.xr});
    }
    out.normalize();
    return out;
}

/// The subgraph bound made executable: prune the split to h, concentrate each
/// S(u)'s cut-vertex role into one copy by transfers, lay the planar split
/// graph out with two bars, and merge copies. At most one copy per vertex can
/// then own two bars, so the result stays within t+1 bars per vertex.
inline BarLayout pipeline_layout(
    const SplitInstance& inst, const Graph& h,
    const std::function<void(const TransferStep&)>& trace = {}, bool debugVerify = false) {
    {
        auto v = validate_split(inst);
        if (!v.valid())
            throw precondition_error("pipeline_layout: invalid split: " + v.problems[0]);
        if (!v.planar) throw precondition_error("pipeline_layout: split graph not planar");
    }
    const SplitInstance pruned = prune_to_subgraph(inst, h);
    const SplitInstance reduced = reduce_cut_copies(pruned, trace, debugVerify);
    const BarLayout merged = merge_copies(two_bar_layout(reduced.splitGraph), reduced.map);

    const auto rep = verify_representation(merged, h, inst.map.t + 1);
    if (!rep.pass) throw internal_error("pipeline_layout: final verification failed");
    return merged;
}

struct BoundReport {
    std::size_t n = 0;
    std::size_t bound = 0;
    std::string regime;          // which bound case applied
    bool constructive = false;   // verified layout meeting the bound was produced
    std::size_t layoutBars = 0;  // bars per vertex actually achieved; 0 = no layout
    std::optional<BarLayout> layout;
};

namespace detail {

inline Graph complete_graph(const std::vector<VertexId>& vs) {
    Graph g;
    for (const auto& v : vs) g.add_vertex(v);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) g.add_edge(vs[i], vs[j]);
    return g;
}

}  // namespace detail

/// Bars-per-vertex guarantee by vertex count: 1 for n <= 4, 2 for n in {5,6},
/// ceil(n/6)+1 beyond. The layout witnessing the bound is produced where the
/// machinery reaches: small-graph search, the K5 special case, two bars for
/// planar 6-vertex graphs, and the split pipeline through K_n for n >= 7 when
/// a planar ceil(n/6)-split of K_n is supplied or found (searchable for
/// n <= 8). Otherwise the layout is best-effort or absent and `constructive`
/// reports honestly whether the bound itself was met.
inline BoundReport visibility_bound(
    const Graph& g, const std::optional<SplitInstance>& splitSource = std::nullopt,
    long gridMax = 8) {
    BoundReport rep;
    rep.n = g.num_vertices();
    const std::size_t n = rep.n;

    auto adopt = [&](BarLayout l) {
        const auto check = verify_representation(l, g, std::max<std::size_t>(
                                                           l.max_bars_per_vertex(), 1));
        if (!check.pass) throw internal_error("visibility_bound: layout failed verification");
        rep.layoutBars = l.max_bars_per_vertex();
        rep.layout = std::move(l);
        rep.constructive = rep.layoutBars <= rep.bound;
    };

    // Split route shared by the n >= 6 regimes: requires a planar split of
    // K_n on g's vertex set, provided or (for two parts, n <= 8) searched.
    auto throughKn = [&]() {
        const Graph kn = detail::complete_graph(g.vertices());
        SplitInstance split;
        if (splitSource) {
            if (!(splitSource->base == kn))
                throw precondition_error("visibility_bound: split base is not K_n on V(g)");
            const auto v = validate_split(*splitSource);
            if (!v.valid())
                throw precondition_error("visibility_bound: invalid split: " + v.problems[0]);
            if (!v.planar)
                throw precondition_error("visibility_bound: split graph not planar");
            split = *splitSource;
        } else if (n <= 8) {
            const auto found = search_biplanar(kn);
            if (found.status != SearchStatus::found) return;
            split = split_from_decomposition(kn, {found.part1, found.part2});
        } else {
            return;  // no construction at this size; constructive stays false
        }
        adopt(pipeline_layout(split, g));
    };

    if (n <= 4) {
        rep.bound = 1;
        rep.regime = "n<=4";
        if (auto l = small_graph_layout(g, 1, gridMax)) adopt(std::move(*l));
    } else if (n == 5) {
        rep.bound = 2;
        rep.regime = "n=5";
        adopt(k5_layout(g));
    } else if (n == 6) {
        rep.bound = 2;
        rep.regime = "n=6";
        if (is_planar(g))
            adopt(two_bar_layout(g));
        else
            throughKn();  // three bars via the K6 pipeline: bound not met, flagged
    } else {
        rep.bound = (n + 5) / 6 + 1;
        rep.regime = "n>=7";
        throughKn();
    }
    return rep;
}

}  // namespace barviz
