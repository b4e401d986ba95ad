#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "barviz/graph.hpp"
#include "barviz/planarity.hpp"
#include "barviz/split.hpp"

namespace barviz {

// The u,v-transfer: every edge uw whose far end lies outside v's component of
// g-u is rerouted to vw. It detaches all of u's "foreign" lobes and hangs them
// on v instead, which is what lets the reduction loop below concentrate the
// cut-vertex role of a split set into a single copy.

/// Purely combinatorial (no planarity requirement here); if vw already exists
/// the moved edge merges with it, keeping the result simple.
inline Graph transfer(const Graph& g, const VertexId& u, const VertexId& v) {
    if (!g.has_vertex(u)) throw precondition_error("transfer: unknown vertex '" + u + "'");
    if (!g.has_vertex(v)) throw precondition_error("transfer: unknown vertex '" + v + "'");
    if (u == v) throw precondition_error("transfer: u and v must differ");
    if (!cut_vertices(g).count(u))
        throw precondition_error("transfer: '" + u + "' is not a cut-vertex");

    std::set<VertexId> vComp;
    for (const auto& comp : connected_components(g.without_vertex(u)))
        if (comp.count(v)) {
            vComp = comp;
            break;
        }

    Graph out = g;
    for (const auto& w : g.neighbors(u)) {
        if (vComp.count(w)) continue;
        out.remove_edge(u, w);
        out.add_edge(v, w);
    }
    return out;
}

/// Clause-by-clause verification of the transfer's effect on g, u, v:
///   (a) planarity is preserved
///   (b) u stops being a cut-vertex
///   (c) cut-vertex status outside {u, v} is untouched
///   (d) v becomes a cut-vertex — guaranteed only when u and v share a
///       component; otherwise u simply ends up isolated and v's status is
///       recorded as informational.
struct TransferReport {
    Graph transferred;
    bool planarPreserved = false;   // (a)
    bool uNotCut = false;           // (b)
    bool othersUnchanged = false;   // (c)
    bool sameComponent = false;
    bool vIsCut = false;            // (d) when sameComponent; informational otherwise
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

inline TransferReport check_transfer(const Graph& g, const VertexId& u, const VertexId& v) {
    if (!is_planar(g)) throw precondition_error("check_transfer: g must be planar");

    TransferReport rep;
    rep.transferred = transfer(g, u, v);

    for (const auto& comp : connected_components(g))
        if (comp.count(u) && comp.count(v)) rep.sameComponent = true;

    const auto before = cut_vertices(g);
    const auto after = cut_vertices(rep.transferred);

    rep.planarPreserved = is_planar(rep.transferred);
    if (!rep.planarPreserved) rep.failures.push_back("planarity lost");

    rep.uNotCut = !after.count(u);
    if (!rep.uNotCut) rep.failures.push_back("'" + u + "' is still a cut-vertex");

    rep.othersUnchanged = true;
    for (const auto& w : g.vertices()) {
        if (w == u || w == v) continue;
        if (before.count(w) != after.count(w)) {
            rep.othersUnchanged = false;
            rep.failures.push_back("cut-vertex status of '" + w + "' changed");
        }
    }

    rep.vIsCut = after.count(v) != 0;
    if (rep.sameComponent && !rep.vIsCut)
        rep.failures.push_back("'" + v + "' did not become a cut-vertex");

    return rep;
}

struct TransferStep {
    VertexId u1, u2;
    std::size_t cutBefore = 0, cutAfter = 0;
};

inline std::string format_trace_line(const TransferStep& s) {
    return "transfer " + s.u1 + " " + s.u2 + " cut_before=" + std::to_string(s.cutBefore) +
           " cut_after=" + std::to_string(s.cutAfter);
}

/// While some S(u) holds two cut-vertex copies u1, u2 (least original, least
/// copy indices), applies the u1,u2-transfer inside the split graph. Each step
/// must shave exactly one cut-vertex — that monovariant is asserted, which
/// both proves termination and pins the trace arithmetic. With debugVerify,
/// split validity and planarity are recertified after every step.
inline SplitInstance reduce_cut_copies(
    const SplitInstance& inst, const std::function<void(const TransferStep&)>& trace = {},
    bool debugVerify = false) {
    {
        auto v = validate_split(inst);
        if (!v.valid()) throw precondition_error("reduce_cut_copies: invalid split: " + v.problems[0]);
        if (!v.planar) throw precondition_error("reduce_cut_copies: split graph not planar");
    }

    SplitInstance cur = inst;
    const std::size_t limit = cut_vertices(cur.splitGraph).size() + 1;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > limit) throw internal_error("reduce_cut_copies failed to terminate");

        auto cuts = cut_vertices(cur.splitGraph);
        VertexId u1, u2;
        bool found = false;
        for (const auto& [orig, copies] : cur.map.assignment) {
            std::vector<VertexId> cutCopies;
            for (const auto& c : copies)
                if (cuts.count(c)) cutCopies.push_back(c);
            if (cutCopies.size() >= 2) {
                u1 = cutCopies[0];
                u2 = cutCopies[1];
                found = true;
                break;
            }
        }
        if (!found) break;

        cur.splitGraph = transfer(cur.splitGraph, u1, u2);

        auto cutsAfter = cut_vertices(cur.splitGraph);
        if (cutsAfter.size() + 1 != cuts.size())
            throw internal_error("transfer did not decrease the cut-vertex count by one");
        if (trace) trace({u1, u2, cuts.size(), cutsAfter.size()});

        if (debugVerify) {
            auto v = validate_split(cur);
            if (!v.valid())
                throw internal_error("split invalidated by transfer: " + v.problems[0]);
            if (!v.planar) throw internal_error("planarity lost by transfer");
        }
    }

    // Self-check the advertised postcondition before handing the result out.
    auto v = validate_split(cur);
    if (!v.valid()) throw internal_error("reduce_cut_copies produced an invalid split");
    if (!v.planar) throw internal_error("reduce_cut_copies produced a nonplanar split");
    auto cuts = cut_vertices(cur.splitGraph);
    for (const auto& [orig, copies] : cur.map.assignment) {
        std::size_t k = 0;
        for (const auto& c : copies) k += cuts.count(c);
        if (k > 1) throw internal_error("S(" + orig + ") still holds two cut-vertices");
    }
    return cur;
}

}  // namespace barviz
