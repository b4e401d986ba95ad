#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "barviz/bars.hpp"
#include "barviz/graph.hpp"

namespace barviz {

// The geometric ground truth. Two bars see each other iff some vertical
// channel of positive width between their levels is unobstructed; with integer
// coordinates that means width >= 1 between event columns. Zero-width
// (single-column touching) sightlines are not edges.

/// Throws on violated Bar/BarLayout invariants.
inline void validate_layout(const BarLayout& l) {
    std::map<long, std::vector<const Bar*>> byLevel;
    for (const auto& b : l.bars) {
        if (b.owner.empty()) throw precondition_error("bar with empty owner");
        if (b.xr - b.xl < 1)
            throw precondition_error("bar for '" + b.owner + "' has non-positive width");
        byLevel[b.y].push_back(&b);
    }
    for (auto& [y, bs] : byLevel) {
        std::sort(bs.begin(), bs.end(),
                  [](const Bar* a, const Bar* b) { return a->xl < b->xl; });
        for (std::size_t i = 1; i < bs.size(); ++i)
            if (bs[i]->xl < bs[i - 1]->xr)
                throw precondition_error(
                    "bars for '" + bs[i - 1]->owner + "' and '" + bs[i]->owner +
                    "' overlap on level " + std::to_string(y));
    }
}

/// A sightline found by the sweep: the two bars plus one witness column interval.
struct Sightline {
    VertexId u, w;     // owners, u <= w
    long x1 = 0, x2 = 0;  // open witness interval (x1, x2), x2 - x1 >= 1
    long yu = 0, yw = 0;  // levels of the two bars
};

struct VisibilityResult {
    Graph graph;                     // edges between distinct owners
    std::vector<Sightline> sightlines;  // every visible bar pair, incl. same-owner
    std::size_t sameOwnerCount = 0;
};

/// Sweep over x-endpoint events: between two consecutive event columns the
/// active set is constant, and bars adjacent in y-order over a gap of positive
/// width see each other.
inline VisibilityResult visibility(const BarLayout& l) {
    validate_layout(l);
    VisibilityResult res;
    for (const auto& b : l.bars) res.graph.add_vertex(b.owner);

    std::set<long> xs;
    for (const auto& b : l.bars) {
        xs.insert(b.xl);
        xs.insert(b.xr);
    }
    std::set<std::pair<const Bar*, const Bar*>> seen;
    std::vector<long> events(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        long a = events[i], b = events[i + 1];
        std::vector<const Bar*> active;
        for (const auto& bar : l.bars)
            if (bar.xl <= a && bar.xr >= b) active.push_back(&bar);
        std::sort(active.begin(), active.end(),
                  [](const Bar* p, const Bar* q) { return p->y < q->y; });
        for (std::size_t k = 0; k + 1 < active.size(); ++k) {
            const Bar* lo = active[k];
            const Bar* hi = active[k + 1];
            if (!seen.insert({std::min(lo, hi), std::max(lo, hi)}).second) continue;
            Sightline s;
            s.u = std::min(lo->owner, hi->owner);
            s.w = std::max(lo->owner, hi->owner);
            s.x1 = a;
            s.x2 = b;
            s.yu = lo->y;
            s.yw = hi->y;
            res.sightlines.push_back(s);
            if (lo->owner == hi->owner)
                ++res.sameOwnerCount;
            else
                res.graph.add_edge(lo->owner, hi->owner);
        }
    }
    return res;
}

/// The visibility graph of a layout; same-owner sightlines are excluded from
/// edges (the adjacency definition quantifies over distinct vertices).
inline Graph visibility_graph(const BarLayout& l) { return visibility(l).graph; }

struct VerifyReport {
    bool pass = false;
    std::vector<Edge> extra;    // visible but not in target
    std::vector<Edge> missing;  // in target but not visible
    std::size_t maxBars = 0;
    std::size_t tBound = 0;
    std::size_t sameOwnerSightlines = 0;

    bool edges_match() const { return extra.empty() && missing.empty(); }
};

/// Checks a layout against its target graph and a bars-per-vertex bound t.
/// The owner set must equal V(target); that mismatch is an error, not a report.
inline VerifyReport verify_representation(const BarLayout& l, const Graph& target,
                                          std::size_t t) {
    auto owners = l.owners();
    std::set<VertexId> vs;
    for (const auto& v : target.vertices()) vs.insert(v);
    if (owners != vs)
        throw precondition_error("layout owners do not match target vertex set");

    auto vis = visibility(l);
    VerifyReport rep;
    rep.tBound = t;
    rep.maxBars = l.max_bars_per_vertex();
    rep.sameOwnerSightlines = vis.sameOwnerCount;
    for (const auto& e : vis.graph.edges())
        if (!target.has_edge(e.first, e.second)) rep.extra.push_back(e);
    for (const auto& e : target.edges())
        if (!vis.graph.has_edge(e.first, e.second)) rep.missing.push_back(e);
    rep.pass = rep.edges_match() && rep.maxBars <= t;
    return rep;
}

/// Stable verdict format: PASS|FAIL, then one line per discrepancy.
inline void write_verdict(std::ostream& out, const VerifyReport& rep) {
    out << (rep.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& [u, w] : rep.extra) out << "extra " << u << " " << w << "\n";
    for (const auto& [u, w] : rep.missing) out << "missing " << u << " " << w << "\n";
    if (rep.maxBars > rep.tBound)
        out << "bars " << rep.maxBars << " exceed " << rep.tBound << "\n";
}

}  // namespace barviz
