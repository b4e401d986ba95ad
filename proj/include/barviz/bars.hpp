#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "barviz/errors.hpp"
#include "barviz/graph.hpp"

namespace barviz {

/// One horizontal bar: owner vertex, integer level y, extent [xl, xr] with xl < xr.
struct Bar {
    VertexId owner;
    long y = 0;
    long xl = 0;
    long xr = 0;

    friend auto operator<=>(const Bar&, const Bar&) = default;
};

/// A set of bars grouped by owner. Invariants (positive widths, disjoint open
/// intervals per level, every owner present) are enforced by validate_layout in
/// the visibility module, which every consumer runs first.
struct BarLayout {
    std::vector<Bar> bars;

    std::map<VertexId, std::vector<Bar>> per_vertex() const {
        std::map<VertexId, std::vector<Bar>> m;
        for (const auto& b : bars) m[b.owner].push_back(b);
        return m;
    }

    std::set<VertexId> owners() const {
        std::set<VertexId> s;
        for (const auto& b : bars) s.insert(b.owner);
        return s;
    }

    std::size_t max_bars_per_vertex() const {
        std::size_t best = 0;
        for (const auto& [_, bs] : per_vertex()) best = std::max(best, bs.size());
        return best;
    }

    /// Canonical order: (owner, y, xl). Serialization and comparisons use this.
    void normalize() {
        std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
            return std::tie(a.owner, a.y, a.xl, a.xr) < std::tie(b.owner, b.y, b.xl, b.xr);
        });
    }

    long min_x() const {
        long m = 0;
        bool first = true;
        for (const auto& b : bars) {
            if (first || b.xl < m) m = b.xl;
            first = false;
        }
        return m;
    }

    long max_x() const {
        long m = 0;
        bool first = true;
        for (const auto& b : bars) {
            if (first || b.xr > m) m = b.xr;
            first = false;
        }
        return m;
    }

    void shift(long dx, long dy) {
        for (auto& b : bars) {
            b.xl += dx;
            b.xr += dx;
            b.y += dy;
        }
    }
};

// Layout text format: `b <vertexId> <y> <xl> <xr>` lines, `#` comments.
// Output is bit-exact for identical inputs: bars in canonical order.

inline BarLayout read_layout(std::istream& in) {
    BarLayout l;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok[0] == '#') continue;
        if (tok != "b") throw parse_error(lineno, "unknown directive '" + tok + "'");
        Bar b;
        std::string extra;
        if (!(ss >> b.owner >> b.y >> b.xl >> b.xr))
            throw parse_error(lineno, "b line needs <owner> <y> <xl> <xr>");
        if (ss >> extra) throw parse_error(lineno, "trailing tokens after b line");
        if (b.xl >= b.xr)
            throw parse_error(lineno, "bar must have xl < xr");
        l.bars.push_back(std::move(b));
    }
    l.normalize();
    return l;
}

inline BarLayout read_layout_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open layout file '" + path + "'");
    return read_layout(in);
}

inline void write_layout(std::ostream& out, BarLayout l) {
    l.normalize();
    for (const auto& b : l.bars)
        out << "b " << b.owner << " " << b.y << " " << b.xl << " " << b.xr << "\n";
}

inline void write_layout_file(const std::string& path, const BarLayout& l) {
    std::ofstream out(path);
    if (!out) throw error("cannot write layout file '" + path + "'");
    write_layout(out, l);
}

inline std::string layout_to_string(const BarLayout& l) {
    std::ostringstream ss;
    write_layout(ss, l);
    return ss.str();
}

}  // namespace barviz
