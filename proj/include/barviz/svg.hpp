#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "barviz/bars.hpp"
#include "barviz/visibility.hpp"

namespace barviz {

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Static SVG rendering of a layout: one rect per bar (half a level tall,
/// y flipped for screen coordinates), owner labels, and optionally one
/// translucent rect per sightline channel. Integer arithmetic throughout, so
/// identical input yields identical bytes.
inline void write_svg(std::ostream& out, const BarLayout& layout, bool overlay = false) {
    constexpr long U = 40;  // pixels per x unit
    constexpr long V = 40;  // pixels per level; bars are V/2 tall
    constexpr long M = 20;  // margin

    BarLayout l = layout;
    validate_layout(l);
    long minY = 0, maxY = 0;
    bool first = true;
    for (const auto& b : l.bars) {
        if (first || b.y < minY) minY = b.y;
        if (first || b.y > maxY) maxY = b.y;
        first = false;
    }
    l.shift(-l.min_x(), -minY);
    maxY -= minY;
    l.normalize();

    const long w = l.max_x() * U + 2 * M;
    const long h = maxY * V + V / 2 + 2 * M;
    auto sx = [&](long x) { return M + x * U; };
    auto sy = [&](long y) { return M + (maxY - y) * V; };  // top edge of a bar at level y

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";

    if (overlay) {
        for (const auto& s : visibility(l).sightlines) {
            const long top = sy(s.yw) + V / 2;  // bottom edge of the upper bar
            out << "  <rect class=\"channel\" x=\"" << sx(s.x1) << "\" y=\"" << top
                << "\" width=\"" << (s.x2 - s.x1) * U << "\" height=\""
                << sy(s.yu) - top << "\" fill=\"#e8a33d\" fill-opacity=\"0.35\"/>\n";
        }
    }
    for (const auto& b : l.bars) {
        out << "  <rect x=\"" << sx(b.xl) << "\" y=\"" << sy(b.y) << "\" width=\""
            << (b.xr - b.xl) * U << "\" height=\"" << V / 2
            << "\" fill=\"#4d7ea8\" stroke=\"#1d3244\"/>\n";
        out << "  <text x=\"" << sx(b.xl) + 4 << "\" y=\"" << sy(b.y) + 15
            << "\" font-family=\"monospace\" font-size=\"13\" fill=\"#ffffff\">"
            << detail::xml_escape(b.owner) << "</text>\n";
    }
    out << "</svg>\n";
}

inline std::string svg_to_string(const BarLayout& layout, bool overlay = false) {
    std::ostringstream ss;
    write_svg(ss, layout, overlay);
    return ss.str();
}

}  // namespace barviz
