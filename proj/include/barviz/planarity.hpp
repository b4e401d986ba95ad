#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "barviz/graph.hpp"

namespace barviz {

using Dart = std::pair<VertexId, VertexId>;  // directed occurrence of an edge

/// Rotation system (cyclic neighbor order per vertex) together with its traced
/// faces. Construction verifies the Euler certificate, so holding one of these
/// certifies planarity.
struct PlanarEmbedding {
    std::map<VertexId, std::vector<VertexId>> rotation;
    std::vector<std::vector<Dart>> faces;  // each face a closed dart walk

    int face_of(const Dart& d) const {
        auto it = faceOf.find(d);
        return it == faceOf.end() ? -1 : it->second;
    }

    std::map<Dart, int> faceOf;  // dart -> index into faces
};

namespace detail {

// Face tracing: successor of dart (u,v) is (v, w) where w follows u in the
// rotation at v. Every dart lies on exactly one face walk.
inline void trace_faces(PlanarEmbedding& emb) {
    emb.faces.clear();
    emb.faceOf.clear();
    std::map<VertexId, std::map<VertexId, std::size_t>> index;
    for (const auto& [v, rot] : emb.rotation)
        for (std::size_t i = 0; i < rot.size(); ++i) index[v][rot[i]] = i;

    std::set<Dart> seen;
    for (const auto& [u, rot] : emb.rotation) {
        for (const auto& v : rot) {
            Dart start{u, v};
            if (seen.count(start)) continue;
            std::vector<Dart> walk;
            Dart d = start;
            do {
                if (!seen.insert(d).second)
                    throw internal_error("malformed rotation system: dart revisited");
                walk.push_back(d);
                const auto& rv = emb.rotation.at(d.second);
                auto it = index.at(d.second).find(d.first);
                if (it == index.at(d.second).end())
                    throw internal_error("malformed rotation system: asymmetric dart");
                d = Dart{d.second, rv[(it->second + 1) % rv.size()]};
            } while (d != start);
            int fi = static_cast<int>(emb.faces.size());
            for (const auto& dd : walk) emb.faceOf[dd] = fi;
            emb.faces.push_back(std::move(walk));
        }
    }
}

}  // namespace detail

/// Euler certificate: V - E + F = 2 per connected component with >=1 edge.
/// Faces of a disconnected graph partition by component (a walk stays in one).
inline bool euler_holds(const Graph& g, const PlanarEmbedding& emb) {
    auto comps = connected_components(g);
    std::map<VertexId, std::size_t> compOf;
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (const auto& v : comps[i]) compOf[v] = i;
    std::vector<long> V(comps.size(), 0), E(comps.size(), 0), F(comps.size(), 0);
    for (std::size_t i = 0; i < comps.size(); ++i) V[i] = static_cast<long>(comps[i].size());
    for (const auto& [a, b] : g.edges()) ++E[compOf.at(a)];
    for (const auto& walk : emb.faces) ++F[compOf.at(walk.front().first)];
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (E[i] > 0 && V[i] - E[i] + F[i] != 2) return false;
    return true;
}

/// Planarity test with an embedding certificate. The planarity engine is
/// Boyer-Myrvold (boost); the returned rotation system is re-verified here by
/// face tracing plus the Euler count, so its validity does not rest on the
/// backend. Nonplanarity is a result, not an error.
inline std::optional<PlanarEmbedding> embed(const Graph& g) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                             boost::property<boost::vertex_index_t, int>,
                                             boost::property<boost::edge_index_t, int>>;
    const auto vs = g.vertices();
    std::map<VertexId, std::size_t> rank;
    for (std::size_t i = 0; i < vs.size(); ++i) rank[vs[i]] = i;

    BoostGraph bg(vs.size());
    for (const auto& [a, b] : g.edges()) boost::add_edge(rank[a], rank[b], bg);
    auto eindex = boost::get(boost::edge_index, bg);
    int ei = 0;
    for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(eindex, *it, ei++);

    using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
    std::vector<std::vector<EdgeDesc>> order(boost::num_vertices(bg));
    auto emb_map = boost::make_iterator_property_map(order.begin(),
                                                    boost::get(boost::vertex_index, bg));
    if (!boost::boyer_myrvold_planarity_test(
            boost::boyer_myrvold_params::graph = bg,
            boost::boyer_myrvold_params::embedding = emb_map))
        return std::nullopt;

    PlanarEmbedding emb;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto& rot = emb.rotation[vs[i]];
        for (const auto& e : order[i]) {
            auto u = boost::source(e, bg), w = boost::target(e, bg);
            rot.push_back(vs[u == i ? w : u]);
        }
    }
    detail::trace_faces(emb);
    if (!euler_holds(g, emb))
        throw internal_error("planarity backend produced a non-planar rotation system");
    return emb;
}

inline bool is_planar(const Graph& g) { return embed(g).has_value(); }

/// Face walks of an embedding (re-traced from the rotation system).
inline std::vector<std::vector<Dart>> faces(const PlanarEmbedding& e) {
    PlanarEmbedding copy;
    copy.rotation = e.rotation;
    detail::trace_faces(copy);
    return copy.faces;
}

/// Diagnostic dump: one `r <vertex> <neighbors...>` line per vertex.
inline void write_embedding(std::ostream& out, const PlanarEmbedding& e) {
    for (const auto& [v, rot] : e.rotation) {
        out << "r " << v;
        for (const auto& w : rot) out << " " << w;
        out << "\n";
    }
}

namespace detail {

inline VertexId fresh_vertex_id(const Graph& g, std::string base) {
    while (g.has_vertex(base)) base += "'";
    return base;
}

}  // namespace detail

/// True iff g has a planar embedding with every cut-vertex incident to one
/// common face. Tested via the apex reduction: vertices can share a face in
/// some embedding iff adding a new vertex adjacent to all of them preserves
/// planarity. Components may always share the outer face, so one apex serves
/// a disconnected input.
inline bool cutvertices_on_common_face(const Graph& g) {
    if (!is_planar(g)) return false;
    auto cuts = cut_vertices(g);
    if (cuts.size() <= 1) return true;
    Graph aug = g;
    VertexId apex = detail::fresh_vertex_id(g, "__apex");
    for (const auto& c : cuts) aug.add_edge(apex, c);
    return is_planar(aug);
}

/// The single-bar representability test: planar and all cut-vertices on a
/// common face.
inline bool is_bar_visibility_graph(const Graph& g) {
    return is_planar(g) && cutvertices_on_common_face(g);
}

}  // namespace barviz
