#pragma once

#include "marsem/model.hpp"

#include <string>
#include <string_view>
#include <utility>

namespace marsem {

using Edge = std::pair<Vertex, Vertex>; // first < second

inline Edge make_edge(Vertex a, Vertex b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Simple undirected graph with positive integer labels.
class Graph {
public:
    Graph() = default;

    /// Vertex set = given vertices plus all edge endpoints.
    static Graph from_edges(std::vector<Vertex> vertices, const std::vector<Edge>& edges);

    /// Text format: one "u v" edge per line; isolated vertices may be listed
    /// on a "vertices: a b c" header line.
    static Graph parse_text(std::string_view text);
    std::string to_text() const;

    /// From a model complex whose facets all have <= 2 vertices.
    static Graph from_complex(const SimplicialComplex& c);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_vertex(Vertex v) const;
    bool has_edge(Vertex a, Vertex b) const;
    std::vector<Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const;

    Graph without_vertex(Vertex v) const;
    Graph without_edge(Vertex a, Vertex b) const;
    Graph with_edge(Vertex a, Vertex b) const;

    /// The graph model: facets are the edges (isolated vertices contribute
    /// their singleton).
    SimplicialComplex edge_complex() const;

    bool operator==(const Graph& o) const {
        return vertices_ == o.vertices_ && edges_ == o.edges_;
    }

private:
    std::vector<Vertex> vertices_; // sorted
    std::vector<Edge> edges_;      // sorted pairs, sorted list
};

} // namespace marsem
