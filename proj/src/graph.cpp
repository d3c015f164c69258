#include "marsem/graph.hpp"
#include "marsem/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace marsem {

Graph Graph::from_edges(std::vector<Vertex> vertices, const std::vector<Edge>& edges) {
    std::set<Vertex> vs(vertices.begin(), vertices.end());
    std::set<Edge> es;
    for (const Edge& e : edges) {
        if (e.first == e.second) throw input_error("loops are not allowed");
        es.insert(make_edge(e.first, e.second));
        vs.insert(e.first);
        vs.insert(e.second);
    }
    for (Vertex v : vs)
        if (v < 1) throw input_error("vertex labels must be positive integers");
    Graph g;
    g.vertices_.assign(vs.begin(), vs.end());
    g.edges_.assign(es.begin(), es.end());
    return g;
}

Graph Graph::parse_text(std::string_view text) {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (body.rfind("vertices:", 0) == 0) {
            std::istringstream vs(body.substr(9));
            Vertex v;
            while (vs >> v) vertices.push_back(v);
            if (!vs.eof()) throw input_error("bad vertices line: '" + body + "'");
            continue;
        }
        std::istringstream es(body);
        Vertex a, b;
        if (!(es >> a >> b)) throw input_error("bad edge line: '" + body + "'");
        std::string rest;
        if (es >> rest) throw input_error("bad edge line: '" + body + "'");
        edges.emplace_back(a, b);
    }
    return from_edges(std::move(vertices), edges);
}

std::string Graph::to_text() const {
    std::ostringstream out;
    std::vector<Vertex> isolated;
    for (Vertex v : vertices_)
        if (degree(v) == 0) isolated.push_back(v);
    if (!isolated.empty()) {
        out << "vertices:";
        for (Vertex v : isolated) out << ' ' << v;
        out << '\n';
    }
    for (const Edge& e : edges_) out << e.first << ' ' << e.second << '\n';
    return out.str();
}

Graph Graph::from_complex(const SimplicialComplex& c) {
    std::vector<Edge> edges;
    for (const Face& f : c.faces()) {
        if (f.size() > 2)
            throw input_error("complex has a face with more than two vertices; not a graph model");
        if (f.size() == 2) edges.emplace_back(f[0], f[1]);
    }
    return from_edges(c.ground(), edges);
}

bool Graph::has_vertex(Vertex v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (const Edge& e : edges_) {
        if (e.first == v) out.push_back(e.second);
        else if (e.second == v) out.push_back(e.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Graph::degree(Vertex v) const { return neighbors(v).size(); }

Graph Graph::without_vertex(Vertex v) const {
    if (!has_vertex(v)) throw input_error("unknown vertex " + std::to_string(v));
    std::vector<Vertex> vs;
    for (Vertex x : vertices_)
        if (x != v) vs.push_back(x);
    std::vector<Edge> es;
    for (const Edge& e : edges_)
        if (e.first != v && e.second != v) es.push_back(e);
    return from_edges(std::move(vs), es);
}

Graph Graph::without_edge(Vertex a, Vertex b) const {
    if (!has_edge(a, b)) throw input_error("unknown edge");
    std::vector<Edge> es;
    for (const Edge& e : edges_)
        if (e != make_edge(a, b)) es.push_back(e);
    return from_edges(vertices_, es);
}

Graph Graph::with_edge(Vertex a, Vertex b) const {
    std::vector<Edge> es = edges_;
    es.push_back(make_edge(a, b));
    return from_edges(vertices_, es);
}

SimplicialComplex Graph::edge_complex() const {
    std::vector<Face> facets;
    for (const Edge& e : edges_) facets.push_back({e.first, e.second});
    for (Vertex v : vertices_)
        if (degree(v) == 0) facets.push_back({v});
    return build_complex(facets, vertices_);
}

} // namespace marsem
