#include "marsem/decomposition.hpp"
#include "marsem/errors.hpp"

#include <algorithm>
#include <map>

namespace marsem {

namespace {

// Union-find over vertex labels.
struct DSU {
    std::map<Vertex, Vertex> parent;
    Vertex find(Vertex x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        return it->second = find(it->second);
    }
    void unite(Vertex a, Vertex b) { parent[find(a)] = find(b); }
};

} // namespace

std::optional<ReducibleSplit> reducible_decomposition(const SimplicialComplex& c) {
    for (const Face& sep : c.faces()) {
        // Vertices outside the candidate separator that occur in some face.
        std::vector<Vertex> active;
        for (const Face& f : c.faces())
            for (Vertex v : f)
                if (!std::binary_search(sep.begin(), sep.end(), v)) active.push_back(v);
        std::sort(active.begin(), active.end());
        active.erase(std::unique(active.begin(), active.end()), active.end());
        if (active.size() < 2) continue;

        DSU dsu;
        for (Vertex v : active) dsu.find(v);
        for (const Face& f : c.faces()) {
            Face out = face_difference(f, sep);
            for (std::size_t k = 1; k < out.size(); ++k) dsu.unite(out[0], out[k]);
        }
        Vertex rep = dsu.find(active.front());
        std::vector<Vertex> side1;
        bool split_found = false;
        for (Vertex v : active) {
            if (dsu.find(v) == rep) side1.push_back(v);
            else split_found = true;
        }
        if (!split_found) continue;

        std::vector<Face> faces1, faces2;
        for (const Face& f : c.faces()) {
            Face out = face_difference(f, sep);
            if (out.empty()) {
                faces1.push_back(f);
                faces2.push_back(f);
            } else if (std::binary_search(side1.begin(), side1.end(), out[0])) {
                faces1.push_back(f);
            } else {
                faces2.push_back(f);
            }
        }
        std::vector<Vertex> ground1 = side1;
        for (Vertex v : sep) ground1.push_back(v);
        std::sort(ground1.begin(), ground1.end());
        std::vector<Vertex> ground2;
        for (Vertex v : c.ground())
            if (!std::binary_search(side1.begin(), side1.end(), v)) ground2.push_back(v);

        return ReducibleSplit{build_complex(faces1, std::move(ground1)), sep,
                              build_complex(faces2, std::move(ground2))};
    }
    return std::nullopt;
}

bool valid_reducible_split(const SimplicialComplex& c, const ReducibleSplit& s) {
    if (!c.has_face(s.separator)) return false;
    // union of faces
    FaceSet all;
    for (const Face& f : s.delta1.faces()) all.insert(f);
    for (const Face& f : s.delta2.faces()) all.insert(f);
    if (all != c.faces()) return false;
    // intersection is exactly the power set of the separator
    FaceSet inter;
    for (const Face& f : s.delta1.faces())
        if (s.delta2.faces().count(f)) inter.insert(f);
    for (const Face& f : inter)
        if (!is_subset(f, s.separator)) return false;
    std::size_t expect = std::size_t{1} << s.separator.size();
    if (inter.size() != expect) return false;
    // neither side is the bare simplex 2^S
    if (s.delta1.faces().size() == expect || s.delta2.faces().size() == expect) return false;
    return true;
}

Decomposition decompose_fully(const SimplicialComplex& c) {
    Decomposition node;
    node.complex = c;
    auto split = reducible_decomposition(c);
    if (!split) return node;
    node.separator = split->separator;
    node.left = std::make_unique<Decomposition>(decompose_fully(split->delta1));
    node.right = std::make_unique<Decomposition>(decompose_fully(split->delta2));
    return node;
}

std::vector<const Decomposition*> decomposition_leaves(const Decomposition& d) {
    std::vector<const Decomposition*> out;
    if (d.is_leaf()) {
        out.push_back(&d);
        return out;
    }
    for (const Decomposition* sub : decomposition_leaves(*d.left)) out.push_back(sub);
    for (const Decomposition* sub : decomposition_leaves(*d.right)) out.push_back(sub);
    return out;
}

} // namespace marsem
