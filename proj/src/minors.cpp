#include "marsem/minors.hpp"
#include "marsem/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace marsem {

std::string describe(const MinorOp& op) {
    std::ostringstream out;
    if (const auto* dv = std::get_if<DeleteVertex>(&op)) {
        out << "delete vertex " << dv->v;
    } else if (const auto* ce = std::get_if<ContractEdge>(&op)) {
        out << "contract {";
        for (std::size_t i = 0; i < ce->L.size(); ++i)
            out << (i ? "," : "") << ce->L[i];
        out << "} -> " << ce->new_label;
    } else {
        const auto& de = std::get<DeleteEdge>(op);
        out << "delete face {";
        for (std::size_t i = 0; i < de.e.size(); ++i)
            out << (i ? "," : "") << de.e[i];
        out << "}";
    }
    return out.str();
}

SimplicialComplex delete_vertex(const SimplicialComplex& c, Vertex v) {
    if (!c.has_vertex(v)) throw input_error("unknown vertex " + std::to_string(v));
    std::vector<Vertex> ground;
    for (Vertex x : c.ground())
        if (x != v) ground.push_back(x);
    std::vector<Face> facets;
    for (const Face& f : c.faces())
        if (!std::binary_search(f.begin(), f.end(), v)) facets.push_back(f);
    return build_complex(facets, ground);
}

std::pair<SimplicialComplex, TableShape> contract_edge(const SimplicialComplex& c,
                                                       const Face& L_raw,
                                                       const TableShape& shape,
                                                       Vertex new_label) {
    Face L = sorted_face(L_raw);
    if (L.empty()) throw input_error("cannot contract the empty face");
    if (!c.has_face(L)) throw input_error("contracted set is not a face");
    if (shape.sizes.size() != c.ground().size())
        throw input_error("shape length does not match ground-set size");

    if (new_label <= 0) {
        new_label = 1;
        while (c.has_vertex(new_label)) ++new_label;
    } else if (c.has_vertex(new_label)) {
        throw input_error("contraction label already in use");
    }

    std::vector<Vertex> ground;
    std::vector<int> sizes;
    int r_new = 0;
    for (Vertex x : L) {
        int r = shape.sizes[static_cast<std::size_t>(c.ground_index(x))];
        if (r_new == 0 || r < r_new) r_new = r;
    }
    for (std::size_t i = 0; i < c.ground().size(); ++i) {
        Vertex x = c.ground()[i];
        if (std::binary_search(L.begin(), L.end(), x)) continue;
        ground.push_back(x);
        sizes.push_back(shape.sizes[i]);
    }
    auto at = std::lower_bound(ground.begin(), ground.end(), new_label);
    sizes.insert(sizes.begin() + (at - ground.begin()), r_new);
    ground.insert(at, new_label);

    std::vector<Face> facets;
    for (const Face& s : c.faces()) {
        if (face_intersection(s, L).empty()) {
            facets.push_back(s);
        } else {
            Face t = face_difference(s, L);
            t.push_back(new_label);
            facets.push_back(sorted_face(t));
        }
    }
    return {build_complex(facets, ground), TableShape{sizes}};
}

SimplicialComplex delete_face(const SimplicialComplex& c, const Face& f_raw) {
    Face f = sorted_face(f_raw);
    if (f.empty()) throw input_error("cannot delete the empty face");
    if (!c.has_face(f)) throw input_error("not a face of the complex");
    std::vector<Face> facets;
    for (const Face& s : c.faces())
        if (!is_subset(f, s)) facets.push_back(s);
    return build_complex(facets, c.ground());
}

SpacePtr apply_op(const SpacePtr& space, const MinorOp& op) {
    if (const auto* dv = std::get_if<DeleteVertex>(&op)) {
        SimplicialComplex c = delete_vertex(space->complex(), dv->v);
        int pos = space->complex().ground_index(dv->v);
        std::vector<int> sizes = space->shape().sizes;
        sizes.erase(sizes.begin() + pos);
        return make_space(std::move(c), TableShape{std::move(sizes)});
    }
    if (const auto* ce = std::get_if<ContractEdge>(&op)) {
        auto [c, shape] = contract_edge(space->complex(), ce->L, space->shape(), ce->new_label);
        return make_space(std::move(c), std::move(shape));
    }
    const auto& de = std::get<DeleteEdge>(op);
    return make_space(delete_face(space->complex(), de.e), space->shape());
}

SpacePtr apply_ops(SpacePtr space, const std::vector<MinorOp>& ops) {
    for (const MinorOp& op : ops) space = apply_op(space, op);
    return space;
}

EliminationResult eliminate_tw2(const Graph& g) {
    std::map<Vertex, std::set<Vertex>> adj;
    for (Vertex v : g.vertices()) adj[v];
    for (const Edge& e : g.edges()) {
        adj[e.first].insert(e.second);
        adj[e.second].insert(e.first);
    }
    EliminationResult out;
    while (!adj.empty()) {
        // smallest label of minimum degree; a leaf is eliminated without fill
        Vertex pick = 0;
        std::size_t best = 3;
        for (const auto& [v, nb] : adj) {
            if (nb.size() < best) {
                best = nb.size();
                pick = v;
            }
        }
        if (best > 2) return out; // stuck: minimum degree >= 3
        std::set<Vertex> nb = adj[pick];
        if (nb.size() == 2) {
            Vertex a = *nb.begin(), b = *std::next(nb.begin());
            if (!adj[a].count(b)) {
                adj[a].insert(b);
                adj[b].insert(a);
                out.fill_edges.push_back(make_edge(a, b));
            }
        }
        for (Vertex x : nb) adj[x].erase(pick);
        adj.erase(pick);
        out.order.push_back(pick);
    }
    out.minor_free = true;
    return out;
}

namespace {

// Bitmask helpers for the exhaustive branch-set search.
struct MaskGraph {
    std::vector<Vertex> labels;
    std::vector<unsigned> adj; // adjacency masks

    explicit MaskGraph(const Graph& g) : labels(g.vertices()) {
        adj.assign(labels.size(), 0);
        for (const Edge& e : g.edges()) {
            auto ia = index_of(e.first), ib = index_of(e.second);
            adj[ia] |= 1u << ib;
            adj[ib] |= 1u << ia;
        }
    }
    std::size_t index_of(Vertex v) const {
        return static_cast<std::size_t>(
            std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
    }
    bool connected(unsigned mask) const {
        if (mask == 0) return false;
        unsigned seen = mask & (~mask + 1); // lowest bit
        while (true) {
            unsigned grow = seen;
            unsigned m = seen;
            while (m) {
                unsigned i = static_cast<unsigned>(std::countr_zero(m));
                grow |= adj[i] & mask;
                m &= m - 1;
            }
            if (grow == seen) break;
            seen = grow;
        }
        return seen == mask;
    }
    /// All vertices of part lie in one component of the graph induced on
    /// part | allowed.
    bool connects_within(unsigned part, unsigned allowed) const {
        if (part == 0) return true;
        unsigned scope = part | allowed;
        unsigned seen = part & (~part + 1);
        while (true) {
            unsigned grow = seen;
            unsigned m = seen;
            while (m) {
                unsigned i = static_cast<unsigned>(std::countr_zero(m));
                grow |= adj[i] & scope;
                m &= m - 1;
            }
            if (grow == seen) break;
            seen = grow;
        }
        return (part & ~seen) == 0;
    }
    bool touching(unsigned a, unsigned b) const {
        unsigned m = a;
        while (m) {
            unsigned i = static_cast<unsigned>(std::countr_zero(m));
            if (adj[i] & b) return true;
            m &= m - 1;
        }
        return false;
    }
};

} // namespace

bool valid_branch_sets(const Graph& g, const BranchSets& b) {
    MaskGraph mg(g);
    std::array<unsigned, 4> masks{};
    unsigned all = 0;
    for (int i = 0; i < 4; ++i) {
        if (b[i].empty()) return false;
        for (Vertex v : b[i]) {
            if (!g.has_vertex(v)) return false;
            unsigned bit = 1u << mg.index_of(v);
            if (all & bit) return false; // overlap
            masks[i] |= bit;
            all |= bit;
        }
        if (!mg.connected(masks[i])) return false;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!mg.touching(masks[i], masks[j])) return false;
    return true;
}

std::optional<BranchSets> find_k4_branch_sets(const Graph& g) {
    const std::size_t n = g.vertices().size();
    if (n > 12) throw guard_error("branch-set search is limited to 12 vertices");
    if (n < 4) return std::nullopt;
    MaskGraph mg(g);

    std::vector<int> color(n, 0);
    std::array<unsigned, 4> sets{};
    std::optional<BranchSets> result;

    // DFS over colorings; color 0 leaves a vertex out. Prune a class as soon
    // as its pieces can no longer be joined through unassigned vertices.
    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == n) {
            for (int c = 0; c < 4; ++c)
                if (sets[c] == 0 || !mg.connected(sets[c])) return false;
            for (int c = 0; c < 4; ++c)
                for (int d = c + 1; d < 4; ++d)
                    if (!mg.touching(sets[c], sets[d])) return false;
            BranchSets b;
            for (std::size_t i = 0; i < n; ++i)
                if (color[i] > 0) b[static_cast<std::size_t>(color[i] - 1)].push_back(mg.labels[i]);
            result = b;
            return true;
        }
        unsigned rest = 0;
        for (std::size_t i = pos + 1; i < n; ++i) rest |= 1u << i;
        int empty_classes = 0;
        for (int c = 0; c < 4; ++c)
            if (sets[c] == 0) ++empty_classes;
        if (static_cast<std::size_t>(empty_classes) > n - pos) return false;
        for (int c = 0; c <= 4; ++c) {
            unsigned bit = 1u << pos;
            if (c > 0) sets[static_cast<std::size_t>(c - 1)] |= bit;
            color[pos] = c;
            bool ok = true;
            for (int d = 0; d < 4 && ok; ++d) {
                unsigned s = sets[static_cast<std::size_t>(d)];
                if (s != 0 && !mg.connects_within(s, rest)) ok = false;
            }
            if (ok && self(self, pos + 1)) return true;
            if (c > 0) sets[static_cast<std::size_t>(c - 1)] &= ~bit;
        }
        color[pos] = 0;
        return false;
    };
    rec(rec, 0);
    return result;
}

std::vector<MinorOp> minor_sequence_to_k4(const Graph& g, const BranchSets& b) {
    if (!valid_branch_sets(g, b)) throw input_error("invalid branch sets");
    std::vector<MinorOp> ops;

    std::set<Vertex> keep;
    for (const auto& part : b) keep.insert(part.begin(), part.end());
    for (Vertex v : g.vertices())
        if (!keep.count(v)) ops.push_back(DeleteVertex{v});

    std::set<Vertex> ground(keep);
    std::map<Vertex, Vertex> cur;
    for (Vertex v : keep) cur[v] = v;

    for (const auto& part : b) {
        std::set<Vertex> members(part.begin(), part.end());
        while (true) {
            // lexicographically smallest original edge inside the set whose
            // endpoints still map to different super-vertices
            const Edge* pick = nullptr;
            for (const Edge& e : g.edges()) {
                if (members.count(e.first) && members.count(e.second) &&
                    cur[e.first] != cur[e.second]) {
                    pick = &e;
                    break;
                }
            }
            if (!pick) break;
            Vertex a = cur[pick->first], bv = cur[pick->second];
            Vertex fresh = 1;
            while (ground.count(fresh)) ++fresh;
            Face L = sorted_face({a, bv});
            ops.push_back(ContractEdge{L, fresh});
            ground.erase(a);
            ground.erase(bv);
            ground.insert(fresh);
            for (auto& [orig, lab] : cur)
                if (lab == a || lab == bv) lab = fresh;
        }
    }
    return ops;
}

std::optional<std::map<Vertex, Vertex>> k4_complex_isomorphism(const SimplicialComplex& c) {
    if (c.ground().size() != 4) return std::nullopt;
    std::vector<Vertex> perm = c.ground();
    std::sort(perm.begin(), perm.end());
    SimplicialComplex canonical = build_complex(
        {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}, {1, 2, 3, 4});
    do {
        std::map<Vertex, Vertex> sigma;
        for (int i = 0; i < 4; ++i) sigma[i + 1] = perm[static_cast<std::size_t>(i)];
        bool match = true;
        for (const Face& f : canonical.faces()) {
            Face image;
            for (Vertex v : f) image.push_back(sigma[v]);
            if (!c.has_face(sorted_face(image))) {
                match = false;
                break;
            }
        }
        if (match && c.faces().size() == canonical.faces().size()) return sigma;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

Graph chordal_completion_tw2(const Graph& g) {
    EliminationResult e = eliminate_tw2(g);
    if (!e.minor_free)
        throw input_error("graph has a K4 minor; no treewidth-2 completion exists");
    Graph h = g;
    for (const Edge& f : e.fill_edges) h = h.with_edge(f.first, f.second);
    return h;
}

bool is_chordal(const Graph& g) {
    const auto& vs = g.vertices();
    const std::size_t n = vs.size();
    if (n == 0) return true;
    std::vector<bool> selected(n, false);
    std::vector<std::size_t> weight(n, 0);
    std::vector<std::size_t> order; // MCS selection order

    MaskGraph mg(g);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!selected[i] && (best == n || weight[i] > weight[best])) best = i;
        selected[best] = true;
        order.push_back(best);
        unsigned m = mg.adj[best];
        while (m) {
            unsigned i = static_cast<unsigned>(std::countr_zero(m));
            if (!selected[i]) ++weight[i];
            m &= m - 1;
        }
    }
    // Reverse selection order is a perfect elimination order iff chordal:
    // earlier-selected neighbors of each vertex must form a clique.
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> earlier;
        unsigned m = mg.adj[order[i]];
        while (m) {
            unsigned j = static_cast<unsigned>(std::countr_zero(m));
            if (rank[j] < i) earlier.push_back(j);
            m &= m - 1;
        }
        for (std::size_t a = 0; a < earlier.size(); ++a)
            for (std::size_t b = a + 1; b < earlier.size(); ++b)
                if (!(mg.adj[earlier[a]] & (1u << earlier[b]))) return false;
    }
    return true;
}

std::size_t max_clique_size(const Graph& g) {
    MaskGraph mg(g);
    const std::size_t n = mg.labels.size();
    std::size_t best = 0;
    auto rec = [&](auto&& self, unsigned clique, unsigned cand, std::size_t size) -> void {
        if (size > best) best = size;
        while (cand) {
            unsigned i = static_cast<unsigned>(std::countr_zero(cand));
            cand &= cand - 1;
            self(self, clique | (1u << i), cand & mg.adj[i], size + 1);
        }
    };
    unsigned all = n == 32 ? ~0u : ((1u << n) - 1);
    rec(rec, 0, all, 0);
    return best;
}

FullMarginalVector face_embedding(const SpacePtr& pre, const MinorOp& op,
                                  const FullMarginalVector& w) {
    SpacePtr post = apply_op(pre, op);
    if (!post->same_as(*w.space()))
        throw input_error("vector does not live over the image of the operation");

    FullMarginalVector out = FullMarginalVector::zero(pre);
    const MarginalSpace& sp = *pre;
    const MarginalSpace& sq = *w.space();

    if (const auto* dv = std::get_if<DeleteVertex>(&op)) {
        for (std::size_t id = 0; id < sp.face_count(); ++id) {
            const Face& face = sp.face(id);
            auto vp = std::lower_bound(face.begin(), face.end(), dv->v);
            if (vp == face.end() || *vp != dv->v) {
                std::size_t qid = sq.face_id(face);
                for (std::size_t fr = 0; fr < sp.full_block(id); ++fr)
                    out.coords()[sp.full_offset(id) + fr] =
                        w.coords()[sq.full_offset(qid) + fr];
                continue;
            }
            std::size_t local = static_cast<std::size_t>(vp - face.begin());
            Face sub = face_difference(face, {dv->v});
            std::size_t qid = sq.face_id(sub);
            for (std::size_t fr = 0; fr < sp.full_block(id); ++fr) {
                CellIndex idx = sp.full_unrank(id, fr);
                if (idx[local] != 1) continue; // stays zero
                CellIndex sub_idx;
                for (std::size_t k = 0; k < idx.size(); ++k)
                    if (k != local) sub_idx.push_back(idx[k]);
                out.coords()[sp.full_offset(id) + fr] =
                    w.coords()[sq.full_offset(qid) + sq.full_rank(qid, sub_idx)];
            }
        }
        return out;
    }

    if (const auto* ce = std::get_if<ContractEdge>(&op)) {
        const Face L = sorted_face(ce->L);
        const Vertex v = ce->new_label;
        const int r_new =
            sq.shape().sizes[static_cast<std::size_t>(sq.complex().ground_index(v))];
        for (std::size_t id = 0; id < sp.face_count(); ++id) {
            const Face& face = sp.face(id);
            Face inter = face_intersection(face, L);
            if (inter.empty()) {
                std::size_t qid = sq.face_id(face);
                for (std::size_t fr = 0; fr < sp.full_block(id); ++fr)
                    out.coords()[sp.full_offset(id) + fr] =
                        w.coords()[sq.full_offset(qid) + fr];
                continue;
            }
            Face image = face_difference(face, L);
            image.push_back(v);
            image = sorted_face(image);
            std::size_t qid = sq.face_id(image);
            std::size_t vslot = static_cast<std::size_t>(
                std::lower_bound(image.begin(), image.end(), v) - image.begin());
            for (std::size_t fr = 0; fr < sp.full_block(id); ++fr) {
                CellIndex idx = sp.full_unrank(id, fr);
                int level = 0; // common level on the contracted positions
                bool diagonal = true;
                for (std::size_t k = 0; k < face.size(); ++k) {
                    if (!std::binary_search(L.begin(), L.end(), face[k])) continue;
                    if (level == 0) level = idx[k];
                    else if (idx[k] != level) diagonal = false;
                }
                if (!diagonal || level > r_new) continue; // off the face
                CellIndex q_idx(image.size());
                for (std::size_t k = 0, q = 0; k < face.size(); ++k) {
                    if (std::binary_search(L.begin(), L.end(), face[k])) continue;
                    if (q == vslot) ++q;
                    q_idx[q++] = idx[k];
                }
                q_idx[vslot] = level;
                out.coords()[sp.full_offset(id) + fr] =
                    w.coords()[sq.full_offset(qid) + sq.full_rank(qid, q_idx)];
            }
        }
        return out;
    }

    throw input_error("face_embedding is defined for vertex deletions and edge contractions only");
}

} // namespace marsem
