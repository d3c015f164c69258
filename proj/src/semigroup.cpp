#include "marsem/semigroup.hpp"
#include "marsem/decomposition.hpp"
#include "marsem/errors.hpp"
#include "marsem/inequality.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace marsem {

namespace {

/// Shared machinery for the depth-first integer preimage search.
struct MembershipSearcher {
    const MarginalSpace& sp;
    std::vector<CellIndex> cells;                       // lex order
    std::vector<std::vector<std::size_t>> cell_coords;  // full positions per cell
    std::vector<std::size_t> last_cover;                // per full position
    std::vector<std::vector<std::size_t>> forced_at;    // coords finalized per cell

    explicit MembershipSearcher(const MarginalSpace& space) : sp(space) {
        CellIndex cell = first_cell(sp.shape());
        do {
            cells.push_back(cell);
        } while (next_cell(cell, sp.shape()));
        cell_coords.resize(cells.size());
        last_cover.assign(sp.full_dim(), 0);
        for (std::size_t k = 0; k < cells.size(); ++k) {
            for (std::size_t id = 0; id < sp.face_count(); ++id) {
                CellIndex idx = restrict_cell(cells[k], sp.face_positions(id));
                std::size_t pos = sp.full_offset(id) + sp.full_rank(id, idx);
                cell_coords[k].push_back(pos);
                last_cover[pos] = k;
            }
        }
        forced_at.resize(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k)
            for (std::size_t pos : cell_coords[k])
                if (last_cover[pos] == k) forced_at[k].push_back(pos);
    }

    /// residual is consumed; returns a table on success.
    std::optional<Table> search(std::vector<Int> residual, SearchStats* stats) const {
        for (const Int& v : residual)
            if (v < 0) return std::nullopt;
        Table out(sp.shape());
        unsigned long long nodes = 0;
        bool ok = dfs(0, residual, out, nodes);
        if (stats) stats->nodes += nodes;
        if (!ok) return std::nullopt;
        return out;
    }

private:
    bool dfs(std::size_t k, std::vector<Int>& residual, Table& table,
             unsigned long long& nodes) const {
        ++nodes;
        if (k == cells.size()) return true;

        Int hi = -1;
        for (std::size_t pos : cell_coords[k])
            if (hi < 0 || residual[pos] < hi) hi = residual[pos];

        // a coordinate no later cell can reach pins this cell's count
        Int lo = 0;
        bool pinned = false;
        for (std::size_t pos : forced_at[k]) {
            if (!pinned) {
                lo = residual[pos];
                pinned = true;
            } else if (residual[pos] != lo) {
                return false;
            }
        }
        if (pinned && lo > hi) return false;
        // descending values find member tables fast; exhaustion is complete
        // either way because every residual stays within [0, hi]
        Int v = pinned ? lo : hi;
        while (v >= lo) {
            for (std::size_t pos : cell_coords[k]) residual[pos] -= v;
            if (v > 0) table.set(cells[k], v);
            if (dfs(k + 1, residual, table, nodes)) return true;
            if (v > 0) table.set(cells[k], 0);
            for (std::size_t pos : cell_coords[k]) residual[pos] += v;
            if (pinned) break;
            --v;
        }
        return false;
    }
};

std::vector<Int> integral_coords(const FullMarginalVector& x) {
    std::vector<Int> out;
    out.reserve(x.coords().size());
    for (const Rat& q : x.coords()) {
        if (!is_integral(q)) throw input_error("marginal vector is not integral");
        out.push_back(numerator(q));
    }
    return out;
}

/// Inequalities that are verified valid on every generator may prune the
/// enumeration: they can never cut a cone point. For binary models the odd
/// cycle inequalities of the edge skeleton do most of the work.
struct PruneRows {
    std::vector<std::vector<Int>> rows;            // dense over reduced coords
    std::vector<std::vector<std::size_t>> at_pos;  // rows checkable per position

    PruneRows(const MarginalSpace& sp, const std::vector<ReducedMarginalVector>& gens) {
        at_pos.resize(sp.reduced_dim());
        if (!sp.shape().is_binary()) return;

        std::vector<Edge> edges;
        std::vector<Vertex> verts = sp.complex().ground();
        for (const Face& f : sp.complex().faces())
            if (f.size() == 2) edges.push_back(make_edge(f[0], f[1]));
        if (verts.size() > 12) return;
        Graph skeleton = Graph::from_edges(verts, edges);

        InequalitySystem cyc = cycle_inequalities(skeleton);
        for (const LinearInequality& row : cyc.rows) {
            // re-anchor by face (the skeleton space orders faces the same
            // way, but the host space may have more faces)
            std::vector<Int> dense(sp.reduced_dim(), Int(0));
            const MarginalSpace& ss = *cyc.space;
            for (std::size_t id = 0; id < ss.face_count(); ++id) {
                for (std::size_t rr = 0; rr < ss.reduced_block(id); ++rr) {
                    const Int& c = row.coeffs[ss.reduced_offset(id) + rr];
                    if (c == 0) continue;
                    std::size_t host = sp.face_id(ss.face(id));
                    dense[sp.reduced_offset(host) + rr] = c;
                }
            }
            bool valid = true;
            for (const auto& g : gens) {
                Rat v = 0;
                for (std::size_t i = 0; i < dense.size(); ++i)
                    if (dense[i] != 0) v += Rat(dense[i]) * g.coords()[i];
                if (v < 0) {
                    valid = false;
                    break;
                }
            }
            if (!valid) continue; // never prune with an unverified row
            std::size_t last = 0;
            for (std::size_t i = 0; i < dense.size(); ++i)
                if (dense[i] != 0) last = i;
            at_pos[last].push_back(rows.size());
            rows.push_back(std::move(dense));
        }
    }

    bool ok(const std::vector<Int>& red, std::size_t pos) const {
        for (std::size_t r : at_pos[pos]) {
            Int s = 0;
            for (std::size_t i = 0; i <= pos; ++i)
                if (rows[r][i] != 0) s += rows[r][i] * red[i];
            if (s < 0) return false;
        }
        return true;
    }
};

/// Face-by-face enumeration of integer reduced vectors at a fixed sample
/// size whose full expansions are nonnegative on every face.
struct BoxEnumerator {
    const MarginalSpace& sp;
    Int level;
    long pinned = -1;              // value forced on reduced position 1, or -1
    const PruneRows* prune = nullptr;

    std::vector<Int> red, full;
    // upper bounds: positions of the direct-subface coordinate per
    // (face, reduced rank)
    std::vector<std::vector<std::vector<std::size_t>>> bound_sources;

    BoxEnumerator(const MarginalSpace& space, Int lvl) : sp(space), level(std::move(lvl)) {
        red.assign(sp.reduced_dim(), Int(0));
        full.assign(sp.full_dim(), Int(0));
        bound_sources.resize(sp.face_count());
        for (std::size_t id = 1; id < sp.face_count(); ++id) {
            const Face& face = sp.face(id);
            bound_sources[id].resize(sp.reduced_block(id));
            for (std::size_t rr = 0; rr < sp.reduced_block(id); ++rr) {
                CellIndex idx = sp.reduced_unrank(id, rr);
                for (std::size_t drop = 0; drop < face.size(); ++drop) {
                    Face sub;
                    CellIndex sub_idx;
                    for (std::size_t q = 0; q < face.size(); ++q) {
                        if (q == drop) continue;
                        sub.push_back(face[q]);
                        sub_idx.push_back(idx[q]);
                    }
                    std::size_t sid = sp.face_id(sub);
                    bound_sources[id][rr].push_back(sp.reduced_offset(sid) +
                                                    sp.reduced_rank(sid, sub_idx));
                }
            }
        }
    }

    template <typename Leaf>
    void run(Leaf&& leaf) {
        red[0] = level;
        full[0] = level;
        if (level < 0) return;
        face(1, leaf);
    }

private:
    template <typename Leaf>
    void face(std::size_t id, Leaf&& leaf) {
        if (id == sp.face_count()) {
            leaf(red, full);
            return;
        }
        coord(id, 0, leaf);
    }

    template <typename Leaf>
    void coord(std::size_t id, std::size_t rr, Leaf&& leaf) {
        if (rr == sp.reduced_block(id)) {
            // complete the face: expand all full coordinates, require >= 0
            for (std::size_t fr = 0; fr < sp.full_block(id); ++fr) {
                Int v = 0;
                for (const auto& term : sp.expansion(id, fr)) {
                    if (term.sign > 0) v += red[term.reduced_pos];
                    else v -= red[term.reduced_pos];
                }
                if (v < 0) return;
                full[sp.full_offset(id) + fr] = std::move(v);
            }
            face(id + 1, leaf);
            return;
        }
        std::size_t pos = sp.reduced_offset(id) + rr;
        Int hi = level;
        for (std::size_t src : bound_sources[id][rr])
            if (red[src] < hi) hi = red[src];
        Int lo = 0;
        if (pos == 1 && pinned >= 0) {
            lo = pinned;
            if (hi > lo) hi = lo;
        }
        for (Int v = lo; v <= hi; ++v) {
            red[pos] = v;
            if (!prune || prune->ok(red, pos)) coord(id, rr + 1, leaf);
        }
        red[pos] = 0;
    }
};

std::vector<ReducedMarginalVector> reduced_generators(const SpacePtr& space) {
    std::vector<ReducedMarginalVector> gens;
    for (const auto& g : generators(space)) gens.push_back(reduce_coords(g));
    return gens;
}

ReducedMarginalVector to_reduced(const SpacePtr& space, const std::vector<Int>& red) {
    std::vector<Rat> coords(red.size());
    for (std::size_t i = 0; i < red.size(); ++i) coords[i] = Rat(red[i]);
    return ReducedMarginalVector(space, std::move(coords));
}

std::vector<HoleReport> holes_at_level(const SpacePtr& space, const ConeOracle& oracle,
                                       const MembershipSearcher& searcher,
                                       const PruneRows& prune, const Int& level,
                                       int workers) {
    const bool partition = workers > 1 && space->reduced_dim() >= 2;
    std::vector<long> tasks;
    if (partition) {
        for (Int v = 0; v <= level; ++v) tasks.push_back(static_cast<long>(v));
    } else {
        tasks.push_back(-1);
    }

    std::vector<std::vector<HoleReport>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            BoxEnumerator en(*space, level);
            en.pinned = tasks[t];
            en.prune = &prune;
            en.run([&](const std::vector<Int>& red, const std::vector<Int>& full) {
                SearchStats st;
                st.cell_bound = level;
                if (searcher.search(full, &st)) return; // semigroup member
                ReducedMarginalVector point = to_reduced(space, red);
                ConeMembership cm = oracle.check(point);
                if (!cm.inside) return; // not a lattice point of the cone
                results[t].push_back(HoleReport{point, level, std::move(cm.weights), st});
            });
        }
    };
    if (tasks.size() == 1 || workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        int count = std::min<int>(workers, static_cast<int>(tasks.size()));
        for (int i = 0; i < count; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    std::vector<HoleReport> out;
    for (auto& part : results)
        for (auto& h : part) out.push_back(std::move(h));
    return out;
}

} // namespace

std::optional<Table> semigroup_membership(const FullMarginalVector& x, SearchStats* stats) {
    std::vector<Int> residual = integral_coords(x); // throws on non-integral
    if (stats) stats->cell_bound = residual.empty() ? Int(0) : residual[0];
    if (!x.is_consistent()) return std::nullopt;
    MembershipSearcher searcher(*x.space());
    return searcher.search(std::move(residual), stats);
}

std::vector<ReducedMarginalVector> enumerate_lattice_points(const SpacePtr& space,
                                                            const Int& level) {
    auto gens = reduced_generators(space);
    PruneRows prune(*space, gens);
    ConeOracle oracle(std::move(gens));
    std::vector<ReducedMarginalVector> out;
    BoxEnumerator en(*space, level);
    en.prune = &prune;
    en.run([&](const std::vector<Int>& red, const std::vector<Int>&) {
        ReducedMarginalVector point = to_reduced(space, red);
        if (oracle.check(point).inside) out.push_back(std::move(point));
    });
    return out;
}

std::vector<HoleReport> find_holes(const SpacePtr& space, const Int& max_level,
                                   int workers) {
    if (max_level < 0) throw input_error("max level must be >= 0");
    auto gens = reduced_generators(space);
    PruneRows prune(*space, gens);
    ConeOracle oracle(std::move(gens));
    MembershipSearcher searcher(*space);
    std::vector<HoleReport> out;
    for (Int level = 0; level <= max_level; ++level)
        for (auto& h : holes_at_level(space, oracle, searcher, prune, level, workers))
            out.push_back(std::move(h));
    return out;
}

HoleReport lift_hole(const SpacePtr& space, const std::vector<MinorOp>& ops,
                     const HoleReport& hole) {
    std::vector<SpacePtr> chain{space};
    for (const MinorOp& op : ops) chain.push_back(apply_op(chain.back(), op));
    if (!chain.back()->same_as(*hole.point.space()))
        throw input_error("op chain does not end at the hole's model");

    FullMarginalVector w = expand_coords(hole.point);
    for (std::size_t i = ops.size(); i-- > 0;) w = face_embedding(chain[i], ops[i], w);

    // re-verify from scratch over the target model
    ConeOracle oracle(reduced_generators(space));
    ReducedMarginalVector point = reduce_coords(w);
    ConeMembership cm = oracle.check(point);
    if (!cm.inside)
        throw internal_error("lifted hole left the marginal cone");
    SearchStats st;
    st.cell_bound = numerator(w.sample_size());
    if (semigroup_membership(w, &st))
        throw internal_error("lifted hole gained an integer preimage");
    return HoleReport{std::move(point), numerator(w.sample_size()), std::move(cm.weights), st};
}

FullMarginalVector glue_marginals(const FullMarginalVector& x1,
                                  const FullMarginalVector& x2, const Face& s_raw) {
    Face s = sorted_face(s_raw);
    const MarginalSpace& s1 = *x1.space();
    const MarginalSpace& s2 = *x2.space();
    if (!s1.complex().has_face(s) || !s2.complex().has_face(s))
        throw input_error("separator is not a face of both complexes");

    // union model; shapes must agree on shared vertices
    std::vector<Vertex> ground;
    std::map<Vertex, int> sizes;
    for (std::size_t i = 0; i < s1.complex().ground().size(); ++i)
        sizes[s1.complex().ground()[i]] = s1.shape().sizes[i];
    for (std::size_t i = 0; i < s2.complex().ground().size(); ++i) {
        Vertex v = s2.complex().ground()[i];
        int r = s2.shape().sizes[i];
        auto it = sizes.find(v);
        if (it != sizes.end() && it->second != r)
            throw input_error("shapes disagree on a shared vertex");
        sizes[v] = r;
    }
    std::vector<int> shape;
    for (const auto& [v, r] : sizes) {
        ground.push_back(v);
        shape.push_back(r);
    }
    std::vector<Face> facets;
    for (const Face& f : s1.complex().faces()) facets.push_back(f);
    for (const Face& f : s2.complex().faces()) facets.push_back(f);
    SpacePtr glued = make_space(build_complex(facets, ground), TableShape{shape});

    ReducibleSplit split{s1.complex(), s, s2.complex()};
    if (!valid_reducible_split(glued->complex(), split))
        throw input_error("(Delta1, S, Delta2) is not a valid reducible decomposition");

    // shared coordinates must agree (T = empty gives matching sample sizes)
    for (const Face& t : s1.complex().faces()) {
        if (!is_subset(t, s)) continue;
        std::size_t id1 = s1.face_id(t);
        std::size_t id2 = s2.face_id(t);
        for (std::size_t fr = 0; fr < s1.full_block(id1); ++fr)
            if (x1.coords()[s1.full_offset(id1) + fr] !=
                x2.coords()[s2.full_offset(id2) + fr])
                throw input_error("shared margins disagree on the separator");
    }

    FullMarginalVector out = FullMarginalVector::zero(glued);
    for (std::size_t id = 0; id < glued->face_count(); ++id) {
        const Face& face = glued->face(id);
        if (s1.complex().has_face(face)) {
            std::size_t src = s1.face_id(face);
            for (std::size_t fr = 0; fr < glued->full_block(id); ++fr)
                out.coords()[glued->full_offset(id) + fr] =
                    x1.coords()[s1.full_offset(src) + fr];
        } else {
            std::size_t src = s2.face_id(face);
            for (std::size_t fr = 0; fr < glued->full_block(id); ++fr)
                out.coords()[glued->full_offset(id) + fr] =
                    x2.coords()[s2.full_offset(src) + fr];
        }
    }
    return out;
}

Table glue_tables(const Table& u1, const SpacePtr& space1, const Table& u2,
                  const SpacePtr& space2, const Face& s_raw, const SpacePtr& glued_space) {
    Face s = sorted_face(s_raw);
    std::vector<int> spos1, spos2;
    for (Vertex v : s) {
        spos1.push_back(space1->complex().ground_index(v));
        spos2.push_back(space2->complex().ground_index(v));
    }
    // unit cells grouped by their S-restriction
    auto slices = [](const Table& u, const std::vector<int>& spos) {
        std::map<CellIndex, std::vector<CellIndex>> out;
        for (const auto& [cell, count] : u.counts())
            for (Int i = 0; i < count; ++i) out[restrict_cell(cell, spos)].push_back(cell);
        return out;
    };
    auto sl1 = slices(u1, spos1);
    auto sl2 = slices(u2, spos2);
    if (sl1.size() != sl2.size()) throw input_error("tables disagree on the separator margin");

    Table out(glued_space->shape());
    const auto& ground = glued_space->complex().ground();
    for (auto& [sidx, cells1] : sl1) {
        auto it = sl2.find(sidx);
        if (it == sl2.end() || it->second.size() != cells1.size())
            throw input_error("tables disagree on the separator margin");
        for (std::size_t k = 0; k < cells1.size(); ++k) {
            const CellIndex& c1 = cells1[k];
            const CellIndex& c2 = it->second[k];
            CellIndex merged(ground.size());
            for (std::size_t i = 0; i < ground.size(); ++i) {
                Vertex v = ground[i];
                if (space1->complex().has_vertex(v))
                    merged[i] = c1[static_cast<std::size_t>(space1->complex().ground_index(v))];
                else
                    merged[i] = c2[static_cast<std::size_t>(space2->complex().ground_index(v))];
            }
            out.add(merged, 1);
        }
    }
    return out;
}

} // namespace marsem
