#include "marsem/classify.hpp"
#include "marsem/errors.hpp"

#include <algorithm>
#include <mutex>

namespace marsem {

std::string to_string(NormalityCertificate::Verdict v) {
    switch (v) {
    case NormalityCertificate::Verdict::Normal: return "normal";
    case NormalityCertificate::Verdict::NotNormal: return "not normal";
    default: return "unknown";
    }
}

const HoleReport& k4_hole() {
    static std::once_flag flag;
    static std::optional<HoleReport> cached;
    std::call_once(flag, [] {
        Graph k4 = Graph::from_edges(
            {1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
        SpacePtr space = make_binary_space(k4.edge_complex());
        for (Int level = 0; level <= 8; ++level) {
            auto holes = find_holes(space, level);
            if (!holes.empty()) {
                if (holes.size() != 1)
                    throw internal_error("K4 hole search found more than one point");
                cached = std::move(holes.front());
                return;
            }
        }
        throw internal_error("K4 hole not found within the search bound");
    });
    return *cached;
}

namespace {

NotNormalEvidence build_not_normal(const Graph& g, const SpacePtr& space,
                                   BranchSets branch_sets) {
    std::vector<MinorOp> ops = minor_sequence_to_k4(g, branch_sets);
    SpacePtr final_space = apply_ops(space, ops);
    auto iso = k4_complex_isomorphism(final_space->complex());
    if (!iso) throw internal_error("minor sequence did not reach a K4 edge complex");

    const HoleReport& canonical = k4_hole();
    FullMarginalVector full = expand_coords(canonical.point);
    FullMarginalVector moved = relabel(full, *iso, final_space);
    HoleReport over_final{reduce_coords(moved), canonical.level, canonical.cone_weights,
                          canonical.semigroup_search};
    HoleReport lifted = lift_hole(space, ops, over_final); // re-verifies LP + IP
    return NotNormalEvidence{std::move(branch_sets), std::move(ops), std::move(lifted)};
}

NormalEvidence build_normal(const Graph& g, int beta) {
    NormalEvidence ev;
    ev.elimination = eliminate_tw2(g);
    ev.completion = chordal_completion_tw2(g);
    ev.tree = decompose_fully(ev.completion.edge_complex());

    for (const Decomposition* leaf : decomposition_leaves(ev.tree))
        if (leaf->complex.ground().size() > 3)
            throw internal_error("decomposition leaf exceeds three vertices");

    Graph current = ev.completion;
    std::vector<Edge> fills = ev.elimination.fill_edges;
    std::reverse(fills.begin(), fills.end());
    for (const Edge& e : fills) {
        InequalitySystem sys = facet_system(current);
        BSplit split = extract_B(sys, {e.first, e.second});
        FacepopperReport rep = facepopper_condition(split.B, beta);
        rep.face = {e.first, e.second};
        if (rep.verdict != FacepopperVerdict::Holds)
            throw internal_error("fill-edge deletion failed the integral-recovery check");
        ev.deletions.push_back(EdgeDeletionStep{e, sys.rows.size(), std::move(rep)});
        current = current.without_edge(e.first, e.second);
    }
    if (!(current == g))
        throw internal_error("edge deletions did not return to the input graph");
    return ev;
}

} // namespace

NormalityCertificate classify_normality(const Graph& g, const TableShape& shape,
                                        int beta) {
    if (shape.sizes.size() != g.vertices().size())
        throw input_error("shape length does not match the vertex count");
    if (!shape.is_binary())
        throw unsupported_error(
            "the normality classifier covers binary graph models only; "
            "use the bounded hole search for other shapes");

    SpacePtr space = make_binary_space(g.edge_complex());
    NormalityCertificate cert;
    auto branch_sets = find_k4_branch_sets(g);
    if (branch_sets) {
        cert.verdict = NormalityCertificate::Verdict::NotNormal;
        cert.not_normal = build_not_normal(g, space, *branch_sets);
    } else {
        cert.verdict = NormalityCertificate::Verdict::Normal;
        cert.normal = build_normal(g, beta);
    }
    return cert;
}

} // namespace marsem
