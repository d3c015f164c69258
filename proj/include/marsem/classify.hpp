#pragma once

#include "marsem/decomposition.hpp"
#include "marsem/semigroup.hpp"

namespace marsem {

/// One step of the edge-deletion half of a Normal certificate: the facet
/// system of the current graph, split at the deleted edge, passes the
/// integral-recovery condition.
struct EdgeDeletionStep {
    Edge edge;
    std::size_t system_rows = 0;
    FacepopperReport report;
};

struct NormalEvidence {
    EliminationResult elimination;
    Graph completion; // chordal, clique number <= 3
    Decomposition tree;
    std::vector<EdgeDeletionStep> deletions; // fill edges, reverse elimination order
};

struct NotNormalEvidence {
    BranchSets branch_sets;
    std::vector<MinorOp> ops; // edge complex of the graph -> a K4 edge complex
    HoleReport hole;          // lifted to the graph's model, re-verified
};

struct NormalityCertificate {
    enum class Verdict { Normal, NotNormal, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::optional<NormalEvidence> normal;
    std::optional<NotNormalEvidence> not_normal;
    Int searched_bound = 0; // Unknown: holes exhausted up to this level
};

std::string to_string(NormalityCertificate::Verdict v);

/// Decide normality of the binary graph model of g. A K4 minor produces a
/// NotNormal certificate with a lifted, re-verified hole; otherwise the
/// Normal certificate carries the chordal completion, its decomposition
/// into cliques of at most three vertices, and one passing facepopper
/// report per fill-edge deletion. Non-binary shapes are unsupported here.
NormalityCertificate classify_normality(const Graph& g, const TableShape& shape,
                                        int beta = 3);

/// The unique hole of the binary K4 model on {1,2,3,4}, derived by the
/// bounded search at increasing levels and cached for the process.
const HoleReport& k4_hole();

} // namespace marsem
