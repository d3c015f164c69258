#pragma once

#include "marsem/graph.hpp"
#include "marsem/marginal.hpp"

#include <array>
#include <optional>
#include <variant>

namespace marsem {

struct DeleteVertex {
    Vertex v;
};
struct ContractEdge {
    Face L;          // face of the current complex to contract
    Vertex new_label; // fresh label for the merged vertex
};
struct DeleteEdge {
    Face e; // removes e and every face containing it (a projection, not a face)
};

using MinorOp = std::variant<DeleteVertex, ContractEdge, DeleteEdge>;

std::string describe(const MinorOp& op);

/// Delta \ v: faces avoiding v; ground shrinks by v.
SimplicialComplex delete_vertex(const SimplicialComplex& c, Vertex v);

/// Delta / L on (ground u {new_label}) \ L, with r_new = min_{f in L} r_f.
/// new_label <= 0 picks the smallest positive label not in the ground.
std::pair<SimplicialComplex, TableShape> contract_edge(const SimplicialComplex& c,
                                                       const Face& L,
                                                       const TableShape& shape,
                                                       Vertex new_label = 0);

/// Remove the face and all faces containing it. Ground is unchanged.
SimplicialComplex delete_face(const SimplicialComplex& c, const Face& f);

SpacePtr apply_op(const SpacePtr& space, const MinorOp& op);
SpacePtr apply_ops(SpacePtr space, const std::vector<MinorOp>& ops);

/// Treewidth <= 2 test by repeated low-degree elimination. On success the
/// order lists the eliminated vertices and fill_edges the diagonals added
/// when a degree-2 vertex had nonadjacent neighbors.
struct EliminationResult {
    bool minor_free = false;
    std::vector<Vertex> order;
    std::vector<Edge> fill_edges;
};

EliminationResult eliminate_tw2(const Graph& g);

inline bool is_k4_minor_free(const Graph& g) { return eliminate_tw2(g).minor_free; }

/// Four disjoint connected vertex sets, pairwise joined by an edge.
using BranchSets = std::array<std::vector<Vertex>, 4>;

bool valid_branch_sets(const Graph& g, const BranchSets& b);

/// Exhaustive search (lexicographically smallest witness). Returns a value
/// exactly when the graph has a K4 minor. Guarded at 12 vertices.
std::optional<BranchSets> find_k4_branch_sets(const Graph& g);

/// Vertex deletions and edge contractions taking the edge complex of g to a
/// K4 edge complex, realizing the given branch sets.
std::vector<MinorOp> minor_sequence_to_k4(const Graph& g, const BranchSets& b);

/// If the complex is the edge complex of a K4 on some labels, returns the
/// bijection canonical {1,2,3,4} -> labels.
std::optional<std::map<Vertex, Vertex>> k4_complex_isomorphism(const SimplicialComplex& c);

/// g plus its elimination fill edges; chordal with clique number <= 3.
/// Precondition error when g has a K4 minor.
Graph chordal_completion_tw2(const Graph& g);

/// Maximum-cardinality-search chordality test (independent of elimination).
bool is_chordal(const Graph& g);

std::size_t max_clique_size(const Graph& g);

/// Embed a marginal vector of the post-op model onto the corresponding face
/// of the pre-op cone. w must live over apply_op(pre, op). Lattice points map
/// to lattice points; semigroup membership is preserved in both directions.
FullMarginalVector face_embedding(const SpacePtr& pre, const MinorOp& op,
                                  const FullMarginalVector& w);

} // namespace marsem
