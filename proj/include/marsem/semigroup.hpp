#pragma once

#include "marsem/facets.hpp"
#include "marsem/minors.hpp"

#include <optional>

namespace marsem {

struct SearchStats {
    Int cell_bound = 0;               // every cell count lies in [0, bound]
    unsigned long long nodes = 0;     // backtracking nodes expanded
};

/// Integer preimage search: a table u >= 0 with marginalize(u) = x, or
/// nothing after a provably exhaustive depth-first search (cells in
/// lexicographic order, marginal residuals pruned at every step).
/// Inconsistent or negative inputs are immediately table-free.
/// Non-integral input is an input error.
std::optional<Table> semigroup_membership(const FullMarginalVector& x,
                                          SearchStats* stats = nullptr);

/// All integer reduced vectors with p^0 = level whose face expansions are
/// nonnegative and which pass LP cone membership; lexicographic order.
std::vector<ReducedMarginalVector> enumerate_lattice_points(const SpacePtr& space,
                                                            const Int& level);

struct HoleReport {
    ReducedMarginalVector point;
    Int level;                      // sample size p^0
    std::vector<Rat> cone_weights;  // generator weights certifying membership
    SearchStats semigroup_search;   // exhaustion evidence
};

/// Lattice points of the cone at levels 0..max_level that admit no integer
/// preimage. Deterministic order; workers > 1 partitions the enumeration
/// with a canonical merge.
std::vector<HoleReport> find_holes(const SpacePtr& space, const Int& max_level,
                                   int workers = 1);

/// Pull a hole of the final minor back to the original model through the
/// face embeddings of the given op chain (applied to `space`, the ops end
/// at the hole's model). The lifted point is re-verified: in the cone by
/// LP, out of the semigroup by exhaustive search; failure of either is an
/// internal error.
HoleReport lift_hole(const SpacePtr& space, const std::vector<MinorOp>& ops,
                     const HoleReport& hole);

/// Concatenate two marginal vectors along a valid reducible decomposition
/// (Delta1, S, Delta2); the shared 2^S coordinates must agree and are
/// stated once. Returns the vector over Delta1 u Delta2.
FullMarginalVector glue_marginals(const FullMarginalVector& x1,
                                  const FullMarginalVector& x2, const Face& s);

/// The constructive half of gluing: match the S-conditional slices of two
/// tables unit by unit. The result marginalizes to glue_marginals of the
/// inputs' marginal vectors.
Table glue_tables(const Table& u1, const SpacePtr& space1, const Table& u2,
                  const SpacePtr& space2, const Face& s, const SpacePtr& glued_space);

} // namespace marsem
