#pragma once

#include "marsem/graph.hpp"
#include "marsem/marginal.hpp"

namespace marsem {

/// Homogeneous integer inequality c . p >= 0 over the reduced coordinates
/// of a fixed space. Normalized so the gcd of nonzero coefficients is 1.
struct LinearInequality {
    std::vector<Int> coeffs;

    void normalize();
    bool is_zero() const;
};

struct InequalitySystem {
    SpacePtr space;
    std::vector<LinearInequality> rows;
};

/// Exact dot product; x satisfies the inequality iff the result is >= 0.
Rat evaluate(const LinearInequality& ineq, const ReducedMarginalVector& x);

/// All simple cycles as canonical sorted edge lists, ordered by
/// (length, lex). Guarded at 12 vertices.
std::vector<std::vector<Edge>> enumerate_cycles(const Graph& g);

/// The four box inequalities per edge of a binary graph model:
/// p^{jk} >= 0, p^j - p^{jk} >= 0, p^k - p^{jk} >= 0,
/// p^0 - p^j - p^k + p^{jk} >= 0.
/// Unsupported for non-binary shapes.
InequalitySystem box_inequalities(const Graph& g, const TableShape& shape);
InequalitySystem box_inequalities(const Graph& g);

/// One inequality per (simple cycle C, odd subset O of C):
///   sum_{jk in O} p^{jk} - sum_{jk in C\O} p^{jk}
///   - sum_{j in V(O)} p^j + sum_{j in V(C\O)} p^j + (#O-1)/2 p^0 >= 0,
/// with V(.) the vertex sets of the edge sets (shared vertices cancel).
InequalitySystem cycle_inequalities(const Graph& g, const TableShape& shape);
InequalitySystem cycle_inequalities(const Graph& g);

/// box + cycle rows over one shared space.
InequalitySystem facet_system(const Graph& g);

} // namespace marsem
