#pragma once

#include "marsem/model.hpp"

#include <memory>
#include <optional>

namespace marsem {

/// One reducible split Delta = Delta1 u Delta2 with Delta1 n Delta2 = 2^S.
struct ReducibleSplit {
    SimplicialComplex delta1;
    Face separator;
    SimplicialComplex delta2;
};

/// Search separator faces by (cardinality, lex); the first face whose
/// removal disconnects the remaining vertices yields the split. Returns
/// nothing when the complex is irreducible.
std::optional<ReducibleSplit> reducible_decomposition(const SimplicialComplex& c);

bool valid_reducible_split(const SimplicialComplex& c, const ReducibleSplit& s);

/// Binary tree of splits; leaves are irreducible complexes.
struct Decomposition {
    SimplicialComplex complex;
    std::optional<Face> separator;
    std::unique_ptr<Decomposition> left, right;

    bool is_leaf() const { return !left; }
};

Decomposition decompose_fully(const SimplicialComplex& c);

/// Leaves of the tree in left-to-right order.
std::vector<const Decomposition*> decomposition_leaves(const Decomposition& d);

} // namespace marsem
