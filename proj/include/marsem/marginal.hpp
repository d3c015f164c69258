#pragma once

#include "marsem/space.hpp"

#include <map>

namespace marsem {

/// Marginal vector in full coordinates p^F_{i_F}, i_F over [1..r_f].
/// Entries are exact rationals; lattice points are detected with
/// is_integral(). Immutable use after construction is the norm.
class FullMarginalVector {
public:
    FullMarginalVector(SpacePtr space, std::vector<Rat> coords);
    static FullMarginalVector zero(SpacePtr space);

    const SpacePtr& space() const { return space_; }
    const std::vector<Rat>& coords() const { return coords_; }
    std::vector<Rat>& coords() { return coords_; }

    const Rat& at(const Face& f, const CellIndex& idx) const;
    Rat& at(const Face& f, const CellIndex& idx);

    /// p^empty, the sample size of any preimage table.
    const Rat& sample_size() const { return coords_[0]; }

    bool is_integral() const;
    bool is_nonnegative() const;

    /// Summation consistency: for every face F and f in F, summing the
    /// F-coordinates over the levels of f reproduces the (F \ f)-block.
    bool is_consistent() const;

    bool same_space(const FullMarginalVector& o) const {
        return space_ == o.space_ || space_->same_as(*o.space_);
    }
    bool operator==(const FullMarginalVector& o) const {
        return same_space(o) && coords_ == o.coords_;
    }

    FullMarginalVector& operator+=(const FullMarginalVector& o);
    friend FullMarginalVector operator+(FullMarginalVector a, const FullMarginalVector& b) {
        a += b;
        return a;
    }

private:
    SpacePtr space_;
    std::vector<Rat> coords_;
};

/// Marginal vector in reduced coordinates (indices with every i_f < r_f,
/// plus p^empty). The linear map L of the coordinate change drops the rest;
/// expand_coords is its inverse M on marginal vectors.
class ReducedMarginalVector {
public:
    ReducedMarginalVector(SpacePtr space, std::vector<Rat> coords);
    static ReducedMarginalVector zero(SpacePtr space);

    const SpacePtr& space() const { return space_; }
    const std::vector<Rat>& coords() const { return coords_; }
    std::vector<Rat>& coords() { return coords_; }

    const Rat& at(const Face& f, const CellIndex& idx) const;
    const Rat& sample_size() const { return coords_[0]; }

    bool is_integral() const;

    bool same_space(const ReducedMarginalVector& o) const {
        return space_ == o.space_ || space_->same_as(*o.space_);
    }
    bool operator==(const ReducedMarginalVector& o) const {
        return same_space(o) && coords_ == o.coords_;
    }
    bool operator<(const ReducedMarginalVector& o) const { return coords_ < o.coords_; }

private:
    SpacePtr space_;
    std::vector<Rat> coords_;
};

/// The marginal map: image of a table under pi_Delta.
FullMarginalVector marginalize(const Table& u, const SpacePtr& space);

/// Images of the unit tables e_i in lexicographic cell order; these
/// generate the marginal cone and semigroup.
std::vector<FullMarginalVector> generators(const SpacePtr& space);

/// Coordinate change L: keep indices with all i_f <= r_f - 1 plus p^empty.
ReducedMarginalVector reduce_coords(const FullMarginalVector& v);

/// Coordinate change M: inclusion-exclusion recovery of the deleted
/// coordinates. M(L(v)) = v for every vector satisfying the summation
/// consistency (in particular every marginal of a table).
FullMarginalVector expand_coords(const ReducedMarginalVector& v);

/// Relabel a vector along a ground bijection old -> new. The target space
/// must be the relabeled complex with the correspondingly permuted shape.
FullMarginalVector relabel(const FullMarginalVector& v,
                           const std::map<Vertex, Vertex>& perm,
                           const SpacePtr& target);

} // namespace marsem
