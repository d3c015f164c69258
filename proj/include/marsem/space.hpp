#pragma once

#include "marsem/model.hpp"

#include <memory>
#include <vector>

namespace marsem {

/// Fixed coordinate layout for the marginal vectors of one (complex, shape)
/// pair. Faces are ordered by (cardinality, lex); within a face, index
/// tuples run lexicographically. The full layout ranges each i_f over
/// [1..r_f]; the reduced layout over [1..r_f-1] (so faces touching an
/// r_f = 1 vertex contribute no reduced coordinates). The empty face is
/// coordinate 0 of both layouts (p^empty, the sample size).
class MarginalSpace {
public:
    MarginalSpace(SimplicialComplex complex, TableShape shape);

    const SimplicialComplex& complex() const { return complex_; }
    const TableShape& shape() const { return shape_; }

    std::size_t face_count() const { return faces_.size(); }
    const Face& face(std::size_t id) const { return faces_[id]; }
    const std::vector<Face>& faces() const { return faces_; }

    /// Face id in the canonical order; input error if not a face.
    std::size_t face_id(const Face& f) const;
    bool has_face(const Face& f) const;

    /// Ground positions of the face's vertices.
    const std::vector<int>& face_positions(std::size_t id) const { return positions_[id]; }

    /// Level counts r_f along the face.
    const std::vector<int>& face_radices(std::size_t id) const { return radices_[id]; }

    std::size_t full_dim() const { return full_dim_; }
    std::size_t full_offset(std::size_t id) const { return full_offset_[id]; }
    std::size_t full_block(std::size_t id) const { return full_block_[id]; }

    std::size_t reduced_dim() const { return reduced_dim_; }
    std::size_t reduced_offset(std::size_t id) const { return reduced_offset_[id]; }
    std::size_t reduced_block(std::size_t id) const { return reduced_block_[id]; }

    /// Rank of an index tuple (1-based levels along the face) in the full
    /// lexicographic order.
    std::size_t full_rank(std::size_t id, const CellIndex& idx) const;
    CellIndex full_unrank(std::size_t id, std::size_t rank) const;

    /// Rank in the reduced order; all entries must be < r_f.
    std::size_t reduced_rank(std::size_t id, const CellIndex& idx) const;
    CellIndex reduced_unrank(std::size_t id, std::size_t rank) const;

    /// Position of the reduced coordinate inside the full block of the
    /// same face (reduced index tuples are also full index tuples).
    std::size_t full_position_of_reduced(std::size_t id, std::size_t reduced_rank) const;

    /// One signed reduced coordinate in the inclusion-exclusion expansion
    /// of a full coordinate.
    struct ExpTerm {
        std::size_t reduced_pos;
        int sign;
    };

    /// Expansion of the full coordinate (face, full rank) as a +-1
    /// combination of reduced coordinates. Positions of the index tuple at
    /// their top level r_f are inverted through subfaces; sub-threshold
    /// positions pass through unchanged.
    const std::vector<ExpTerm>& expansion(std::size_t id, std::size_t full_rank) const {
        return expansion_[id][full_rank];
    }

    bool same_as(const MarginalSpace& o) const {
        return complex_ == o.complex_ && shape_ == o.shape_;
    }

private:
    SimplicialComplex complex_;
    TableShape shape_;
    std::vector<Face> faces_;
    std::vector<std::vector<int>> positions_; // ground positions per face
    std::vector<std::vector<int>> radices_;   // r_f per face position
    std::vector<std::size_t> full_offset_, full_block_;
    std::vector<std::size_t> reduced_offset_, reduced_block_;
    std::size_t full_dim_ = 0, reduced_dim_ = 0;
    std::vector<std::vector<std::vector<ExpTerm>>> expansion_;

    void build_expansion();
};

using SpacePtr = std::shared_ptr<const MarginalSpace>;

inline SpacePtr make_space(SimplicialComplex complex, TableShape shape) {
    return std::make_shared<MarginalSpace>(std::move(complex), std::move(shape));
}

/// Binary space over the given complex (every r_i = 2).
SpacePtr make_binary_space(SimplicialComplex complex);

} // namespace marsem
