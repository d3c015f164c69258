#pragma once

#include "marsem/numeric.hpp"

#include <map>
#include <set>
#include <vector>

namespace marsem {

using Vertex = int;

/// A face is a sorted, duplicate-free list of vertex labels.
using Face = std::vector<Vertex>;

/// Canonical face order: by cardinality, then lexicographic on labels.
struct FaceLess {
    bool operator()(const Face& a, const Face& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using FaceSet = std::set<Face, FaceLess>;

Face sorted_face(Face f);
bool is_subset(const Face& sub, const Face& sup);
Face face_union(const Face& a, const Face& b);
Face face_intersection(const Face& a, const Face& b);
Face face_difference(const Face& a, const Face& b);

/// Downward-closed set of faces over an ordered ground set.
/// The empty face is always present. Ground labels are positive integers
/// in strictly increasing order; table shapes pair with them by position.
class SimplicialComplex {
public:
    SimplicialComplex() { faces_.insert(Face{}); }

    /// Downward closure of the given facets. Contained/duplicate facets
    /// are absorbed. Unknown vertices in a facet are an input error.
    static SimplicialComplex from_facets(const std::vector<Face>& facets,
                                         std::vector<Vertex> ground);

    const std::vector<Vertex>& ground() const { return ground_; }
    const FaceSet& faces() const { return faces_; }

    bool has_face(const Face& f) const { return faces_.count(sorted_face(f)) > 0; }
    bool has_vertex(Vertex v) const;

    /// Position of v in the ground list; input error if absent.
    int ground_index(Vertex v) const;

    /// Maximal faces, in canonical order.
    std::vector<Face> facets() const;

    bool operator==(const SimplicialComplex& o) const {
        return ground_ == o.ground_ && faces_ == o.faces_;
    }

private:
    std::vector<Vertex> ground_; // strictly increasing
    FaceSet faces_;              // downward closed, contains {}
};

/// Per-vertex level counts (r_1, ..., r_n), paired with a ground set by
/// position. All r_i >= 1; the model is binary when all r_i == 2.
struct TableShape {
    std::vector<int> sizes;

    bool is_binary() const {
        for (int r : sizes)
            if (r != 2) return false;
        return true;
    }
    std::size_t cell_count() const {
        std::size_t n = 1;
        for (int r : sizes) n *= static_cast<std::size_t>(r);
        return n;
    }
    bool operator==(const TableShape& o) const { return sizes == o.sizes; }
};

TableShape validated_shape(std::vector<int> sizes, std::size_t ground_size);

/// Cell of an r_1 x ... x r_n array: 1-based levels, one per ground position.
using CellIndex = std::vector<int>;

/// First cell (1,...,1); n = number of positions.
CellIndex first_cell(const TableShape& shape);

/// Advance to the next cell in lexicographic order (last position fastest).
/// Returns false after the last cell.
bool next_cell(CellIndex& cell, const TableShape& shape);

/// Restriction i_F of a cell to the given ground positions.
CellIndex restrict_cell(const CellIndex& cell, const std::vector<int>& positions);

/// Sparse nonnegative integer table of counts over cells.
class Table {
public:
    explicit Table(TableShape shape) : shape_(std::move(shape)) {}

    const TableShape& shape() const { return shape_; }
    const std::map<CellIndex, Int>& counts() const { return counts_; }

    const Int& at(const CellIndex& cell) const;
    void set(const CellIndex& cell, Int value);
    void add(const CellIndex& cell, const Int& value);

    /// Sample size N.
    Int total() const;

    bool operator==(const Table& o) const {
        return shape_ == o.shape_ && counts_ == o.counts_;
    }

private:
    void check_cell(const CellIndex& cell) const;

    TableShape shape_;
    std::map<CellIndex, Int> counts_; // only nonzero entries
};

/// The build_complex operation of the model layer.
inline SimplicialComplex build_complex(const std::vector<Face>& facets,
                                       std::vector<Vertex> ground) {
    return SimplicialComplex::from_facets(facets, std::move(ground));
}

} // namespace marsem
