#include "marsem/model.hpp"
#include "marsem/errors.hpp"

#include <algorithm>

namespace marsem {

Face sorted_face(Face f) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

bool is_subset(const Face& sub, const Face& sup) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

Face face_union(const Face& a, const Face& b) {
    Face out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Face face_intersection(const Face& a, const Face& b) {
    Face out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Face face_difference(const Face& a, const Face& b) {
    Face out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

void add_subsets(const Face& facet, FaceSet& out) {
    // Facets are tiny at desk scale; enumerate subsets by bitmask.
    const std::size_t k = facet.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Face s;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i)) s.push_back(facet[i]);
        out.insert(std::move(s));
    }
}

} // namespace

SimplicialComplex SimplicialComplex::from_facets(const std::vector<Face>& facets,
                                                 std::vector<Vertex> ground) {
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (ground[i] < 1) throw input_error("ground labels must be positive integers");
        if (i > 0 && ground[i] <= ground[i - 1])
            throw input_error("ground labels must be strictly increasing");
    }
    SimplicialComplex c;
    c.ground_ = std::move(ground);
    for (const Face& raw : facets) {
        Face f = sorted_face(raw);
        for (Vertex v : f)
            if (!std::binary_search(c.ground_.begin(), c.ground_.end(), v))
                throw input_error("facet references unknown vertex " + std::to_string(v));
        add_subsets(f, c.faces_);
    }
    c.faces_.insert(Face{});
    return c;
}

bool SimplicialComplex::has_vertex(Vertex v) const {
    return std::binary_search(ground_.begin(), ground_.end(), v);
}

int SimplicialComplex::ground_index(Vertex v) const {
    auto it = std::lower_bound(ground_.begin(), ground_.end(), v);
    if (it == ground_.end() || *it != v)
        throw input_error("unknown vertex " + std::to_string(v));
    return static_cast<int>(it - ground_.begin());
}

std::vector<Face> SimplicialComplex::facets() const {
    std::vector<Face> out;
    for (const Face& f : faces_) {
        bool maximal = true;
        for (const Face& g : faces_) {
            if (g.size() > f.size() && is_subset(f, g)) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(f);
    }
    return out;
}

TableShape validated_shape(std::vector<int> sizes, std::size_t ground_size) {
    if (sizes.size() != ground_size)
        throw input_error("shape length does not match ground-set size");
    for (int r : sizes)
        if (r < 1) throw input_error("shape entries must be >= 1");
    return TableShape{std::move(sizes)};
}

CellIndex first_cell(const TableShape& shape) {
    return CellIndex(shape.sizes.size(), 1);
}

bool next_cell(CellIndex& cell, const TableShape& shape) {
    for (std::size_t i = cell.size(); i-- > 0;) {
        if (cell[i] < shape.sizes[i]) {
            ++cell[i];
            std::fill(cell.begin() + static_cast<long>(i) + 1, cell.end(), 1);
            return true;
        }
    }
    return false;
}

CellIndex restrict_cell(const CellIndex& cell, const std::vector<int>& positions) {
    CellIndex out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(cell[static_cast<std::size_t>(p)]);
    return out;
}

void Table::check_cell(const CellIndex& cell) const {
    if (cell.size() != shape_.sizes.size())
        throw input_error("cell index length does not match table shape");
    for (std::size_t i = 0; i < cell.size(); ++i)
        if (cell[i] < 1 || cell[i] > shape_.sizes[i])
            throw input_error("cell level out of range");
}

const Int& Table::at(const CellIndex& cell) const {
    static const Int zero = 0;
    auto it = counts_.find(cell);
    return it == counts_.end() ? zero : it->second;
}

void Table::set(const CellIndex& cell, Int value) {
    check_cell(cell);
    if (value < 0) throw input_error("table counts must be nonnegative");
    if (value == 0)
        counts_.erase(cell);
    else
        counts_[cell] = std::move(value);
}

void Table::add(const CellIndex& cell, const Int& value) {
    set(cell, at(cell) + value);
}

Int Table::total() const {
    Int n = 0;
    for (const auto& [cell, count] : counts_) n += count;
    return n;
}

} // namespace marsem
