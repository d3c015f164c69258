#include "marsem/space.hpp"
#include "marsem/errors.hpp"

#include <algorithm>
#include <bit>

namespace marsem {

MarginalSpace::MarginalSpace(SimplicialComplex complex, TableShape shape)
    : complex_(std::move(complex)), shape_(std::move(shape)) {
    if (shape_.sizes.size() != complex_.ground().size())
        throw input_error("shape length does not match ground-set size");
    for (int r : shape_.sizes)
        if (r < 1) throw input_error("shape entries must be >= 1");

    for (const Face& f : complex_.faces()) faces_.push_back(f);

    for (const Face& f : faces_) {
        std::vector<int> pos, rad;
        pos.reserve(f.size());
        for (Vertex v : f) {
            int p = complex_.ground_index(v);
            pos.push_back(p);
            rad.push_back(shape_.sizes[static_cast<std::size_t>(p)]);
        }
        positions_.push_back(std::move(pos));
        radices_.push_back(std::move(rad));
    }

    full_offset_.resize(faces_.size());
    full_block_.resize(faces_.size());
    reduced_offset_.resize(faces_.size());
    reduced_block_.resize(faces_.size());
    for (std::size_t id = 0; id < faces_.size(); ++id) {
        std::size_t fb = 1, rb = 1;
        for (int r : radices_[id]) {
            fb *= static_cast<std::size_t>(r);
            rb *= static_cast<std::size_t>(r - 1);
        }
        full_offset_[id] = full_dim_;
        full_block_[id] = fb;
        full_dim_ += fb;
        reduced_offset_[id] = reduced_dim_;
        reduced_block_[id] = rb;
        reduced_dim_ += rb;
    }

    build_expansion();
}

void MarginalSpace::build_expansion() {
    expansion_.resize(faces_.size());
    for (std::size_t id = 0; id < faces_.size(); ++id) {
        const Face& face = faces_[id];
        const auto& rad = radices_[id];
        const std::size_t k = face.size();
        expansion_[id].resize(full_block_[id]);
        for (std::size_t rank = 0; rank < full_block_[id]; ++rank) {
            CellIndex idx = full_unrank(id, rank);
            std::vector<std::size_t> top; // face-local positions at level r_f
            for (std::size_t p = 0; p < k; ++p)
                if (idx[p] == rad[p]) top.push_back(p);
            auto& terms = expansion_[id][rank];
            const std::size_t tcount = top.size();
            for (std::size_t mask = 0; mask < (std::size_t{1} << tcount); ++mask) {
                // Subface keeps the sub-threshold positions plus the chosen
                // subset U of top positions; the left-out top positions are
                // summed away with alternating sign.
                std::vector<std::size_t> local;
                for (std::size_t p = 0; p < k; ++p) {
                    bool is_top = idx[p] == rad[p];
                    std::size_t ti = 0;
                    if (is_top) {
                        while (top[ti] != p) ++ti;
                        if (mask & (std::size_t{1} << ti)) local.push_back(p);
                    } else {
                        local.push_back(p);
                    }
                }
                Face sub;
                for (std::size_t p : local) sub.push_back(face[p]);
                std::size_t sub_id = face_id(sub);
                int sign = (std::popcount(mask) % 2 == 0) ? 1 : -1;
                // Iterate reduced levels over the U positions.
                std::vector<std::size_t> upos;
                for (std::size_t p : local)
                    if (idx[p] == rad[p]) upos.push_back(p);
                bool empty_range = false;
                for (std::size_t p : upos)
                    if (rad[p] - 1 == 0) empty_range = true;
                if (empty_range) continue;
                CellIndex sub_idx(local.size());
                std::vector<int> levels(upos.size(), 1);
                auto advance = [&]() -> bool {
                    for (std::size_t c = levels.size(); c-- > 0;) {
                        if (levels[c] < rad[upos[c]] - 1) {
                            ++levels[c];
                            std::fill(levels.begin() + static_cast<long>(c) + 1,
                                      levels.end(), 1);
                            return true;
                        }
                    }
                    return false;
                };
                do {
                    std::size_t ui = 0;
                    for (std::size_t q = 0; q < local.size(); ++q) {
                        std::size_t p = local[q];
                        if (idx[p] == rad[p])
                            sub_idx[q] = levels[ui++];
                        else
                            sub_idx[q] = idx[p];
                    }
                    terms.push_back(ExpTerm{reduced_offset_[sub_id] +
                                                reduced_rank(sub_id, sub_idx),
                                            sign});
                } while (advance());
            }
        }
    }
}

std::size_t MarginalSpace::face_id(const Face& f) const {
    Face key = sorted_face(f);
    auto it = std::lower_bound(faces_.begin(), faces_.end(), key, FaceLess{});
    if (it == faces_.end() || *it != key)
        throw input_error("not a face of the complex");
    return static_cast<std::size_t>(it - faces_.begin());
}

bool MarginalSpace::has_face(const Face& f) const { return complex_.has_face(f); }

std::size_t MarginalSpace::full_rank(std::size_t id, const CellIndex& idx) const {
    const auto& rad = radices_[id];
    std::size_t r = 0;
    for (std::size_t k = 0; k < rad.size(); ++k)
        r = r * static_cast<std::size_t>(rad[k]) + static_cast<std::size_t>(idx[k] - 1);
    return r;
}

CellIndex MarginalSpace::full_unrank(std::size_t id, std::size_t rank) const {
    const auto& rad = radices_[id];
    CellIndex idx(rad.size(), 1);
    for (std::size_t k = rad.size(); k-- > 0;) {
        idx[k] = static_cast<int>(rank % static_cast<std::size_t>(rad[k])) + 1;
        rank /= static_cast<std::size_t>(rad[k]);
    }
    return idx;
}

std::size_t MarginalSpace::reduced_rank(std::size_t id, const CellIndex& idx) const {
    const auto& rad = radices_[id];
    std::size_t r = 0;
    for (std::size_t k = 0; k < rad.size(); ++k)
        r = r * static_cast<std::size_t>(rad[k] - 1) + static_cast<std::size_t>(idx[k] - 1);
    return r;
}

CellIndex MarginalSpace::reduced_unrank(std::size_t id, std::size_t rank) const {
    const auto& rad = radices_[id];
    CellIndex idx(rad.size(), 1);
    for (std::size_t k = rad.size(); k-- > 0;) {
        idx[k] = static_cast<int>(rank % static_cast<std::size_t>(rad[k] - 1)) + 1;
        rank /= static_cast<std::size_t>(rad[k] - 1);
    }
    return idx;
}

std::size_t MarginalSpace::full_position_of_reduced(std::size_t id, std::size_t rrank) const {
    return full_rank(id, reduced_unrank(id, rrank));
}

SpacePtr make_binary_space(SimplicialComplex complex) {
    TableShape shape{std::vector<int>(complex.ground().size(), 2)};
    return make_space(std::move(complex), std::move(shape));
}

} // namespace marsem
