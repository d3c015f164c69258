#include "marsem/marginal.hpp"
#include "marsem/errors.hpp"

namespace marsem {

FullMarginalVector::FullMarginalVector(SpacePtr space, std::vector<Rat> coords)
    : space_(std::move(space)), coords_(std::move(coords)) {
    if (coords_.size() != space_->full_dim())
        throw input_error("full coordinate vector has wrong length");
}

FullMarginalVector FullMarginalVector::zero(SpacePtr space) {
    std::vector<Rat> c(space->full_dim(), Rat(0));
    return FullMarginalVector(std::move(space), std::move(c));
}

const Rat& FullMarginalVector::at(const Face& f, const CellIndex& idx) const {
    std::size_t id = space_->face_id(f);
    return coords_[space_->full_offset(id) + space_->full_rank(id, idx)];
}

Rat& FullMarginalVector::at(const Face& f, const CellIndex& idx) {
    std::size_t id = space_->face_id(f);
    return coords_[space_->full_offset(id) + space_->full_rank(id, idx)];
}

bool FullMarginalVector::is_integral() const {
    for (const Rat& q : coords_)
        if (!marsem::is_integral(q)) return false;
    return true;
}

bool FullMarginalVector::is_nonnegative() const {
    for (const Rat& q : coords_)
        if (q < 0) return false;
    return true;
}

bool FullMarginalVector::is_consistent() const {
    const MarginalSpace& sp = *space_;
    for (std::size_t id = 0; id < sp.face_count(); ++id) {
        const Face& face = sp.face(id);
        const auto& rad = sp.face_radices(id);
        for (std::size_t drop = 0; drop < face.size(); ++drop) {
            Face sub;
            for (std::size_t k = 0; k < face.size(); ++k)
                if (k != drop) sub.push_back(face[k]);
            std::size_t sub_id = sp.face_id(sub);
            for (std::size_t sr = 0; sr < sp.full_block(sub_id); ++sr) {
                CellIndex sub_idx = sp.full_unrank(sub_id, sr);
                Rat sum = 0;
                CellIndex idx(face.size());
                for (std::size_t k = 0, q = 0; k < face.size(); ++k)
                    if (k != drop) idx[k] = sub_idx[q++];
                for (int level = 1; level <= rad[drop]; ++level) {
                    idx[drop] = level;
                    sum += coords_[sp.full_offset(id) + sp.full_rank(id, idx)];
                }
                if (sum != coords_[sp.full_offset(sub_id) + sr]) return false;
            }
        }
    }
    return true;
}

FullMarginalVector& FullMarginalVector::operator+=(const FullMarginalVector& o) {
    if (!same_space(o)) throw input_error("marginal spaces differ");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

ReducedMarginalVector::ReducedMarginalVector(SpacePtr space, std::vector<Rat> coords)
    : space_(std::move(space)), coords_(std::move(coords)) {
    if (coords_.size() != space_->reduced_dim())
        throw input_error("reduced coordinate vector has wrong length");
}

ReducedMarginalVector ReducedMarginalVector::zero(SpacePtr space) {
    std::vector<Rat> c(space->reduced_dim(), Rat(0));
    return ReducedMarginalVector(std::move(space), std::move(c));
}

const Rat& ReducedMarginalVector::at(const Face& f, const CellIndex& idx) const {
    std::size_t id = space_->face_id(f);
    return coords_[space_->reduced_offset(id) + space_->reduced_rank(id, idx)];
}

bool ReducedMarginalVector::is_integral() const {
    for (const Rat& q : coords_)
        if (!marsem::is_integral(q)) return false;
    return true;
}

FullMarginalVector marginalize(const Table& u, const SpacePtr& space) {
    if (!(u.shape() == space->shape()))
        throw input_error("table shape does not match the model");
    FullMarginalVector out = FullMarginalVector::zero(space);
    const MarginalSpace& sp = *space;
    for (const auto& [cell, count] : u.counts()) {
        Rat c(count);
        for (std::size_t id = 0; id < sp.face_count(); ++id) {
            CellIndex idx = restrict_cell(cell, sp.face_positions(id));
            out.coords()[sp.full_offset(id) + sp.full_rank(id, idx)] += c;
        }
    }
    return out;
}

std::vector<FullMarginalVector> generators(const SpacePtr& space) {
    std::vector<FullMarginalVector> out;
    CellIndex cell = first_cell(space->shape());
    const MarginalSpace& sp = *space;
    do {
        FullMarginalVector g = FullMarginalVector::zero(space);
        for (std::size_t id = 0; id < sp.face_count(); ++id) {
            CellIndex idx = restrict_cell(cell, sp.face_positions(id));
            g.coords()[sp.full_offset(id) + sp.full_rank(id, idx)] = 1;
        }
        out.push_back(std::move(g));
    } while (next_cell(cell, space->shape()));
    return out;
}

ReducedMarginalVector reduce_coords(const FullMarginalVector& v) {
    const MarginalSpace& sp = *v.space();
    std::vector<Rat> out(sp.reduced_dim());
    for (std::size_t id = 0; id < sp.face_count(); ++id)
        for (std::size_t rr = 0; rr < sp.reduced_block(id); ++rr)
            out[sp.reduced_offset(id) + rr] =
                v.coords()[sp.full_offset(id) + sp.full_position_of_reduced(id, rr)];
    return ReducedMarginalVector(v.space(), std::move(out));
}

FullMarginalVector expand_coords(const ReducedMarginalVector& v) {
    const MarginalSpace& sp = *v.space();
    std::vector<Rat> out(sp.full_dim(), Rat(0));
    for (std::size_t id = 0; id < sp.face_count(); ++id) {
        for (std::size_t fr = 0; fr < sp.full_block(id); ++fr) {
            Rat val = 0;
            for (const auto& term : sp.expansion(id, fr)) {
                if (term.sign > 0)
                    val += v.coords()[term.reduced_pos];
                else
                    val -= v.coords()[term.reduced_pos];
            }
            out[sp.full_offset(id) + fr] = std::move(val);
        }
    }
    return FullMarginalVector(v.space(), std::move(out));
}

FullMarginalVector relabel(const FullMarginalVector& v,
                           const std::map<Vertex, Vertex>& perm,
                           const SpacePtr& target) {
    const MarginalSpace& src = *v.space();
    const MarginalSpace& dst = *target;
    if (src.full_dim() != dst.full_dim())
        throw input_error("relabel target space has different dimensions");
    FullMarginalVector out = FullMarginalVector::zero(target);
    for (std::size_t id = 0; id < src.face_count(); ++id) {
        const Face& face = src.face(id);
        Face image;
        for (Vertex x : face) {
            auto it = perm.find(x);
            if (it == perm.end()) throw input_error("relabel map misses a vertex");
            image.push_back(it->second);
        }
        // Sort the image face and carry the index entries along.
        std::vector<std::size_t> order(face.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return image[a] < image[b]; });
        Face sorted_image;
        for (std::size_t k : order) sorted_image.push_back(image[k]);
        std::size_t dst_id = dst.face_id(sorted_image);
        for (std::size_t fr = 0; fr < src.full_block(id); ++fr) {
            CellIndex idx = src.full_unrank(id, fr);
            CellIndex dst_idx(idx.size());
            for (std::size_t k = 0; k < order.size(); ++k) dst_idx[k] = idx[order[k]];
            out.coords()[dst.full_offset(dst_id) + dst.full_rank(dst_id, dst_idx)] =
                v.coords()[src.full_offset(id) + fr];
        }
    }
    return out;
}

} // namespace marsem
