#include "marsem/facets.hpp"
#include "marsem/errors.hpp"
#include "marsem/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace marsem {

ConeOracle::ConeOracle(std::vector<ReducedMarginalVector> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw input_error("empty generator list");
    const std::size_t d = gens_[0].coords().size();
    matrix_.assign(d, lp::Vector(gens_.size(), Rat(0)));
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        if (gens_[g].coords().size() != d)
            throw input_error("generators live in different coordinate spaces");
        for (std::size_t i = 0; i < d; ++i) matrix_[i][g] = gens_[g].coords()[i];
    }
}

ConeMembership ConeOracle::check(const ReducedMarginalVector& x) const {
    const std::size_t d = matrix_.size();
    if (x.coords().size() != d)
        throw input_error("vector does not live in the generator space");
    lp::Feasibility f = lp::feasibility(matrix_, x.coords());
    ConeMembership out;
    if (f.feasible) {
        out.inside = true;
        out.weights = std::move(f.x);
        // verify: sum of weighted generators reproduces x
        for (std::size_t i = 0; i < d; ++i) {
            Rat s = 0;
            for (std::size_t g = 0; g < gens_.size(); ++g)
                if (out.weights[g] != 0) s += out.weights[g] * matrix_[i][g];
            if (s != x.coords()[i]) throw internal_error("cone membership weights do not verify");
        }
    } else {
        out.inside = false;
        out.functional.resize(d);
        for (std::size_t i = 0; i < d; ++i) out.functional[i] = -f.farkas[i];
        Rat at_x = 0;
        for (std::size_t i = 0; i < d; ++i) at_x += out.functional[i] * x.coords()[i];
        if (!(at_x < 0)) throw internal_error("separating functional does not cut x");
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            Rat at_g = 0;
            for (std::size_t i = 0; i < d; ++i) at_g += out.functional[i] * matrix_[i][g];
            if (at_g < 0) throw internal_error("separating functional cuts a generator");
        }
    }
    return out;
}

ConeMembership cone_membership_lp(const ReducedMarginalVector& x,
                                  const std::vector<ReducedMarginalVector>& gens) {
    return ConeOracle(gens).check(x);
}

std::vector<FacetReport> certify_facets(const InequalitySystem& sys,
                                        const std::vector<ReducedMarginalVector>& gens,
                                        std::size_t dim) {
    RatMatrix all;
    for (const auto& g : gens) all.push_back(g.coords());
    if (rational_rank(all) != dim)
        throw input_error("generators do not span the stated dimension");

    std::vector<FacetReport> out;
    for (const LinearInequality& row : sys.rows) {
        FacetReport rep;
        rep.valid = true;
        RatMatrix tight;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            Rat v = evaluate(row, gens[g]);
            if (v < 0) {
                rep.valid = false;
                rep.violating_generator = g;
                break;
            }
            if (v == 0) tight.push_back(gens[g].coords());
        }
        if (rep.valid) {
            rep.tight_count = tight.size();
            rep.tight_rank = rational_rank(std::move(tight));
            rep.facet = dim > 0 && rep.tight_rank == dim - 1;
        }
        out.push_back(std::move(rep));
    }
    return out;
}

EquivalenceReport equivalence_check(const InequalitySystem& sys,
                                    const std::vector<ReducedMarginalVector>& gens,
                                    const Int& bound) {
    const MarginalSpace& sp = *sys.space;
    const std::size_t dim = sp.reduced_dim();

    // A generator violating any row is already a discrepancy (it is in the
    // cone but fails the system).
    for (const LinearInequality& row : sys.rows)
        for (const auto& g : gens)
            if (evaluate(row, g) < 0)
                return {false, g, "inequality violated by a generator"};

    ConeOracle oracle(gens);

    // Rows become checkable as soon as their last supported coordinate is
    // assigned; coordinates are assigned in canonical order.
    std::vector<std::vector<std::size_t>> rows_at(dim);
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        std::size_t last = 0;
        bool any = false;
        for (std::size_t i = 0; i < dim; ++i)
            if (sys.rows[r].coeffs[i] != 0) {
                last = i;
                any = true;
            }
        if (any) rows_at[last].push_back(r);
    }

    std::vector<Rat> point(dim, Rat(0));
    EquivalenceReport result;
    result.equivalent = true;

    // p^0 is coordinate 0; the others range over [0, p^0].
    for (Int level = 0; level <= bound && result.equivalent; ++level) {
        point[0] = Rat(level);
        for (std::size_t r : rows_at[0])
            if (Rat(sys.rows[r].coeffs[0]) * point[0] < 0) goto next_level;
        {
            auto rec = [&](auto&& self, std::size_t pos) -> bool {
                if (pos == dim) {
                    ReducedMarginalVector x(sys.space, point);
                    if (!oracle.check(x).inside) {
                        result.equivalent = false;
                        result.witness = x;
                        result.detail = "integer point satisfies the system but lies outside the cone";
                        return false;
                    }
                    return true;
                }
                for (Int v = 0; v <= level; ++v) {
                    point[pos] = Rat(v);
                    bool ok = true;
                    for (std::size_t r : rows_at[pos]) {
                        Rat s = 0;
                        for (std::size_t i = 0; i <= pos; ++i)
                            if (sys.rows[r].coeffs[i] != 0)
                                s += Rat(sys.rows[r].coeffs[i]) * point[i];
                        if (s < 0) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok && !self(self, pos + 1)) return false;
                }
                point[pos] = 0;
                return true;
            };
            if (dim == 1) {
                ReducedMarginalVector x(sys.space, point);
                if (!oracle.check(x).inside) {
                    result.equivalent = false;
                    result.witness = x;
                    result.detail = "integer point satisfies the system but lies outside the cone";
                }
            } else {
                rec(rec, 1);
            }
        }
    next_level:;
    }
    return result;
}

BSplit extract_B(const InequalitySystem& sys, const Face& f) {
    const MarginalSpace& sp = *sys.space;
    std::size_t id = sp.face_id(sorted_face(f)); // throws for unknown faces
    BSplit out;
    for (std::size_t k = 0; k < sp.reduced_block(id); ++k)
        out.face_cols.push_back(sp.reduced_offset(id) + k);
    std::set<std::size_t> in_face(out.face_cols.begin(), out.face_cols.end());
    for (const LinearInequality& row : sys.rows) {
        std::vector<Int> brow, arow;
        for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
            if (in_face.count(i)) brow.push_back(row.coeffs[i]);
            else arow.push_back(row.coeffs[i]);
        }
        out.B.push_back(std::move(brow));
        out.A.push_back(std::move(arow));
    }
    return out;
}

std::string to_string(FacepopperVerdict v) {
    switch (v) {
    case FacepopperVerdict::Holds: return "holds";
    case FacepopperVerdict::Fails: return "fails";
    default: return "inconclusive";
    }
}

namespace {

bool two_column_pattern(const std::vector<Int>& row) {
    const Int& a = row[0];
    const Int& b = row[1];
    if (a == 0 && b == 0) return true;
    if (a == 0 && (b == 1 || b == -1)) return true;
    if (b == 0 && (a == 1 || a == -1)) return true;
    if (a == 1 && b == 1) return true;
    if (a == -1 && b == -1) return true;
    return false;
}

} // namespace

FacepopperReport facepopper_condition(const std::vector<std::vector<Int>>& B, int beta) {
    if (beta < 1) throw input_error("beta must be >= 1");
    FacepopperReport rep;
    rep.B = B;
    rep.beta = beta;

    const std::size_t k = B.empty() ? 0 : B[0].size();
    if (k == 0 || B.empty()) {
        rep.verdict = FacepopperVerdict::Holds;
        rep.reason = "no recoverable coordinates: real and integer feasibility coincide";
        return rep;
    }

    // Distinct nonzero rows are the only constraints that involve y.
    std::set<std::vector<Int>> distinct;
    for (const auto& row : B) {
        bool zero = true;
        for (const Int& v : row)
            if (v != 0) zero = false;
        if (!zero) distinct.insert(row);
    }

    if (k == 1) {
        bool unit = true;
        for (const auto& row : distinct)
            if (row[0] != 1 && row[0] != -1) unit = false;
        if (unit) {
            rep.verdict = FacepopperVerdict::Holds;
            rep.reason = "single column with entries in {0,+-1}: the system is an "
                         "integer-endpoint interval";
            return rep;
        }
    }
    if (k == 2) {
        bool pattern = true;
        for (const auto& row : distinct)
            if (!two_column_pattern(row)) pattern = false;
        if (pattern) {
            rep.verdict = FacepopperVerdict::Holds;
            rep.reason = "two columns with rows in {(0,0),+-(0,1),+-(1,0),+-(1,1)}";
            return rep;
        }
    }

    // Bounded brute force over right-hand sides.
    std::vector<std::vector<Int>> rows(distinct.begin(), distinct.end());
    const std::size_t m = rows.size();
    if (m == 0) {
        rep.verdict = FacepopperVerdict::Holds;
        rep.reason = "zero matrix";
        return rep;
    }
    double space = 1;
    for (std::size_t i = 0; i < m; ++i) space *= 2 * beta + 1;
    if (space > 300000.0) {
        rep.verdict = FacepopperVerdict::Inconclusive;
        rep.reason = "right-hand-side search space exceeds the desk-scale budget";
        return rep;
    }

    lp::Matrix Bq(m, lp::Vector(k));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) Bq[i][j] = Rat(rows[i][j]);

    std::vector<Int> b(m, -beta);
    bool unresolved = false;
    while (true) {
        ++rep.tested;
        lp::Vector bq(m);
        for (std::size_t i = 0; i < m; ++i) bq[i] = Rat(b[i]);

        // real feasibility + integer bounding box, one coordinate at a time
        bool real_feasible = true;
        bool box_bounded = true;
        std::vector<Int> lo(k), hi(k);
        for (std::size_t j = 0; j < k && real_feasible; ++j) {
            lp::VarBounds vb = lp::variable_bounds(Bq, bq, j);
            if (!vb.feasible) {
                real_feasible = false;
                break;
            }
            if (!vb.lower || !vb.upper) {
                // clamp a generous search window; resolved only if a point
                // is found inside it
                box_bounded = false;
                Int w = Int(beta) * Int(static_cast<long>(m + k)) + 8;
                lo[j] = vb.lower ? rat_ceil(*vb.lower) : -w;
                hi[j] = vb.upper ? rat_floor(*vb.upper) : w;
            } else {
                lo[j] = rat_ceil(*vb.lower);
                hi[j] = rat_floor(*vb.upper);
            }
        }
        if (real_feasible) {
            bool found = false;
            bool box_nonempty = true;
            for (std::size_t j = 0; j < k; ++j)
                if (lo[j] > hi[j]) box_nonempty = false;
            if (box_nonempty) {
                std::vector<Int> y(lo);
                while (true) {
                    bool sat = true;
                    for (std::size_t i = 0; i < m && sat; ++i) {
                        Int s = 0;
                        for (std::size_t j = 0; j < k; ++j) s += rows[i][j] * y[j];
                        if (s < b[i]) sat = false;
                    }
                    if (sat) {
                        found = true;
                        break;
                    }
                    std::size_t j = k;
                    while (j-- > 0) {
                        if (y[j] < hi[j]) {
                            ++y[j];
                            for (std::size_t q = j + 1; q < k; ++q) y[q] = lo[q];
                            break;
                        }
                        if (j == 0) {
                            j = SIZE_MAX;
                            break;
                        }
                    }
                    if (j == SIZE_MAX) break;
                }
            }
            if (!found) {
                if (box_bounded) {
                    rep.verdict = FacepopperVerdict::Fails;
                    rep.reason = "real-feasible right-hand side with no integral solution";
                    // expand the witness to the original row order
                    rep.witness_b.clear();
                    std::map<std::vector<Int>, Int> by_row;
                    for (std::size_t i = 0; i < m; ++i) by_row[rows[i]] = b[i];
                    for (const auto& row : B) {
                        bool zero = true;
                        for (const Int& v : row)
                            if (v != 0) zero = false;
                        rep.witness_b.push_back(zero ? Int(0) : by_row[row]);
                    }
                    return rep;
                }
                unresolved = true;
            }
        }

        std::size_t i = m;
        while (i-- > 0) {
            if (b[i] < beta) {
                ++b[i];
                for (std::size_t q = i + 1; q < m; ++q) b[q] = -beta;
                break;
            }
            if (i == 0) {
                i = SIZE_MAX;
                break;
            }
        }
        if (i == SIZE_MAX) break;
    }

    rep.verdict = FacepopperVerdict::Inconclusive;
    rep.reason = unresolved
                     ? "an unbounded instance could not be settled by the clamped search"
                     : "no gap found for |b| <= beta, but no structural guarantee applies";
    return rep;
}

} // namespace marsem
