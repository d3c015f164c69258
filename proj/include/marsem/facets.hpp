#pragma once

#include "marsem/inequality.hpp"
#include "marsem/lp.hpp"

#include <optional>
#include <string>

namespace marsem {

/// Decision for x in cone(gens), certified either way: nonnegative weights
/// with sum w_g g = x, or a functional with c.g >= 0 for all generators and
/// c.x < 0. Exactly one side is populated; both verify by direct arithmetic.
struct ConeMembership {
    bool inside = false;
    std::vector<Rat> weights;
    std::vector<Rat> functional;
};

ConeMembership cone_membership_lp(const ReducedMarginalVector& x,
                                  const std::vector<ReducedMarginalVector>& gens);

/// Reusable membership oracle over a fixed generator list.
class ConeOracle {
public:
    explicit ConeOracle(std::vector<ReducedMarginalVector> gens);
    ConeMembership check(const ReducedMarginalVector& x) const;
    const std::vector<ReducedMarginalVector>& gens() const { return gens_; }

private:
    std::vector<ReducedMarginalVector> gens_;
    lp::Matrix matrix_; // rows = coordinates, cols = generators
};

struct FacetReport {
    bool valid = false;
    std::optional<std::size_t> violating_generator;
    std::size_t tight_count = 0;
    std::size_t tight_rank = 0;
    bool facet = false; // valid and tight generators span dim-1
};

/// Validity (>= 0 on every generator) and facet status (rank of the tight
/// generator set) per inequality. gens must span a dim-dimensional space.
std::vector<FacetReport> certify_facets(const InequalitySystem& sys,
                                        const std::vector<ReducedMarginalVector>& gens,
                                        std::size_t dim);

struct EquivalenceReport {
    bool equivalent = false;
    std::optional<ReducedMarginalVector> witness;
    std::string detail;
};

/// Lattice-level H/V agreement inside the box: over integer points with
/// 0 <= p^0 <= bound and all coordinates in [0, p^0], satisfying every row
/// of sys must coincide with LP membership in cone(gens).
EquivalenceReport equivalence_check(const InequalitySystem& sys,
                                    const std::vector<ReducedMarginalVector>& gens,
                                    const Int& bound);

/// Column split of a system at a face: B carries the coefficients on the
/// face's own reduced coordinates, A the rest. Row order preserved.
struct BSplit {
    std::vector<std::size_t> face_cols;
    std::vector<std::vector<Int>> B;
    std::vector<std::vector<Int>> A;
};

BSplit extract_B(const InequalitySystem& sys, const Face& f);

enum class FacepopperVerdict { Holds, Fails, Inconclusive };

/// Whether "By >= b real-feasible implies integer-feasible for every
/// integral b" can be certified for this B.
struct FacepopperReport {
    Face face; // context, filled by callers that track it
    std::vector<std::vector<Int>> B;
    FacepopperVerdict verdict = FacepopperVerdict::Inconclusive;
    std::string reason;
    std::vector<Int> witness_b; // Fails: real-feasible rhs with no integer point
    int beta = 0;
    unsigned long long tested = 0;
};

/// Holds structurally for a single column over {0,+-1} (integer interval)
/// and for two columns whose rows all lie in {(0,0), +-(0,1), +-(1,0),
/// +-(1,1)}. Otherwise a bounded brute force over integral b with entries
/// in [-beta, beta] compares LP feasibility against exhaustive integer
/// search; an honest Inconclusive is returned when neither structure nor
/// the search settles it.
FacepopperReport facepopper_condition(const std::vector<std::vector<Int>>& B, int beta = 3);

std::string to_string(FacepopperVerdict v);

} // namespace marsem
