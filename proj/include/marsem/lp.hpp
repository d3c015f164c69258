#pragma once

#include "marsem/numeric.hpp"

#include <optional>
#include <vector>

namespace marsem::lp {

using Vector = std::vector<Rat>;
using Matrix = std::vector<Vector>; // row major

enum class Status { Optimal, Infeasible, Unbounded };

/// min c.x  subject to  A x = b, x >= 0. Exact rational primal simplex,
/// Bland's rule (termination guaranteed), two phases.
struct Result {
    Status status = Status::Infeasible;
    Rat objective;
    Vector x;      // Optimal: primal solution
    Vector farkas; // Infeasible: y with y.col <= 0 for every column, y.b > 0
    Vector ray;    // Unbounded: d >= 0, A d = 0, c.d < 0
};

Result solve(const Matrix& A, const Vector& b, const Vector& c);

struct Feasibility {
    bool feasible = false;
    Vector x;
    Vector farkas;
};

/// Does {x >= 0 : A x = b} contain a point? Certificates both ways.
Feasibility feasibility(const Matrix& A, const Vector& b);

/// Exact bounds of coordinate j over the polyhedron {y free : B y >= b}.
/// Empty optional = unbounded on that side; Infeasible reported separately.
struct VarBounds {
    bool feasible = false;
    std::optional<Rat> lower, upper;
};

VarBounds variable_bounds(const Matrix& B, const Vector& b, std::size_t j);

} // namespace marsem::lp
