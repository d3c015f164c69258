#include "marsem/lp.hpp"
#include "marsem/errors.hpp"

namespace marsem::lp {

namespace {

// Fraction-free simplex: the tableau stores det(B) * B^-1 * [A | I | b]
// as integers with the positive scalar denom = det(B). Entries stay
// integral under pivoting (adjugate identity), divisions are exact, and
// every comparison the algorithm needs is scale-invariant.
struct Tableau {
    std::size_t m, n, width; // width = n + original row count
    std::vector<std::vector<Int>> t;
    std::vector<Int> rhs;
    Int denom = 1;
    std::vector<std::size_t> basis;
    std::vector<bool> flipped;  // original row signs
    std::vector<Rat> row_scale; // original row i was multiplied by this (> 0)

    Tableau(const Matrix& A, const Vector& b) : m(A.size()), n(m ? A[0].size() : 0) {
        width = n + m;
        t.assign(m, std::vector<Int>(width, Int(0)));
        rhs.resize(m);
        basis.resize(m);
        flipped.assign(m, false);
        row_scale.assign(m, Rat(1));
        for (std::size_t i = 0; i < m; ++i) {
            bool neg = b[i] < 0;
            flipped[i] = neg;
            Int lcm = denominator(b[i]);
            for (std::size_t j = 0; j < n; ++j)
                lcm = boost::multiprecision::lcm(lcm, denominator(A[i][j]));
            row_scale[i] = Rat(lcm);
            const Rat s = neg ? Rat(-lcm) : Rat(lcm);
            rhs[i] = numerator(Rat(b[i] * s));
            for (std::size_t j = 0; j < n; ++j) t[i][j] = numerator(Rat(A[i][j] * s));
            t[i][n + i] = 1;
            basis[i] = n + i;
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Int p = t[row][col];
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const Int f = t[i][col];
            for (std::size_t j = 0; j < width; ++j) {
                Int v = p * t[i][j] - f * t[row][j];
                t[i][j] = v / denom; // exact by the adjugate identity
            }
            Int v = p * rhs[i] - f * rhs[row];
            rhs[i] = v / denom;
        }
        basis[row] = col;
        denom = p;
        if (denom < 0) {
            // only drive-out pivots can be negative; renormalize so every
            // sign test keeps assuming denom > 0
            denom = -denom;
            for (std::size_t i = 0; i < m; ++i) {
                for (Int& v : t[i]) v = -v;
                rhs[i] = -rhs[i];
            }
        }
    }

    // One simplex run over columns [0, limit) for integer costs.
    // Returns false when unbounded (ray written when requested).
    bool minimize(const std::vector<Int>& cost, std::size_t limit, Vector* ray) {
        std::vector<char> is_basic(width, 0);
        while (true) {
            std::fill(is_basic.begin(), is_basic.end(), 0);
            for (std::size_t i = 0; i < m; ++i) is_basic[basis[i]] = 1;

            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (is_basic[j]) continue;
                // denom * reduced cost
                Int rc = denom * cost[j];
                for (std::size_t i = 0; i < m; ++i) {
                    if (cost[basis[i]] == 0 || t[i][j] == 0) continue;
                    rc -= cost[basis[i]] * t[i][j];
                }
                if (rc < 0) {
                    enter = j;
                    break; // Bland: smallest eligible index
                }
            }
            if (enter == limit) return true;

            std::size_t leave = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                if (leave == m) {
                    leave = i;
                    continue;
                }
                // rhs[i]/t[i][enter] vs rhs[leave]/t[leave][enter]
                Int lhs = rhs[i] * t[leave][enter];
                Int rhs_ = rhs[leave] * t[i][enter];
                if (lhs < rhs_ || (lhs == rhs_ && basis[i] < basis[leave])) leave = i;
            }
            if (leave == m) {
                if (ray) {
                    ray->assign(limit, Rat(0));
                    (*ray)[enter] = 1;
                    for (std::size_t i = 0; i < m; ++i)
                        if (basis[i] < limit)
                            (*ray)[basis[i]] = Rat(-t[i][enter], denom);
                }
                return false;
            }
            pivot(leave, enter);
        }
    }

    Rat objective(const std::vector<Int>& cost) const {
        Int z = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (cost[basis[i]] != 0) z += cost[basis[i]] * rhs[i];
        return Rat(z, denom);
    }

    Vector primal() const {
        Vector x(n, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = Rat(rhs[i], denom);
        return x;
    }

    // y = c_B B^-1 against the original (unflipped, unscaled) rows.
    // Valid only before rows are erased.
    Vector duals(const std::vector<Int>& cost) const {
        Vector y(m, Rat(0));
        for (std::size_t j = 0; j < m; ++j) {
            Int v = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (cost[basis[i]] != 0) v += cost[basis[i]] * t[i][n + j];
            Rat q(v, denom);
            q *= row_scale[j];
            if (flipped[j]) q = -q;
            y[j] = q;
        }
        return y;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m;) {
            if (basis[i] < n) {
                ++i;
                continue;
            }
            std::size_t col = width;
            for (std::size_t j = 0; j < n; ++j)
                if (t[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col < n) {
                pivot(i, col);
                ++i;
            } else {
                t.erase(t.begin() + static_cast<long>(i));
                rhs.erase(rhs.begin() + static_cast<long>(i));
                basis.erase(basis.begin() + static_cast<long>(i));
                --m;
            }
        }
    }
};

// Integerize a rational cost vector by a positive scalar.
std::vector<Int> scale_costs(const Vector& c, std::size_t width, Rat& scale) {
    Int lcm = 1;
    for (const Rat& q : c) lcm = boost::multiprecision::lcm(lcm, denominator(q));
    scale = Rat(lcm);
    std::vector<Int> out(width, Int(0));
    for (std::size_t j = 0; j < c.size(); ++j) out[j] = numerator(Rat(c[j] * scale));
    return out;
}

} // namespace

Result solve(const Matrix& A, const Vector& b, const Vector& c) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : c.size();
    for (const auto& row : A)
        if (row.size() != n) throw internal_error("lp: ragged matrix");
    if (b.size() != m || c.size() != n) throw internal_error("lp: size mismatch");

    Result out;
    if (m == 0) {
        for (std::size_t j = 0; j < n; ++j) {
            if (c[j] < 0) {
                out.status = Status::Unbounded;
                out.ray.assign(n, Rat(0));
                out.ray[j] = 1;
                return out;
            }
        }
        out.status = Status::Optimal;
        out.objective = 0;
        out.x.assign(n, Rat(0));
        return out;
    }

    Tableau tab(A, b);

    std::vector<Int> phase1(tab.width, Int(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
    tab.minimize(phase1, n, nullptr); // artificials never re-enter
    if (tab.objective(phase1) > 0) {
        out.status = Status::Infeasible;
        out.farkas = tab.duals(phase1);
        return out;
    }
    tab.drive_out_artificials();

    Rat cost_scale(1);
    std::vector<Int> cost = scale_costs(c, tab.width, cost_scale);
    Vector ray;
    if (!tab.minimize(cost, n, &ray)) {
        out.status = Status::Unbounded;
        out.ray = std::move(ray);
        return out;
    }
    out.status = Status::Optimal;
    out.x = tab.primal();
    out.objective = tab.objective(cost) / cost_scale;
    return out;
}

Feasibility feasibility(const Matrix& A, const Vector& b) {
    const std::size_t n = A.empty() ? 0 : A[0].size();
    Result r = solve(A, b, Vector(n, Rat(0)));
    Feasibility f;
    if (r.status == Status::Optimal) {
        f.feasible = true;
        f.x = std::move(r.x);
    } else {
        f.feasible = false;
        f.farkas = std::move(r.farkas);
    }
    return f;
}

VarBounds variable_bounds(const Matrix& B, const Vector& b, std::size_t j) {
    // y free, B y >= b  ==>  y = u - w, slack s:  B u - B w - s = b.
    const std::size_t m = B.size();
    const std::size_t k = m ? B[0].size() : j + 1;
    Matrix A(m, Vector(2 * k + m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t q = 0; q < k; ++q) {
            A[i][q] = B[i][q];
            A[i][k + q] = -B[i][q];
        }
        A[i][2 * k + i] = -1;
    }
    VarBounds out;
    Vector c(2 * k + m, Rat(0));

    c[j] = 1;
    c[k + j] = -1;
    Result lo = solve(A, b, c);
    if (lo.status == Status::Infeasible) return out;
    out.feasible = true;
    if (lo.status == Status::Optimal) out.lower = lo.objective;

    c[j] = -1;
    c[k + j] = 1;
    Result hi = solve(A, b, c);
    if (hi.status == Status::Optimal) out.upper = -hi.objective;
    return out;
}

} // namespace marsem::lp
