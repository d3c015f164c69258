#include "marsem/inequality.hpp"
#include "marsem/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace marsem {

void LinearInequality::normalize() {
    Int g = 0;
    for (const Int& c : coeffs) g = boost::multiprecision::gcd(g, c);
    if (g > 1)
        for (Int& c : coeffs) c /= g;
}

bool LinearInequality::is_zero() const {
    for (const Int& c : coeffs)
        if (c != 0) return false;
    return true;
}

Rat evaluate(const LinearInequality& ineq, const ReducedMarginalVector& x) {
    if (ineq.coeffs.size() != x.coords().size())
        throw input_error("inequality and vector live in different coordinate spaces");
    Rat s = 0;
    for (std::size_t i = 0; i < ineq.coeffs.size(); ++i)
        if (ineq.coeffs[i] != 0) s += Rat(ineq.coeffs[i]) * x.coords()[i];
    return s;
}

std::vector<std::vector<Edge>> enumerate_cycles(const Graph& g) {
    if (g.vertices().size() > 12)
        throw guard_error("cycle enumeration is limited to 12 vertices");
    std::vector<std::vector<Edge>> cycles;
    const auto& vs = g.vertices();

    // Each cycle is rooted at its smallest vertex; the path's second vertex
    // is kept below its last vertex, so each cycle appears exactly once.
    std::vector<Vertex> path;
    std::vector<char> used(vs.size(), 0);
    auto idx = [&](Vertex v) {
        return static_cast<std::size_t>(
            std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
    };
    auto rec = [&](auto&& self, Vertex root, Vertex cur) -> void {
        for (Vertex nxt : g.neighbors(cur)) {
            if (nxt == root && path.size() >= 3 && path[1] < path.back()) {
                std::vector<Edge> cyc;
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    cyc.push_back(make_edge(path[i], path[i + 1]));
                cyc.push_back(make_edge(path.back(), root));
                std::sort(cyc.begin(), cyc.end());
                cycles.push_back(std::move(cyc));
                continue;
            }
            if (nxt <= root || used[idx(nxt)]) continue;
            used[idx(nxt)] = 1;
            path.push_back(nxt);
            self(self, root, nxt);
            path.pop_back();
            used[idx(nxt)] = 0;
        }
    };
    for (Vertex root : vs) {
        path.assign(1, root);
        std::fill(used.begin(), used.end(), 0);
        used[idx(root)] = 1;
        rec(rec, root, root);
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return cycles;
}

namespace {

SpacePtr binary_graph_space(const Graph& g, const TableShape& shape, const char* what) {
    if (!shape.is_binary())
        throw unsupported_error(std::string(what) + " requires a binary shape");
    SimplicialComplex c = g.edge_complex();
    return make_space(std::move(c),
                      validated_shape(shape.sizes, g.vertices().size()));
}

std::size_t coord(const MarginalSpace& sp, const Face& f) {
    std::size_t id = sp.face_id(f);
    return sp.reduced_offset(id); // binary: single reduced index (1,...,1)
}

} // namespace

InequalitySystem box_inequalities(const Graph& g) {
    return box_inequalities(g, TableShape{std::vector<int>(g.vertices().size(), 2)});
}

InequalitySystem box_inequalities(const Graph& g, const TableShape& shape) {
    SpacePtr sp = binary_graph_space(g, shape, "box_inequalities");
    InequalitySystem sys{sp, {}};
    const std::size_t dim = sp->reduced_dim();
    const std::size_t c0 = coord(*sp, {});
    for (const Edge& e : g.edges()) {
        std::size_t cj = coord(*sp, {e.first});
        std::size_t ck = coord(*sp, {e.second});
        std::size_t cjk = coord(*sp, {e.first, e.second});
        LinearInequality r1{std::vector<Int>(dim, 0)};
        r1.coeffs[cjk] = 1;
        LinearInequality r2{std::vector<Int>(dim, 0)};
        r2.coeffs[cj] = 1;
        r2.coeffs[cjk] = -1;
        LinearInequality r3{std::vector<Int>(dim, 0)};
        r3.coeffs[ck] = 1;
        r3.coeffs[cjk] = -1;
        LinearInequality r4{std::vector<Int>(dim, 0)};
        r4.coeffs[c0] = 1;
        r4.coeffs[cj] = -1;
        r4.coeffs[ck] = -1;
        r4.coeffs[cjk] = 1;
        for (auto* r : {&r1, &r2, &r3, &r4}) {
            r->normalize();
            sys.rows.push_back(std::move(*r));
        }
    }
    return sys;
}

InequalitySystem cycle_inequalities(const Graph& g) {
    return cycle_inequalities(g, TableShape{std::vector<int>(g.vertices().size(), 2)});
}

InequalitySystem cycle_inequalities(const Graph& g, const TableShape& shape) {
    SpacePtr sp = binary_graph_space(g, shape, "cycle_inequalities");
    InequalitySystem sys{sp, {}};
    const std::size_t dim = sp->reduced_dim();
    const std::size_t c0 = coord(*sp, {});

    for (const auto& cyc : enumerate_cycles(g)) {
        const std::size_t len = cyc.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
            std::size_t osize = static_cast<std::size_t>(std::popcount(mask));
            if (osize % 2 == 0) continue;
            LinearInequality row{std::vector<Int>(dim, 0)};
            std::set<Vertex> vo, vc;
            for (std::size_t i = 0; i < len; ++i) {
                const Edge& e = cyc[i];
                std::size_t ce = coord(*sp, {e.first, e.second});
                if (mask & (std::size_t{1} << i)) {
                    row.coeffs[ce] += 1;
                    vo.insert(e.first);
                    vo.insert(e.second);
                } else {
                    row.coeffs[ce] -= 1;
                    vc.insert(e.first);
                    vc.insert(e.second);
                }
            }
            for (Vertex v : vo) row.coeffs[coord(*sp, {v})] -= 1;
            for (Vertex v : vc) row.coeffs[coord(*sp, {v})] += 1;
            row.coeffs[c0] += Int((osize - 1) / 2);
            row.normalize();
            sys.rows.push_back(std::move(row));
        }
    }
    return sys;
}

InequalitySystem facet_system(const Graph& g) {
    InequalitySystem sys = box_inequalities(g);
    InequalitySystem cyc = cycle_inequalities(g);
    for (auto& row : cyc.rows) sys.rows.push_back(std::move(row));
    return sys;
}

} // namespace marsem
