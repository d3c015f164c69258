#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "marsem/errors.hpp"
#include "marsem/facets.hpp"

#include "test_util.hpp"

using namespace marsem;

namespace {

Graph k(int n) {
    std::vector<Edge> es;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) es.emplace_back(a, b);
    std::vector<Vertex> vs;
    for (int v = 1; v <= n; ++v) vs.push_back(v);
    return Graph::from_edges(vs, es);
}

Graph cycle(int n) {
    std::vector<Edge> es;
    for (int a = 1; a <= n; ++a) es.push_back(make_edge(a, a % n + 1));
    return Graph::from_edges({}, es);
}

std::vector<ReducedMarginalVector> reduced_gens(const SpacePtr& sp) {
    std::vector<ReducedMarginalVector> out;
    for (const auto& g : generators(sp)) out.push_back(reduce_coords(g));
    return out;
}

Int coeff_at(const InequalitySystem& sys, std::size_t row, const Face& f) {
    const MarginalSpace& sp = *sys.space;
    std::size_t id = sp.face_id(f);
    return sys.rows[row].coeffs[sp.reduced_offset(id)];
}

} // namespace

TEST_CASE("box inequalities of a single edge match the quoted system") {
    Graph e = Graph::from_edges({}, {{1, 2}});
    InequalitySystem sys = box_inequalities(e);
    REQUIRE(sys.rows.size() == 4);
    // p^{12} >= 0
    CHECK(coeff_at(sys, 0, {1, 2}) == 1);
    CHECK(coeff_at(sys, 0, {1}) == 0);
    // p^1 - p^{12} >= 0
    CHECK(coeff_at(sys, 1, {1}) == 1);
    CHECK(coeff_at(sys, 1, {1, 2}) == -1);
    // p^2 - p^{12} >= 0
    CHECK(coeff_at(sys, 2, {2}) == 1);
    CHECK(coeff_at(sys, 2, {1, 2}) == -1);
    // p^0 - p^1 - p^2 + p^{12} >= 0
    CHECK(coeff_at(sys, 3, {}) == 1);
    CHECK(coeff_at(sys, 3, {1}) == -1);
    CHECK(coeff_at(sys, 3, {2}) == -1);
    CHECK(coeff_at(sys, 3, {1, 2}) == 1);

    CHECK(box_inequalities(k(3)).rows.size() == 12);
    CHECK(box_inequalities(Graph::from_edges({1, 2}, {})).rows.empty());
    CHECK_THROWS_AS(box_inequalities(e, TableShape{{2, 3}}), unsupported_error);
}

TEST_CASE("cycle enumeration") {
    CHECK(enumerate_cycles(k(3)).size() == 1);
    CHECK(enumerate_cycles(cycle(4)).size() == 1);
    CHECK(enumerate_cycles(k(4)).size() == 7); // 4 triangles + 3 squares
    CHECK(enumerate_cycles(Graph::parse_text("1 2\n2 3\n")).empty());

    auto cycles = enumerate_cycles(k(4));
    for (std::size_t i = 0; i < 4; ++i) CHECK(cycles[i].size() == 3);
    for (std::size_t i = 4; i < 7; ++i) CHECK(cycles[i].size() == 4);

    std::vector<Edge> big;
    for (int v = 1; v <= 13; ++v) big.push_back(make_edge(v, v % 13 + 1));
    CHECK_THROWS_AS(enumerate_cycles(Graph::from_edges({}, big)), guard_error);
}

TEST_CASE("cycle inequalities: triangle coefficients and validity") {
    Graph tri = k(3);
    InequalitySystem sys = cycle_inequalities(tri);
    REQUIRE(sys.rows.size() == 4); // odd subsets of sizes 1 and 3

    // locate the all-O row: p^{12}+p^{13}+p^{23} - p^1 - p^2 - p^3 + p^0 >= 0
    std::size_t all_o = sys.rows.size();
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        if (coeff_at(sys, r, {}) == 1) all_o = r;
    REQUIRE(all_o < sys.rows.size());
    CHECK(coeff_at(sys, all_o, {1, 2}) == 1);
    CHECK(coeff_at(sys, all_o, {1, 3}) == 1);
    CHECK(coeff_at(sys, all_o, {2, 3}) == 1);
    CHECK(coeff_at(sys, all_o, {1}) == -1);
    CHECK(coeff_at(sys, all_o, {2}) == -1);
    CHECK(coeff_at(sys, all_o, {3}) == -1);

    // O = {12}: p^{12} - p^{13} - p^{23} + p^3 >= 0 (vertex sums cancel on 1,2)
    std::size_t single = sys.rows.size();
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        if (coeff_at(sys, r, {1, 2}) == 1 && coeff_at(sys, r, {}) == 0 &&
            coeff_at(sys, r, {1, 3}) == -1)
            single = r;
    REQUIRE(single < sys.rows.size());
    CHECK(coeff_at(sys, single, {1}) == 0);
    CHECK(coeff_at(sys, single, {2}) == 0);
    CHECK(coeff_at(sys, single, {3}) == 1);
    CHECK(coeff_at(sys, single, {2, 3}) == -1);

    // literal-formula validity on all 8 generators of the triangle model
    auto gens = reduced_gens(sys.space);
    REQUIRE(gens.size() == 8);
    for (const auto& row : sys.rows)
        for (const auto& g : gens) CHECK(evaluate(row, g) >= 0);

    CHECK(cycle_inequalities(cycle(4)).rows.size() == 8);
    CHECK_THROWS_AS(cycle_inequalities(tri, TableShape{{3, 2, 2}}), unsupported_error);
}

TEST_CASE("evaluate on the triangle all-O inequality") {
    InequalitySystem sys = cycle_inequalities(k(3));
    std::size_t all_o = sys.rows.size();
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        if (coeff_at(sys, r, {}) == 1) all_o = r;
    REQUIRE(all_o < sys.rows.size());

    auto gens = reduced_gens(sys.space);
    // cell (1,1,1) is the first generator, (1,1,2) the second
    CHECK(evaluate(sys.rows[all_o], gens[0]) == 1);
    CHECK(evaluate(sys.rows[all_o], gens[1]) == 0);
    CHECK(evaluate(sys.rows[all_o], ReducedMarginalVector::zero(sys.space)) == 0);

    LinearInequality short_row{std::vector<Int>(3, 0)};
    CHECK_THROWS_AS(evaluate(short_row, gens[0]), input_error);
}

TEST_CASE("cone membership produces verifiable certificates") {
    auto sp = testutil::binary_space_for({{1, 2}, {1, 3}, {2, 3}}, {1, 2, 3});
    auto gens = reduced_gens(sp);

    // a generator is a unit-weight member (the level-1 points are affinely
    // independent, so the representation is unique)
    ConeMembership m = cone_membership_lp(gens[3], gens);
    REQUIRE(m.inside);
    for (std::size_t g = 0; g < gens.size(); ++g)
        CHECK(m.weights[g] == (g == 3 ? 1 : 0));

    // negative sample size cannot be in the cone
    auto neg = ReducedMarginalVector::zero(sp);
    neg.coords()[0] = -1;
    ConeMembership out = cone_membership_lp(neg, gens);
    REQUIRE_FALSE(out.inside);
    // functional verifies by arithmetic
    Rat at_x = 0;
    for (std::size_t i = 0; i < out.functional.size(); ++i)
        at_x += out.functional[i] * neg.coords()[i];
    CHECK(at_x < 0);
    for (const auto& g : gens) {
        Rat at_g = 0;
        for (std::size_t i = 0; i < out.functional.size(); ++i)
            at_g += out.functional[i] * g.coords()[i];
        CHECK(at_g >= 0);
    }

    // the K4 scaled-uniform point lies in the cone
    Graph g4 = k(4);
    auto sp4 = make_binary_space(g4.edge_complex());
    std::vector<Rat> pt(sp4->reduced_dim());
    pt[0] = 4;
    for (std::size_t i = 1; i <= 4; ++i) pt[i] = 2;
    for (std::size_t i = 5; i < pt.size(); ++i) pt[i] = 1;
    CHECK(cone_membership_lp(ReducedMarginalVector(sp4, pt), reduced_gens(sp4)).inside);
}

TEST_CASE("facet certification") {
    // triangle: all 12 box + 4 cycle inequalities are valid facets
    Graph tri = k(3);
    InequalitySystem sys = facet_system(tri);
    auto gens = reduced_gens(sys.space);
    auto reports = certify_facets(sys, gens, sys.space->reduced_dim());
    REQUIRE(reports.size() == 16);
    for (const auto& rep : reports) {
        CHECK(rep.valid);
        CHECK(rep.facet);
        CHECK(rep.tight_rank == sys.space->reduced_dim() - 1);
    }

    // C4: 16 box + 8 cycle inequalities, all valid facets (chordless cycle)
    InequalitySystem sys4 = facet_system(cycle(4));
    auto gens4 = reduced_gens(sys4.space);
    auto reports4 = certify_facets(sys4, gens4, sys4.space->reduced_dim());
    REQUIRE(reports4.size() == 24);
    for (const auto& rep : reports4) {
        CHECK(rep.valid);
        CHECK(rep.facet);
    }

    // a manufactured invalid row is flagged with its witness
    InequalitySystem bad = box_inequalities(tri);
    LinearInequality row{std::vector<Int>(bad.space->reduced_dim(), 0)};
    row.coeffs[0] = -1; // -p^0 >= 0 fails on every generator
    bad.rows.push_back(row);
    auto rep = certify_facets(bad, gens, bad.space->reduced_dim());
    CHECK_FALSE(rep.back().valid);
    CHECK(rep.back().violating_generator.has_value());
}

TEST_CASE("equivalence of H- and V-descriptions at desk scale") {
    CHECK(equivalence_check(facet_system(k(3)), reduced_gens(facet_system(k(3)).space), 3)
              .equivalent);
    CHECK(equivalence_check(facet_system(cycle(4)), reduced_gens(facet_system(cycle(4)).space), 2)
              .equivalent);

    // K4 with only box inequalities misses the cycle cuts
    InequalitySystem boxonly = box_inequalities(k(4));
    auto rep = equivalence_check(boxonly, reduced_gens(boxonly.space), 2);
    CHECK_FALSE(rep.equivalent);
    REQUIRE(rep.witness.has_value());
    // the witness satisfies every box row yet fails LP membership
    for (const auto& row : boxonly.rows) CHECK(evaluate(row, *rep.witness) >= 0);
    CHECK_FALSE(cone_membership_lp(*rep.witness, reduced_gens(boxonly.space)).inside);
}

TEST_CASE("extract_B splits columns at a face") {
    Graph tri = k(3);
    InequalitySystem sys = facet_system(tri);
    BSplit split = extract_B(sys, {1, 2});
    REQUIRE(split.face_cols.size() == 1); // binary edge: one reduced coordinate
    REQUIRE(split.B.size() == sys.rows.size());
    for (const auto& row : split.B) {
        REQUIRE(row.size() == 1);
        CHECK(row[0] >= -1);
        CHECK(row[0] <= 1);
    }
    // rows not mentioning the edge have a zero B entry
    CHECK(split.B[4][0] == 0); // box row of edge {1,3}

    CHECK_THROWS_AS(extract_B(sys, {1, 2, 3}), input_error);

    // a face absent from all rows yields a zero column
    InequalitySystem single = box_inequalities(Graph::from_edges({1, 2, 3}, {{1, 2}}));
    BSplit z = extract_B(single, {3});
    for (const auto& row : z.B) CHECK(row[0] == 0);

    // a synthetic system over [12][134][234] with a 2-coefficient on the
    // p^{134} coordinate lands in B intact
    auto sp = testutil::binary_space_for({{1, 2}, {1, 3, 4}, {2, 3, 4}}, {1, 2, 3, 4});
    InequalitySystem synth{sp, {}};
    LinearInequality row{std::vector<Int>(sp->reduced_dim(), 0)};
    row.coeffs[sp->reduced_offset(sp->face_id({1, 3, 4}))] = 2;
    row.coeffs[0] = 1;
    synth.rows.push_back(row);
    BSplit s2 = extract_B(synth, {1, 3, 4});
    CHECK(s2.B[0][0] == 2);
    CHECK(s2.A[0][0] == 1);
}

TEST_CASE("facepopper structural and brute-force verdicts") {
    using V = FacepopperVerdict;

    // single column of 0/+-1: integer-endpoint interval
    FacepopperReport r1 = facepopper_condition({{Int(1)}, {Int(-1)}, {Int(0)}});
    CHECK(r1.verdict == V::Holds);

    // single column with a 2: half-integer strip gives a gap
    FacepopperReport r2 = facepopper_condition({{Int(2)}, {Int(-2)}});
    CHECK(r2.verdict == V::Fails);
    REQUIRE(r2.witness_b.size() == 2);
    // witness: real-feasible (b1/2 <= -b2/2) with no integer in between
    Rat lo = Rat(r2.witness_b[0], 2), hi = Rat(-r2.witness_b[1], 2);
    CHECK(lo <= hi);
    CHECK(rat_ceil(lo) > rat_floor(hi));

    // the two-column row pattern from shapes (2,4,3)
    FacepopperReport r3 = facepopper_condition({{Int(0), Int(1)},
                                                {Int(1), Int(0)},
                                                {Int(-1), Int(-1)},
                                                {Int(1), Int(1)},
                                                {Int(0), Int(-1)}});
    CHECK(r3.verdict == V::Holds);

    // empty column block: nothing to recover
    CHECK(facepopper_condition({}).verdict == V::Holds);

    CHECK_THROWS_AS(facepopper_condition({{Int(1)}}, 0), input_error);
}

TEST_CASE("two-column pattern claim verified by brute force") {
    // sub-oracle for the structural Holds of the (0,+-1) two-column rows:
    // every b in {-1,0,1}^8 with a real solution has an integral one
    std::vector<std::vector<Int>> rows = {{Int(0), Int(1)},  {Int(0), Int(-1)},
                                          {Int(1), Int(0)},  {Int(-1), Int(0)},
                                          {Int(1), Int(1)},  {Int(-1), Int(-1)}};
    lp::Matrix B(rows.size(), lp::Vector(2));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) B[i][j] = Rat(rows[i][j]);

    std::vector<Int> b(rows.size(), -1);
    long real_count = 0;
    while (true) {
        lp::Vector bq(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) bq[i] = Rat(b[i]);
        auto vb0 = lp::variable_bounds(B, bq, 0);
        if (vb0.feasible) {
            ++real_count;
            auto vb1 = lp::variable_bounds(B, bq, 1);
            REQUIRE(vb0.lower.has_value());
            REQUIRE(vb0.upper.has_value());
            bool found = false;
            for (Int y0 = rat_ceil(*vb0.lower); y0 <= rat_floor(*vb0.upper) && !found; ++y0)
                for (Int y1 = rat_ceil(*vb1.lower); y1 <= rat_floor(*vb1.upper) && !found; ++y1) {
                    bool sat = true;
                    for (std::size_t i = 0; i < rows.size() && sat; ++i)
                        if (rows[i][0] * y0 + rows[i][1] * y1 < b[i]) sat = false;
                    if (sat) found = true;
                }
            CHECK(found);
        }
        std::size_t i = rows.size();
        bool done = true;
        while (i-- > 0) {
            if (b[i] < 1) {
                ++b[i];
                for (std::size_t q = i + 1; q < rows.size(); ++q) b[q] = -1;
                done = false;
                break;
            }
            if (i == 0) break;
        }
        if (done) break;
    }
    CHECK(real_count > 50);
}
