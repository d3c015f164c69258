#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "marsem/decomposition.hpp"
#include "marsem/errors.hpp"
#include "marsem/facets.hpp"
#include "marsem/inequality.hpp"
#include "marsem/minors.hpp"

#include "test_util.hpp"

#include <set>

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

Graph wheel4() {
    Graph g = cycle(4);
    for (int a = 1; a <= 4; ++a) g = g.with_edge(a, 5);
    return g;
}

Graph random_graph(std::mt19937& rng, int n, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> es;
    std::vector<Vertex> vs;
    for (int v = 1; v <= n; ++v) vs.push_back(v);
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (coin(rng)) es.emplace_back(a, b);
    return Graph::from_edges(vs, es);
}

} // namespace

TEST_CASE("graph basics and text format") {
    Graph g = Graph::parse_text("vertices: 7\n1 2\n2 3\n");
    CHECK(g.vertices() == std::vector<Vertex>{1, 2, 3, 7});
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(1, 3));
    CHECK(g.degree(7) == 0);
    Graph again = Graph::parse_text(g.to_text());
    CHECK(again == g);
    CHECK_THROWS_AS(Graph::parse_text("1 1\n"), input_error);
    CHECK_THROWS_AS(Graph::parse_text("1 2 3\n"), input_error);

    auto c = g.edge_complex();
    CHECK(c.has_face({1, 2}));
    CHECK(c.has_face({7}));
    CHECK_FALSE(c.has_face({1, 3}));
    CHECK(Graph::from_complex(c) == g);
}

TEST_CASE("delete_vertex") {
    auto tri = build_complex({{1, 2}, {1, 3}, {2, 3}}, {1, 2, 3});
    auto d = delete_vertex(tri, 3);
    CHECK(d == build_complex({{1, 2}}, {1, 2}));

    auto iso = build_complex({{1, 2}}, {1, 2, 3});
    auto d2 = delete_vertex(iso, 3);
    CHECK(d2.faces() == build_complex({{1, 2}}, {1, 2}).faces());

    auto k4c = k(4).edge_complex();
    CHECK(delete_vertex(k4c, 2) ==
          build_complex({{1, 3}, {1, 4}, {3, 4}}, {1, 3, 4}));
    CHECK_THROWS_AS(delete_vertex(tri, 9), input_error);
}

TEST_CASE("contract_edge") {
    auto path = build_complex({{1, 2}, {2, 3}}, {1, 2, 3});
    TableShape binary{{2, 2, 2}};
    auto [c, shape] = contract_edge(path, {2, 3}, binary);
    CHECK(c.ground() == std::vector<Vertex>{1, 4});
    CHECK(c.facets() == std::vector<Face>{{1, 4}});
    CHECK(shape.sizes == std::vector<int>{2, 2});

    TableShape mixed{{3, 2, 4}};
    auto [c2, shape2] = contract_edge(path, {2, 3}, mixed);
    CHECK(shape2.sizes == std::vector<int>{3, 2}); // r_v = min(2, 4)
    (void)c2;

    auto edge = build_complex({{1, 2}}, {1, 2});
    auto [c3, shape3] = contract_edge(edge, {2}, TableShape{{2, 3}});
    CHECK(c3 == build_complex({{1, 3}}, {1, 3})); // vertex 2 relabeled to 3
    CHECK(shape3.sizes == std::vector<int>{2, 3});

    CHECK_THROWS_AS(contract_edge(path, {1, 3}, binary), input_error);
}

TEST_CASE("elimination recognizes treewidth <= 2") {
    CHECK_FALSE(is_k4_minor_free(k(4)));
    CHECK_FALSE(is_k4_minor_free(k(5)));
    CHECK(is_k4_minor_free(cycle(3)));
    CHECK(is_k4_minor_free(cycle(4)));
    CHECK(is_k4_minor_free(cycle(7)));
    CHECK(is_k4_minor_free(Graph::parse_text("1 2\n2 3\n3 4\n2 5\n")));
    CHECK(is_k4_minor_free(k(4).without_edge(1, 2)));
    CHECK_FALSE(is_k4_minor_free(wheel4()));

    auto e = eliminate_tw2(cycle(4));
    CHECK(e.minor_free);
    CHECK(e.order.size() == 4);
    CHECK(e.fill_edges.size() == 1);
}

TEST_CASE("branch sets: K4, C4, W4") {
    auto b = find_k4_branch_sets(k(4));
    REQUIRE(b.has_value());
    CHECK(valid_branch_sets(k(4), *b));
    for (const auto& part : *b) CHECK(part.size() == 1);

    CHECK_FALSE(find_k4_branch_sets(cycle(4)).has_value());

    auto w = find_k4_branch_sets(wheel4());
    REQUIRE(w.has_value());
    CHECK(valid_branch_sets(wheel4(), *w));
}

TEST_CASE("elimination agrees with exhaustive branch-set search") {
    // all graphs on 4 labeled vertices, then random graphs on 5..7
    for (unsigned mask = 0; mask < 64; ++mask) {
        std::vector<Edge> es;
        int bit = 0;
        for (int a = 1; a <= 4; ++a)
            for (int b = a + 1; b <= 4; ++b) {
                if (mask & (1u << bit)) es.emplace_back(a, b);
                ++bit;
            }
        Graph g = Graph::from_edges({1, 2, 3, 4}, es);
        CHECK(is_k4_minor_free(g) == !find_k4_branch_sets(g).has_value());
    }
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 5 + trial % 3;
        Graph g = random_graph(rng, n);
        auto b = find_k4_branch_sets(g);
        CHECK(is_k4_minor_free(g) == !b.has_value());
        if (b) CHECK(valid_branch_sets(g, *b));
    }
}

TEST_CASE("minor sequence replays to the K4 edge complex") {
    auto ops_k4 = minor_sequence_to_k4(k(4), *find_k4_branch_sets(k(4)));
    CHECK(ops_k4.empty());

    auto b5 = find_k4_branch_sets(k(5));
    REQUIRE(b5.has_value());
    auto ops_k5 = minor_sequence_to_k4(k(5), *b5);
    CHECK(ops_k5.size() == 1);
    CHECK(std::holds_alternative<DeleteVertex>(ops_k5[0]));

    for (const Graph& g : {wheel4(), k(5), k(6), k(4)}) {
        auto b = find_k4_branch_sets(g);
        REQUIRE(b.has_value());
        auto ops = minor_sequence_to_k4(g, *b);
        auto space = make_binary_space(g.edge_complex());
        auto final_space = apply_ops(space, ops);
        CHECK(k4_complex_isomorphism(final_space->complex()).has_value());
        for (const MinorOp& op : ops) CHECK_FALSE(std::holds_alternative<DeleteEdge>(op));
    }

    BranchSets bad{{{1}, {2}, {3}, {3}}};
    CHECK_THROWS_AS(minor_sequence_to_k4(k(4), bad), input_error);
}

TEST_CASE("chordal completion") {
    auto h = chordal_completion_tw2(cycle(4));
    CHECK(h.edges().size() == 5);
    CHECK(is_chordal(h));
    CHECK(max_clique_size(h) == 3);

    Graph tree = Graph::parse_text("1 2\n2 3\n2 4\n");
    CHECK(chordal_completion_tw2(tree) == tree);
    CHECK(chordal_completion_tw2(cycle(3)) == cycle(3));
    CHECK_THROWS_AS(chordal_completion_tw2(k(4)), input_error);

    std::mt19937 rng(5);
    int done = 0;
    while (done < 20) {
        Graph g = random_graph(rng, 6, 0.35);
        if (!is_k4_minor_free(g)) continue;
        ++done;
        Graph hh = chordal_completion_tw2(g);
        CHECK(is_chordal(hh));
        CHECK(max_clique_size(hh) <= 3);
        for (const Edge& e : g.edges()) CHECK(hh.has_edge(e.first, e.second));
    }
}

TEST_CASE("is_chordal sanity") {
    CHECK(is_chordal(k(4)));
    CHECK(is_chordal(cycle(3)));
    CHECK_FALSE(is_chordal(cycle(4)));
    CHECK_FALSE(is_chordal(cycle(5)));
    CHECK(is_chordal(Graph::parse_text("1 2\n")));
}

TEST_CASE("is_chordal matches the cycle-chord definition on all 5-vertex graphs") {
    for (unsigned mask = 0; mask < 1024; ++mask) {
        std::vector<Edge> es;
        int bit = 0;
        for (int a = 1; a <= 5; ++a)
            for (int b = a + 1; b <= 5; ++b) {
                if (mask & (1u << bit)) es.emplace_back(a, b);
                ++bit;
            }
        Graph g = Graph::from_edges({1, 2, 3, 4, 5}, es);
        bool definition = true;
        for (const auto& cyc : enumerate_cycles(g)) {
            if (cyc.size() < 4) continue;
            std::set<Vertex> on_cycle;
            for (const Edge& e : cyc) {
                on_cycle.insert(e.first);
                on_cycle.insert(e.second);
            }
            bool chord = false;
            for (Vertex a : on_cycle)
                for (Vertex b : on_cycle)
                    if (a < b && g.has_edge(a, b) &&
                        !std::binary_search(cyc.begin(), cyc.end(), make_edge(a, b)))
                        chord = true;
            if (!chord) definition = false;
        }
        CHECK(is_chordal(g) == definition);
    }
}

TEST_CASE("reducible decomposition") {
    // two triangles glued along an edge
    auto glued = build_complex({{1, 2, 3}, {1, 3, 4}}, {1, 2, 3, 4});
    auto split = reducible_decomposition(glued);
    REQUIRE(split.has_value());
    CHECK(split->separator == Face{1, 3});
    CHECK(valid_reducible_split(glued, *split));

    auto simplex = build_complex({{1, 2, 3}}, {1, 2, 3});
    CHECK_FALSE(reducible_decomposition(simplex).has_value());

    // the [12][134][234] complex is irreducible: every candidate separator
    // leaves the outside vertices connected
    auto ex2 = build_complex({{1, 2}, {1, 3, 4}, {2, 3, 4}}, {1, 2, 3, 4});
    CHECK_FALSE(reducible_decomposition(ex2).has_value());

    // decomposition of a treewidth-2 chordal edge complex ends in cliques
    auto h = chordal_completion_tw2(cycle(4));
    auto tree = decompose_fully(h.edge_complex());
    auto leaves = decomposition_leaves(tree);
    CHECK(leaves.size() == 2);
    for (const Decomposition* leaf : leaves)
        CHECK(leaf->complex.ground().size() <= 3);
}

TEST_CASE("face embedding commutes with marginalization") {
    std::mt19937 rng(31);

    auto lift_delete = [](const Table& u, const SpacePtr& pre, Vertex v) {
        int pos = pre->complex().ground_index(v);
        Table out(pre->shape());
        for (const auto& [cell, count] : u.counts()) {
            CellIndex up(cell);
            up.insert(up.begin() + pos, 1);
            out.add(up, count);
        }
        return out;
    };
    auto lift_contract = [](const Table& u, const SpacePtr& pre, const SpacePtr& post,
                            const Face& L, Vertex vlab) {
        Table out(pre->shape());
        int vpos = post->complex().ground_index(vlab);
        for (const auto& [cell, count] : u.counts()) {
            int level = cell[static_cast<std::size_t>(vpos)];
            CellIndex up(pre->shape().sizes.size(), 0);
            for (std::size_t i = 0; i < pre->complex().ground().size(); ++i) {
                Vertex x = pre->complex().ground()[i];
                if (std::binary_search(L.begin(), L.end(), x)) {
                    up[i] = level;
                } else {
                    up[i] = cell[static_cast<std::size_t>(post->complex().ground_index(x))];
                }
            }
            out.add(up, count);
        }
        return out;
    };

    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_graph(rng, 4, 0.6);
        auto pre = make_binary_space(g.edge_complex());

        // vertex deletion
        Vertex v = g.vertices()[static_cast<std::size_t>(trial) % g.vertices().size()];
        MinorOp op = DeleteVertex{v};
        auto post = apply_op(pre, op);
        Table u(post->shape());
        u = testutil::random_table(rng, post->shape());
        auto lifted = lift_delete(u, pre, v);
        CHECK(face_embedding(pre, op, marginalize(u, post)) == marginalize(lifted, pre));

        // edge contraction, when an edge exists
        if (!g.edges().empty()) {
            const Edge& e = g.edges()[static_cast<std::size_t>(trial) % g.edges().size()];
            Face L{e.first, e.second};
            ContractEdge ce{L, 0};
            Vertex fresh = 1;
            while (g.has_vertex(fresh)) ++fresh;
            ce.new_label = fresh;
            MinorOp cop = ce;
            auto post2 = apply_op(pre, cop);
            Table u2 = testutil::random_table(rng, post2->shape());
            auto lifted2 = lift_contract(u2, pre, post2, L, fresh);
            CHECK(face_embedding(pre, cop, marginalize(u2, post2)) == marginalize(lifted2, pre));
        }
    }

    // zero maps to zero; deleted-vertex levels >= 2 carry coordinate zero
    auto pre = make_binary_space(k(4).edge_complex());
    MinorOp op = DeleteVertex{4};
    auto post = apply_op(pre, op);
    auto img = face_embedding(pre, op, FullMarginalVector::zero(post));
    for (const Rat& q : img.coords()) CHECK(q == 0);

    auto gens3 = generators(post);
    auto g0 = face_embedding(pre, op, gens3[0]); // cell (1,1,1)
    CHECK(g0.at({4}, {2}) == 0);
    CHECK(g0.at({4}, {1}) == 1);
    CHECK(g0.at({1, 4}, {1, 1}) == 1);
    CHECK(g0.at({1, 2}, {1, 1}) == 1);
}

TEST_CASE("face embedding lands on the named face of the cone") {
    std::mt19937 rng(71);
    Graph g = k(4);
    auto pre = make_binary_space(g.edge_complex());

    auto gens = [](const SpacePtr& sp) {
        std::vector<ReducedMarginalVector> out;
        for (const auto& v : generators(sp)) out.push_back(reduce_coords(v));
        return out;
    };

    // vertex deletion: every coordinate with the deleted vertex at a level
    // >= 2 vanishes, and the image is LP-certified inside the pre cone
    MinorOp op = DeleteVertex{2};
    auto post = apply_op(pre, op);
    auto pre_gens = gens(pre);
    for (int trial = 0; trial < 10; ++trial) {
        Table u = testutil::random_table(rng, post->shape());
        auto img = face_embedding(pre, op, marginalize(u, post));
        CHECK(img.at({2}, {2}) == 0);
        CHECK(img.at({1, 2}, {1, 2}) == 0);
        CHECK(img.at({2, 4}, {2, 1}) == 0);
        CHECK(cone_membership_lp(reduce_coords(img), pre_gens).inside);
    }

    // contraction: off-diagonal coordinates of the contracted pair vanish
    MinorOp cop = ContractEdge{{3, 4}, 5};
    auto post2 = apply_op(pre, cop);
    Table u2 = testutil::random_table(rng, post2->shape());
    auto img2 = face_embedding(pre, cop, marginalize(u2, post2));
    CHECK(img2.at({3, 4}, {1, 2}) == 0);
    CHECK(img2.at({3, 4}, {2, 1}) == 0);
    CHECK(cone_membership_lp(reduce_coords(img2), pre_gens).inside);
}

TEST_CASE("face embedding rejects mismatched input") {
    auto pre = make_binary_space(k(4).edge_complex());
    CHECK_THROWS_AS(face_embedding(pre, DeleteVertex{4}, FullMarginalVector::zero(pre)),
                    input_error);
    auto post = apply_op(pre, MinorOp{DeleteVertex{4}});
    CHECK_THROWS_AS(
        face_embedding(pre, DeleteEdge{{1, 2}}, FullMarginalVector::zero(post)),
        input_error);
}
