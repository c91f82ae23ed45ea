#include <doctest.h>

#include <algorithm>

#include "detkit/graph.hpp"
#include "t_util.hpp"

using namespace detkit;

TEST_CASE("simplicity and connectivity predicates") {
    Graph k4 = tutil::complete_graph(4);
    CHECK(is_simple(k4));
    CHECK(is_connected(k4));
    CHECK(is_simple_3connected(k4));

    CHECK(!is_simple_3connected(tutil::cycle_graph(4)));
    CHECK(is_simple_3connected(tutil::complete_graph(5)));
    CHECK(is_simple_3connected(tutil::wheel_graph(5)));
    CHECK(is_simple_3connected(tutil::prism_graph()));
    CHECK(is_simple_3connected(tutil::complete_bipartite(3, 3)));

    // Triangle: simple and connected but below four vertices.
    CHECK(!is_simple_3connected(tutil::cycle_graph(3)));

    Graph par = tutil::complete_graph(4);
    par.add_edge(0, 1);
    CHECK(!is_simple(par));
    CHECK(!is_simple_3connected(par));

    Graph loopy = tutil::complete_graph(4);
    loopy.add_edge(2, 2);
    CHECK(!is_simple(loopy));

    Graph two_parts = tutil::cycle_graph(3);
    for (int i = 0; i < 3; ++i) two_parts.add_vertex();
    two_parts.add_edge(3, 4);
    two_parts.add_edge(4, 5);
    two_parts.add_edge(5, 3);
    CHECK(!is_connected(two_parts));
}

TEST_CASE("deletion drops isolated vertices, contraction keeps parallels") {
    Graph k4 = tutil::complete_graph(4);

    Graph d = graph_minor(k4, EdgeOp::del, 0);
    CHECK(d.nv == 4);  // every vertex still has degree >= 2
    CHECK(d.ne() == 5);

    // Delete all three edges at vertex 0: the vertex itself disappears.
    Graph star_gone = graph_minor_set(k4, bit(0) | bit(1) | bit(2), 0);
    CHECK(star_gone.nv == 3);
    CHECK(star_gone.ne() == 3);

    Graph c = graph_minor(k4, EdgeOp::contract, 0);
    CHECK(c.nv == 3);
    CHECK(c.ne() == 5);
    CHECK(!is_simple(c));  // two parallel pairs appear

    // Contracting one edge of a triangle leaves a parallel pair.
    Graph tri = tutil::cycle_graph(3);
    Graph pp = graph_minor(tri, EdgeOp::contract, 0);
    CHECK(pp.nv == 2);
    CHECK(pp.ne() == 2);
    CHECK(pp.edges[0] == pp.edges[1]);

    // Contracting a loop is deletion.
    Graph loopy = tutil::cycle_graph(3);
    loopy.add_edge(1, 1);
    Graph lc = graph_minor(loopy, EdgeOp::contract, 3);
    Graph ld = graph_minor(loopy, EdgeOp::del, 3);
    CHECK(lc.nv == ld.nv);
    CHECK(lc.edges == ld.edges);
}

TEST_CASE("minor keeps labels and stable edge order") {
    Graph g = tutil::cycle_graph(4);
    g.elabel = {"a", "b", "c", "d"};
    Graph m = graph_minor(g, EdgeOp::contract, 1);
    REQUIRE(m.ne() == 3);
    CHECK(m.label_of(0) == "a");
    CHECK(m.label_of(1) == "c");
    CHECK(m.label_of(2) == "d");
}

TEST_CASE("subdivision splices in slot order") {
    Graph k4 = tutil::complete_graph(4);
    std::vector<int> added;
    Graph s = subdivide(k4, 2, 2, &added);
    REQUIRE(added.size() == 2);
    CHECK(s.nv == 6);
    CHECK(s.ne() == 8);
    // Slot 2 begins the new path; the remaining segments sit at the end.
    auto [u, v] = k4.edges[2];
    CHECK(s.edges[2] == std::make_pair(u, added[0]));
    CHECK(s.edges[6] == std::make_pair(added[0], added[1]));
    CHECK(s.edges[7] == std::make_pair(added[1], v));
    // All other slots untouched.
    for (int e = 0; e < 6; ++e)
        if (e != 2) CHECK(s.edges[e] == k4.edges[e]);

    CHECK(subdivide(k4, 1, 0).edges == k4.edges);

    Graph loopy = tutil::cycle_graph(3);
    loopy.add_edge(0, 0);
    CHECK_THROWS_AS(subdivide(loopy, 3, 1), ArgError);
}
