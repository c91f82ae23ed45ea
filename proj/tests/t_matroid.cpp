#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "detkit/matroid.hpp"
#include "t_util.hpp"

using namespace detkit;

namespace {

// Independent oracle for graphic rank: count forest edges greedily over an
// explicit union-find, no shared code with the library's table builder.
int forest_rank(const Graph& g, Mask x) {
    std::vector<int> parent(g.nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    int r = 0;
    for_each_bit(x, [&](int e) {
        int a = find(g.edges[e].first), b = find(g.edges[e].second);
        if (a != b) { parent[a] = b; ++r; }
    });
    return r;
}

Matroid u24() {
    GfpMatrix rep;
    rep.p = 5;
    rep.rows = {{1, 0, 1, 1}, {0, 1, 1, 2}};
    return from_gfp_matrix(rep);
}

Matroid fano() {
    GfpMatrix rep;
    rep.p = 2;
    rep.rows = {{1, 0, 0, 1, 1, 0, 1},
                {0, 1, 0, 1, 0, 1, 1},
                {0, 0, 1, 0, 1, 1, 1}};
    return from_gfp_matrix(rep);
}

}  // namespace

TEST_CASE("graphic rank table matches a union-find oracle") {
    for (const Graph& g : {tutil::complete_graph(4), tutil::wheel_graph(4), tutil::prism_graph()}) {
        Matroid m = from_graph(g);
        REQUIRE(m.size() == g.ne());
        for (Mask x = 0; x <= m.all(); ++x) CHECK(m.rank(x) == forest_rank(g, x));
    }
}

TEST_CASE("basis counts: spanning trees of K4 and W4") {
    Matroid k4 = from_graph(tutil::complete_graph(4));
    CHECK(k4.rank() == 3);
    CHECK(bases_of(k4).size() == 16);  // Cayley: 4^2 labeled trees

    Matroid w4 = from_graph(tutil::wheel_graph(4));
    CHECK(w4.rank() == 4);
    CHECK(bases_of(w4).size() == 45);
}

TEST_CASE("uniform matroid from a GF(5) representation") {
    Matroid m = u24();
    CHECK(m.rank() == 2);
    CHECK(m.size() == 4);
    for_each_ksubset(4, 2, [&](Mask x) { CHECK(m.indep(x)); });
    for_each_ksubset(4, 3, [&](Mask x) { CHECK(m.is_circuit(x)); });

    // Same matroid from its bases list.
    BasesList b;
    b.r = 2;
    for_each_ksubset(4, 2, [&](Mask x) { b.bases.push_back(x); });
    CHECK(from_bases(b, 4).same_table(m));

    // Self-dual.
    CHECK(dual(m).same_table(m));
}

TEST_CASE("binary projective plane has seven lines") {
    Matroid f = fano();
    CHECK(f.rank() == 3);
    int triangles = 0;
    for_each_ksubset(7, 3, [&](Mask x) {
        if (f.is_circuit(x)) ++triangles;
    });
    CHECK(triangles == 7);

    // Relaxing one line leaves six.
    Mask line = 0;
    for_each_ksubset(7, 3, [&](Mask x) {
        if (line == 0 && f.is_circuit(x)) line = x;
    });
    Matroid relaxed = relax(f, line);
    CHECK(bases_of(relaxed).size() == bases_of(f).size() + 1);
    int left = 0;
    for_each_ksubset(7, 3, [&](Mask x) {
        if (relaxed.is_circuit(x)) ++left;
    });
    CHECK(left == 6);
}

TEST_CASE("bases validation rejects exchange failures") {
    BasesList bad;
    bad.r = 2;
    bad.bases = {0b0011, 0b1100};
    CHECK_THROWS_AS(from_bases(bad, 4), PreconditionError);

    BasesList mixed;
    mixed.r = 2;
    mixed.bases = {0b0011, 0b0111};
    CHECK_THROWS_AS(from_bases(mixed, 4), PreconditionError);  // wrong cardinality

    BasesList empty;
    CHECK_THROWS_AS(from_bases(empty, 3), PreconditionError);
}

TEST_CASE("duality and single-element minors commute") {
    for (const Graph& g : {tutil::complete_graph(4), tutil::wheel_graph(4)}) {
        Matroid m = from_graph(g);
        Matroid md = dual(m);
        CHECK(dual(md).same_table(m));
        for (int e = 0; e < m.size(); ++e) {
            Matroid left = dual(minor(m, MinorOp::del, bit(e)));
            Matroid right = minor(md, MinorOp::contract, bit(e));
            CHECK(left.same_table(right));
        }
        for (Mask x = 0; x <= m.all(); ++x) {
            CHECK(m.lambda(x) == m.lambda(m.all() & ~x));
            CHECK(m.lambda(x) == md.lambda(x));
        }
    }
}

TEST_CASE("minor tables and label maps") {
    Graph w4 = tutil::wheel_graph(4);
    Matroid m = from_graph(w4);

    // Deleting then contracting tracks indices back to the original.
    Matroid step1 = minor(m, MinorOp::del, bit(2));
    Matroid step2 = minor(step1, MinorOp::contract, bit(0));
    REQUIRE(step2.size() == 6);
    const auto& lbl = step2.provenance().parent_labels;
    REQUIRE(lbl.size() == 6);
    CHECK(lbl == std::vector<int>{1, 3, 4, 5, 6, 7});

    // Table agrees with the graph-side minor.
    Graph gm = graph_minor_set(w4, bit(2), bit(0));
    CHECK(from_graph(gm).same_table(step2));

    // Contracting a spoke then a rim edge in one call.
    Matroid both = minor(m, bit(2), bit(0));
    CHECK(both.same_table(step2));

    CHECK_THROWS_AS(minor(m, bit(1), bit(1)), ArgError);
}

TEST_CASE("relaxation demands a circuit-hyperplane") {
    Matroid k4 = from_graph(tutil::complete_graph(4));
    // A triangle of K_4 is a circuit-hyperplane; an independent set is not.
    Mask tri = 0;
    for_each_ksubset(6, 3, [&](Mask x) {
        if (tri == 0 && k4.is_circuit(x)) tri = x;
    });
    Matroid wh = relax(k4, tri);
    CHECK(wh.rank() == 3);
    int triangles = 0;
    for_each_ksubset(6, 3, [&](Mask x) {
        if (wh.is_circuit(x)) ++triangles;
    });
    CHECK(triangles == 3);  // whirl keeps the other three triangles

    Mask indep3 = 0;
    for_each_ksubset(6, 3, [&](Mask x) {
        if (indep3 == 0 && k4.indep(x)) indep3 = x;
    });
    CHECK_THROWS_AS(relax(k4, indep3), PreconditionError);
    // A 4-element circuit is not a hyperplane of a rank-3 matroid on 6 elements.
    Mask quad = 0;
    for_each_ksubset(6, 4, [&](Mask x) {
        if (quad == 0 && k4.is_circuit(x)) quad = x;
    });
    CHECK_THROWS_AS(relax(k4, quad), PreconditionError);
}

TEST_CASE("simplification and cosimplification") {
    Graph par = tutil::complete_graph(4);
    par.add_edge(0, 1);  // parallel to element 0
    Matroid m = from_graph(par);
    Matroid s = simplify(m);
    CHECK(s.size() == 6);
    CHECK(s.provenance().parent_labels == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(s.same_table(from_graph(tutil::complete_graph(4))));

    Graph sub = subdivide(tutil::complete_graph(4), 2, 1);
    Matroid ms = from_graph(sub);
    Matroid c = cosimplify(ms);
    CHECK(c.size() == 6);
    CHECK(c.provenance().parent_labels == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(c.same_table(from_graph(tutil::complete_graph(4))));

    // Loops go away under simplify, coloops under cosimplify.
    Graph loopy = tutil::complete_graph(4);
    loopy.add_edge(3, 3);
    CHECK(simplify(from_graph(loopy)).same_table(from_graph(tutil::complete_graph(4))));
    Graph pendant = tutil::complete_graph(4);
    int w = pendant.add_vertex();
    pendant.add_edge(0, w);
    CHECK(cosimplify(from_graph(pendant)).same_table(from_graph(tutil::complete_graph(4))));
}

TEST_CASE("rank table validation catches corruption") {
    Matroid k4 = from_graph(tutil::complete_graph(4));
    CHECK(validate_rank_table(k4.table(), 6).empty());

    auto bad = k4.table();
    bad[0b000111] += 1;  // break submodularity/unit-increase somewhere
    CHECK(!validate_rank_table(bad, 6).empty());

    auto neg = k4.table();
    neg[0] = 1;  // rank of the empty set
    CHECK(!validate_rank_table(neg, 6).empty());
}

TEST_CASE("table caps") {
    Graph path;
    path.add_vertex();
    for (int i = 0; i < 23; ++i) {
        int v = path.add_vertex();
        path.add_edge(v - 1, v);
    }
    REQUIRE(path.ne() == 23);
    CHECK_THROWS_AS(from_graph(path), CapError);
    TableLimits big;
    big.allow_big = true;
    Matroid m = from_graph(path, big);
    CHECK(m.rank() == 23);

    int v = path.add_vertex();
    path.add_edge(v - 1, v);
    path.add_edge(v - 1, v);
    REQUIRE(path.ne() == 25);
    CHECK_THROWS_AS(from_graph(path, big), CapError);
}

TEST_CASE("loops, coloops, closure operators") {
    Graph g = tutil::cycle_graph(3);
    g.add_edge(1, 1);  // loop as element 3
    Matroid m = from_graph(g);
    CHECK(m.is_loop(3));
    CHECK(!m.is_loop(0));
    CHECK(m.closure(0) == bit(3));  // loops live in every flat

    Matroid k4 = from_graph(tutil::complete_graph(4));
    // Closure of two triangle edges is the whole triangle.
    Mask tri = 0;
    for_each_ksubset(6, 3, [&](Mask x) {
        if (tri == 0 && k4.is_circuit(x)) tri = x;
    });
    Mask two = tri & (tri - 1);
    CHECK(k4.closure(two) == tri);
    CHECK(k4.coclosure(k4.all()) == k4.all());

    Matroid u = u24();
    CHECK(u.closure(bit(1)) == bit(1));
    CHECK(u.closure(bit(0) | bit(2)) == u.all());
}
