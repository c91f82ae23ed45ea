#include <doctest.h>

#include <algorithm>

#include "detkit/recognize.hpp"
#include "t_util.hpp"

using namespace detkit;

namespace {

// Wheel on rim 1..5 with two consecutive spokes subdivided, each new vertex
// tied into the next rim vertex around. 14 edges.
Graph mutant_wheel5() {
    Graph g;
    for (int i = 0; i < 8; ++i) g.add_vertex();
    g.add_edge(0, 3);  // untouched spokes
    g.add_edge(0, 4);
    g.add_edge(0, 5);
    g.add_edge(1, 2);  // rim
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 1);
    g.add_edge(0, 6);  // spoke to 1, split at 6, tied into rim vertex 2
    g.add_edge(6, 1);
    g.add_edge(6, 2);
    g.add_edge(0, 7);  // spoke to 2, split at 7, tied into rim vertex 3
    g.add_edge(7, 2);
    g.add_edge(7, 3);
    return g;
}

// K_4 with one edge subdivided once, the new vertex tied across to a vertex
// of the opposite edge. 8 edges.
Graph twisted_wheel_small() {
    Graph g;
    for (int i = 0; i < 5; ++i) g.add_vertex();
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    g.add_edge(0, 4);  // subdivided edge 0-1
    g.add_edge(4, 1);
    g.add_edge(4, 2);  // tie-in
    return g;
}

// 4-wheel, hub 0, with two opposite spokes subdivided once and each new
// vertex tied into the following rim vertex. 12 edges.
Graph warped_wheel_small() {
    Graph g;
    for (int i = 0; i < 7; ++i) g.add_vertex();
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 1);
    g.add_edge(0, 2);
    g.add_edge(0, 4);
    g.add_edge(0, 5);  // spoke to 1, split at 5
    g.add_edge(5, 1);
    g.add_edge(5, 2);
    g.add_edge(0, 6);  // spoke to 3, split at 6
    g.add_edge(6, 3);
    g.add_edge(6, 4);
    return g;
}

// Three u-v branches, two of them subdivided once with the middle vertex
// tied to the hub h, plus the h-v edge; u and v stay adjacent. 8 edges.
Graph multi_wheel_small() {
    Graph g;  // u=0, h=1, v=2
    for (int i = 0; i < 5; ++i) g.add_vertex();
    g.add_edge(1, 2);
    g.add_edge(0, 3);
    g.add_edge(3, 2);
    g.add_edge(3, 1);
    g.add_edge(0, 4);
    g.add_edge(4, 2);
    g.add_edge(4, 1);
    g.add_edge(0, 2);
    return g;
}

// K_{3,3} plus a vertex a adjacent to all of one side, plus b adjacent to
// a and to two of that side. 15 edges.
Graph k3m_prime3() {
    Graph g = tutil::complete_bipartite(3, 3);
    int a = g.add_vertex();
    int b = g.add_vertex();
    g.add_edge(a, 0);
    g.add_edge(a, 1);
    g.add_edge(a, 2);
    g.add_edge(b, a);
    g.add_edge(b, 0);
    g.add_edge(b, 2);
    return g;
}

// K_{3,3} plus a adjacent to two side vertices, b adjacent to a and the
// other overlap, and one side chord. 15 edges.
Graph k3m_doubleprime3() {
    Graph g = tutil::complete_bipartite(3, 3);
    int a = g.add_vertex();
    int b = g.add_vertex();
    g.add_edge(a, 0);
    g.add_edge(a, 1);
    g.add_edge(b, a);
    g.add_edge(b, 1);
    g.add_edge(b, 2);
    g.add_edge(0, 2);
    return g;
}

// Rank-4 free spike over GF(7): legs {e_i, e_i + w} with w the all-ones
// vector, so any two legs form a circuit and a cocircuit.
Matroid free_spike4() {
    GfpMatrix rep;
    rep.p = 7;
    rep.rows.assign(4, std::vector<int>(8, 0));
    for (int i = 0; i < 4; ++i) {
        rep.rows[i][i] = 1;
        for (int r = 0; r < 4; ++r) rep.rows[r][4 + i] = (r == i) ? 2 : 1;
    }
    return from_gfp_matrix(rep);
}

}  // namespace

TEST_CASE("wheels and whirls") {
    Matroid w7 = from_graph(tutil::wheel_graph(7));
    auto cert = recognize_wheel_whirl(w7);
    REQUIRE(cert);
    CHECK(cert->is_wheel);
    Mask rim = 0;
    for (int e = 7; e < 14; ++e) rim |= bit(e);
    CHECK(cert->rim == rim);
    CHECK(verify_wheel_cert(w7, *cert));

    // relaxing the rim turns it into the whirl
    Matroid wh = relax(w7, rim);
    auto wcert = recognize_wheel_whirl(wh);
    REQUIRE(wcert);
    CHECK(!wcert->is_wheel);
    CHECK(verify_wheel_cert(wh, *wcert));
    CHECK(!verify_wheel_cert(w7, *wcert));

    // the smallest wheel, and two non-wheels
    CHECK(recognize_wheel_whirl(from_graph(tutil::complete_graph(4))));
    CHECK(!recognize_wheel_whirl(from_graph(tutil::prism_graph())));
    CHECK(!recognize_wheel_whirl(from_graph(tutil::complete_bipartite(3, 3))));

    // tampering with the order breaks the replay
    WheelCert bad = *cert;
    std::swap(bad.order[0], bad.order[1]);
    CHECK(!verify_wheel_cert(w7, bad));
}

TEST_CASE("triad-paddles are exactly the K_{3,m} cycle matroids") {
    Matroid k33 = from_graph(tutil::complete_bipartite(3, 3));
    auto cert = recognize_triad_paddle(k33);
    REQUIRE(cert);
    CHECK(cert->triads.size() == 3);
    CHECK(verify_triad_paddle_cert(k33, *cert));

    Matroid k35 = from_graph(tutil::complete_bipartite(3, 5));
    auto c5 = recognize_triad_paddle(k35);
    REQUIRE(c5);
    CHECK(c5->triads.size() == 5);
    CHECK(verify_triad_paddle_cert(k35, *c5));

    CHECK(!recognize_triad_paddle(from_graph(tutil::complete_graph(4))));
    CHECK(!recognize_triad_paddle(from_graph(tutil::prism_graph())));

    TriadPaddleCert bad = *cert;
    bad.iso[0] = bad.iso[1];
    CHECK(!verify_triad_paddle_cert(k33, bad));
}

TEST_CASE("spike recognition on the rank-4 free spike") {
    Matroid sp = free_spike4();
    auto cert = recognize_spike(sp);
    REQUIRE(cert);
    CHECK(cert->legs.size() == 4);
    CHECK(cert->legs[0] == (bit(0) | bit(4)));
    CHECK(verify_spike_cert(sp, *cert));

    SpikeCert bad = *cert;
    std::swap(bad.legs[0], bad.legs[1]);
    CHECK(verify_spike_cert(sp, bad));  // leg order is immaterial
    bad.legs[0] = bit(0) | bit(5);
    bad.legs[1] = bit(1) | bit(4);
    CHECK(!verify_spike_cert(sp, bad));

    CHECK(!recognize_spike(from_graph(tutil::wheel_graph(7))));

    // the spike is an even-fan-spike with all petals of size two
    auto efs = recognize_even_fan_spike(sp);
    REQUIRE(efs);
    CHECK(!efs->tip_cotip);
    CHECK(!efs->degenerate);
    CHECK(efs->petals.size() == 4);
    CHECK(verify_efs_cert(sp, *efs));

    EfsCert ebad = *efs;
    ebad.petals[0] |= ebad.petals[1];
    ebad.petals.erase(ebad.petals.begin() + 1);
    ebad.orderings.clear();
    CHECK(!verify_efs_cert(sp, ebad));
}

TEST_CASE("twisted wheel is an even-fan-spike with tip and cotip") {
    Matroid m = from_graph(twisted_wheel_small());
    auto cert = recognize_even_fan_spike(m);
    REQUIRE(cert);
    CHECK(cert->tip_cotip);
    CHECK(cert->tip >= 0);
    CHECK(cert->cotip >= 0);
    CHECK(verify_efs_cert(m, *cert));

    // self-dual family: the dual is again one, with the roles exchanged
    Matroid md = dual(m);
    auto dcert = recognize_even_fan_spike(md);
    REQUIRE(dcert);
    CHECK(dcert->tip_cotip);
    CHECK(verify_efs_cert(md, *dcert));

    CHECK(!recognize_accordion(m));
}

TEST_CASE("warped wheel is a degenerate tipless even-fan-spike") {
    Matroid m = from_graph(warped_wheel_small());
    auto cert = recognize_even_fan_spike(m);
    REQUIRE(cert);
    CHECK(!cert->tip_cotip);
    CHECK(cert->degenerate);
    CHECK(cert->petals.size() == 2);
    CHECK(popcount(cert->petals[0]) == 6);
    CHECK(popcount(cert->petals[1]) == 6);
    CHECK(verify_efs_cert(m, *cert));
    CHECK(!recognize_accordion(m));
}

TEST_CASE("degenerate multi-wheel is a degenerate even-fan-paddle") {
    Matroid m = from_graph(multi_wheel_small());
    auto cert = recognize_even_fan_paddle(m);
    REQUIRE(cert);
    CHECK(cert->degenerate);
    CHECK(cert->petals.size() == 3);
    CHECK(popcount(cert->petals.back()) == 2);
    CHECK(has(cert->petals.back(), cert->hinge));
    CHECK(verify_efp_cert(m, *cert));

    EfpCert bad = *cert;
    bad.hinge = lowest(bad.petals.front());
    CHECK(!verify_efp_cert(m, bad));

    CHECK(!recognize_even_fan_paddle(from_graph(tutil::prism_graph())));
}

TEST_CASE("mutant wheel is an accordion") {
    Graph g = mutant_wheel5();
    Matroid m = from_graph(g);
    auto cert = recognize_accordion(m);
    REQUIRE(cert);
    CHECK(verify_accordion_cert(m, *cert));
    CHECK(cert->fan_order.size() >= 4);

    AccordionCert bad = *cert;
    std::swap(bad.left, bad.right);
    std::swap(bad.left_order, bad.right_order);
    CHECK(!verify_accordion_cert(m, bad));

    Classification c = classify_matroid(m);
    CHECK(c.outcome == Outcome::accordion);
    CHECK(verify_classification(m, c));

    Classification gc = classify_graph(g);
    CHECK(gc.outcome == Outcome::accordion);
    CHECK(gc.graph_family == GraphFamily::mutant_wheel);
}

TEST_CASE("bipartite variants come out as quasi-triad-paddles") {
    Graph gp = k3m_prime3();
    Matroid mp = from_graph(gp);
    Classification cp = classify_matroid(mp);
    CHECK(cp.outcome == Outcome::quasi_triad_paddle);
    REQUIRE(cp.petal_kind);
    CHECK(*cp.petal_kind == PetalKind::co_augmented_fan);
    REQUIRE(cp.qtp);
    CHECK(cp.qtp->triads.size() == 3);
    CHECK(popcount(cp.qtp->petal) == 6);
    CHECK(verify_classification(mp, cp));
    CHECK(classify_graph(gp).graph_family == GraphFamily::k3m_prime);

    Graph gd = k3m_doubleprime3();
    Matroid md = from_graph(gd);
    Classification cd = classify_matroid(md);
    CHECK(cd.outcome == Outcome::quasi_triad_paddle);
    REQUIRE(cd.petal_kind);
    CHECK(*cd.petal_kind == PetalKind::augmented_fan);
    CHECK(verify_classification(md, cd));
    CHECK(classify_graph(gd).graph_family == GraphFamily::k3m_doubleprime);
}

TEST_CASE("classification: pairs, wheels, paddles, duals") {
    Matroid k6 = from_graph(tutil::complete_graph(6));
    Classification c6 = classify_matroid(k6);
    CHECK(c6.outcome == Outcome::detachable_pair);
    REQUIRE(c6.pair);
    CHECK(c6.pair->detachable());
    CHECK(verify_classification(k6, c6));

    Graph w7g = tutil::wheel_graph(7);
    Matroid w7 = from_graph(w7g);
    Classification cw = classify_matroid(w7);
    CHECK(cw.outcome == Outcome::wheel);
    CHECK(verify_classification(w7, cw));
    CHECK(classify_matroid(dual(w7)).outcome == Outcome::wheel);
    Classification gw = classify_graph(w7g);
    CHECK(gw.graph_family == GraphFamily::wheel);

    Matroid k35 = from_graph(tutil::complete_bipartite(3, 5));
    Classification ct = classify_matroid(k35);
    CHECK(ct.outcome == Outcome::triad_paddle);
    CHECK(verify_classification(k35, ct));
    Classification ctd = classify_matroid(dual(k35));
    CHECK(ctd.outcome == Outcome::triad_paddle_dual);
    CHECK(verify_classification(dual(k35), ctd));

    // dual of a quasi-triad-paddle host gets the dual tag, same petal kind
    Matroid mp = from_graph(k3m_prime3());
    Classification cpd = classify_matroid(dual(mp));
    CHECK(cpd.outcome == Outcome::quasi_triad_paddle_dual);
    REQUIRE(cpd.petal_kind);
    CHECK(*cpd.petal_kind == PetalKind::co_augmented_fan);
    CHECK(verify_classification(dual(mp), cpd));
}

TEST_CASE("classification preconditions and tampering") {
    CHECK_THROWS_AS((void)classify_matroid(from_graph(tutil::complete_graph(4))),
                    PreconditionError);
    CHECK_THROWS_AS((void)classify_graph(tutil::complete_bipartite(3, 3)), PreconditionError);

    // 13 edges but a degree-2 vertex: fails the connectivity gate
    Graph broken = tutil::wheel_graph(7);
    broken.edges.pop_back();
    CHECK_THROWS_AS((void)classify_graph(broken), PreconditionError);
    CHECK_THROWS_AS((void)classify_matroid(from_graph(broken)), PreconditionError);

    Matroid w7 = from_graph(tutil::wheel_graph(7));
    Classification cw = classify_matroid(w7);
    cw.outcome = Outcome::whirl;
    CHECK(!verify_classification(w7, cw));
    Classification empty;
    CHECK(!verify_classification(w7, empty));
    empty.outcome = Outcome::detachable_pair;
    CHECK(!verify_classification(w7, empty));
}
