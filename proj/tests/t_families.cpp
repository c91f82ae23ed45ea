#include <doctest.h>

#include <algorithm>
#include <set>

#include "detkit/detach.hpp"
#include "detkit/families.hpp"
#include "detkit/recognize.hpp"

using namespace detkit;

namespace {

FamilySpec make(Family f, std::initializer_list<std::pair<const char*, int>> params = {},
                std::vector<int> lengths = {}) {
    FamilySpec spec;
    spec.family = f;
    for (auto [k, v] : params) spec.params[k] = v;
    spec.lengths = std::move(lengths);
    return spec;
}

}  // namespace

TEST_CASE("family names round-trip and graphic families are flagged") {
    for (int i = 0; i <= int(Family::quasi_triad_paddle); ++i) {
        Family f = Family(i);
        auto back = family_from_name(family_name(f));
        REQUIRE(back.has_value());
        CHECK(*back == f);
    }
    CHECK(!family_from_name("Wheel").has_value());
    CHECK(!family_from_name("").has_value());
    CHECK(is_graph_family(Family::wheel));
    CHECK(is_graph_family(Family::k3m_doubleprime));
    CHECK(!is_graph_family(Family::whirl));
    CHECK(!is_graph_family(Family::free_spike));
    CHECK(!is_graph_family(Family::even_fan_spike));
}

TEST_CASE("graph constructions have the expected sizes and survive the checks") {
    struct Row {
        FamilySpec spec;
        int nv, ne;
    };
    std::vector<Row> rows = {
        {make(Family::wheel, {{"r", 6}}), 7, 12},
        {make(Family::mutant_wheel, {{"r", 4}}), 7, 12},
        {make(Family::twisted_wheel, {{"j", 2}, {"k", 1}}), 7, 12},
        {make(Family::warped_wheel, {{"j", 1}, {"k", 2}}), 8, 14},
        {make(Family::multi_wheel, {}, {1, 1, 2}), 7, 12},
        {make(Family::stretched_wheel, {{"r", 4}, {"k", 2}}), 8, 14},
        {make(Family::k3m, {{"m", 4}}), 7, 12},
        {make(Family::k3m_prime, {{"m", 3}}), 8, 15},
        {make(Family::k3m_doubleprime, {{"m", 3}}), 8, 15},
    };
    for (const auto& row : rows) {
        CAPTURE(row.spec.to_string());
        Graph g = gen_graph(row.spec);
        CHECK(g.nv == row.nv);
        CHECK(g.ne() == row.ne);
        CHECK(is_simple(g));
        CHECK(is_simple_3connected(g));
        // every edge carries a role label
        for (int e = 0; e < g.ne(); ++e) CHECK(!g.label_of(e).empty());
    }
}

TEST_CASE("graph generators reject bad parameters by name") {
    CHECK_THROWS_AS(gen_graph(make(Family::wheel, {{"r", 2}})), ArgError);
    CHECK_THROWS_AS(gen_graph(make(Family::wheel)), ArgError);                      // r missing
    CHECK_THROWS_AS(gen_graph(make(Family::wheel, {{"radius", 5}})), ArgError);     // typo'd key
    CHECK_THROWS_AS(gen_graph(make(Family::wheel, {{"r", 5}}, {1, 2})), ArgError);  // stray lengths
    CHECK_THROWS_AS(gen_graph(make(Family::twisted_wheel, {{"j", 0}, {"k", 0}})), ArgError);
    CHECK_THROWS_AS(gen_graph(make(Family::warped_wheel, {{"j", 0}, {"k", 2}})), ArgError);
    CHECK_THROWS_AS(gen_graph(make(Family::multi_wheel, {}, {1, 1})), ArgError);
    // two whole strips, and a whole strip outside the three-strip case
    CHECK_THROWS_AS(gen_graph(make(Family::multi_wheel, {}, {0, 0, 2})), ArgError);
    CHECK_THROWS_AS(gen_graph(make(Family::multi_wheel, {}, {0, 1, 1, 1})), ArgError);
    CHECK_THROWS_AS(gen_graph(make(Family::stretched_wheel, {{"r", 4}, {"k", 0}})), ArgError);
    CHECK_THROWS_AS(gen_graph(make(Family::k3m, {{"m", 2}})), ArgError);
    // matroid-only families and the dualize flag do not belong here
    CHECK_THROWS_AS(gen_graph(make(Family::whirl, {{"r", 5}})), ArgError);
    CHECK_THROWS_AS(gen_graph(make(Family::wheel, {{"r", 5}, {"dualize", 1}})), ArgError);
}

TEST_CASE("wheel and whirl matroids differ exactly in the rim") {
    auto wheel = gen_matroid(make(Family::wheel, {{"r", 5}}));
    auto whirl = gen_matroid(make(Family::whirl, {{"r", 5}}));
    REQUIRE(wheel.m.size() == 10);
    REQUIRE(whirl.m.size() == 10);
    Mask rim = full_mask(10) & ~full_mask(5);
    CHECK(wheel.m.rank(rim) == 4);  // rim is a circuit-hyperplane
    CHECK(whirl.m.rank(rim) == 5);  // relaxed to a basis
    CHECK(wheel.m.rank() == whirl.m.rank());
    auto cw = recognize_wheel_whirl(wheel.m);
    REQUIRE(cw.has_value());
    CHECK(cw->is_wheel);
    auto cr = recognize_wheel_whirl(whirl.m);
    REQUIRE(cr.has_value());
    CHECK(!cr->is_wheel);
    CHECK(wheel.roles == whirl.roles);
    CHECK(wheel.roles[0] == "spoke1");
    CHECK(wheel.roles[9] == "rim5");
}

TEST_CASE("free spikes are spikes with every leg transversal independent") {
    auto gen = gen_matroid(make(Family::free_spike, {{"r", 5}}));
    REQUIRE(gen.m.size() == 10);
    auto cert = recognize_spike(gen.m);
    REQUIRE(cert.has_value());
    CHECK(cert->legs.size() == 5);
    // one transversal per leg-side selection; all must be bases
    for (Mask pick = 0; pick < 32; ++pick) {
        Mask t = 0;
        for (int i = 0; i < 5; ++i) t |= bit(2 * i + int((pick >> i) & 1));
        CHECK(gen.m.rank(t) == 5);
    }
    CHECK_THROWS_AS(gen_matroid(make(Family::free_spike, {{"r", 3}})), ArgError);
}

TEST_CASE("the tipped free spike form carries a tip and a cotip") {
    auto gen = gen_matroid(make(Family::free_spike, {{"r", 7}, {"tipped", 1}}));
    REQUIRE(gen.m.size() == 14);
    auto cert = recognize_even_fan_spike(gen.m);
    REQUIRE(cert.has_value());
    CHECK(cert->tip_cotip);
    CHECK(!cert->degenerate);
    CHECK(cert->petals.size() == 6);
    CHECK(gen.roles[12] == "tip");
    CHECK(gen.roles[13] == "cotip");
    auto c = classify_matroid(gen.m);
    CHECK(c.outcome == Outcome::even_fan_spike_tip_cotip);
    CHECK(verify_classification(gen.m, c));
}

TEST_CASE("hinged triad-paddle construction is recognized at every size") {
    for (int m = 3; m <= 5; ++m) {
        CAPTURE(m);
        auto gen = gen_matroid(make(Family::hinged_triad_paddle, {{"m", m}}));
        REQUIRE(gen.m.size() == 3 * m + 1);
        auto cert = recognize_hinged_triad_paddle(gen.m);
        REQUIRE(cert.has_value());
        CHECK(int(cert->triads.size()) == m);
        CHECK(cert->hinge == 3 * m);
        CHECK(verify_hinged_cert(gen.m, *cert));
        // every petal but the last spans a triangle through the hinge
        auto has_hinge_triangle = [&](Mask p) {
            for (int a = 0; a < gen.m.size(); ++a)
                for (int b = a + 1; b < gen.m.size(); ++b)
                    if (((p >> a) & 1) && ((p >> b) & 1) &&
                        gen.m.rank(bit(a) | bit(b) | bit(cert->hinge)) == 2)
                        return true;
            return false;
        };
        for (int i = 0; i + 1 < m; ++i) CHECK(has_hinge_triangle(cert->triads[i]));
        CHECK(!has_hinge_triangle(cert->triads.back()));
    }
    auto c = classify_matroid(gen_matroid(make(Family::hinged_triad_paddle, {{"m", 4}})).m);
    CHECK(c.outcome == Outcome::hinged_triad_paddle);
}

TEST_CASE("matroid generators route even-fan profiles to the right construction") {
    // two tipped interiors: the twisted-wheel graph route
    auto tw = gen_matroid(make(Family::even_fan_spike, {{"tipped", 1}}, {4, 2}));
    CHECK(tw.m.size() == 8);
    CHECK(tw.roles[0] == "side02");
    // two big tipless interiors: the warped-wheel graph route
    auto ww = gen_matroid(make(Family::even_fan_spike, {}, {6, 8}));
    CHECK(ww.m.size() == 14);
    auto wc = recognize_even_fan_spike(ww.m);
    REQUIRE(wc.has_value());
    CHECK(!wc->tip_cotip);
    CHECK(wc->degenerate);
    // all-pairs profiles: the free spike routes
    CHECK(gen_matroid(make(Family::even_fan_spike, {}, {2, 2, 2, 2})).m.size() == 8);
    CHECK(gen_matroid(make(Family::even_fan_spike, {{"tipped", 1}}, {2, 2, 2, 2})).m.size() == 10);
    // odd or undersized interiors are rejected outright
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_spike, {}, {3, 2})), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_spike, {}, {2})), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_spike, {{"tipped", 1}}, {2, 2})), ArgError);
}

TEST_CASE("even-fan-paddle petal profiles map onto multi-wheels") {
    auto gen = gen_matroid(make(Family::even_fan_paddle, {}, {3, 3, 4}));
    CHECK(gen.m.size() == 10);
    auto cert = recognize_even_fan_paddle(gen.m);
    REQUIRE(cert.has_value());
    std::multiset<int> sizes;
    for (Mask p : cert->petals) sizes.insert(popcount(p));
    CHECK(sizes == std::multiset<int>({3, 3, 4}));
    // hinge petal ends the list and contains the hinge
    CHECK(((cert->petals.back() >> cert->hinge) & 1) == 1);

    auto deg = gen_matroid(make(Family::even_fan_paddle, {}, {3, 3, 2}));
    auto dc = recognize_even_fan_paddle(deg.m);
    REQUIRE(dc.has_value());
    CHECK(dc->degenerate);

    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_paddle, {}, {3, 3})), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_paddle, {}, {4, 3, 4})), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_paddle, {}, {3, 3, 3})), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_paddle, {}, {3, 3, 3, 2})), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_paddle)), ArgError);
}

TEST_CASE("quasi-triad-paddle kinds route to the two graph extensions") {
    auto aug = gen_matroid(
        make(Family::quasi_triad_paddle, {{"kind", int(PetalKind::augmented_fan)}, {"s", 3}}));
    auto caug = gen_matroid(
        make(Family::quasi_triad_paddle, {{"kind", int(PetalKind::co_augmented_fan)}, {"s", 3}}));
    CHECK(aug.m.size() == 15);
    CHECK(caug.m.size() == 15);
    auto ca = recognize_quasi_triad_paddle(aug.m);
    REQUIRE(ca.has_value());
    CHECK(ca->kind == PetalKind::augmented_fan);
    auto cc = recognize_quasi_triad_paddle(caug.m);
    REQUIRE(cc.has_value());
    CHECK(cc->kind == PetalKind::co_augmented_fan);
    CHECK_THROWS_AS(gen_matroid(make(Family::quasi_triad_paddle, {{"kind", 9}, {"s", 3}})), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::quasi_triad_paddle, {{"s", 3}})), ArgError);
}

TEST_CASE("missing fixtures surface as argument errors, not substitutes") {
    // profiles with no direct construction need a pre-searched fixture file
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_spike, {}, {4, 4}), "no_such_dir"), ArgError);
    CHECK_THROWS_AS(gen_matroid(make(Family::even_fan_paddle, {{"gpc", 4}}), "no_such_dir"), ArgError);
    CHECK_THROWS_AS(
        gen_matroid(make(Family::quasi_triad_paddle, {{"kind", int(PetalKind::quad)}, {"s", 3}}),
                    "no_such_dir"),
        ArgError);
    CHECK(fixture_rel_path(make(Family::even_fan_spike, {}, {4, 2, 2})) ==
          "even_fan_spike/tipless_4_2_2.matroid");
    CHECK(fixture_rel_path(make(Family::even_fan_spike, {{"tipped", 1}}, {2, 2, 4})) ==
          "even_fan_spike/tc_4_2_2.matroid");
    CHECK(fixture_rel_path(make(Family::even_fan_spike, {}, {2, 2, 2})) == "");
    CHECK(fixture_rel_path(make(Family::even_fan_spike, {}, {6, 8})) == "");
    CHECK(fixture_rel_path(make(Family::even_fan_paddle, {{"gpc", 5}})) ==
          "even_fan_paddle/gpc_m5.matroid");
    CHECK(fixture_rel_path(make(Family::even_fan_paddle, {}, {3, 3, 4})) == "");
    CHECK(fixture_rel_path(make(Family::wheel, {{"r", 7}})) == "");
}

TEST_CASE("the dualize flag flips the matroid and the expected outcome") {
    auto plain = gen_matroid(make(Family::k3m, {{"m", 5}}));
    auto flipped = gen_matroid(make(Family::k3m, {{"m", 5}, {"dualize", 1}}));
    CHECK(dual(plain.m).same_table(flipped.m));
    CHECK(flipped.roles == plain.roles);
    CHECK(expected_outcome(make(Family::k3m, {{"m", 5}})) == Outcome::triad_paddle);
    CHECK(expected_outcome(make(Family::k3m, {{"m", 5}, {"dualize", 1}})) ==
          Outcome::triad_paddle_dual);
    // self-dual outcomes keep their tag
    CHECK(expected_outcome(make(Family::wheel, {{"r", 7}, {"dualize", 1}})) == Outcome::wheel);
    CHECK(expected_outcome(make(Family::twisted_wheel, {{"j", 2}, {"k", 2}, {"dualize", 1}})) ==
          Outcome::even_fan_spike_tip_cotip);
    CHECK(expected_outcome(make(Family::stretched_wheel, {{"r", 4}, {"k", 1}})) ==
          Outcome::even_fan_paddle_dual);
    CHECK(expected_outcome(make(Family::stretched_wheel, {{"r", 4}, {"k", 1}, {"dualize", 1}})) ==
          Outcome::even_fan_paddle);
}

TEST_CASE("every in-range family instance classifies as itself with no detachable pair") {
    std::vector<FamilySpec> specs = {
        make(Family::wheel, {{"r", 7}}),
        make(Family::whirl, {{"r", 7}}),
        make(Family::mutant_wheel, {{"r", 6}}),
        make(Family::twisted_wheel, {{"j", 4}, {"k", 1}}),
        make(Family::warped_wheel, {{"j", 1}, {"k", 2}}),
        make(Family::multi_wheel, {}, {1, 1, 2, 1}),
        make(Family::stretched_wheel, {{"r", 4}, {"k", 2}, {"dualize", 1}}),
        make(Family::k3m, {{"m", 5}}),
        make(Family::k3m_prime, {{"m", 3}, {"dualize", 1}}),
        make(Family::k3m_doubleprime, {{"m", 3}}),
        make(Family::free_spike, {{"r", 7}}),
        make(Family::free_spike, {{"r", 7}, {"tipped", 1}}),
        make(Family::hinged_triad_paddle, {{"m", 4}}),
        make(Family::even_fan_spike, {}, {8, 6}),
        make(Family::even_fan_paddle, {{"dualize", 1}}, {5, 5, 4}),
    };
    for (const auto& spec : specs) {
        CAPTURE(spec.to_string());
        auto gen = gen_matroid(spec);
        REQUIRE(gen.m.size() >= 13);
        CHECK(int(gen.roles.size()) == gen.m.size());
        auto c = classify_matroid(gen.m);
        CHECK(c.outcome == expected_outcome(spec));
        CHECK(!c.pair.has_value());
        CHECK(verify_classification(gen.m, c));
        CHECK(find_detachable_pairs(gen.m, SearchMode::first).empty());
    }
}

TEST_CASE("family specs serialize to JSON and back") {
    FamilySpec spec = make(Family::even_fan_spike, {{"tipped", 1}}, {4, 2, 2});
    auto j = spec.to_json();
    CHECK(j["family"] == "even_fan_spike");
    CHECK(j["tipped"] == 1);
    CHECK(j["lengths"] == nlohmann::json({4, 2, 2}));
    FamilySpec back = FamilySpec::from_json(j);
    CHECK(back.family == spec.family);
    CHECK(back.params == spec.params);
    CHECK(back.lengths == spec.lengths);
    CHECK(back.to_string() == "even_fan_spike tipped=1 lengths=4,2,2");

    CHECK_THROWS_AS(FamilySpec::from_json(nlohmann::json{{"family", "mobius"}}), ParseError);
    CHECK_THROWS_AS(FamilySpec::from_json(nlohmann::json{{"r", 5}}), ParseError);
    CHECK_THROWS_AS(FamilySpec::from_json(nlohmann::json{{"family", "wheel"}, {"r", "x"}}),
                    ParseError);
}
