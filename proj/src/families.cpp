#include "detkit/families.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "detkit/connectivity.hpp"
#include "detkit/io.hpp"

namespace detkit {

namespace {

struct FamilyInfo {
    Family family;
    const char* name;
    bool graphic;                      // buildable by gen_graph
    std::vector<const char*> scalars;  // accepted scalar params (dualize is implicit)
    bool takes_lengths;
};

const std::vector<FamilyInfo>& family_table() {
    static const std::vector<FamilyInfo> t = {
        {Family::wheel, "wheel", true, {"r"}, false},
        {Family::mutant_wheel, "mutant_wheel", true, {"r"}, false},
        {Family::twisted_wheel, "twisted_wheel", true, {"j", "k"}, false},
        {Family::warped_wheel, "warped_wheel", true, {"j", "k"}, false},
        {Family::multi_wheel, "multi_wheel", true, {}, true},
        {Family::stretched_wheel, "stretched_wheel", true, {"r", "k"}, false},
        {Family::k3m, "k3m", true, {"m"}, false},
        {Family::k3m_prime, "k3m_prime", true, {"m"}, false},
        {Family::k3m_doubleprime, "k3m_doubleprime", true, {"m"}, false},
        {Family::whirl, "whirl", false, {"r"}, false},
        {Family::free_spike, "free_spike", false, {"r", "tipped"}, false},
        {Family::hinged_triad_paddle, "hinged_triad_paddle", false, {"m"}, false},
        {Family::even_fan_spike, "even_fan_spike", false, {"tipped"}, true},
        {Family::even_fan_paddle, "even_fan_paddle", false, {"gpc"}, true},
        {Family::quasi_triad_paddle, "quasi_triad_paddle", false, {"kind", "s"}, false},
    };
    return t;
}

const FamilyInfo& info_of(Family f) {
    for (const auto& fi : family_table())
        if (fi.family == f) return fi;
    throw ArgError("unknown family tag");
}

[[noreturn]] void bad_params(Family f, const std::string& why) {
    throw ArgError(std::string(family_name(f)) + ": " + why);
}

// Reject typo'd keys so a misspelled parameter cannot select a default.
void check_keys(const FamilySpec& spec) {
    const FamilyInfo& fi = info_of(spec.family);
    for (const auto& [key, value] : spec.params) {
        (void)value;
        if (key == "dualize") continue;
        bool known = false;
        for (const char* s : fi.scalars) known = known || key == s;
        if (!known) bad_params(spec.family, "unknown parameter '" + key + "'");
    }
    if (!spec.lengths.empty() && !fi.takes_lengths)
        bad_params(spec.family, "does not take a lengths list");
}

int require(const FamilySpec& spec, const std::string& key, int lo, const char* what) {
    int v = spec.get(key, lo - 1);
    if (v < lo) bad_params(spec.family, std::string(what));
    return v;
}

// Graph constructions -------------------------------------------------------

std::string num(int i) { return std::to_string(i); }

// Hub 0, rim 1..r; spoke block first, rim block second (the whirl relaxes
// the rim block, which is then bits r..2r-1).
Graph build_wheel(int r) {
    Graph g;
    g.nv = r + 1;
    for (int i = 1; i <= r; ++i) g.add_edge(0, i, "spoke" + num(i));
    for (int i = 1; i <= r; ++i) g.add_edge(i, i % r + 1, "rim" + num(i));
    return g;
}

// Wheel with the first two spokes each split by a new vertex that is then
// tied to the next rim vertex around the cycle.
Graph build_mutant_wheel(int r) {
    Graph g;
    g.nv = r + 3;
    int x = r + 1, y = r + 2;
    g.add_edge(0, x, "spoke1.a");
    g.add_edge(x, 1, "spoke1.b");
    g.add_edge(x, 2, "tie1");
    g.add_edge(0, y, "spoke2.a");
    g.add_edge(y, 2, "spoke2.b");
    g.add_edge(y, 3, "tie2");
    for (int i = 3; i <= r; ++i) g.add_edge(0, i, "spoke" + num(i));
    for (int i = 1; i <= r; ++i) g.add_edge(i, i % r + 1, "rim" + num(i));
    return g;
}

// K_4 on {0,1} and {2,3} with the two disjoint edges (0,1) and (2,3)
// subdivided j and k times; vertices inside (0,1) are tied to 2, vertices
// inside (2,3) are tied to 0.
Graph build_twisted_wheel(int j, int k) {
    Graph g;
    g.nv = 4;
    g.add_edge(0, 2, "side02");
    g.add_edge(0, 3, "side03");
    g.add_edge(1, 2, "side12");
    g.add_edge(1, 3, "side13");
    int prev = 0;
    for (int t = 0; t < j; ++t) {
        int w = g.add_vertex();
        g.add_edge(prev, w, "epath" + num(t));
        g.add_edge(w, 2, "etie" + num(t));
        prev = w;
    }
    g.add_edge(prev, 1, j ? "epath" + num(j) : "e");
    prev = 2;
    for (int t = 0; t < k; ++t) {
        int w = g.add_vertex();
        g.add_edge(prev, w, "fpath" + num(t));
        g.add_edge(w, 0, "ftie" + num(t));
        prev = w;
    }
    g.add_edge(prev, 3, k ? "fpath" + num(k) : "f");
    return g;
}

// Rank-4 wheel, hub 0 and rim 1..4, with the spokes to 1 and 3 subdivided
// j and k times; vertices inside spoke 1 are tied to rim vertex 2, vertices
// inside spoke 3 to rim vertex 4.
Graph build_warped_wheel(int j, int k) {
    Graph g;
    g.nv = 5;
    g.add_edge(0, 2, "spoke2");
    g.add_edge(0, 4, "spoke4");
    for (int i = 1; i <= 4; ++i) g.add_edge(i, i % 4 + 1, "rim" + num(i));
    int prev = 0;
    for (int t = 0; t < j; ++t) {
        int w = g.add_vertex();
        g.add_edge(prev, w, "branch1.seg" + num(t));
        g.add_edge(w, 2, "branch1.tie" + num(t));
        prev = w;
    }
    g.add_edge(prev, 1, "branch1.seg" + num(j));
    prev = 0;
    for (int t = 0; t < k; ++t) {
        int w = g.add_vertex();
        g.add_edge(prev, w, "branch3.seg" + num(t));
        g.add_edge(w, 4, "branch3.tie" + num(t));
        prev = w;
    }
    g.add_edge(prev, 3, "branch3.seg" + num(k));
    return g;
}

// Vertices u=0, h=1, v=2: an h-v axle edge plus one u-v strip per entry of
// `subs`, each subdivided subs[i] times with every inner vertex tied to h.
// (The u-h edge of the base path is never materialized: the construction
// deletes it at the end.)
Graph build_multi_wheel(const std::vector<int>& subs) {
    Graph g;
    g.nv = 3;
    g.add_edge(1, 2, "axle");
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i] == 0) {
            g.add_edge(0, 2, "strip" + num(int(i)));
            continue;
        }
        int prev = 0;
        for (int t = 0; t < subs[i]; ++t) {
            int w = g.add_vertex();
            g.add_edge(prev, w, "strip" + num(int(i)) + ".seg" + num(t));
            g.add_edge(w, 1, "strip" + num(int(i)) + ".tie" + num(t));
            prev = w;
        }
        g.add_edge(prev, 2, "strip" + num(int(i)) + ".seg" + num(subs[i]));
    }
    return g;
}

// Wheel with hub 0 plus an apex z adjacent to the hub and to rim vertex 1;
// the rim edge (1,2) is subdivided k times and every inner vertex tied to z.
Graph build_stretched_wheel(int r, int k) {
    Graph g;
    g.nv = r + 2;
    int z = r + 1;
    for (int i = 1; i <= r; ++i) g.add_edge(0, i, "spoke" + num(i));
    for (int i = 2; i <= r; ++i) g.add_edge(i, i % r + 1, "rim" + num(i));
    g.add_edge(z, 0, "zx");
    g.add_edge(z, 1, "zy");
    int prev = 1;
    for (int t = 0; t < k; ++t) {
        int w = g.add_vertex();
        g.add_edge(prev, w, "stretch" + num(t));
        g.add_edge(w, z, "ztie" + num(t));
        prev = w;
    }
    g.add_edge(prev, 2, "stretch" + num(k));
    return g;
}

// Parts {0,1,2} and {3..m+2}; star of class vertex j is contiguous.
Graph build_k3m(int m) {
    Graph g;
    g.nv = m + 3;
    for (int j = 0; j < m; ++j)
        for (int a = 0; a < 3; ++a) g.add_edge(a, 3 + j, "star" + num(j) + "." + num(a));
    return g;
}

// K_{3,m} plus an apex a adjacent to all of the 3-side, then b adjacent to
// a and to the first and third 3-side vertices.
Graph build_k3m_prime(int m) {
    Graph g = build_k3m(m);
    int a = g.add_vertex(), b = g.add_vertex();
    g.add_edge(a, 0, "a1");
    g.add_edge(a, 1, "a2");
    g.add_edge(a, 2, "a3");
    g.add_edge(b, a, "ba");
    g.add_edge(b, 0, "b1");
    g.add_edge(b, 2, "b3");
    return g;
}

// K_{3,m} plus a adjacent to the first two 3-side vertices, b adjacent to a
// and the last two, and a direct edge between the first and third.
Graph build_k3m_doubleprime(int m) {
    Graph g = build_k3m(m);
    int a = g.add_vertex(), b = g.add_vertex();
    g.add_edge(a, 0, "a1");
    g.add_edge(a, 1, "a2");
    g.add_edge(b, a, "ba");
    g.add_edge(b, 1, "b2");
    g.add_edge(b, 2, "b3");
    g.add_edge(0, 2, "u13");
    return g;
}

// Matroid constructions ------------------------------------------------------

int next_prime_above(int v) {
    auto prime = [](int x) {
        for (int d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return x > 1;
    };
    int p = v + 1;
    while (!prime(p)) ++p;
    return p;
}

// Column-builder over GF(p): rows[r][col].
struct RepBuilder {
    GfpMatrix rep;
    std::vector<std::string> roles;
    explicit RepBuilder(int p, int rank) {
        rep.p = p;
        rep.rows.assign(rank, {});
    }
    // entries: (row, value) pairs, reduced mod p.
    void col(std::initializer_list<std::pair<int, int>> entries, std::string role) {
        for (auto& row : rep.rows) row.push_back(0);
        int c = int(rep.rows[0].size()) - 1;
        for (auto [r, v] : entries) rep.rows[r][c] = ((v % rep.p) + rep.p) % rep.p;
        roles.push_back(std::move(role));
    }
};

// Legs {e_i, e_i + w} over GF(p), w the all-ones vector, p the least prime
// above r+1 so that no transversal of the legs is dependent.
GenMatroid build_free_spike(int r, TableLimits lim) {
    int p = next_prime_above(r + 1);
    RepBuilder b(p, r);
    for (int i = 0; i < r; ++i) {
        b.col({{i, 1}}, "leg" + num(i) + ".a");
        std::vector<std::pair<int, int>> ones;
        for (int row = 0; row < r; ++row) ones.emplace_back(row, 1 + (row == i));
        for (auto& row : b.rep.rows) row.push_back(0);
        int c = int(b.rep.rows[0].size()) - 1;
        for (auto [row, v] : ones) b.rep.rows[row][c] = v % p;
        b.roles.push_back("leg" + num(i) + ".b");
    }
    return {from_gfp_matrix(b.rep, lim), std::move(b.roles)};
}

// Boundary form with both a tip and a cotip: legs {e_i, e_i + t} share the
// tip direction t = e_{r-1}; the cotip is the sum of the leg directions.
// Every leg plus {tip, cotip} is a four-element fan from tip to cotip.
GenMatroid build_free_spike_tip_cotip(int r, TableLimits lim) {
    int p = next_prime_above(r + 1);
    RepBuilder b(p, r);
    for (int i = 0; i < r - 1; ++i) {
        b.col({{i, 1}}, "leg" + num(i) + ".a");
        b.col({{i, 1}, {r - 1, 1}}, "leg" + num(i) + ".b");
    }
    b.col({{r - 1, 1}}, "tip");
    std::vector<std::pair<int, int>> sum;
    for (int i = 0; i < r - 1; ++i) sum.emplace_back(i, 1);
    for (auto& row : b.rep.rows) row.push_back(0);
    for (auto [row, v] : sum) b.rep.rows[row].back() = v;
    b.roles.push_back("cotip");
    return {from_gfp_matrix(b.rep, lim), std::move(b.roles)};
}

// m planes through a common 4-point line over GF(7), each carrying the six
// points of a rank-3 whirl-free quadrilateral (three on the line, three
// off); the first m-1 planes attach through the surviving line point, the
// last through the three deleted ones. Keeping one line point yields the
// hinge x; each plane's off-line triple is a petal triad.
GenMatroid build_hinged_triad_paddle(int m, TableLimits lim) {
    const int p = 7;
    RepBuilder b(p, m + 2);
    // line points: x = e0, y = e1, z = e0+e1, w = e0+2e1 (y, z, w deleted).
    for (int i = 0; i < m; ++i) {
        int u = 2 + i;
        // copy i attaches along (t1,t2,t3) with t3 = t1 + t2:
        // off-line points t1+u, t1+2u, t1-t2+2u.
        bool last = i == m - 1;
        int t1_0 = last ? 0 : 1, t1_1 = last ? 1 : 0;  // t1 = e1 (last) or e0
        int t2_0 = last ? 1 : 0, t2_1 = last ? 1 : 1;  // t2 = z (last) or e1
        std::string tag = "petal" + num(i + 1) + ".";
        b.col({{0, t1_0}, {1, t1_1}, {u, 1}}, tag + "a");
        b.col({{0, t1_0}, {1, t1_1}, {u, 2}}, tag + "b");
        b.col({{0, t1_0 - t2_0}, {1, t1_1 - t2_1}, {u, 2}}, tag + "c");
    }
    b.col({{0, 1}}, "hinge");
    return {from_gfp_matrix(b.rep, lim), std::move(b.roles)};
}

// Fixture routing ------------------------------------------------------------

std::string joined(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "_" : "") + num(v[i]);
    return s;
}

std::vector<int> sorted_desc(std::vector<int> v) {
    std::sort(v.rbegin(), v.rend());
    return v;
}

Matroid load_fixture(const FamilySpec& spec, const std::string& dir, const std::string& rel,
                     TableLimits lim) {
    std::string path = dir + "/" + rel;
    std::ifstream in(path);
    if (!in)
        bad_params(spec.family, "no direct construction for these parameters and no fixture at " +
                                    path + " (run the fixture search to produce one)");
    MatroidFile file = read_matroid_file(in);
    return to_matroid(file, lim);
}

// Petal validation helpers ---------------------------------------------------

// Interior sizes of an even-fan-spike certificate: petal sizes with the tip
// and cotip removed (the pure {tip,cotip} part of a degenerate certificate
// contributes nothing).
std::vector<int> efs_interiors(const EfsCert& c) {
    std::vector<int> out;
    for (Mask p : c.petals) {
        if (c.tip_cotip) p &= ~(bit(c.tip) | bit(c.cotip));
        if (p) out.push_back(popcount(p));
    }
    return sorted_desc(out);
}

std::vector<int> petal_sizes(const std::vector<Mask>& petals) {
    std::vector<int> out;
    out.reserve(petals.size());
    for (Mask p : petals) out.push_back(popcount(p));
    return sorted_desc(out);
}

[[noreturn]] void construction_bug(const FamilySpec& spec, const std::string& why) {
    throw std::logic_error(std::string(family_name(spec.family)) + " construction failed validation: " +
                           why + " (" + spec.to_string() + ")");
}

// Post-validation: 3-connected plus the family's own recognizer, with the
// declared shape (petal sizes, kind, flags) checked against the certificate.
void validate(const Matroid& m, const FamilySpec& spec) {
    if (!is_3connected(m)) construction_bug(spec, "not 3-connected");
    switch (spec.family) {
        case Family::wheel: {
            auto c = recognize_wheel_whirl(m);
            if (!c || !c->is_wheel) construction_bug(spec, "wheel recognizer rejected it");
            break;
        }
        case Family::whirl: {
            auto c = recognize_wheel_whirl(m);
            if (!c || c->is_wheel) construction_bug(spec, "whirl recognizer rejected it");
            break;
        }
        case Family::mutant_wheel: {
            if (!recognize_accordion(m)) construction_bug(spec, "not an accordion");
            break;
        }
        case Family::twisted_wheel: {
            auto c = recognize_even_fan_spike(m);
            if (!c || !c->tip_cotip) construction_bug(spec, "not an even-fan-spike with tip and cotip");
            break;
        }
        case Family::warped_wheel: {
            auto c = recognize_even_fan_spike(m);
            if (!c || c->tip_cotip || !c->degenerate)
                construction_bug(spec, "not a degenerate tipless even-fan-spike");
            break;
        }
        case Family::multi_wheel:
        case Family::stretched_wheel: {
            Matroid host = spec.family == Family::multi_wheel ? m : dual(m);
            if (!recognize_even_fan_paddle(host)) construction_bug(spec, "not an even-fan-paddle");
            break;
        }
        case Family::k3m: {
            if (!recognize_triad_paddle(m)) construction_bug(spec, "not a triad-paddle");
            break;
        }
        case Family::k3m_prime:
        case Family::k3m_doubleprime: {
            auto c = recognize_quasi_triad_paddle(m);
            PetalKind want = spec.family == Family::k3m_prime ? PetalKind::co_augmented_fan
                                                              : PetalKind::augmented_fan;
            if (!c || c->kind != want) construction_bug(spec, "special petal has the wrong shape");
            break;
        }
        case Family::free_spike: {
            if (spec.flag("tipped")) {
                auto c = recognize_even_fan_spike(m);
                if (!c || !c->tip_cotip) construction_bug(spec, "tip/cotip form rejected");
            } else {
                auto c = recognize_spike(m);
                if (!c) construction_bug(spec, "spike recognizer rejected it");
                // freeness: every transversal of the legs is a basis
                int r = int(c->legs.size());
                for (Mask pick = 0; pick < (Mask(1) << r); ++pick) {
                    Mask t = 0;
                    for (int i = 0; i < r; ++i) {
                        Mask leg = c->legs[i];
                        Mask lo = leg & (~leg + 1);
                        t |= (pick >> i) & 1 ? leg ^ lo : lo;
                    }
                    if (m.rank(t) != r) construction_bug(spec, "dependent transversal: not free");
                }
            }
            break;
        }
        case Family::hinged_triad_paddle: {
            if (!recognize_hinged_triad_paddle(m)) construction_bug(spec, "not a hinged triad-paddle");
            break;
        }
        case Family::even_fan_spike: {
            auto c = recognize_even_fan_spike(m);
            if (!c) construction_bug(spec, "not an even-fan-spike");
            if (c->tip_cotip != spec.flag("tipped")) construction_bug(spec, "tip/cotip flag mismatch");
            if (efs_interiors(*c) != sorted_desc(spec.lengths))
                construction_bug(spec, "fan interior sizes differ from the requested profile");
            break;
        }
        case Family::even_fan_paddle: {
            auto c = recognize_even_fan_paddle(m);
            if (!c) construction_bug(spec, "not an even-fan-paddle");
            // The decomposition is not unique in sizes (the hinge element can
            // join any petal whose fan closes through it), so pin only the
            // petal count; the gpc form's all-triangle profile is stable.
            std::size_t want = spec.lengths.empty() ? std::size_t(spec.get("gpc", 0)) : spec.lengths.size();
            if (c->petals.size() != want) construction_bug(spec, "wrong number of petals");
            if (spec.lengths.empty()) {
                std::vector<int> gpc_sizes(want - 1, 3);
                gpc_sizes.push_back(4);
                if (petal_sizes(c->petals) != sorted_desc(gpc_sizes))
                    construction_bug(spec, "petal sizes differ from the plane-bundle profile");
            }
            break;
        }
        case Family::quasi_triad_paddle: {
            auto c = recognize_quasi_triad_paddle(m);
            if (!c || int(c->kind) != spec.get("kind", -1))
                construction_bug(spec, "special petal has the wrong shape");
            break;
        }
    }
}

}  // namespace

const char* family_name(Family f) { return info_of(f).name; }

std::optional<Family> family_from_name(const std::string& name) {
    for (const auto& fi : family_table())
        if (name == fi.name) return fi.family;
    return std::nullopt;
}

bool is_graph_family(Family f) { return info_of(f).graphic; }

std::string FamilySpec::to_string() const {
    std::string s = family_name(family);
    for (const auto& [k, v] : params) s += " " + k + "=" + std::to_string(v);
    if (!lengths.empty()) {
        s += " lengths=";
        for (std::size_t i = 0; i < lengths.size(); ++i)
            s += (i ? "," : "") + std::to_string(lengths[i]);
    }
    return s;
}

nlohmann::ordered_json FamilySpec::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    for (const auto& [k, v] : params) j[k] = v;
    if (!lengths.empty()) j["lengths"] = lengths;
    return j;
}

FamilySpec FamilySpec::from_json(const nlohmann::json& j) {
    FamilySpec spec;
    if (!j.contains("family") || !j["family"].is_string())
        throw ParseError("family spec needs a \"family\" string", 0);
    auto f = family_from_name(j["family"].get<std::string>());
    if (!f) throw ParseError("unknown family \"" + j["family"].get<std::string>() + "\"", 0);
    spec.family = *f;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "family") continue;
        if (it.key() == "lengths") {
            if (!it->is_array()) throw ParseError("\"lengths\" must be an array", 0);
            spec.lengths = it->get<std::vector<int>>();
            continue;
        }
        if (!it->is_number_integer()) throw ParseError("parameter \"" + it.key() + "\" must be an integer", 0);
        spec.params[it.key()] = it->get<int>();
    }
    return spec;
}

Graph gen_graph(const FamilySpec& spec) {
    check_keys(spec);
    if (!is_graph_family(spec.family))
        bad_params(spec.family, "is a matroid family; use gen_matroid");
    if (spec.flag("dualize")) bad_params(spec.family, "dualize applies to gen_matroid only");
    Graph g;
    switch (spec.family) {
        case Family::wheel:
            g = build_wheel(require(spec, "r", 3, "rim size r must be at least 3"));
            break;
        case Family::mutant_wheel:
            g = build_mutant_wheel(require(spec, "r", 3, "base rim size r must be at least 3"));
            break;
        case Family::twisted_wheel: {
            int j = require(spec, "j", 0, "subdivision count j must be at least 0");
            int k = require(spec, "k", 0, "subdivision count k must be at least 0");
            if (j + k < 1) bad_params(spec.family, "at least one of the two sides must be subdivided (j+k >= 1)");
            g = build_twisted_wheel(j, k);
            break;
        }
        case Family::warped_wheel: {
            int j = require(spec, "j", 1, "subdivision count j must be at least 1");
            int k = require(spec, "k", 1, "subdivision count k must be at least 1");
            g = build_warped_wheel(j, k);
            break;
        }
        case Family::multi_wheel: {
            const auto& s = spec.lengths;
            if (int(s.size()) < 3) bad_params(spec.family, "needs at least 3 strips (lengths list)");
            int zeros = 0;
            for (int v : s) {
                if (v < 0) bad_params(spec.family, "subdivision counts must be nonnegative");
                zeros += v == 0;
            }
            if (zeros > (s.size() == 3 ? 1 : 0))
                bad_params(spec.family,
                           "every strip is subdivided at least once; only a three-strip instance may keep one strip whole");
            g = build_multi_wheel(s);
            break;
        }
        case Family::stretched_wheel: {
            int r = require(spec, "r", 3, "rim size r must be at least 3");
            int k = require(spec, "k", 1, "stretch count k must be at least 1");
            g = build_stretched_wheel(r, k);
            break;
        }
        case Family::k3m:
            g = build_k3m(require(spec, "m", 3, "class count m must be at least 3"));
            break;
        case Family::k3m_prime:
            g = build_k3m_prime(require(spec, "m", 3, "class count m must be at least 3"));
            break;
        case Family::k3m_doubleprime:
            g = build_k3m_doubleprime(require(spec, "m", 3, "class count m must be at least 3"));
            break;
        default:
            bad_params(spec.family, "is a matroid family; use gen_matroid");
    }
    if (!is_simple(g)) construction_bug(spec, "graph is not simple");
    if (g.ne() >= 13 && !is_simple_3connected(g)) construction_bug(spec, "graph is not 3-connected");
    return g;
}

std::string fixture_rel_path(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::even_fan_spike: {
            auto v = sorted_desc(spec.lengths);
            if (v.size() < 2) return "";
            bool direct = std::all_of(v.begin(), v.end(), [](int x) { return x == 2; });
            if (v.size() == 2) direct = spec.flag("tipped") || v[1] >= 6;
            if (direct) return "";
            return std::string("even_fan_spike/") + (spec.flag("tipped") ? "tc_" : "tipless_") +
                   joined(v) + ".matroid";
        }
        case Family::even_fan_paddle:
            if (spec.lengths.empty() && spec.get("gpc", 0) >= 3)
                return "even_fan_paddle/gpc_m" + num(spec.get("gpc", 0)) + ".matroid";
            return "";
        case Family::quasi_triad_paddle: {
            int kind = spec.get("kind", -1);
            if (kind == int(PetalKind::quad))
                return "quasi_triad_paddle/quad_s" + num(spec.get("s", 0)) + ".matroid";
            if (kind == int(PetalKind::near_quad))
                return "quasi_triad_paddle/near_quad_s" + num(spec.get("s", 0)) + ".matroid";
            return "";
        }
        default:
            return "";
    }
}

GenMatroid gen_matroid(const FamilySpec& spec, const std::string& fixtures_dir, TableLimits lim) {
    check_keys(spec);
    GenMatroid out{Matroid(0, {0}), {}};
    auto from_own_graph = [&](const FamilySpec& gspec) {
        FamilySpec core = gspec;
        core.params.erase("dualize");
        Graph g = gen_graph(core);
        GenMatroid gm{from_graph(g, lim), {}};
        gm.roles.reserve(g.ne());
        for (int e = 0; e < g.ne(); ++e) gm.roles.push_back(g.label_of(e));
        return gm;
    };
    switch (spec.family) {
        case Family::wheel:
        case Family::mutant_wheel:
        case Family::twisted_wheel:
        case Family::warped_wheel:
        case Family::multi_wheel:
        case Family::stretched_wheel:
        case Family::k3m:
        case Family::k3m_prime:
        case Family::k3m_doubleprime:
            out = from_own_graph(spec);
            break;
        case Family::whirl: {
            int r = require(spec, "r", 3, "rank r must be at least 3");
            FamilySpec wspec;
            wspec.family = Family::wheel;
            wspec.params["r"] = r;
            GenMatroid wheel = from_own_graph(wspec);
            Mask rim = (full_mask(2 * r)) & ~full_mask(r);
            out = {relax(wheel.m, rim), std::move(wheel.roles)};
            break;
        }
        case Family::free_spike: {
            int r = require(spec, "r", 4, "rank r must be at least 4");
            out = spec.flag("tipped") ? build_free_spike_tip_cotip(r, lim) : build_free_spike(r, lim);
            break;
        }
        case Family::hinged_triad_paddle: {
            int m = require(spec, "m", 3, "petal count m must be at least 3");
            out = build_hinged_triad_paddle(m, lim);
            break;
        }
        case Family::even_fan_spike: {
            const auto& L = spec.lengths;
            if (L.size() < 2) bad_params(spec.family, "needs at least two fan interior sizes (lengths list)");
            for (int v : L)
                if (v < 2 || v % 2) bad_params(spec.family, "fan interior sizes must be even and at least 2");
            bool tc = spec.flag("tipped");
            auto v = sorted_desc(L);
            if (L.size() == 2 && tc) {
                if (v[0] + v[1] < 6)
                    bad_params(spec.family, "two interiors of size 2 only span a 4-element wheel rim; grow one side");
                FamilySpec tw;
                tw.family = Family::twisted_wheel;
                tw.params["j"] = (v[0] - 2) / 2;
                tw.params["k"] = (v[1] - 2) / 2;
                out = from_own_graph(tw);
            } else if (L.size() == 2 && v[1] >= 6) {
                FamilySpec ww;
                ww.family = Family::warped_wheel;
                ww.params["j"] = (v[0] - 4) / 2;
                ww.params["k"] = (v[1] - 4) / 2;
                out = from_own_graph(ww);
            } else if (L.size() >= 3 && v[0] == 2) {
                out = tc ? build_free_spike_tip_cotip(int(L.size()) + 1, lim)
                         : build_free_spike(int(L.size()), lim);
            } else {
                out = {load_fixture(spec, fixtures_dir, fixture_rel_path(spec), lim), {}};
            }
            break;
        }
        case Family::even_fan_paddle: {
            if (!spec.lengths.empty()) {
                const auto& L = spec.lengths;
                int mcount = int(L.size());
                if (mcount < 3) bad_params(spec.family, "needs at least three petals");
                for (int i = 0; i + 1 < mcount; ++i)
                    if (L[i] < 3 || L[i] % 2 == 0)
                        bad_params(spec.family, "regular petal sizes must be odd and at least 3");
                if (L.back() < 2 || L.back() % 2)
                    bad_params(spec.family, "hinge petal size must be even and at least 2");
                if (L.back() == 2 && mcount != 3)
                    bad_params(spec.family, "a size-2 hinge petal forces exactly three petals");
                FamilySpec mw;
                mw.family = Family::multi_wheel;
                for (int i = 0; i + 1 < mcount; ++i) mw.lengths.push_back((L[i] - 1) / 2);
                mw.lengths.push_back((L.back() - 2) / 2);
                out = from_own_graph(mw);
            } else if (spec.get("gpc", 0) >= 3) {
                out = {load_fixture(spec, fixtures_dir, fixture_rel_path(spec), lim), {}};
            } else {
                bad_params(spec.family, "give petal sizes (lengths) or gpc=m for the plane-bundle form");
            }
            break;
        }
        case Family::quasi_triad_paddle: {
            int kind = spec.get("kind", -1);
            int s = require(spec, "s", 2, "triad count s must be at least 2");
            if (kind == int(PetalKind::augmented_fan) || kind == int(PetalKind::co_augmented_fan)) {
                FamilySpec gs;
                gs.family = kind == int(PetalKind::augmented_fan) ? Family::k3m_doubleprime
                                                                  : Family::k3m_prime;
                gs.params["m"] = s;
                out = from_own_graph(gs);
            } else if (kind == int(PetalKind::quad) || kind == int(PetalKind::near_quad)) {
                out = {load_fixture(spec, fixtures_dir, fixture_rel_path(spec), lim), {}};
            } else {
                bad_params(spec.family, "kind must name one of the four special petal shapes (0..3)");
            }
            break;
        }
        default:
            construction_bug(spec, "unhandled family");
    }
    if (out.roles.empty()) out.roles.assign(std::size_t(out.m.size()), "");
    validate(out.m, spec);
    if (spec.flag("dualize")) out.m = dual(out.m);
    return out;
}

Outcome expected_outcome(const FamilySpec& spec) {
    bool dualized = spec.flag("dualize");
    auto sided = [&](Outcome plain, Outcome dual_side) { return dualized ? dual_side : plain; };
    switch (spec.family) {
        case Family::wheel: return Outcome::wheel;
        case Family::whirl: return Outcome::whirl;
        case Family::mutant_wheel: return Outcome::accordion;
        case Family::twisted_wheel: return Outcome::even_fan_spike_tip_cotip;
        case Family::warped_wheel: return Outcome::even_fan_spike;
        case Family::multi_wheel: return sided(Outcome::even_fan_paddle, Outcome::even_fan_paddle_dual);
        case Family::stretched_wheel: return sided(Outcome::even_fan_paddle_dual, Outcome::even_fan_paddle);
        case Family::k3m: return sided(Outcome::triad_paddle, Outcome::triad_paddle_dual);
        case Family::k3m_prime:
        case Family::k3m_doubleprime:
            return sided(Outcome::quasi_triad_paddle, Outcome::quasi_triad_paddle_dual);
        case Family::free_spike:
        case Family::even_fan_spike:
            return spec.flag("tipped") ? Outcome::even_fan_spike_tip_cotip : Outcome::even_fan_spike;
        case Family::hinged_triad_paddle:
            return sided(Outcome::hinged_triad_paddle, Outcome::hinged_triad_paddle_dual);
        case Family::even_fan_paddle:
            return sided(Outcome::even_fan_paddle, Outcome::even_fan_paddle_dual);
        case Family::quasi_triad_paddle:
            return sided(Outcome::quasi_triad_paddle, Outcome::quasi_triad_paddle_dual);
    }
    throw ArgError("unknown family tag");
}

}  // namespace detkit
