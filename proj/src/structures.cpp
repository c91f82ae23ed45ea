#include "detkit/structures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace detkit {

namespace {

constexpr long kSearchCap = 1'000'000;

}  // namespace

std::vector<SmallSet> small_dependents(const Matroid& m, DepKind kind, int kmax) {
    if (kmax < 3 || kmax > 5) throw ArgError("kmax must be 3, 4, or 5");
    std::vector<SmallSet> out;
    for (int k = 1; k <= kmax; ++k) {
        for_each_ksubset(m.size(), k, [&](Mask x) {
            bool hit = (kind == DepKind::circuit) ? m.is_circuit(x) : m.is_cocircuit(x);
            if (hit) out.push_back(SmallSet{x, kind, k});
        });
    }
    std::sort(out.begin(), out.end(),
              [](const SmallSet& a, const SmallSet& b) { return a.mask < b.mask; });
    return out;
}

std::vector<Mask> triangles_of(const Matroid& m) {
    std::vector<Mask> out;
    for_each_ksubset(m.size(), 3, [&](Mask x) {
        if (m.is_circuit(x)) out.push_back(x);
    });
    return out;
}

std::vector<Mask> triads_of(const Matroid& m) {
    std::vector<Mask> out;
    for_each_ksubset(m.size(), 3, [&](Mask x) {
        if (m.is_cocircuit(x)) out.push_back(x);
    });
    return out;
}

std::vector<Mask> quads_of(const Matroid& m) {
    std::vector<Mask> out;
    for_each_ksubset(m.size(), 4, [&](Mask x) {
        if (m.is_circuit(x) && m.is_cocircuit(x)) out.push_back(x);
    });
    return out;
}

// Fan machinery --------------------------------------------------------------

namespace {

// pair-mask -> third elements completing a triangle (or triad).
using PairMap = std::map<Mask, std::vector<int>>;

PairMap pair_map(const std::vector<Mask>& triples) {
    PairMap out;
    for (Mask t : triples) {
        for_each_bit(t, [&](int e) { out[t & ~bit(e)].push_back(e); });
    }
    return out;
}

const std::vector<int>* completions(const PairMap& pm, int a, int b) {
    auto it = pm.find(bit(a) | bit(b));
    return it == pm.end() ? nullptr : &it->second;
}

struct FanSearch {
    const PairMap& tri;
    const PairMap& tria;
    long nodes = 0;
    std::set<std::vector<int>> visited{};
    std::vector<std::vector<int>> done{};      // stuck (maximal) sequences
    std::vector<bool> done_starts_triangle{};  // kind of first triple per entry

    const PairMap& map_for(bool triangle) const { return triangle ? tri : tria; }

    static std::vector<int> canon_key(const std::vector<int>& seq) {
        std::vector<int> rev(seq.rbegin(), seq.rend());
        return std::min(seq, rev);
    }

    // first_kind = kind of triple (seq[0],seq[1],seq[2]).
    void grow(std::vector<int>& seq, Mask used, bool first_kind) {
        if (++nodes > kSearchCap)
            throw CapError("fan search exceeded the node cap (10^6)");
        if (!visited.insert(canon_key(seq)).second) return;

        int len = static_cast<int>(seq.size());
        // Triple starting at index i has kind first_kind ^ (i odd); the last
        // triple starts at len-3.
        bool last_kind = first_kind ^ ((len - 3) % 2 == 1);

        bool extended = false;
        if (const auto* cand = completions(map_for(!last_kind), seq[len - 2], seq[len - 1])) {
            for (int x : *cand) {
                if (has(used, x)) continue;
                extended = true;
                seq.push_back(x);
                grow(seq, used | bit(x), first_kind);
                seq.pop_back();
            }
        }
        if (const auto* cand = completions(map_for(!first_kind), seq[0], seq[1])) {
            for (int x : *cand) {
                if (has(used, x)) continue;
                extended = true;
                seq.insert(seq.begin(), x);
                grow(seq, used | bit(x), !first_kind);
                seq.erase(seq.begin());
            }
        }
        if (!extended) {
            done.push_back(seq);
            done_starts_triangle.push_back(first_kind);
        }
    }
};

bool triple_kind_ok(const Matroid& m, int a, int b, int c, bool triangle) {
    Mask t = bit(a) | bit(b) | bit(c);
    return triangle ? m.is_circuit(t) : m.is_cocircuit(t);
}

}  // namespace

bool is_fan_ordering(const Matroid& m, const std::vector<int>& order, bool starts_triangle) {
    int len = static_cast<int>(order.size());
    Mask seen = 0;
    for (int e : order) {
        if (e < 0 || e >= m.size() || has(seen, e)) return false;
        seen |= bit(e);
    }
    if (len < 3) return true;
    for (int i = 0; i + 2 < len; ++i) {
        bool want_triangle = starts_triangle ^ (i % 2 == 1);
        if (!triple_kind_ok(m, order[i], order[i + 1], order[i + 2], want_triangle))
            return false;
    }
    return true;
}

std::optional<Fan> cyclic_fan_cover(const Matroid& m) {
    int n = m.size();
    if (n < 4 || n % 2 != 0) return std::nullopt;
    auto tri = pair_map(triangles_of(m));
    auto tria = pair_map(triads_of(m));
    if (tri.empty() || tria.empty()) return std::nullopt;

    long nodes = 0;
    std::vector<int> seq{0};
    Mask used = bit(0);

    // Extend from the fixed start; triple starting at index i has kind
    // base ^ (i odd); wrap triples checked at full length.
    std::function<bool(bool)> dfs = [&](bool base) -> bool {
        if (++nodes > kSearchCap) throw CapError("cyclic cover search exceeded the node cap");
        int len = static_cast<int>(seq.size());
        if (len == n) {
            return triple_kind_ok(m, seq[n - 2], seq[n - 1], seq[0], base ^ ((n - 2) % 2)) &&
                   triple_kind_ok(m, seq[n - 1], seq[0], seq[1], base ^ ((n - 1) % 2));
        }
        for (int x = 0; x < n; ++x) {
            if (has(used, x)) continue;
            if (len >= 2 &&
                !triple_kind_ok(m, seq[len - 2], seq[len - 1], x, base ^ ((len - 2) % 2)))
                continue;
            seq.push_back(x);
            used |= bit(x);
            if (dfs(base)) return true;
            used &= ~bit(x);
            seq.pop_back();
        }
        return false;
    };

    for (bool base : {true, false}) {
        seq.assign(1, 0);
        used = bit(0);
        if (dfs(base)) {
            Fan f;
            f.order = seq;
            f.starts_triangle = base;
            f.maximal = true;
            f.cyclic = true;
            return f;
        }
    }
    return std::nullopt;
}

namespace {

// Canonical linear ordering: lexicographically smaller end first; a length-4
// fan's interchangeable middle pair sorted ascending; length-3 sorted outright.
void canonicalize(const Matroid& m, std::vector<int>& order, bool& starts_triangle) {
    int len = static_cast<int>(order.size());
    if (len == 3) {
        std::sort(order.begin(), order.end());
        return;
    }
    if (order.front() > order.back()) {
        std::reverse(order.begin(), order.end());
        if (len % 2 == 0) starts_triangle = !starts_triangle;
    }
    if (len == 4 && order[1] > order[2]) {
        std::vector<int> alt{order[0], order[2], order[1], order[3]};
        if (is_fan_ordering(m, alt, starts_triangle)) order = alt;
    }
}

}  // namespace

std::vector<Fan> maximal_fans(const Matroid& m, bool include_pairs) {
    int n = m.size();
    std::vector<Fan> out;

    auto tris = triangles_of(m);
    auto trias = triads_of(m);

    // Wheel/whirl hosts: one cyclic pseudo-fan instead of the overlap tangle.
    bool all_in_both = !tris.empty() && !trias.empty();
    if (all_in_both) {
        Mask in_tri = 0, in_tria = 0;
        for (Mask t : tris) in_tri |= t;
        for (Mask t : trias) in_tria |= t;
        all_in_both = (in_tri == m.all()) && (in_tria == m.all());
    }
    if (all_in_both) {
        if (auto cyc = cyclic_fan_cover(m)) {
            out.push_back(*cyc);
            return out;
        }
    }

    auto tri = pair_map(tris);
    auto tria = pair_map(trias);
    FanSearch search{tri, tria};

    auto seed = [&](Mask t, bool triangle) {
        std::vector<int> elems = elements_of(t);
        std::vector<int> perm = elems;
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<int> seq = perm;
            search.grow(seq, t, triangle);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    for (Mask t : tris) seed(t, true);
    for (Mask t : trias) seed(t, false);

    // Canonicalize, dedupe by element set, and drop non-maximal subsets.
    std::map<Mask, Fan> by_set;
    for (std::size_t i = 0; i < search.done.size(); ++i) {
        Fan f;
        f.order = search.done[i];
        f.starts_triangle = search.done_starts_triangle[i];
        canonicalize(m, f.order, f.starts_triangle);
        Mask key = f.mask();
        auto it = by_set.find(key);
        if (it == by_set.end() || f.order < it->second.order) by_set[key] = f;
    }
    for (auto& [key, fan] : by_set) {
        bool contained = false;
        for (auto& [other, fan2] : by_set)
            if (other != key && (key & other) == key) contained = true;
        if (contained) continue;
        fan.maximal = true;
        out.push_back(fan);
    }

    if (include_pairs) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                Fan f;
                f.order = {a, b};
                f.maximal = false;
                out.push_back(f);
            }
    }
    return out;
}

FanEnds fan_ends(const Fan& f) {
    FanEnds out;
    if (f.cyclic) {
        out.ambiguous = true;
        out.ends = f.order;
        return out;
    }
    int len = f.length();
    if (len >= 4) {
        out.ends = {f.order.front(), f.order.back()};
        return out;
    }
    out.ambiguous = true;
    out.ends = f.order;
    return out;
}

std::optional<Fan> fan_ordering_of(const Matroid& m, Mask x) {
    std::vector<int> elems = elements_of(x);
    int len = static_cast<int>(elems.size());
    if (len < 2) return std::nullopt;
    if (len == 2) {
        Fan f;
        f.order = elems;
        return f;
    }
    // Backtracking over orderings of x, both start kinds.
    std::vector<int> seq;
    Mask used = 0;
    std::function<bool(bool)> dfs = [&](bool base) -> bool {
        int k = static_cast<int>(seq.size());
        if (k == len) return true;
        for (int e : elems) {
            if (has(used, e)) continue;
            if (k >= 2 && !triple_kind_ok(m, seq[k - 2], seq[k - 1], e, base ^ ((k - 2) % 2)))
                continue;
            seq.push_back(e);
            used |= bit(e);
            if (dfs(base)) return true;
            seq.pop_back();
            used &= ~bit(e);
        }
        return false;
    };
    for (bool base : {true, false}) {
        seq.clear();
        used = 0;
        if (dfs(base)) {
            Fan f;
            f.order = seq;
            f.starts_triangle = base;
            return f;
        }
    }
    return std::nullopt;
}

bool is_mk4_separator(const Matroid& m, Mask x) {
    if (popcount(x) != 6) throw ArgError("an M(K_4)-separator candidate has 6 elements");
    std::vector<int> elems = elements_of(x);
    // Choose the triad {x,y,z}; the remaining three must form the triangle
    // {a,b,c}; then match the three crossing triangles under permutations.
    for (int c0 = 0; c0 < 6; ++c0)
        for (int c1 = c0 + 1; c1 < 6; ++c1)
            for (int c2 = c1 + 1; c2 < 6; ++c2) {
                int tx = elems[c0], ty = elems[c1], tz = elems[c2];
                Mask triad = bit(tx) | bit(ty) | bit(tz);
                if (!m.is_cocircuit(triad)) continue;
                std::vector<int> abc;
                for (int e : elems)
                    if (!has(triad, e)) abc.push_back(e);
                if (!m.is_circuit(mask_of(abc))) continue;
                std::vector<int> xyz{tx, ty, tz};
                std::sort(xyz.begin(), xyz.end());
                do {
                    std::vector<int> per = abc;
                    std::sort(per.begin(), per.end());
                    do {
                        // {a,x,y}, {b,x,z}, {c,y,z} triangles.
                        if (triple_kind_ok(m, per[0], xyz[0], xyz[1], true) &&
                            triple_kind_ok(m, per[1], xyz[0], xyz[2], true) &&
                            triple_kind_ok(m, per[2], xyz[1], xyz[2], true))
                            return true;
                    } while (std::next_permutation(per.begin(), per.end()));
                } while (std::next_permutation(xyz.begin(), xyz.end()));
            }
    return false;
}

FlowerReport flower_classify(const Matroid& m, const std::vector<Mask>& parts) {
    FlowerReport rep;
    rep.parts = parts;
    Mask acc = 0;
    for (Mask p : parts) {
        if (p == 0 || (acc & p)) throw ArgError("parts do not partition the ground set");
        acc |= p;
    }
    if (acc != m.all()) throw ArgError("parts do not partition the ground set");

    int k = static_cast<int>(parts.size());
    rep.pairwise_pi.assign(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) rep.pairwise_pi[i][j] = m.local_conn(parts[i], parts[j]);

    bool sizes_ok = true;
    for (Mask p : parts)
        if (popcount(p) < 2) sizes_ok = false;

    bool flower = sizes_ok;
    for (int i = 0; i < k && flower; ++i) {
        if (m.lambda(parts[i]) > 2) flower = false;
        if (k >= 3 && m.lambda(parts[i] | parts[(i + 1) % k]) > 2) flower = false;
    }
    rep.is_flower = flower;

    if (flower) {
        if (k > 12) throw CapError("anemone check capped at 12 parts");
        bool anemone = true;
        for (Mask sub = 1; sub < (Mask{1} << k) && anemone; ++sub) {
            Mask u = 0;
            for_each_bit(sub, [&](int i) { u |= parts[i]; });
            if (m.lambda(u) > 2) anemone = false;
        }
        rep.is_anemone = anemone;
    }

    if (rep.is_flower && k >= 2) {
        int v = rep.pairwise_pi[0][1];
        bool uniform = true;
        for (int i = 0; i < k && uniform; ++i)
            for (int j = 0; j < k && uniform; ++j)
                if (i != j && rep.pairwise_pi[i][j] != v) uniform = false;
        if (!uniform)
            rep.subkind = FlowerKind::mixed;
        else if (v == 2)
            rep.subkind = FlowerKind::paddle;
        else if (v == 1)
            rep.subkind = FlowerKind::spike_like;
        else if (v == 0)
            rep.subkind = FlowerKind::copaddle;
        else
            rep.subkind = FlowerKind::mixed;
    }
    return rep;
}

}  // namespace detkit
